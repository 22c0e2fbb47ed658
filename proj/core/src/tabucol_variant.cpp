#include "confopt/tabucol_variant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace confopt {

using detail::kInfinity;

namespace {
constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
}

TabucolVariant::TabucolVariant(const Graph& g, const OptimizerConfig& cfg, const Coloring& start,
                               std::mt19937_64& rng, std::span<const std::uint8_t> pinned,
                               std::span<const std::uint64_t> q)
    : g_(g),
      cfg_(cfg),
      rng_(rng),
      q_max_(cfg.resolved_q_max(g.vertex_count())),
      pinned_(detail::pinned_mask(pinned, g.vertex_count())),
      q_(detail::initial_q(q, g.vertex_count())),
      weights_(cfg_, q_max_, q_),
      clash_(g.vertex_count(), 0),
      position_(g.vertex_count(), kAbsent),
      in_fifo_(g.vertex_count(), 0) {
  if (start.colors.size() != g.vertex_count()) {
    throw std::invalid_argument("TABUCOL start assignment has the wrong length");
  }
  restore(start);
}

double TabucolVariant::effective_weight(Vertex u) const {
  if (pinned_[u]) return kInfinity;
  if (conflict_phase_) return 1.0;
  return weights_.cached(u);
}

void TabucolVariant::refresh(Vertex v) {
  const bool conflicting = !pinned_[v] && clash_[v] > 0;
  if (conflicting && position_[v] == kAbsent) {
    position_[v] = conflicting_.size();
    conflicting_.push_back(v);
  } else if (!conflicting && position_[v] != kAbsent) {
    const Vertex last = conflicting_.back();
    conflicting_[position_[v]] = last;
    position_[last] = position_[v];
    conflicting_.pop_back();
    position_[v] = kAbsent;
  }
  if (conflicting && cfg_.selection == SelectionStrategy::fifo_queue && !in_fifo_[v]) {
    fifo_.push_back(v);
    in_fifo_[v] = 1;
  }
}

void TabucolVariant::rebuild_conflicts() {
  std::fill(clash_.begin(), clash_.end(), 0);
  conflict_edges_ = 0;
  for (Vertex u = 0; u < g_.vertex_count(); ++u) {
    for (Vertex w : g_.neighbors(u)) {
      if (u < w && class_of_[u] == class_of_[w]) {
        ++clash_[u];
        ++clash_[w];
        ++conflict_edges_;
      }
    }
  }
  for (Vertex v : conflicting_) position_[v] = kAbsent;
  conflicting_.clear();
  for (Vertex v : fifo_) in_fifo_[v] = 0;
  fifo_.clear();
  for (Vertex v = 0; v < g_.vertex_count(); ++v) refresh(v);
}

void TabucolVariant::move(Vertex v, Color to) {
  const Color from = class_of_[v];
  for (Vertex u : g_.neighbors(v)) {
    const Color c = class_of_[u];
    if (c == from) {
      --clash_[u];
      --clash_[v];
      --conflict_edges_;
      refresh(u);
    } else if (c == to) {
      ++clash_[u];
      ++clash_[v];
      ++conflict_edges_;
      if (weights_.bump(u)) abort_triggered_ = true;
      refresh(u);
    }
  }
  if (from != kUncolored) --class_size_[static_cast<std::size_t>(from)];
  ++class_size_[static_cast<std::size_t>(to)];
  class_of_[v] = to;
  refresh(v);
}

Color TabucolVariant::best_class(Vertex v, bool with_noise, bool exclude_own) {
  acc_.assign(class_size_.size(), 0.0);
  for (Vertex u : g_.neighbors(v)) {
    const Color c = class_of_[u];
    if (c != kUncolored) acc_[static_cast<std::size_t>(c)] += effective_weight(u);
  }
  const Color own = exclude_own ? class_of_[v] : kUncolored;
  const bool noisy = with_noise && !conflict_phase_ && cfg_.sigma > 0.0;
  Color best = kUncolored;
  double best_score = kInfinity;
  for (Color j = 0; j < num_classes(); ++j) {
    const double sum = acc_[static_cast<std::size_t>(j)];
    if (j == own || std::isinf(sum)) continue;
    const double score = (noisy && sum > 0.0) ? detail::draw_multiplier(rng_, cfg_.sigma) * sum : sum;
    if (best == kUncolored || score < best_score) {
      best = j;
      best_score = score;
    }
  }
  // acc_ keeps the unscaled sums for callers comparing vertices
  return best;
}

Vertex TabucolVariant::select() {
  switch (cfg_.selection) {
    case SelectionStrategy::random:
      return conflicting_[std::uniform_int_distribution<std::size_t>(0, conflicting_.size() - 1)(rng_)];
    case SelectionStrategy::fifo_queue:
      while (true) {
        const Vertex v = fifo_.front();
        fifo_.pop_front();
        in_fifo_[v] = 0;
        if (position_[v] != kAbsent) return v;
      }
    case SelectionStrategy::least_conflict_after_removal: {
      Vertex best = conflicting_.front();
      double best_score = kInfinity;
      bool first = true;
      for (Vertex v : conflicting_) {
        const Color c = best_class(v, false, true);
        const double score = c == kUncolored ? kInfinity : acc_[static_cast<std::size_t>(c)];
        if (first || score < best_score || (score == best_score && v < best)) {
          best = v;
          best_score = score;
          first = false;
        }
      }
      return best;
    }
  }
  return conflicting_.front();
}

bool TabucolVariant::step() {
  if (conflicting_.empty()) return false;
  const Vertex v = select();
  const Color to = best_class(v, true, true);
  if (to == kUncolored) {
    refresh(v);
    return false;
  }
  move(v, to);
  if (abort_triggered_) {
    abort_triggered_ = false;
    return false;
  }
  return true;
}

Color TabucolVariant::remove_color_class(std::optional<VictimStrategy> override_strategy) {
  const Color k = num_classes();
  if (k < 2) throw std::logic_error("cannot eliminate a class from fewer than two classes");
  std::vector<std::uint8_t> has_pin(static_cast<std::size_t>(k), 0);
  for (Vertex v = 0; v < g_.vertex_count(); ++v) {
    if (pinned_[v]) has_pin[static_cast<std::size_t>(class_of_[v])] = 1;
  }
  std::vector<Color> eligible;
  for (Color c = 0; c < k; ++c) {
    if (!has_pin[static_cast<std::size_t>(c)]) eligible.push_back(c);
  }
  if (eligible.empty()) throw InfeasibleTarget("every color class holds a pinned clique vertex");

  Color victim = eligible.front();
  if (override_strategy.value_or(cfg_.victim) == VictimStrategy::random) {
    victim = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng_)];
  } else {
    for (Color c : eligible) {
      if (class_size_[static_cast<std::size_t>(c)] < class_size_[static_cast<std::size_t>(victim)]) {
        victim = c;
      }
    }
  }

  std::vector<Vertex> members;
  const Color last = k - 1;
  for (Vertex v = 0; v < g_.vertex_count(); ++v) {
    if (class_of_[v] == victim) {
      members.push_back(v);
      class_of_[v] = kUncolored;
    } else if (class_of_[v] == last) {
      class_of_[v] = victim;
    }
  }
  class_size_[static_cast<std::size_t>(victim)] = class_size_.back();
  class_size_.pop_back();
  for (Vertex v : members) {
    Color to = best_class(v, false, false);
    if (to == kUncolored) to = 0;
    class_of_[v] = to;
    ++class_size_[static_cast<std::size_t>(to)];
  }
  rebuild_conflicts();
  return victim;
}

EliminationStatus TabucolVariant::run(RunClock& clock) {
  while (true) {
    if (conflict_edges_ == 0) return EliminationStatus::solved;
    if (clock.expired()) return EliminationStatus::abort;
    if (cfg_.phase_alternation) {
      conflict_phase_ = (clock.iterations() / cfg_.phase_length) % 2 == 1;
    }
    const bool ok = step();
    clock.tick();
    if (hook_) hook_(*this);
    if (!ok) return EliminationStatus::restart;
  }
}

void TabucolVariant::restore(const Coloring& c) {
  class_of_ = c.colors;
  class_size_.assign(static_cast<std::size_t>(c.num_colors), 0);
  for (Color x : class_of_) {
    if (x < 0 || x >= c.num_colors) throw std::invalid_argument("assignment entry out of range");
    ++class_size_[static_cast<std::size_t>(x)];
  }
  abort_triggered_ = false;
  rebuild_conflicts();
}

void TabucolVariant::shuffle(double fraction) {
  const std::size_t n = g_.vertex_count();
  const auto count = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));
  std::vector<Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), Vertex{0});
  std::shuffle(ids.begin(), ids.end(), rng_);
  std::vector<std::uint32_t> count_in(class_size_.size());
  std::vector<Color> free;
  for (std::size_t i = 0; i < count; ++i) {
    const Vertex v = ids[i];
    if (pinned_[v]) continue;
    std::fill(count_in.begin(), count_in.end(), 0);
    for (Vertex u : g_.neighbors(v)) ++count_in[static_cast<std::size_t>(class_of_[u])];
    free.clear();
    for (Color j = 0; j < num_classes(); ++j) {
      if (j != class_of_[v] && count_in[static_cast<std::size_t>(j)] == 0) free.push_back(j);
    }
    if (free.empty()) continue;
    const Color to = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng_)];
    // conflict-free move: no q changes
    --class_size_[static_cast<std::size_t>(class_of_[v])];
    ++class_size_[static_cast<std::size_t>(to)];
    class_of_[v] = to;
  }
  rebuild_conflicts();
}

Coloring TabucolVariant::coloring() const {
  if (conflict_edges_ != 0) throw std::logic_error("assignment still has conflicts");
  Coloring c{class_of_, num_classes()};
  c.compact();
  return c;
}

}  // namespace confopt
