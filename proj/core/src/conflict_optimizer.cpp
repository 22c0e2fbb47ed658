#include "confopt/conflict_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace confopt {

using detail::kInfinity;

std::size_t PartialState::colored_count() const {
  return static_cast<std::size_t>(
      std::count_if(class_of.begin(), class_of.end(), [](Color c) { return c != kUncolored; }));
}

namespace {

PartialState make_state(const Graph& g, const Coloring& start, std::span<const std::uint8_t> pinned,
                        std::span<const std::uint64_t> q) {
  if (!validate_coloring(g, start).valid) {
    throw std::invalid_argument("optimizer start coloring is not valid");
  }
  const std::size_t n = g.vertex_count();
  PartialState s;
  s.class_of = start.colors;
  s.class_size.assign(static_cast<std::size_t>(start.num_colors), 0);
  for (Color c : s.class_of) ++s.class_size[static_cast<std::size_t>(c)];
  s.in_conflict_set.assign(n, 0);
  s.q = detail::initial_q(q, n);
  s.pinned = detail::pinned_mask(pinned, n);
  return s;
}

}  // namespace

ConflictOptimizer::ConflictOptimizer(const Graph& g, const OptimizerConfig& cfg,
                                     const Coloring& start, std::mt19937_64& rng,
                                     std::span<const std::uint8_t> pinned,
                                     std::span<const std::uint64_t> q)
    : g_(g),
      cfg_(cfg),
      rng_(rng),
      q_max_(cfg.resolved_q_max(g.vertex_count())),
      state_(make_state(g, start, pinned, q)),
      weights_(cfg_, q_max_, state_.q),
      acc_weight_(state_.class_size.size(), 0.0),
      acc_count_(state_.class_size.size(), 0),
      locked_(g.vertex_count(), 0) {}

double ConflictOptimizer::effective_weight(Vertex u) const {
  if (state_.pinned[u]) return kInfinity;
  if (conflict_phase_) return 1.0;
  return weights_.cached(u);
}

double ConflictOptimizer::noise() {
  if (conflict_phase_ || cfg_.sigma <= 0.0) return 1.0;
  return detail::draw_multiplier(rng_, cfg_.sigma);
}

void ConflictOptimizer::assign(Vertex v, Color c) {
  const Color old = state_.class_of[v];
  if (old != kUncolored) --state_.class_size[static_cast<std::size_t>(old)];
  if (c != kUncolored) ++state_.class_size[static_cast<std::size_t>(c)];
  state_.class_of[v] = c;
}

void ConflictOptimizer::bump_q(Vertex u) {
  if (weights_.bump(u)) abort_triggered_ = true;
}

void ConflictOptimizer::uncolor(Vertex v, bool enqueue) {
  assign(v, kUncolored);
  if (!enqueue || state_.in_conflict_set[v]) return;
  state_.conflict_set.push_back(v);
  state_.in_conflict_set[v] = 1;
  if (cfg_.q_increment == QIncrement::on_enter) bump_q(v);
}

void ConflictOptimizer::accumulate(Vertex v) {
  for (Color c : touched_) {
    acc_weight_[static_cast<std::size_t>(c)] = 0.0;
    acc_count_[static_cast<std::size_t>(c)] = 0;
  }
  touched_.clear();
  for (Vertex u : g_.neighbors(v)) {
    const Color c = state_.class_of[u];
    if (c == kUncolored) continue;
    const auto ci = static_cast<std::size_t>(c);
    if (acc_count_[ci]++ == 0) touched_.push_back(c);
    acc_weight_[ci] += effective_weight(u);
  }
}

double ConflictOptimizer::score_class(Vertex v, Color j) {
  if (j < 0 || j >= state_.num_classes()) throw std::out_of_range("class index out of range");
  double sum = 0.0;
  for (Vertex u : g_.neighbors(v)) {
    if (state_.class_of[u] == j) sum += effective_weight(u);
  }
  if (sum == 0.0 || std::isinf(sum)) return sum;
  return noise() * sum;
}

double ConflictOptimizer::best_score_without_noise(Vertex v) {
  accumulate(v);
  if (touched_.size() < state_.class_size.size()) return 0.0;
  return *std::min_element(acc_weight_.begin(), acc_weight_.end());
}

Color ConflictOptimizer::remove_color_class(std::optional<VictimStrategy> override_strategy) {
  const Color k = state_.num_classes();
  if (k < 2) throw std::logic_error("cannot eliminate a class from fewer than two classes");

  std::vector<std::uint8_t> has_pin(static_cast<std::size_t>(k), 0);
  for (Vertex v = 0; v < state_.vertex_count(); ++v) {
    if (state_.pinned[v] && state_.class_of[v] != kUncolored) {
      has_pin[static_cast<std::size_t>(state_.class_of[v])] = 1;
    }
  }
  std::vector<Color> eligible;
  for (Color c = 0; c < k; ++c) {
    if (!has_pin[static_cast<std::size_t>(c)]) eligible.push_back(c);
  }
  if (eligible.empty()) {
    throw InfeasibleTarget("every color class holds a pinned clique vertex");
  }

  Color victim = eligible.front();
  if (override_strategy.value_or(cfg_.victim) == VictimStrategy::random) {
    victim = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng_)];
  } else {
    for (Color c : eligible) {
      if (state_.class_size[static_cast<std::size_t>(c)] <
          state_.class_size[static_cast<std::size_t>(victim)]) {
        victim = c;
      }
    }
  }

  const Color last = k - 1;
  for (Vertex v = 0; v < state_.vertex_count(); ++v) {
    if (state_.class_of[v] == victim) {
      uncolor(v, false);
      state_.conflict_set.push_back(v);
      state_.in_conflict_set[v] = 1;
    }
  }
  if (victim != last) {
    for (Color& c : state_.class_of) {
      if (c == last) c = victim;
    }
    state_.class_size[static_cast<std::size_t>(victim)] = state_.class_size.back();
  }
  state_.class_size.pop_back();
  for (Color c : touched_) {
    if (static_cast<std::size_t>(c) < acc_count_.size()) {
      acc_weight_[static_cast<std::size_t>(c)] = 0.0;
      acc_count_[static_cast<std::size_t>(c)] = 0;
    }
  }
  touched_.clear();
  acc_weight_.resize(state_.class_size.size());
  acc_count_.resize(state_.class_size.size());
  return victim;
}

Vertex ConflictOptimizer::pop_conflict_vertex() {
  auto& s = state_.conflict_set;
  if (s.empty()) throw std::logic_error("conflict set is empty");

  std::size_t pos = 0;
  switch (cfg_.selection) {
    case SelectionStrategy::fifo_queue:
      break;
    case SelectionStrategy::random:
      pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng_);
      break;
    case SelectionStrategy::least_conflict_after_removal: {
      double best = kInfinity;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double score = best_score_without_noise(s[i]);
        if (i == 0 || score < best || (score == best && s[i] < s[pos])) {
          best = score;
          pos = i;
        }
      }
      break;
    }
  }
  const Vertex v = s[pos];
  if (pos == 0) {
    s.pop_front();
  } else if (cfg_.selection == SelectionStrategy::random) {
    std::swap(s[pos], s.back());
    s.pop_back();
  } else {
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  state_.in_conflict_set[v] = 0;
  if (cfg_.q_increment == QIncrement::on_leave) bump_q(v);
  return v;
}

PlaceOutcome ConflictOptimizer::place_vertex(Vertex v, std::optional<int> bdfs_depth) {
  if (state_.class_of[v] != kUncolored || state_.in_conflict_set[v]) {
    throw std::logic_error("place_vertex: vertex " + std::to_string(v) +
                           " is colored or still queued");
  }
  PlaceOutcome out;
  accumulate(v);
  const Color k = state_.num_classes();
  for (Color j = 0; j < k; ++j) {
    if (acc_count_[static_cast<std::size_t>(j)] == 0) {
      assign(v, j);
      out.chosen = j;
      return out;
    }
  }

  double best = kInfinity;
  for (Color j = 0; j < k; ++j) {
    const double sum = acc_weight_[static_cast<std::size_t>(j)];
    if (std::isinf(sum)) continue;
    const double score = noise() * sum;
    if (score < best || out.chosen == kUncolored) {
      best = score;
      out.chosen = j;
    }
  }
  if (out.chosen == kUncolored) {
    state_.conflict_set.push_back(v);
    state_.in_conflict_set[v] = 1;
    out.restart = true;
    return out;
  }

  const Color j = out.chosen;
  assign(v, j);
  std::vector<Vertex> victims;
  for (Vertex u : g_.neighbors(v)) {
    if (state_.class_of[u] == j) victims.push_back(u);
  }
  const int depth = bdfs_depth.value_or(cfg_.bdfs_depth);
  locked_[v] = 1;
  for (Vertex u : victims) {
    if (state_.class_of[u] != j) continue;
    if (cfg_.bdfs && bdfs_recolor(u, depth)) {
      ++out.recolored;
      continue;
    }
    uncolor(u, true);
    ++out.uncolored;
  }
  locked_[v] = 0;
  if (abort_triggered_) {
    abort_triggered_ = false;
    out.restart = true;
  }
  return out;
}

bool ConflictOptimizer::bdfs_recolor(Vertex u, int depth) {
  if (state_.in_conflict_set[u]) throw std::logic_error("bdfs_recolor: vertex is queued in S");
  bdfs_nodes_ = 0;
  move_log_.clear();
  const bool ok = try_move(u, depth);
  if (!ok) rollback(0);
  move_log_.clear();
  return ok;
}

bool ConflictOptimizer::try_move(Vertex x, int depth) {
  if (depth <= 0 || state_.pinned[x] || locked_[x]) return false;
  if (++bdfs_nodes_ > cfg_.bdfs_node_limit) return false;

  const Color own = state_.class_of[x];
  const auto k = static_cast<std::size_t>(state_.num_classes());
  std::vector<std::uint32_t> count(k, 0);
  std::vector<std::uint8_t> blocked(k, 0);
  for (Vertex w : g_.neighbors(x)) {
    const Color c = state_.class_of[w];
    if (c == kUncolored) continue;
    ++count[static_cast<std::size_t>(c)];
    if (state_.pinned[w] || locked_[w]) blocked[static_cast<std::size_t>(c)] = 1;
  }

  std::vector<Color> candidates;
  for (std::size_t j = 0; j < k; ++j) {
    if (static_cast<Color>(j) == own || blocked[j]) continue;
    if (count[j] == 0) {
      move_log_.emplace_back(x, own);
      assign(x, static_cast<Color>(j));
      return true;
    }
    if (count[j] <= static_cast<std::uint32_t>(cfg_.a_max)) candidates.push_back(static_cast<Color>(j));
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](Color a, Color b) {
    return count[static_cast<std::size_t>(a)] < count[static_cast<std::size_t>(b)];
  });

  locked_[x] = 1;
  for (Color j : candidates) {
    const std::size_t mark = move_log_.size();
    std::vector<Vertex> members;
    for (Vertex w : g_.neighbors(x)) {
      if (state_.class_of[w] == j) members.push_back(w);
    }
    move_log_.emplace_back(x, state_.class_of[x]);
    assign(x, j);
    bool ok = true;
    for (Vertex w : members) {
      if (state_.class_of[w] == j && !try_move(w, depth - 1)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      locked_[x] = 0;
      return true;
    }
    rollback(mark);
  }
  locked_[x] = 0;
  return false;
}

void ConflictOptimizer::rollback(std::size_t mark) {
  while (move_log_.size() > mark) {
    const auto [v, old] = move_log_.back();
    move_log_.pop_back();
    assign(v, old);
  }
}

int ConflictOptimizer::depth_for(std::size_t queue_size) const {
  for (const auto& [size, depth] : cfg_.depth_escalation) {
    if (size == queue_size) return depth;
  }
  return cfg_.bdfs_depth;
}

EliminationStatus ConflictOptimizer::run_elimination(RunClock& clock) {
  // a victim class larger than the limit must not restart before any step
  const std::size_t limit =
      std::max(cfg_.restart_limit(state_.vertex_count()), state_.conflict_set.size());
  while (true) {
    if (state_.conflict_set.empty()) return EliminationStatus::solved;
    if (clock.expired()) return EliminationStatus::abort;
    if (state_.conflict_set.size() > limit) return EliminationStatus::restart;
    if (cfg_.phase_alternation) {
      conflict_phase_ = (clock.iterations() / cfg_.phase_length) % 2 == 1;
    }
    const std::size_t queued = state_.conflict_set.size();
    const Vertex v = pop_conflict_vertex();
    const PlaceOutcome out = place_vertex(v, depth_for(queued));
    clock.tick();
    if (hook_) hook_(*this);
    if (out.restart) return EliminationStatus::restart;
  }
}

void ConflictOptimizer::restore(const Coloring& c) {
  if (c.colors.size() != state_.vertex_count()) {
    throw std::invalid_argument("restore: coloring has the wrong length");
  }
  state_.class_of = c.colors;
  state_.class_size.assign(static_cast<std::size_t>(c.num_colors), 0);
  for (Color x : state_.class_of) ++state_.class_size[static_cast<std::size_t>(x)];
  state_.conflict_set.clear();
  std::fill(state_.in_conflict_set.begin(), state_.in_conflict_set.end(), 0);
  touched_.clear();
  acc_weight_.assign(state_.class_size.size(), 0.0);
  acc_count_.assign(state_.class_size.size(), 0);
  abort_triggered_ = false;
}

void ConflictOptimizer::shuffle(double fraction) {
  const std::size_t n = state_.vertex_count();
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  std::vector<Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), Vertex{0});
  std::shuffle(ids.begin(), ids.end(), rng_);
  std::vector<Color> free;
  for (std::size_t i = 0; i < std::min(count, n); ++i) {
    const Vertex v = ids[i];
    const Color own = state_.class_of[v];
    if (state_.pinned[v] || own == kUncolored) continue;
    accumulate(v);
    free.clear();
    for (Color j = 0; j < state_.num_classes(); ++j) {
      if (j != own && acc_count_[static_cast<std::size_t>(j)] == 0) free.push_back(j);
    }
    if (free.empty()) continue;
    assign(v, free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng_)]);
  }
}

void ConflictOptimizer::reset_q() { weights_.reset(); }

Coloring ConflictOptimizer::coloring() const {
  if (!state_.conflict_set.empty()) throw std::logic_error("coloring: conflict set is not empty");
  Coloring c{state_.class_of, state_.num_classes()};
  if (std::find(c.colors.begin(), c.colors.end(), kUncolored) != c.colors.end()) {
    throw std::logic_error("coloring: some vertex is uncolored");
  }
  c.compact();
  return c;
}

}  // namespace confopt
