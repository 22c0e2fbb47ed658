#include "confopt/optimize.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <type_traits>

namespace confopt {

namespace {

enum class AttemptStatus { solved, aborted, infeasible };

struct Context {
  RunClock& clock;
  const OptimizeHooks& hooks;
  OptimizeResult& result;

  void emit(TraceEventKind kind) {
    TraceEvent e{clock.elapsed(), clock.iterations(), result.best.num_colors, kind};
    result.trace.events.push_back(e);
    if (hooks.on_event) hooks.on_event(e);
  }
};

/// One elimination target: keeps restarting from `start` until the engine
/// empties its conflict set or the budget runs out.
template <class Engine>
AttemptStatus attempt(const Graph& work, const Coloring& start, const OptimizerConfig& cfg,
                      std::mt19937_64& rng, std::span<const std::uint8_t> pinned,
                      std::vector<std::uint64_t>& q, Context& ctx, Coloring& solved) {
  Engine engine(work, cfg, start, rng, pinned, q);
  if constexpr (std::is_same_v<Engine, ConflictOptimizer>) {
    if (ctx.hooks.on_partial_step) engine.set_step_hook(ctx.hooks.on_partial_step);
  } else {
    if (ctx.hooks.on_full_step) engine.set_step_hook(ctx.hooks.on_full_step);
  }
  auto save_q = [&] {
    if constexpr (std::is_same_v<Engine, ConflictOptimizer>) {
      q = engine.state().q;
    } else {
      q = engine.q();
    }
  };

  std::optional<VictimStrategy> victim;
  while (true) {
    try {
      engine.remove_color_class(victim);
    } catch (const InfeasibleTarget&) {
      return AttemptStatus::infeasible;
    }
    EliminationStatus status;
    if constexpr (std::is_same_v<Engine, ConflictOptimizer>) {
      status = engine.run_elimination(ctx.clock);
    } else {
      status = engine.run(ctx.clock);
    }
    if (status == EliminationStatus::solved) {
      solved = engine.coloring();
      save_q();
      return AttemptStatus::solved;
    }
    if (status == EliminationStatus::abort) {
      save_q();
      return AttemptStatus::aborted;
    }
    ++ctx.result.restarts;
    ctx.emit(cfg.multistart ? TraceEventKind::multistart : TraceEventKind::restart);
    engine.restore(start);
    engine.shuffle(cfg.shuffle_fraction);
    engine.reset_q();
    if (cfg.multistart) victim = VictimStrategy::random;
  }
}

CliqueSet pinning_clique(const Graph& g, const OptimizerConfig& cfg, const Budget& budget) {
  CliqueSet c;
  if (!cfg.clique.empty()) {
    c.vertices = cfg.clique;
    std::sort(c.vertices.begin(), c.vertices.end());
    c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
    if (!verify_clique(g, c)) throw std::invalid_argument("pinning clique is not a clique of the graph");
    return c;
  }
  CliqueSearchOptions opts;
  opts.seed = cfg.seed;
  opts.restarts = 16;
  opts.moves_per_restart = 1000;
  opts.time_limit_seconds = budget.seconds ? std::min(5.0, *budget.seconds / 10.0) : 5.0;
  return best_clique(g, opts);
}

}  // namespace

OptimizeResult optimize(const Graph& g, const Coloring& initial, const OptimizerConfig& cfg_in,
                        const Budget& budget, const OptimizeHooks& hooks) {
  OptimizerConfig cfg = cfg_in;
  cfg.validate();
  if (!validate_coloring(g, initial).valid) {
    throw std::invalid_argument("initial coloring is not valid");
  }
  const std::size_t n = g.vertex_count();
  // q_max follows the size of the whole graph, not of a reduced one
  if (cfg.q_max_mode == QMaxMode::automatic) {
    cfg.q_max_mode = QMaxMode::fixed;
    cfg.q_max = default_q_max(std::max<std::size_t>(n, 1));
  }

  RunClock clock(budget);
  OptimizeResult result;
  result.best = initial;
  result.best.compact();
  Context ctx{clock, hooks, result};

  std::vector<std::uint8_t> pinned(n, 0);
  if (cfg.clique_pinning && n > 0) {
    result.pinned_clique = pinning_clique(g, cfg, budget);
    for (Vertex v : result.pinned_clique.vertices) pinned[v] = 1;
  }
  const Color lower = std::max<Color>(static_cast<Color>(result.pinned_clique.size()),
                                      g.edge_count() > 0 ? 2 : (n > 0 ? 1 : 0));

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::uint64_t> q(n, 0);

  while (true) {
    if (cfg.target_colors > 0 && result.best.num_colors <= cfg.target_colors) break;
    if (result.best.num_colors <= lower) break;
    if (clock.expired()) {
      ctx.emit(TraceEventKind::abort);
      break;
    }
    const Color k = result.best.num_colors - 1;

    Reduction red;
    bool reduced = false;
    if (cfg.easy_vertices) {
      red = degeneracy_easy_vertices(g, k);
      reduced = !red.easy.order.empty();
    }
    const Graph& work = reduced ? red.reduced : g;

    Coloring start;
    std::vector<std::uint8_t> work_pinned;
    std::vector<std::uint64_t> work_q;
    if (reduced) {
      start.colors.reserve(red.kept.size());
      for (Vertex v : red.kept) {
        start.colors.push_back(result.best.colors[v]);
        work_pinned.push_back(pinned[v]);
        work_q.push_back(q[v]);
      }
      start.num_colors = result.best.num_colors;
      start.compact();
    } else {
      start = result.best;
      work_pinned = pinned;
      work_q = q;
    }

    Coloring solved;
    if (start.num_colors <= k) {
      solved = start;
    } else {
      const AttemptStatus status =
          cfg.neighborhood == Neighborhood::partial
              ? attempt<ConflictOptimizer>(work, start, cfg, rng, work_pinned, work_q, ctx, solved)
              : attempt<TabucolVariant>(work, start, cfg, rng, work_pinned, work_q, ctx, solved);
      if (reduced) {
        for (std::size_t i = 0; i < red.kept.size(); ++i) q[red.kept[i]] = work_q[i];
      } else {
        q = work_q;
      }
      if (status == AttemptStatus::infeasible) break;
      if (status == AttemptStatus::aborted) {
        ctx.emit(TraceEventKind::abort);
        break;
      }
    }

    Coloring full = reduced ? extend_coloring_to_easy(g, solved, red) : solved;
    full.compact();
    if (full.num_colors > k || !validate_coloring(g, full).valid) {
      throw std::logic_error("optimizer produced an invalid improvement");
    }
    result.best = std::move(full);
    ctx.emit(TraceEventKind::improved);
  }

  result.proven_optimal = !result.pinned_clique.vertices.empty() &&
                          result.best.num_colors == static_cast<Color>(result.pinned_clique.size());
  result.iterations = clock.iterations();
  result.seconds = clock.elapsed();
  return result;
}

OptimizeResult optimize_parallel(const Graph& g, const Coloring& initial,
                                 const OptimizerConfig& cfg, const Budget& budget,
                                 unsigned workers, const TraceObserver& on_event) {
  workers = std::max(1u, workers);
  if (!validate_coloring(g, initial).valid) {
    throw std::invalid_argument("initial coloring is not valid");
  }
  std::mutex merge;
  Trace merged;
  Color global_best = initial.num_colors;
  std::vector<OptimizeResult> results(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        OptimizerConfig local = cfg;
        local.seed = cfg.seed + w;
        OptimizeHooks hooks;
        hooks.on_event = [&](const TraceEvent& e) {
          if (e.kind != TraceEventKind::improved) return;
          std::lock_guard lock(merge);
          if (e.colors >= global_best) return;
          global_best = e.colors;
          merged.events.push_back(e);
          if (on_event) on_event(e);
        };
        try {
          results[w] = optimize(g, initial, local, budget, hooks);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  auto best = std::min_element(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return a.best.num_colors < b.best.num_colors;
  });
  OptimizeResult out = *best;
  out.trace = merged;
  out.iterations = 0;
  out.restarts = 0;
  out.seconds = 0.0;
  bool aborted = false;
  for (const auto& r : results) {
    out.iterations += r.iterations;
    out.restarts += r.restarts;
    out.seconds = std::max(out.seconds, r.seconds);
    out.proven_optimal = out.proven_optimal || r.proven_optimal;
    aborted = aborted || r.trace.count(TraceEventKind::abort) > 0;
  }
  if (aborted) {
    TraceEvent e{out.seconds, out.iterations, out.best.num_colors, TraceEventKind::abort};
    out.trace.events.push_back(e);
    if (on_event) on_event(e);
  }
  return out;
}

}  // namespace confopt
