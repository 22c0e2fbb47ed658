#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "confopt/clique.hpp"
#include "confopt/config.hpp"
#include "confopt/conflict_optimizer.hpp"
#include "confopt/graph.hpp"
#include "confopt/tabucol_variant.hpp"
#include "confopt/trace.hpp"

namespace confopt {

struct OptimizeHooks {
  TraceObserver on_event;
  /// Called after every iteration of the partial-coloring engine.
  std::function<void(const ConflictOptimizer&)> on_partial_step;
  /// Called after every iteration of the full-assignment engine.
  std::function<void(const TabucolVariant&)> on_full_step;
};

struct OptimizeResult {
  Coloring best;
  Trace trace;
  CliqueSet pinned_clique;       // empty unless pinning was on
  bool proven_optimal = false;   // best.num_colors equals the pinned clique size
  std::uint64_t iterations = 0;
  std::uint64_t restarts = 0;
  double seconds = 0.0;
};

/// Repeatedly eliminates one color class from the best coloring found so far.
/// Stops when the budget runs out, cfg.target_colors is reached, or the
/// pinned clique proves optimality. Throws std::invalid_argument when
/// `initial` is not a valid coloring of `g` or the supplied clique is not a
/// clique.
OptimizeResult optimize(const Graph& g, const Coloring& initial, const OptimizerConfig& cfg,
                        const Budget& budget, const OptimizeHooks& hooks = {});

/// `workers` independent optimize() runs with seeds cfg.seed, cfg.seed + 1, ...
/// sharing one immutable graph. The merged trace holds every event that
/// improved the global best, plus the final abort.
OptimizeResult optimize_parallel(const Graph& g, const Coloring& initial,
                                 const OptimizerConfig& cfg, const Budget& budget,
                                 unsigned workers, const TraceObserver& on_event = {});

}  // namespace confopt
