#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "confopt/graph.hpp"

namespace confopt {

/// Which class step 1 empties.
enum class VictimStrategy { smallest_class, random };

/// Which conflict vertex step 2 takes next.
enum class SelectionStrategy { fifo_queue, random, least_conflict_after_removal };

/// What crossing q_max does: make the vertex unmovable, or abort the attempt.
enum class ThresholdMode { infinite_weight, abort_restart };

enum class QMaxMode { unlimited, fixed, automatic };

/// When q(u) is incremented: as u enters the conflict set, or as it leaves.
enum class QIncrement { on_enter, on_leave };

/// Partial colorings with a conflict set, or complete assignments that may
/// contain monochromatic edges.
enum class Neighborhood { partial, full_assignment };

struct OptimizerConfig {
  // (a)
  VictimStrategy victim = VictimStrategy::smallest_class;
  // (b)
  SelectionStrategy selection = SelectionStrategy::fifo_queue;
  // (c)  w(u) = 1 + q(u)^exponent
  double exponent = 1.2;
  QMaxMode q_max_mode = QMaxMode::automatic;
  std::uint64_t q_max = 0;
  ThresholdMode threshold_mode = ThresholdMode::infinite_weight;
  QIncrement q_increment = QIncrement::on_enter;
  // (d)  standard deviation of the class multiplier f
  double sigma = 0.15;
  // (e)
  bool bdfs = false;
  int a_max = 3;
  int bdfs_depth = 3;
  /// (conflict set size, depth) pairs overriding bdfs_depth.
  std::vector<std::pair<std::size_t, int>> depth_escalation{{2, 5}, {1, 7}};
  /// Search nodes per top-level recoloring attempt.
  std::uint64_t bdfs_node_limit = 20000;

  bool phase_alternation = false;
  std::uint64_t phase_length = 100000;

  bool restart_on_large_conflict_set = true;
  std::size_t restart_min_size = 50;
  double restart_fraction = 0.05;
  double shuffle_fraction = 0.10;
  bool multistart = false;

  bool clique_pinning = false;
  /// Clique to pin; when empty and pinning is on, a heuristic clique is used.
  std::vector<Vertex> clique;

  bool easy_vertices = false;
  Neighborhood neighborhood = Neighborhood::partial;

  std::uint64_t seed = 1;
  /// Stop as soon as this many colors are reached (0 = keep going).
  Color target_colors = 0;

  /// Lifts the [1, 2] restriction on the exponent.
  bool allow_any_exponent = false;

  /// Throws std::invalid_argument on out-of-range knobs.
  void validate() const;

  /// The q_max in force for a graph of `vertex_count` vertices, or nullopt.
  std::optional<std::uint64_t> resolved_q_max(std::size_t vertex_count) const;

  /// |S| above which the current attempt is abandoned.
  std::size_t restart_limit(std::size_t vertex_count) const;
};

enum class Preset { lasa_cwls, lasa_pwls, gitastrophe, shadoks };

OptimizerConfig preset_config(Preset p);
Preset parse_preset(std::string_view name);
std::string_view to_string(Preset p);

VictimStrategy parse_victim(std::string_view name);
SelectionStrategy parse_selection(std::string_view name);
ThresholdMode parse_threshold_mode(std::string_view name);
QIncrement parse_q_increment(std::string_view name);

/// round(2000 * (75000 / vertex_count)^2). Throws std::invalid_argument on 0.
std::uint64_t default_q_max(std::size_t vertex_count);

/// 1 + q^p, or +infinity when q exceeds q_max in infinite_weight mode.
/// Pinned vertices are handled by the caller.
double weight(std::uint64_t q, const OptimizerConfig& cfg,
              std::optional<std::uint64_t> q_max = std::nullopt);

struct Budget {
  std::optional<double> seconds;
  std::optional<std::uint64_t> iterations;
};

/// Elapsed time and iteration count against a Budget.
class RunClock {
 public:
  explicit RunClock(const Budget& budget = {})
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  bool expired() const {
    if (budget_.iterations && iterations_ >= *budget_.iterations) return true;
    return budget_.seconds && elapsed() >= *budget_.seconds;
  }
  void tick() { ++iterations_; }
  std::uint64_t iterations() const { return iterations_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t iterations_ = 0;
};

class InfeasibleTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace confopt
