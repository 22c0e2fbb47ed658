#include "confopt/config.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace confopt {

void OptimizerConfig::validate() const {
  if (!(exponent >= 0.0) || (!allow_any_exponent && (exponent < 1.0 || exponent > 2.0))) {
    throw std::invalid_argument("weight exponent " + std::to_string(exponent) +
                                " outside [1, 2]");
  }
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  if (phase_alternation && phase_length == 0) {
    throw std::invalid_argument("phase length must be > 0");
  }
  if (a_max < 0 || bdfs_depth < 0) throw std::invalid_argument("BDFS parameters must be >= 0");
  if (!(shuffle_fraction >= 0.0 && shuffle_fraction <= 1.0)) {
    throw std::invalid_argument("shuffle fraction must lie in [0, 1]");
  }
  if (!(restart_fraction >= 0.0)) throw std::invalid_argument("restart fraction must be >= 0");
  if (target_colors < 0) throw std::invalid_argument("target colors must be >= 0");
}

std::optional<std::uint64_t> OptimizerConfig::resolved_q_max(std::size_t vertex_count) const {
  switch (q_max_mode) {
    case QMaxMode::unlimited: return std::nullopt;
    case QMaxMode::fixed: return q_max;
    case QMaxMode::automatic: return default_q_max(std::max<std::size_t>(vertex_count, 1));
  }
  return std::nullopt;
}

std::size_t OptimizerConfig::restart_limit(std::size_t vertex_count) const {
  if (!restart_on_large_conflict_set) return std::numeric_limits<std::size_t>::max();
  const auto scaled = static_cast<std::size_t>(restart_fraction * static_cast<double>(vertex_count));
  return std::max(restart_min_size, scaled);
}

OptimizerConfig preset_config(Preset p) {
  OptimizerConfig cfg;
  switch (p) {
    case Preset::shadoks:
      cfg.victim = VictimStrategy::smallest_class;
      cfg.selection = SelectionStrategy::fifo_queue;
      cfg.exponent = 1.2;
      cfg.q_max_mode = QMaxMode::automatic;
      cfg.threshold_mode = ThresholdMode::infinite_weight;
      cfg.sigma = 0.15;
      cfg.easy_vertices = true;
      cfg.clique_pinning = true;
      break;
    case Preset::gitastrophe:
      cfg.victim = VictimStrategy::random;
      cfg.selection = SelectionStrategy::random;
      cfg.exponent = 2.0;
      cfg.q_max_mode = QMaxMode::automatic;
      cfg.threshold_mode = ThresholdMode::abort_restart;
      cfg.sigma = 0.0;
      cfg.phase_alternation = true;
      cfg.phase_length = 100000;
      break;
    case Preset::lasa_pwls:
      cfg.victim = VictimStrategy::smallest_class;
      cfg.selection = SelectionStrategy::least_conflict_after_removal;
      cfg.exponent = 1.0;
      cfg.q_max_mode = QMaxMode::unlimited;
      cfg.sigma = 0.0;
      break;
    case Preset::lasa_cwls:
      cfg.victim = VictimStrategy::smallest_class;
      cfg.selection = SelectionStrategy::random;
      cfg.exponent = 1.0;
      cfg.q_max_mode = QMaxMode::unlimited;
      cfg.sigma = 0.0;
      cfg.neighborhood = Neighborhood::full_assignment;
      break;
  }
  return cfg;
}

Preset parse_preset(std::string_view name) {
  if (name == "shadoks") return Preset::shadoks;
  if (name == "gitastrophe") return Preset::gitastrophe;
  if (name == "lasa-pwls") return Preset::lasa_pwls;
  if (name == "lasa-cwls") return Preset::lasa_cwls;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::shadoks: return "shadoks";
    case Preset::gitastrophe: return "gitastrophe";
    case Preset::lasa_pwls: return "lasa-pwls";
    case Preset::lasa_cwls: return "lasa-cwls";
  }
  return "?";
}

VictimStrategy parse_victim(std::string_view name) {
  if (name == "smallest") return VictimStrategy::smallest_class;
  if (name == "random") return VictimStrategy::random;
  throw std::invalid_argument("unknown victim strategy '" + std::string(name) + "'");
}

SelectionStrategy parse_selection(std::string_view name) {
  if (name == "fifo") return SelectionStrategy::fifo_queue;
  if (name == "random") return SelectionStrategy::random;
  if (name == "least-conflict") return SelectionStrategy::least_conflict_after_removal;
  throw std::invalid_argument("unknown selection strategy '" + std::string(name) + "'");
}

ThresholdMode parse_threshold_mode(std::string_view name) {
  if (name == "infinite") return ThresholdMode::infinite_weight;
  if (name == "abort") return ThresholdMode::abort_restart;
  throw std::invalid_argument("unknown threshold mode '" + std::string(name) + "'");
}

QIncrement parse_q_increment(std::string_view name) {
  if (name == "enter") return QIncrement::on_enter;
  if (name == "leave") return QIncrement::on_leave;
  throw std::invalid_argument("unknown q increment policy '" + std::string(name) + "'");
}

std::uint64_t default_q_max(std::size_t vertex_count) {
  if (vertex_count == 0) throw std::invalid_argument("default_q_max needs vertex_count > 0");
  const double ratio = 75000.0 / static_cast<double>(vertex_count);
  return static_cast<std::uint64_t>(std::llround(2000.0 * ratio * ratio));
}

double weight(std::uint64_t q, const OptimizerConfig& cfg, std::optional<std::uint64_t> q_max) {
  if (q_max && cfg.threshold_mode == ThresholdMode::infinite_weight && q > *q_max) {
    return std::numeric_limits<double>::infinity();
  }
  if (q == 0) return 1.0;
  return 1.0 + std::pow(static_cast<double>(q), cfg.exponent);
}

}  // namespace confopt
