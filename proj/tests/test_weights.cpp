#include "doctest.h"

#include <cmath>
#include <limits>

#include "confopt/config.hpp"
#include "confopt/trace.hpp"

#include <sstream>

using namespace confopt;

namespace {
bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::fabs(b); }
}  // namespace

TEST_CASE("default q_max") {
  CHECK(default_q_max(75000) == 2000);
  CHECK(default_q_max(37500) == 8000);
  CHECK(default_q_max(150000) == 500);
  CHECK(default_q_max(1) == 11250000000000ULL);
  CHECK_THROWS_AS(default_q_max(0), std::invalid_argument);
}

TEST_CASE("weight values") {
  OptimizerConfig cfg;
  cfg.exponent = 1.2;
  CHECK(weight(0, cfg) == 1.0);
  CHECK(weight(1, cfg) == 2.0);
  CHECK(close(weight(2, cfg), 3.2973967099940698));
  cfg.exponent = 2.0;
  CHECK(weight(1, cfg) == 2.0);
  CHECK(weight(3, cfg) == 10.0);
}

TEST_CASE("weight threshold modes") {
  OptimizerConfig cfg;
  cfg.threshold_mode = ThresholdMode::infinite_weight;
  CHECK(std::isinf(weight(11, cfg, 10)));
  CHECK_FALSE(std::isinf(weight(10, cfg, 10)));
  CHECK_FALSE(std::isinf(weight(1000000, cfg)));
  cfg.threshold_mode = ThresholdMode::abort_restart;
  CHECK_FALSE(std::isinf(weight(11, cfg, 10)));
}

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.exponent = 2.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.allow_any_exponent = true;
  CHECK_NOTHROW(cfg.validate());
  cfg = {};
  cfg.exponent = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.sigma = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.phase_alternation = true;
  cfg.phase_length = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("restart limit and resolved q_max") {
  OptimizerConfig cfg;
  CHECK(cfg.restart_limit(100) == 50);
  CHECK(cfg.restart_limit(10000) == 500);
  cfg.restart_on_large_conflict_set = false;
  CHECK(cfg.restart_limit(10) == std::numeric_limits<std::size_t>::max());
  cfg.q_max_mode = QMaxMode::automatic;
  CHECK(cfg.resolved_q_max(75000) == std::optional<std::uint64_t>{2000});
  cfg.q_max_mode = QMaxMode::unlimited;
  CHECK_FALSE(cfg.resolved_q_max(75000).has_value());
  cfg.q_max_mode = QMaxMode::fixed;
  cfg.q_max = 7;
  CHECK(cfg.resolved_q_max(75000) == std::optional<std::uint64_t>{7});
}

TEST_CASE("presets") {
  const OptimizerConfig s = preset_config(Preset::shadoks);
  CHECK(s.exponent == 1.2);
  CHECK(s.sigma == 0.15);
  CHECK(s.a_max == 3);
  CHECK(s.bdfs_depth == 3);
  CHECK(s.selection == SelectionStrategy::fifo_queue);
  CHECK(s.victim == VictimStrategy::smallest_class);
  CHECK(s.q_max_mode == QMaxMode::automatic);
  CHECK(s.clique_pinning);
  CHECK(s.easy_vertices);

  const OptimizerConfig g = preset_config(Preset::gitastrophe);
  CHECK(g.threshold_mode == ThresholdMode::abort_restart);
  CHECK(g.victim == VictimStrategy::random);
  CHECK(g.phase_alternation);
  CHECK(g.phase_length == 100000);

  CHECK(preset_config(Preset::lasa_pwls).selection == SelectionStrategy::least_conflict_after_removal);
  CHECK(preset_config(Preset::lasa_cwls).neighborhood == Neighborhood::full_assignment);

  for (auto p : {Preset::lasa_cwls, Preset::lasa_pwls, Preset::gitastrophe, Preset::shadoks}) {
    CHECK(parse_preset(to_string(p)) == p);
    CHECK_NOTHROW(preset_config(p).validate());
  }
  CHECK_THROWS_AS(parse_preset("head"), std::invalid_argument);
}

TEST_CASE("option parsers") {
  CHECK(parse_victim("random") == VictimStrategy::random);
  CHECK(parse_selection("least-conflict") == SelectionStrategy::least_conflict_after_removal);
  CHECK(parse_threshold_mode("abort") == ThresholdMode::abort_restart);
  CHECK(parse_q_increment("leave") == QIncrement::on_leave);
  CHECK_THROWS_AS(parse_selection("lifo"), std::invalid_argument);
}

TEST_CASE("run clock") {
  RunClock unlimited;
  CHECK_FALSE(unlimited.expired());
  RunClock clock(Budget{std::nullopt, 3});
  clock.tick();
  clock.tick();
  CHECK_FALSE(clock.expired());
  clock.tick();
  CHECK(clock.expired());
  RunClock zero(Budget{0.0, std::nullopt});
  CHECK(zero.expired());
}

TEST_CASE("trace csv") {
  Trace t;
  t.events.push_back({1.23456, 10, 5, TraceEventKind::improved});
  t.events.push_back({2.0, 20, 5, TraceEventKind::abort});
  std::ostringstream out;
  write_trace_csv(out, t);
  CHECK(out.str() == "elapsed_seconds,iteration,colors,event\n1.235,10,5,improved\n2.000,20,5,abort\n");
  std::ostringstream timeless;
  write_trace_csv(timeless, t, false);
  CHECK(timeless.str() == "elapsed_seconds,iteration,colors,event\n0,10,5,improved\n0,20,5,abort\n");
  CHECK(t.count(TraceEventKind::abort) == 1);
  CHECK(to_string(TraceEventKind::multistart) == "multistart");
}
