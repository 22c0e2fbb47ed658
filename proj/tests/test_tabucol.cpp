#include "doctest.h"

#include <random>

#include "confopt/initializers.hpp"
#include "confopt/tabucol_variant.hpp"
#include "support/oracles.hpp"

using namespace confopt;

namespace {
OptimizerConfig lasa() {
  OptimizerConfig cfg = preset_config(Preset::lasa_cwls);
  cfg.restart_on_large_conflict_set = false;
  return cfg;
}
}  // namespace

TEST_CASE("one conflicting edge and a free class resolves in one step") {
  const Graph g = build_graph(3, {{0, 1}});
  std::mt19937_64 rng(1);
  // vertices 0, 1 share class 0; class 1 holds vertex 2 (not adjacent)
  TabucolVariant t(g, lasa(), {{0, 0, 1}, 2}, rng);
  CHECK(t.conflict_edge_count() == 1);
  CHECK(t.conflicting_vertex_count() == 2);
  CHECK(t.step());
  CHECK(t.conflict_edge_count() == 0);
  CHECK(validate_coloring(g, t.coloring()).valid);
}

TEST_CASE("K3 with two classes never reaches zero conflicts") {
  const Graph k3 = build_graph(3, oracle::complete_edges(3));
  std::mt19937_64 rng(2);
  TabucolVariant t(k3, lasa(), {{0, 1, 2}, 3}, rng);
  t.remove_color_class();
  CHECK(t.num_classes() == 2);
  CHECK(t.conflict_edge_count() >= 1);
  RunClock clock(Budget{5.0, 5000});
  CHECK(t.run(clock) == EliminationStatus::abort);
  CHECK(t.conflict_edge_count() >= 1);
  CHECK_THROWS_AS(t.coloring(), std::logic_error);
}

TEST_CASE("moves bump q of the new conflict partners") {
  // 0 conflicts with 1 in class 0; class 1 holds 2 (adjacent to 0)
  const Graph g = build_graph(4, {{0, 1}, {0, 2}, {1, 3}});
  std::mt19937_64 rng(3);
  OptimizerConfig cfg = lasa();
  cfg.selection = SelectionStrategy::fifo_queue;
  TabucolVariant t(g, cfg, {{0, 0, 1, 1}, 2}, rng);
  REQUIRE(t.conflict_edge_count() == 1);
  CHECK(t.step());
  // whichever endpoint moved now clashes with its neighbor in class 1
  const auto& q = t.q();
  CHECK(q[2] + q[3] == 1);
  CHECK(t.conflict_edge_count() == 1);
}

TEST_CASE("pinned vertices never move") {
  std::mt19937_64 gen(4);
  const Graph g = oracle::random_graph(25, 0.4, gen);
  const Coloring start = dsatur(g);
  std::vector<std::uint8_t> pinned(25, 0);
  pinned[0] = 1;
  std::mt19937_64 rng(5);
  TabucolVariant t(g, lasa(), start, rng, pinned);
  t.remove_color_class();
  const Color pinned_class = t.assignment()[0];
  t.set_step_hook([&](const TabucolVariant& s) { REQUIRE(s.assignment()[0] == pinned_class); });
  RunClock clock(Budget{5.0, 20000});
  t.run(clock);
}

TEST_CASE("reaches chi on G(20, 0.5) in most seeds") {
  int solved = 0;
  for (int seed = 0; seed < 10; ++seed) {
    std::mt19937_64 gen(static_cast<std::uint64_t>(100 + seed));
    const auto edges = oracle::random_edges(20, 0.5, gen);
    const Graph g = build_graph(20, edges);
    const int chi = oracle::chromatic_number(20, edges);
    Coloring c = dsatur(g);
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    RunClock clock(Budget{10.0, std::nullopt});
    bool ok = c.num_colors <= chi;
    while (!ok && !clock.expired()) {
      TabucolVariant t(g, lasa(), c, rng);
      t.remove_color_class();
      const auto status = t.run(clock);
      if (status != EliminationStatus::solved) break;
      c = t.coloring();
      ok = c.num_colors <= chi;
    }
    CHECK(validate_coloring(g, c).valid);
    solved += ok;
  }
  CHECK(solved >= 8);
}
