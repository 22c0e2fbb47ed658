#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "confopt/geometry.hpp"
#include "support/degenerate_cases.hpp"
#include "support/oracles.hpp"

using namespace confopt;

TEST_CASE("orientation signs") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
}

TEST_CASE("orientation does not overflow on large coordinates") {
  const std::int64_t big = std::int64_t{1} << 40;
  CHECK(orientation({-big, -big}, {big, big + 1}, {big, big}) == -1);
  CHECK(orientation({-big, -big}, {big, big}, {3 * big, 3 * big}) == 0);
  const std::int64_t huge = std::int64_t{1} << 61;
  CHECK(orientation({-huge, 0}, {huge, 1}, {huge, 0}) == -1);
}

TEST_CASE("segments_cross named cases") {
  CHECK(segments_cross({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
  CHECK_FALSE(segments_cross({{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}));
  CHECK(segments_cross({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
  CHECK(segments_cross({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}));
  CHECK(oracle::segments_cross({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}));
}

TEST_CASE("degenerate suite agrees with the oracle and the expectations") {
  for (const auto& c : degenerate::cases()) {
    INFO(c.name);
    CHECK(oracle::segments_cross(c.s1, c.s2) == c.expected);
    CHECK(segments_cross(c.s1, c.s2) == c.expected);
    CHECK(segments_cross(c.s2, c.s1) == c.expected);
  }
}

TEST_CASE("segments_cross agrees with the oracle on random pairs") {
  std::mt19937_64 rng(17);
  for (std::int64_t box : {3, 20, 1000000}) {
    std::uniform_int_distribution<std::int64_t> coord(-box, box);
    for (int i = 0; i < 20000; ++i) {
      Segment a{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
      Segment b{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
      if (a.a == a.b || b.a == b.b) continue;
      const bool expected = oracle::segments_cross(a, b);
      REQUIRE(segments_cross(a, b) == expected);
      REQUIRE(segments_cross(b, a) == expected);
    }
  }
}

TEST_CASE("segment_angle") {
  const double pi = std::numbers::pi;
  CHECK(segment_angle({{0, 0}, {1, 0}}) == doctest::Approx(0.0));
  CHECK(segment_angle({{0, 0}, {0, 1}}) == doctest::Approx(-pi / 2));
  CHECK(segment_angle({{0, 1}, {0, 0}}) == doctest::Approx(-pi / 2));
  CHECK(segment_angle({{0, 0}, {1, 1}}) == doctest::Approx(pi / 4));
  CHECK(segment_angle({{1, 1}, {0, 0}}) == doctest::Approx(pi / 4));
  CHECK(segment_angle({{0, 0}, {-1, 1}}) == doctest::Approx(-pi / 4));
}

TEST_CASE("instance check") {
  Instance inst;
  inst.points = {{0, 0}, {1, 0}, {0, 0}};
  inst.segments = {{0, 1}};
  CHECK_NOTHROW(inst.check());
  inst.segments = {{0, 2}};
  CHECK_THROWS_AS(inst.check(), std::invalid_argument);
  inst.segments = {{0, 3}};
  CHECK_THROWS_AS(inst.check(), std::invalid_argument);
  CHECK_THROWS_AS(build_conflict_graph(inst), std::invalid_argument);
}

TEST_CASE("conflict graph of tiny instances") {
  Instance two;
  two.points = {{0, 0}, {1, 0}, {0, 5}, {1, 5}};
  two.segments = {{0, 1}, {2, 3}};
  const Graph g = build_conflict_graph(two);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 0);

  Instance x;
  x.points = {{0, 0}, {2, 2}, {0, 2}, {2, 0}};
  x.segments = {{0, 1}, {2, 3}, {0, 2}};
  const Graph gx = build_conflict_graph(x);
  CHECK(gx.edge_count() == 1);
  CHECK(gx.has_edge(0, 1));
}

TEST_CASE("grid construction equals the naive scan") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t m = 1 + rng() % 200;
    const std::int64_t box = rep % 3 == 0 ? 10 : (rep % 3 == 1 ? 100 : 1000000);
    const Instance inst = oracle::random_instance(m, box, rng, 1 + m / 2 + rng() % m);
    const Graph expected = build_graph(m, oracle::naive_conflicts(inst));
    CHECK(build_conflict_graph(inst, ConflictGraphMethod::grid) == expected);
    CHECK(build_conflict_graph(inst, ConflictGraphMethod::naive) == expected);
    CHECK(build_conflict_graph(inst, ConflictGraphMethod::grid, 3) == expected);
  }
}

TEST_CASE("50 segments in a 100 box match the naive scan") {
  std::mt19937_64 rng(29);
  Instance inst;
  std::uniform_int_distribution<std::int64_t> c(0, 100);
  while (inst.segments.size() < 50) {
    const Point a{c(rng), c(rng)}, b{c(rng), c(rng)};
    if (a == b) continue;
    inst.points.push_back(a);
    inst.points.push_back(b);
    inst.segments.emplace_back(inst.points.size() - 2, inst.points.size() - 1);
  }
  CHECK(build_conflict_graph(inst) == build_graph(50, oracle::naive_conflicts(inst)));
}

TEST_CASE("axis-parallel and skinny inputs") {
  // all segments on one horizontal line: the grid degenerates to one row
  Instance line;
  for (std::int64_t i = 0; i < 30; ++i) line.points.push_back({i * 3, 0});
  for (std::uint32_t i = 0; i + 2 < 30; ++i) line.segments.emplace_back(i, i + 2);
  CHECK(build_conflict_graph(line) == build_graph(line.segment_count(), oracle::naive_conflicts(line)));

  // one very long segment crossing many short ones
  Instance comb;
  comb.points = {{-1000000, 0}, {1000000, 0}};
  comb.segments = {{0, 1}};
  for (std::int64_t i = 0; i < 40; ++i) {
    comb.points.push_back({i * 7 - 140, -1});
    comb.points.push_back({i * 7 - 140, 1});
    comb.segments.emplace_back(comb.points.size() - 2, comb.points.size() - 1);
  }
  const Graph g = build_conflict_graph(comb);
  CHECK(g.degree(0) == 40);
  CHECK(g == build_graph(comb.segment_count(), oracle::naive_conflicts(comb)));
}

TEST_CASE("conflict graph invariant under point relabeling") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const Instance inst = oracle::random_instance(80, 50, rng, 60);
    std::vector<std::uint32_t> perm(inst.points.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    Instance relabeled;
    relabeled.points.resize(inst.points.size());
    for (std::size_t i = 0; i < perm.size(); ++i) relabeled.points[perm[i]] = inst.points[i];
    for (auto [a, b] : inst.segments) relabeled.segments.emplace_back(perm[a], perm[b]);
    CHECK(build_conflict_graph(relabeled) == build_conflict_graph(inst));
  }
}

TEST_CASE("default thread count reads the environment") {
  CHECK(default_thread_count() >= 1);
}
