// Pass/fail report for the criteria that need no external data. Exit code is
// nonzero when any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "confopt/geometry.hpp"
#include "confopt/initializers.hpp"
#include "confopt/optimize.hpp"
#include "support/degenerate_cases.hpp"
#include "support/invariants.hpp"
#include "support/oracles.hpp"

using namespace confopt;

namespace {

constexpr double kGeometrySeconds = 10.0;
constexpr double kRelTol = 1e-12;
constexpr int kOptimalNeeded = 48;
constexpr double kSmallBudgetSeconds = 10.0;
constexpr std::uint64_t kPropertyIterations = 1000000;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<Edge> edge_set(const Graph& g) {
  std::set<Edge> out;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v) out.emplace(u, v);
    }
  }
  return out;
}

bool rel_close(double a, double b) { return std::fabs(a - b) <= kRelTol * std::fabs(b); }

void geometry_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20220101);
  std::uniform_int_distribution<std::int64_t> coord(-1000000, 1000000);
  std::size_t agree = 0, total = 0;
  for (int i = 0; i < 100000; ++i) {
    Segment s1{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    Segment s2{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    // a quarter of the pairs share an endpoint or lie on a common line
    switch (i % 8) {
      case 0: s2.a = s1.a; break;
      case 1: s2.b = s1.b; break;
      case 2: {
        const std::int64_t dx = s1.b.x - s1.a.x, dy = s1.b.y - s1.a.y;
        const std::int64_t t = (coord(rng) % 3);
        s2.a = {s1.a.x + t * dx / 2, s1.a.y + t * dy / 2};
        s2.b = {s1.a.x + (t + 2) * dx / 2, s1.a.y + (t + 2) * dy / 2};
        break;
      }
      default: break;
    }
    if (s1.a == s1.b || s2.a == s2.b) continue;
    ++total;
    agree += segments_cross(s1, s2) == oracle::segments_cross(s1, s2);
  }
  std::size_t cases_ok = 0;
  const auto cases = degenerate::cases();
  for (const auto& c : cases) {
    const bool a = segments_cross(c.s1, c.s2);
    const bool b = segments_cross(c.s2, c.s1);
    cases_ok += a == c.expected && b == c.expected && oracle::segments_cross(c.s1, c.s2) == c.expected;
  }
  const double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf, "random %zu/%zu, degenerate %zu/%zu, %.2f s (limit %.0f s)", agree,
                total, cases_ok, cases.size(), secs, kGeometrySeconds);
  report(1, agree == total && total >= 99000 && cases_ok == cases.size() && cases.size() == 30 &&
                secs < kGeometrySeconds,
         buf);
}

void conflict_graph_equivalence() {
  std::mt19937_64 rng(7);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t segs = 1 + rng() % 500;
    const std::int64_t box = i % 4 == 0 ? 30 : (i % 4 == 1 ? 1000 : 1000000);
    const std::size_t points = i % 3 == 0 ? segs / 2 + 2 : 0;
    const Instance inst = oracle::random_instance(segs, box, rng, points);
    const auto expected = oracle::naive_conflicts(inst);
    const std::set<Edge> want(expected.begin(), expected.end());
    const Graph grid = build_conflict_graph(inst, ConflictGraphMethod::grid, 1 + i % 3);
    equal += edge_set(grid) == want && grid.vertex_count() == segs;
  }
  report(2, equal == 100, std::to_string(equal) + "/100 instances equal");
}

void small_instance_optimality() {
  std::mt19937_64 rng(16);
  int reached = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 8 + rng() % 9;
    const double p = 0.2 + 0.6 * std::uniform_real_distribution<double>()(rng);
    const auto edges = oracle::random_edges(n, p, rng);
    const Graph g = build_graph(n, edges);
    const Color chi = exact_chromatic_number(g);
    if (chi != oracle::chromatic_number(n, edges)) {
      report(3, false, "exact_chromatic_number disagrees with the backtracking oracle");
      return;
    }
    OptimizerConfig cfg = preset_config(Preset::shadoks);
    cfg.seed = static_cast<std::uint64_t>(i);
    cfg.target_colors = chi;
    const auto r = optimize(g, greedy_sequential(g, welsh_powell_order(g)), cfg,
                            Budget{kSmallBudgetSeconds, std::nullopt});
    worst = std::max(worst, r.seconds);
    reached += r.best.num_colors == chi && validate_coloring(g, r.best).valid;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/50 reached chi (need %d), slowest %.2f s", reached,
                kOptimalNeeded, worst);
  report(3, reached >= kOptimalNeeded, buf);
}

void weight_formulas() {
  int bad = 0, checked = 0;
  auto expect = [&](bool ok) {
    ++checked;
    bad += !ok;
  };
  expect(default_q_max(75000) == 2000);
  expect(default_q_max(150000) == 500);
  expect(default_q_max(13806) == static_cast<std::uint64_t>(std::llround(2000.0 * std::pow(75000.0 / 13806.0, 2))));
  OptimizerConfig cfg;
  cfg.exponent = 1.2;
  expect(rel_close(weight(2, cfg), 3.2973967099940698));
  expect(std::fabs(weight(2, cfg) - 3.2974) < 5e-5);
  std::mt19937_64 rng(4);
  for (double p : {1.0, 1.2, 1.5, 2.0}) {
    cfg.exponent = p;
    for (std::uint64_t q : {0ULL, 1ULL, 2ULL, 3ULL, 10ULL, 77ULL, 2000ULL, 123456ULL}) {
      expect(rel_close(weight(q, cfg), 1.0 + std::pow(static_cast<double>(q), p)));
    }
  }

  // score_class with sigma 0 against the direct neighbor sum
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = oracle::random_graph(40, 0.3, rng);
    const Coloring c = dsatur(g);
    std::vector<std::uint64_t> q(g.vertex_count());
    for (auto& x : q) x = rng() % 50;
    OptimizerConfig sc;
    sc.exponent = rep % 2 ? 1.2 : 2.0;
    sc.sigma = 0.0;
    sc.q_max_mode = QMaxMode::unlimited;
    std::mt19937_64 erng(1);
    ConflictOptimizer opt(g, sc, c, erng, {}, q);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      for (Color j = 0; j < c.num_colors; ++j) {
        double direct = 0.0;
        for (Vertex u : g.neighbors(v)) {
          if (c.colors[u] == j) direct += 1.0 + std::pow(static_cast<double>(q[u]), sc.exponent);
        }
        const double got = opt.score_class(v, j);
        expect(direct == 0.0 ? got == 0.0 : rel_close(got, direct));
      }
    }
  }
  report(4, bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                          " tabulated values within 1e-12");
}

void property_suite() {
  std::mt19937_64 gen(8);
  std::uint64_t iterations = 0, trace_bad = 0, determinism_bad = 0, runs = 0;
  std::uint64_t violations = 0;
  const Preset presets[] = {Preset::shadoks, Preset::gitastrophe, Preset::lasa_pwls};
  while (iterations < kPropertyIterations) {
    const std::size_t n = 40 + gen() % 160;
    const Graph g = oracle::random_graph(n, 0.05 + 0.5 * std::uniform_real_distribution<double>()(gen), gen);
    OptimizerConfig cfg = preset_config(presets[runs % 3]);
    cfg.seed = gen();
    cfg.clique_pinning = runs % 2 == 0;
    cfg.easy_vertices = runs % 4 < 2;
    cfg.restart_min_size = 5 + gen() % 30;
    if (runs % 5 == 0) {
      cfg.q_max_mode = QMaxMode::fixed;
      cfg.q_max = 2 + gen() % 20;
    }
    invariants::PartialWatcher w;
    std::vector<std::uint8_t> pinned_seen;
    std::uint64_t pinned_moves = 0;
    OptimizeHooks hooks;
    hooks.on_partial_step = [&](const ConflictOptimizer& o) {
      w.check(o, false);
      for (Vertex v = 0; v < o.state().vertex_count(); ++v) {
        if (o.state().pinned[v] && (o.state().in_conflict_set[v] || o.state().class_of[v] == kUncolored)) {
          ++pinned_moves;
        }
      }
    };
    const Budget budget{std::nullopt, 10000};
    const Coloring start = dsatur(g);
    const auto a = optimize(g, start, cfg, budget, hooks);
    const auto b = optimize(g, start, cfg, budget);
    iterations += a.iterations + b.iterations;
    violations += w.violations + pinned_moves;
    violations += !validate_coloring(g, a.best).valid;
    Color last = start.num_colors;
    for (const auto& e : a.trace.events) {
      trace_bad += e.colors > last;
      last = e.colors;
    }
    bool same = a.best == b.best && a.iterations == b.iterations &&
                a.trace.events.size() == b.trace.events.size();
    for (std::size_t i = 0; same && i < a.trace.events.size(); ++i) {
      same = a.trace.events[i].iteration == b.trace.events[i].iteration &&
             a.trace.events[i].colors == b.trace.events[i].colors &&
             a.trace.events[i].kind == b.trace.events[i].kind;
    }
    determinism_bad += !same;
    ++runs;
  }
  // the q bookkeeping rule needs the engine directly; run it on a slice
  std::uint64_t q_iterations = 0;
  while (q_iterations < kPropertyIterations / 10) {
    const Graph g = oracle::random_graph(60 + gen() % 100, 0.3, gen);
    OptimizerConfig cfg = preset_config(Preset::shadoks);
    std::mt19937_64 rng(gen());
    Coloring best = dsatur(g);
    RunClock clock(Budget{std::nullopt, 20000});
    invariants::PartialWatcher w;
    while (!clock.expired() && best.num_colors > 1) {
      ConflictOptimizer opt(g, cfg, best, rng);
      opt.remove_color_class();
      w.arm(opt);
      opt.set_step_hook([&](const ConflictOptimizer& o) { w.check(o, true); });
      const auto status = opt.run_elimination(clock);
      if (status != EliminationStatus::solved) break;
      best = opt.coloring();
    }
    q_iterations += clock.iterations();
    violations += w.violations;
  }
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "%llu optimizer iterations over %llu runs (+%llu engine), violations %llu, "
                "trace %llu, determinism %llu",
                static_cast<unsigned long long>(iterations), static_cast<unsigned long long>(runs),
                static_cast<unsigned long long>(q_iterations),
                static_cast<unsigned long long>(violations),
                static_cast<unsigned long long>(trace_bad),
                static_cast<unsigned long long>(determinism_bad));
  report(8, violations == 0 && trace_bad == 0 && determinism_bad == 0, buf);
}

void degeneracy_soundness() {
  std::mt19937_64 gen(9);
  std::uint64_t tested = 0, bad = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t n = 5 + gen() % 200;
    const double p = 0.01 + 0.2 * std::uniform_real_distribution<double>()(gen);
    const Graph g = oracle::random_graph(n, p, gen);
    const Color k = static_cast<Color>(2 + gen() % 8);
    const Reduction red = degeneracy_easy_vertices(g, k);
    const Coloring core = red.reduced.vertex_count() == 0 ? Coloring{} : dsatur(red.reduced);
    if (core.num_colors > k) continue;  // the reduced graph has no k-coloring from DSATUR
    ++tested;
    const Coloring full = extend_coloring_to_easy(g, core, red);
    bad += !validate_coloring(g, full).valid || full.num_colors > k;
  }
  report(9, bad == 0 && tested >= 500,
         std::to_string(tested) + " (graph, k) pairs extended, " + std::to_string(bad) + " violations");
}

}  // namespace

int main() {
  geometry_exactness();
  conflict_graph_equivalence();
  small_instance_optimality();
  weight_formulas();
  std::printf("criterion 5: see acceptance_data\ncriterion 6: see acceptance_data\ncriterion 7: see acceptance_data\n");
  property_suite();
  degeneracy_soundness();
  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
