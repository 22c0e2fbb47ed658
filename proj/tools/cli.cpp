#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "confopt/clique.hpp"
#include "confopt/config.hpp"
#include "confopt/geometry.hpp"
#include "confopt/graph.hpp"
#include "confopt/initializers.hpp"
#include "confopt/io.hpp"
#include "confopt/optimize.hpp"
#include "confopt/trace.hpp"

namespace confopt::cli {

namespace {

struct Loaded {
  Graph graph;
  std::optional<Instance> instance;
  std::string id;
};

bool looks_like_json(const std::string& path, const std::string& text) {
  if (std::filesystem::path(path).extension() == ".json") return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

Loaded load_input(const std::string& path, const std::string& format, unsigned threads) {
  const std::string text = read_file(path);
  Loaded l;
  bool json = format == "cgshop";
  if (format == "auto") json = looks_like_json(path, text);
  else if (format != "cgshop" && format != "dimacs") {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
  if (json) {
    l.instance = parse_cgshop_instance(text);
    l.graph = build_conflict_graph(*l.instance, ConflictGraphMethod::grid, threads);
    l.id = l.instance->id;
  } else {
    l.graph = parse_dimacs(text);
  }
  if (l.id.empty()) l.id = std::filesystem::path(path).stem().string();
  return l;
}

std::vector<Vertex> load_clique_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_clique(in).vertices;
}

/// Trace rows are flushed at most once a second so long runs can be
/// followed live without paying for a flush per event.
class TraceSink {
 public:
  TraceSink(const std::string& path, bool with_time) : with_time_(with_time) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot write '" + path + "'");
    file_ << kTraceCsvHeader << '\n';
    last_flush_ = std::chrono::steady_clock::now();
  }
  void operator()(const TraceEvent& e) {
    if (!file_.is_open()) return;
    write_trace_row(file_, e, with_time_);
    file_ << '\n';
    const auto now = std::chrono::steady_clock::now();
    if (now - last_flush_ >= std::chrono::seconds(1)) {
      file_.flush();
      last_flush_ = now;
    }
  }
  void close() {
    if (file_.is_open()) file_.close();
  }

 private:
  bool with_time_;
  std::ofstream file_;
  std::chrono::steady_clock::time_point last_flush_;
};

struct SolveOptions {
  std::string input;
  std::string format = "auto";
  std::string preset = "shadoks";
  std::string init = "dsatur";
  std::optional<std::string> victim, selection, threshold, q_increment, q_max, neighborhood;
  std::optional<double> exponent, sigma, restart_fraction, shuffle_fraction;
  std::optional<bool> bdfs, phase_alternation, restart, multistart, pinning, easy;
  std::optional<int> a_max, bdfs_depth;
  std::optional<std::uint64_t> bdfs_node_limit, phase_length;
  std::optional<std::size_t> restart_min;
  bool allow_any_exponent = false;
  std::uint64_t seed = 1;
  std::optional<double> seconds;
  std::optional<std::uint64_t> iterations;
  int target = 0;
  std::string clique_file;
  std::string output;
  std::string trace;
  std::string trace_time = "wall";
  unsigned threads = 0;
};

OptimizerConfig make_config(const SolveOptions& o) {
  OptimizerConfig cfg = preset_config(parse_preset(o.preset));
  if (o.victim) cfg.victim = parse_victim(*o.victim);
  if (o.selection) cfg.selection = parse_selection(*o.selection);
  if (o.threshold) cfg.threshold_mode = parse_threshold_mode(*o.threshold);
  if (o.q_increment) cfg.q_increment = parse_q_increment(*o.q_increment);
  if (o.q_max) {
    if (*o.q_max == "auto") {
      cfg.q_max_mode = QMaxMode::automatic;
    } else if (*o.q_max == "unlimited") {
      cfg.q_max_mode = QMaxMode::unlimited;
    } else {
      std::size_t used = 0;
      cfg.q_max = std::stoull(*o.q_max, &used);
      if (used != o.q_max->size()) throw std::invalid_argument("bad --q-max '" + *o.q_max + "'");
      cfg.q_max_mode = QMaxMode::fixed;
    }
  }
  if (o.neighborhood) {
    if (*o.neighborhood == "partial") cfg.neighborhood = Neighborhood::partial;
    else if (*o.neighborhood == "full") cfg.neighborhood = Neighborhood::full_assignment;
    else throw std::invalid_argument("unknown neighborhood '" + *o.neighborhood + "'");
  }
  if (o.exponent) cfg.exponent = *o.exponent;
  if (o.sigma) cfg.sigma = *o.sigma;
  if (o.restart_fraction) cfg.restart_fraction = *o.restart_fraction;
  if (o.shuffle_fraction) cfg.shuffle_fraction = *o.shuffle_fraction;
  if (o.bdfs) cfg.bdfs = *o.bdfs;
  if (o.phase_alternation) cfg.phase_alternation = *o.phase_alternation;
  if (o.restart) cfg.restart_on_large_conflict_set = *o.restart;
  if (o.multistart) cfg.multistart = *o.multistart;
  if (o.pinning) cfg.clique_pinning = *o.pinning;
  if (o.easy) cfg.easy_vertices = *o.easy;
  if (o.a_max) cfg.a_max = *o.a_max;
  if (o.bdfs_depth) cfg.bdfs_depth = *o.bdfs_depth;
  if (o.bdfs_node_limit) cfg.bdfs_node_limit = *o.bdfs_node_limit;
  if (o.phase_length) cfg.phase_length = *o.phase_length;
  if (o.restart_min) cfg.restart_min_size = *o.restart_min;
  cfg.allow_any_exponent = o.allow_any_exponent;
  cfg.seed = o.seed;
  cfg.target_colors = o.target;
  if (!o.clique_file.empty()) {
    cfg.clique = load_clique_file(o.clique_file);
    if (!o.pinning) cfg.clique_pinning = true;
  }
  cfg.validate();
  return cfg;
}

void add_solve_options(CLI::App* app, SolveOptions& o) {
  app->add_option("--preset", o.preset, "lasa-cwls | lasa-pwls | gitastrophe | shadoks")
      ->capture_default_str();
  app->add_option("--init", o.init, "greedy | welsh-powell | dsatur | rlf | orientation")
      ->capture_default_str();
  app->add_option("--victim", o.victim, "smallest | random");
  app->add_option("--selection", o.selection, "fifo | random | least-conflict");
  app->add_option("--exponent,-p", o.exponent, "weight exponent p");
  app->add_flag("--allow-any-exponent", o.allow_any_exponent, "accept p outside [1, 2]");
  app->add_option("--q-max", o.q_max, "auto | unlimited | <integer>");
  app->add_option("--threshold", o.threshold, "infinite | abort");
  app->add_option("--q-increment", o.q_increment, "enter | leave");
  app->add_option("--sigma", o.sigma, "std deviation of the class multiplier");
  app->add_flag("--bdfs,!--no-bdfs", o.bdfs, "bounded depth-first recoloring");
  app->add_option("--a-max", o.a_max);
  app->add_option("--bdfs-depth", o.bdfs_depth);
  app->add_option("--bdfs-node-limit", o.bdfs_node_limit);
  app->add_flag("--phase-alternation,!--no-phase-alternation", o.phase_alternation);
  app->add_option("--phase-length", o.phase_length);
  app->add_flag("--restart,!--no-restart", o.restart, "restart on a large conflict set");
  app->add_option("--restart-min", o.restart_min);
  app->add_option("--restart-fraction", o.restart_fraction);
  app->add_option("--shuffle-fraction", o.shuffle_fraction);
  app->add_flag("--multistart,!--no-multistart", o.multistart);
  app->add_flag("--pinning,!--no-pinning", o.pinning, "pin a clique");
  app->add_flag("--easy,!--no-easy", o.easy, "set easy vertices aside");
  app->add_option("--neighborhood", o.neighborhood, "partial | full");
  app->add_option("--seed", o.seed)->capture_default_str();
  app->add_option("--time,-t", o.seconds, "time budget in seconds");
  app->add_option("--iterations", o.iterations, "iteration budget");
  app->add_option("--target", o.target, "stop at this many colors");
  app->add_option("--clique", o.clique_file, "clique file to pin (0-based ids)");
  app->add_option("--format", o.format, "auto | dimacs | cgshop")->capture_default_str();
  app->add_option("--threads", o.threads, "parallel workers (default from CONFOPT_THREADS)");
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const unsigned threads = o.threads ? o.threads : default_thread_count();
  Loaded in = load_input(o.input, o.format, threads);
  const OptimizerConfig cfg = make_config(o);
  if (o.trace_time != "wall" && o.trace_time != "none") {
    throw std::invalid_argument("--trace-time must be wall or none");
  }
  const InitialColoring init = parse_initial_coloring(o.init);
  const Coloring start =
      initial_coloring(init, in.graph, in.instance ? &*in.instance : nullptr);
  Budget budget{o.seconds, o.iterations};
  if (!budget.seconds && !budget.iterations) budget.seconds = 60.0;

  TraceSink sink(o.trace, o.trace_time == "wall");
  OptimizeResult r;
  if (threads > 1) {
    r = optimize_parallel(in.graph, start, cfg, budget, threads, std::ref(sink));
  } else {
    OptimizeHooks hooks;
    hooks.on_event = std::ref(sink);
    r = optimize(in.graph, start, cfg, budget, hooks);
  }
  sink.close();

  if (!validate_coloring(in.graph, r.best).valid) {
    throw std::logic_error("solver returned an invalid coloring");
  }
  if (!o.output.empty()) {
    if (in.instance) {
      write_file(o.output, write_solution(*in.instance, r.best, in.graph));
    } else {
      write_file(o.output, write_solution_record({in.id, r.best.num_colors, r.best.colors}));
    }
  }
  out << in.id << ": " << start.num_colors << " -> " << r.best.num_colors << " colors";
  if (!r.pinned_clique.vertices.empty()) {
    out << " (clique " << r.pinned_clique.size() << (r.proven_optimal ? ", optimal" : "") << ")";
  }
  out << ", " << r.iterations << " iterations, " << r.restarts << " restarts, " << std::fixed
      << std::setprecision(2) << r.seconds << " s\n";
  return kOk;
}

int cmd_verify(const std::string& input, const std::string& solution, const std::string& format,
               std::ostream& out) {
  Loaded in = load_input(input, format, default_thread_count());
  const std::string text = read_file(solution);
  SolutionRecord rec;
  try {
    rec = parse_solution(text);
  } catch (const ParseError& e) {
    out << "invalid: " << e.what() << "\n";
    return kInvalid;
  }
  if (rec.colors.size() != in.graph.vertex_count()) {
    out << "invalid: " << rec.colors.size() << " colors for " << in.graph.vertex_count()
        << " vertices\n";
    return kInvalid;
  }
  const auto report = validate_coloring(in.graph, Coloring{rec.colors, rec.num_colors});
  if (!report.valid) {
    const auto& [u, v] = report.conflict_edges.front();
    out << "invalid: " << report.conflict_edges.size() << " monochromatic pairs, e.g. " << u
        << " " << v << "\n";
    return kInvalid;
  }
  out << "valid: " << rec.num_colors << " colors\n";
  return kOk;
}

struct BenchRow {
  std::string instance;
  std::string preset;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Color initial = 0;
  Color colors = 0;
  std::size_t clique = 0;
  double seconds = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t restarts = 0;
  bool valid = false;
};

struct BenchEntry {
  std::string path;
  std::string clique_path;
};

std::vector<BenchEntry> read_manifest(const std::string& path) {
  std::istringstream in(read_file(path));
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return (fp.is_absolute() ? fp : base / fp).string();
  };
  std::vector<BenchEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    BenchEntry e;
    if (!(ls >> e.path)) continue;
    e.path = resolve(e.path);
    std::string clique;
    if (ls >> clique) e.clique_path = resolve(clique);
    std::string extra;
    if (ls >> extra) throw ParseError("manifest: too many fields", lineno);
    out.push_back(e);
  }
  return out;
}

int cmd_bench(const std::string& manifest, const std::vector<std::string>& presets,
              const SolveOptions& base, unsigned jobs, const std::string& output,
              std::ostream& out, std::ostream& err) {
  const auto entries = read_manifest(manifest);
  struct Task {
    std::size_t entry;
    std::string preset;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (const auto& p : presets) {
      parse_preset(p);
      tasks.push_back({i, p});
    }
  }
  std::vector<BenchRow> rows(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        const BenchEntry& e = entries[tasks[t].entry];
        SolveOptions o = base;
        o.preset = tasks[t].preset;
        o.clique_file = e.clique_path;
        Loaded in = load_input(e.path, "auto", 1);
        const OptimizerConfig cfg = make_config(o);
        const Coloring start = initial_coloring(parse_initial_coloring(o.init), in.graph,
                                                in.instance ? &*in.instance : nullptr);
        Budget budget{o.seconds, o.iterations};
        if (!budget.seconds && !budget.iterations) budget.seconds = 10.0;
        const OptimizeResult r = optimize(in.graph, start, cfg, budget);
        BenchRow& row = rows[t];
        row.instance = in.id;
        row.preset = o.preset;
        row.vertices = in.graph.vertex_count();
        row.edges = in.graph.edge_count();
        row.initial = start.num_colors;
        row.colors = r.best.num_colors;
        row.clique = cfg.clique.empty() ? r.pinned_clique.size() : cfg.clique.size();
        row.seconds = r.seconds;
        row.iterations = r.iterations;
        row.restarts = r.restarts;
        row.valid = validate_coloring(in.graph, r.best).valid;
      } catch (const std::exception& ex) {
        errors[t] = ex.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (!errors[t].empty()) throw std::runtime_error(entries[tasks[t].entry].path + ": " + errors[t]);
  }

  std::ostringstream table;
  table << "instance,preset,vertices,edges,initial_colors,colors,clique,seconds,iterations,restarts,valid\n";
  bool ok = true;
  for (const auto& r : rows) {
    table << r.instance << ',' << r.preset << ',' << r.vertices << ',' << r.edges << ','
          << r.initial << ',' << r.colors << ',' << r.clique << ',' << std::fixed
          << std::setprecision(3) << r.seconds << ',' << r.iterations << ',' << r.restarts << ','
          << (r.valid ? "yes" : "no") << '\n';
    if (!r.valid) {
      err << r.instance << " (" << r.preset << "): invalid coloring\n";
      ok = false;
    }
    if (static_cast<std::size_t>(r.colors) < r.clique) {
      err << r.instance << " (" << r.preset << "): " << r.colors << " colors below clique size "
          << r.clique << "\n";
      ok = false;
    }
  }
  if (output.empty()) out << table.str();
  else write_file(output, table.str());
  return ok ? kOk : kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conflict-optimization graph coloring"};
  app.name("confopt");
  app.require_subcommand(1);
  int code = kOk;

  std::string format = "auto";
  unsigned threads = 0;

  auto* convert = app.add_subcommand("convert", "CG:SHOP instance JSON to DIMACS");
  std::string convert_in, convert_out;
  convert->add_option("input", convert_in)->required();
  convert->add_option("-o,--output", convert_out, "DIMACS file (default stdout)");
  convert->add_option("--threads", threads);
  convert->callback([&] {
    const Instance inst = parse_cgshop_instance(read_file(convert_in));
    const Graph g = build_conflict_graph(inst, ConflictGraphMethod::grid,
                                         threads ? threads : default_thread_count());
    const std::string text = write_dimacs(g, "conflict graph of " + inst.id);
    if (convert_out.empty()) out << text;
    else write_file(convert_out, text);
  });

  auto* solve = app.add_subcommand("solve", "Run the conflict optimizer");
  SolveOptions so;
  solve->add_option("input", so.input)->required();
  add_solve_options(solve, so);
  solve->add_option("-o,--output", so.output, "solution JSON");
  solve->add_option("--trace", so.trace, "trace CSV");
  solve->add_option("--trace-time", so.trace_time, "wall | none (zero elapsed column)")
      ->capture_default_str();
  solve->callback([&] { code = cmd_solve(so, out); });

  auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
  std::string verify_in, verify_sol;
  verify->add_option("input", verify_in)->required();
  verify->add_option("solution", verify_sol)->required();
  verify->add_option("--format", format);
  verify->callback([&] { code = cmd_verify(verify_in, verify_sol, format, out); });

  auto* clique = app.add_subcommand("clique", "Search a large clique");
  std::string clique_in, clique_out;
  CliqueSearchOptions copts;
  clique->add_option("input", clique_in)->required();
  clique->add_option("-o,--output", clique_out, "clique file (default stdout)");
  clique->add_option("--seed", copts.seed);
  clique->add_option("--restarts", copts.restarts);
  clique->add_option("--moves", copts.moves_per_restart);
  clique->add_option("--time,-t", copts.time_limit_seconds);
  clique->add_option("--format", format);
  clique->callback([&] {
    Loaded in = load_input(clique_in, format, default_thread_count());
    const CliqueSet c = best_clique(in.graph, copts);
    if (!verify_clique(in.graph, c)) throw std::logic_error("clique search returned a non-clique");
    std::ostringstream text;
    write_clique(text, c);
    if (clique_out.empty()) {
      out << text.str();
    } else {
      write_file(clique_out, text.str());
      out << in.id << ": clique of size " << c.size() << "\n";
    }
  });

  auto* reduce = app.add_subcommand("reduce", "Count easy vertices for k colors");
  std::string reduce_in;
  int reduce_k = 0;
  reduce->add_option("input", reduce_in)->required();
  reduce->add_option("-k", reduce_k, "number of colors")->required()->check(CLI::PositiveNumber);
  reduce->add_option("--format", format);
  reduce->callback([&] {
    Loaded in = load_input(reduce_in, format, default_thread_count());
    const Reduction r = degeneracy_easy_vertices(in.graph, reduce_k);
    const std::size_t n = in.graph.vertex_count();
    const double pct = n ? 100.0 * static_cast<double>(r.easy.order.size()) / static_cast<double>(n) : 0.0;
    out << in.id << ": k=" << reduce_k << " easy " << r.easy.order.size() << " of " << n << " ("
        << std::fixed << std::setprecision(1) << pct << "%)\n";
  });

  auto* bench = app.add_subcommand("bench", "Run a manifest of instances under several presets");
  std::string manifest, bench_out;
  std::vector<std::string> presets{"lasa-cwls", "lasa-pwls", "gitastrophe", "shadoks"};
  unsigned jobs = 1;
  SolveOptions bo;
  bench->add_option("manifest", manifest, "lines of '<instance> [<clique file>]'")->required();
  bench->add_option("--presets", presets)->delimiter(',');
  bench->add_option("--init", bo.init);
  bench->add_option("--seed", bo.seed);
  bench->add_option("--time,-t", bo.seconds);
  bench->add_option("--iterations", bo.iterations);
  bench->add_option("--jobs,-j", jobs);
  bench->add_option("-o,--output", bench_out, "results CSV (default stdout)");
  bench->callback([&] { code = cmd_bench(manifest, presets, bo, jobs, bench_out, out, err); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}

}  // namespace confopt::cli
