#include "confopt/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace confopt {

using nlohmann::json;

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t to_uint(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(s) + "'", line);
  }
  return v;
}

std::vector<std::int64_t> int_array(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("field '") + key + "' is not an array");
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (const json& x : a) {
    if (x.is_number_integer()) {
      out.push_back(x.get<std::int64_t>());
    } else {
      throw ParseError(std::string("field '") + key + "' holds a non-integer value " + x.dump());
    }
  }
  return out;
}

}  // namespace

Graph parse_dimacs(std::string_view text) {
  std::size_t n = 0;
  bool have_p = false;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_p) throw ParseError("second p line", lineno);
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col")) {
        throw ParseError("expected 'p edge <n> <m>'", lineno);
      }
      n = to_uint(tok[2], lineno);
      if (n > 0xffffffffULL) throw ParseError("vertex count too large", lineno);
      const auto m = to_uint(tok[3], lineno);
      edges.reserve(std::min<std::uint64_t>(m, 1u << 24));
      have_p = true;
    } else if (tok[0] == "e") {
      if (!have_p) throw ParseError("edge before p line", lineno);
      if (tok.size() != 3) throw ParseError("expected 'e <u> <v>'", lineno);
      const auto u = to_uint(tok[1], lineno);
      const auto v = to_uint(tok[2], lineno);
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError("vertex index out of range", lineno);
      if (u == v) throw ParseError("self-loop", lineno);
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
    } else {
      throw ParseError("unknown line type '" + std::string(tok[0]) + "'", lineno);
    }
  }
  if (!have_p) throw ParseError("missing p line");
  return build_graph(n, edges);
}

std::string write_dimacs(const Graph& g, std::string_view comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.first + 1 << ' ' << e.second + 1 << '\n';
  return out.str();
}

Instance parse_cgshop_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("instance is not a JSON object");
  if (j.contains("type") && j.at("type") != "Instance_CGSHOP2022") {
    throw ParseError("unexpected instance type " + j.at("type").dump());
  }
  Instance inst;
  if (j.contains("id")) {
    const json& id = j.at("id");
    inst.id = id.is_string() ? id.get<std::string>() : id.dump();
  }
  const auto x = int_array(j, "x");
  const auto y = int_array(j, "y");
  const auto ei = int_array(j, "edge_i");
  const auto ej = int_array(j, "edge_j");
  if (x.size() != y.size()) throw ParseError("x and y differ in length");
  if (ei.size() != ej.size()) throw ParseError("edge_i and edge_j differ in length");
  if (j.contains("n") && j.at("n") != x.size()) throw ParseError("n does not match the point count");
  if (j.contains("m") && j.at("m") != ei.size()) throw ParseError("m does not match the segment count");
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  inst.points.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= kLimit || x[i] <= -kLimit || y[i] >= kLimit || y[i] <= -kLimit) {
      throw ParseError("coordinate of point " + std::to_string(i) + " out of range");
    }
    inst.points.push_back({x[i], y[i]});
  }
  inst.segments.reserve(ei.size());
  for (std::size_t t = 0; t < ei.size(); ++t) {
    if (ei[t] < 0 || ej[t] < 0 || static_cast<std::size_t>(ei[t]) >= x.size() ||
        static_cast<std::size_t>(ej[t]) >= x.size()) {
      throw ParseError("segment " + std::to_string(t) + " has a point index out of range");
    }
    const auto a = static_cast<std::uint32_t>(ei[t]);
    const auto b = static_cast<std::uint32_t>(ej[t]);
    if (inst.points[a] == inst.points[b]) {
      throw ParseError("segment " + std::to_string(t) + " is degenerate");
    }
    inst.segments.emplace_back(a, b);
  }
  return inst;
}

std::string write_solution(const Instance& inst, const Coloring& c) {
  return write_solution(inst, c, build_conflict_graph(inst));
}

std::string write_solution(const Instance& inst, const Coloring& c, const Graph& conflicts) {
  if (conflicts.vertex_count() != inst.segment_count()) {
    throw std::invalid_argument("conflict graph does not match the instance");
  }
  const auto report = validate_coloring(conflicts, c);
  if (!report.valid) {
    throw std::invalid_argument("refusing to write an invalid coloring (" +
                                std::to_string(report.conflict_edges.size()) + " conflicting pairs)");
  }
  Coloring compact = c;
  compact.compact();
  return write_solution_record({inst.id, compact.num_colors, compact.colors});
}

std::string write_solution_record(const SolutionRecord& r) {
  json j;
  j["type"] = "Solution_CGSHOP2022";
  j["instance"] = r.instance;
  j["num_colors"] = r.num_colors;
  j["colors"] = r.colors;
  return j.dump() + "\n";
}

SolutionRecord parse_solution(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("solution is not a JSON object");
  if (j.contains("type") && j.at("type") != "Solution_CGSHOP2022") {
    throw ParseError("unexpected solution type " + j.at("type").dump());
  }
  SolutionRecord r;
  if (j.contains("instance")) {
    const json& id = j.at("instance");
    r.instance = id.is_string() ? id.get<std::string>() : id.dump();
  }
  Color max_color = -1;
  for (std::int64_t v : int_array(j, "colors")) {
    if (v < 0 || v > std::numeric_limits<Color>::max()) {
      throw ParseError("color " + std::to_string(v) + " out of range");
    }
    r.colors.push_back(static_cast<Color>(v));
    max_color = std::max(max_color, static_cast<Color>(v));
  }
  if (!j.contains("num_colors") || !j.at("num_colors").is_number_integer()) {
    throw ParseError("missing integer field 'num_colors'");
  }
  const auto k = j.at("num_colors").get<std::int64_t>();
  if (k != max_color + 1) throw ParseError("num_colors does not equal the largest color + 1");
  r.num_colors = static_cast<Color>(k);
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace confopt
