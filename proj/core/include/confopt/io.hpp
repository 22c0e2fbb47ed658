#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "confopt/geometry.hpp"
#include "confopt/graph.hpp"

namespace confopt {

/// Malformed input. `line` is 1-based, 0 when the error has no line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct SolutionRecord {
  std::string instance;
  Color num_colors = 0;
  std::vector<Color> colors;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

/// DIMACS edge format: `c` comments, one `p edge n m` line (`p col` is also
/// accepted), `e u v` with 1-based ids. Duplicate edges collapse.
Graph parse_dimacs(std::string_view text);
std::string write_dimacs(const Graph& g, std::string_view comment = {});

/// CG:SHOP 2022 instance JSON (`x`, `y`, `edge_i`, `edge_j`). Unknown fields
/// are ignored; `n` and `m` are checked when present.
Instance parse_cgshop_instance(std::string_view text);

/// Refuses a coloring that is invalid for the instance. Pass the conflict
/// graph to skip rebuilding it.
std::string write_solution(const Instance& inst, const Coloring& c);
std::string write_solution(const Instance& inst, const Coloring& c, const Graph& conflicts);

/// Serializes without validation; the same layout as write_solution.
std::string write_solution_record(const SolutionRecord& r);

/// Checks that num_colors equals max color + 1 and colors are non-negative.
SolutionRecord parse_solution(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace confopt
