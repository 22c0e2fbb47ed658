#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "confopt/graph.hpp"

namespace confopt {

enum class TraceEventKind { improved, restart, multistart, abort };

std::string_view to_string(TraceEventKind kind);

struct TraceEvent {
  double elapsed_seconds = 0.0;
  std::uint64_t iteration = 0;
  Color colors = 0;  // best color count at the time of the event
  TraceEventKind kind = TraceEventKind::improved;
};

using TraceObserver = std::function<void(const TraceEvent&)>;

struct Trace {
  std::vector<TraceEvent> events;

  std::size_t count(TraceEventKind kind) const;
};

inline constexpr std::string_view kTraceCsvHeader = "elapsed_seconds,iteration,colors,event";

/// One CSV row without newline. With `with_time` false the elapsed column is 0.
void write_trace_row(std::ostream& out, const TraceEvent& e, bool with_time = true);
void write_trace_csv(std::ostream& out, const Trace& trace, bool with_time = true);

}  // namespace confopt
