#include "confopt/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace confopt {

std::string_view to_string(TraceEventKind kind) {
  switch (kind) {
    case TraceEventKind::improved: return "improved";
    case TraceEventKind::restart: return "restart";
    case TraceEventKind::multistart: return "multistart";
    case TraceEventKind::abort: return "abort";
  }
  return "?";
}

std::size_t Trace::count(TraceEventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [kind](const TraceEvent& e) { return e.kind == kind; }));
}

void write_trace_row(std::ostream& out, const TraceEvent& e, bool with_time) {
  char elapsed[32] = "0";
  if (with_time) std::snprintf(elapsed, sizeof elapsed, "%.3f", e.elapsed_seconds);
  out << elapsed << ',' << e.iteration << ',' << e.colors << ',' << to_string(e.kind);
}

void write_trace_csv(std::ostream& out, const Trace& trace, bool with_time) {
  out << kTraceCsvHeader << '\n';
  for (const auto& e : trace.events) {
    write_trace_row(out, e, with_time);
    out << '\n';
  }
}

}  // namespace confopt
