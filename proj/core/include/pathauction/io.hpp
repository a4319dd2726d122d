#ifndef PATHAUCTION_IO_HPP
#define PATHAUCTION_IO_HPP

#include <optional>
#include <string>

#include "pathauction/graph.hpp"
#include "pathauction/trace.hpp"

namespace pathauction {

// Parsed problem file: graph plus the roles and optional supply named in it.
struct ParsedProblem {
  Graph graph;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::optional<double> supply;
};

// DIMACS-style format:
//   c <comment>
//   p auct <nodes> <arcs>
//   n <id> source|sink
//   a <start> <end> <length> [<capacity>]
//   r <supply>
// Capacity omitted means uncapacitated; the length column is mandatory
// (write 0 for unweighted problems).
ParsedProblem parse_graph_file(const std::string& text);
std::string format_graph_file(const ParsedProblem& problem);

// Price files hold one `n <id> <price>` line per node; unlisted nodes default
// to 0 and `inf` marks the sentinel.
PriceVector parse_prices(const std::string& text, int node_count);
std::string format_prices(const PriceVector& prices);

// Shortest round-trip decimal representation; "inf" for the sentinel.
std::string format_double(double value);

// One line-delimited JSON object per trace record.
std::string trace_record_to_json(const TraceRecord& record, bool include_prices);
std::string trace_to_jsonl(const Trace& trace, int node_count);

// Prices are included in trace records up to this many nodes.
inline constexpr int kTracePriceNodeLimit = 64;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pathauction

#endif  // PATHAUCTION_IO_HPP
