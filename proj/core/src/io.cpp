#include "pathauction/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace pathauction {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

double parse_number(const std::string& token, int line) {
  if (token == "inf" || token == "+inf") return kInfinity;
  try {
    std::size_t used = 0;
    double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
}

int parse_int(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
}

ordered_json json_price(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, end);
}

ParsedProblem parse_graph_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_number = 0;

  int declared_nodes = -1;
  int declared_arcs = -1;
  std::vector<Arc> arcs;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::optional<double> supply;

  while (std::getline(in, line)) {
    ++line_number;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    const std::string& kind = tokens[0];

    if (kind == "p") {
      if (declared_nodes >= 0) throw ParseError(line_number, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "auct") {
        throw ParseError(line_number, "expected 'p auct <nodes> <arcs>'");
      }
      declared_nodes = parse_int(tokens[2], line_number);
      declared_arcs = parse_int(tokens[3], line_number);
      if (declared_nodes <= 0 || declared_arcs < 0) {
        throw ParseError(line_number, "node and arc counts must be positive");
      }
    } else if (kind == "n") {
      if (declared_nodes < 0) throw ParseError(line_number, "node line before problem line");
      if (tokens.size() != 3) throw ParseError(line_number, "expected 'n <id> source|sink'");
      const NodeId id = parse_int(tokens[1], line_number);
      if (id < 0 || id >= declared_nodes) {
        throw ParseError(line_number, "node id out of range");
      }
      if (tokens[2] == "source") {
        if (source) throw ParseError(line_number, "duplicate source line");
        source = id;
      } else if (tokens[2] == "sink") {
        if (sink) throw ParseError(line_number, "duplicate sink line");
        sink = id;
      } else {
        throw ParseError(line_number, "node role must be 'source' or 'sink'");
      }
    } else if (kind == "a") {
      if (declared_nodes < 0) throw ParseError(line_number, "arc line before problem line");
      if (tokens.size() != 4 && tokens.size() != 5) {
        throw ParseError(line_number, "expected 'a <start> <end> <length> [<capacity>]'");
      }
      Arc arc;
      arc.start = parse_int(tokens[1], line_number);
      arc.end = parse_int(tokens[2], line_number);
      arc.length = parse_number(tokens[3], line_number);
      arc.capacity = tokens.size() == 5 ? parse_number(tokens[4], line_number) : kInfinity;
      arcs.push_back(arc);
    } else if (kind == "r") {
      if (tokens.size() != 2) throw ParseError(line_number, "expected 'r <supply>'");
      if (supply) throw ParseError(line_number, "duplicate supply line");
      supply = parse_number(tokens[1], line_number);
    } else {
      throw ParseError(line_number, "unknown line kind '" + kind + "'");
    }
  }

  if (declared_nodes < 0) throw ParseError(line_number, "missing problem line");
  if (declared_arcs != static_cast<int>(arcs.size())) {
    throw ParseError(line_number,
                     "problem line declares " + std::to_string(declared_arcs) + " arcs, file has " +
                         std::to_string(arcs.size()));
  }
  Graph graph = build_graph(declared_nodes, arcs);
  return ParsedProblem{std::move(graph), source, sink, supply};
}

std::string format_graph_file(const ParsedProblem& problem) {
  std::ostringstream out;
  const Graph& g = problem.graph;
  out << "p auct " << g.node_count() << ' ' << g.arc_count() << '\n';
  if (problem.source) out << "n " << *problem.source << " source\n";
  if (problem.sink) out << "n " << *problem.sink << " sink\n";
  for (const Arc& arc : g.arcs()) {
    out << "a " << arc.start << ' ' << arc.end << ' ' << format_double(arc.length);
    if (!std::isinf(arc.capacity)) out << ' ' << format_double(arc.capacity);
    out << '\n';
  }
  if (problem.supply) out << "r " << format_double(*problem.supply) << '\n';
  return out.str();
}

PriceVector parse_prices(const std::string& text, int node_count) {
  PriceVector prices(node_count, 0.0);
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] != "n" || tokens.size() != 3) {
      throw ParseError(line_number, "expected 'n <id> <price>'");
    }
    const NodeId id = parse_int(tokens[1], line_number);
    if (id < 0 || id >= node_count) throw ParseError(line_number, "node id out of range");
    const double price = parse_number(tokens[2], line_number);
    if (std::isnan(price) || price == -kInfinity) {
      throw ParseError(line_number, "prices must be finite or inf");
    }
    prices[id] = price;
  }
  return prices;
}

std::string format_prices(const PriceVector& prices) {
  std::ostringstream out;
  for (std::size_t id = 0; id < prices.size(); ++id) {
    out << "n " << id << ' ' << format_double(prices[id]) << '\n';
  }
  return out.str();
}

std::string trace_record_to_json(const TraceRecord& record, bool include_prices) {
  ordered_json j;
  j["iter"] = record.iteration;
  j["case"] = step_case_label(record.step_case);
  j["action"] = action_kind_label(record.action);
  if (record.action != ActionKind::kTerminate) j["node"] = record.node;
  j["path"] = record.path_prior;
  if (include_prices) {
    ordered_json prices = ordered_json::array();
    for (double p : record.prices_prior) prices.push_back(json_price(p));
    j["prices"] = prices;
  }
  return j.dump();
}

std::string trace_to_jsonl(const Trace& trace, int node_count) {
  const bool include_prices = node_count <= kTracePriceNodeLimit;
  std::string out;
  for (const TraceRecord& record : trace) {
    out += trace_record_to_json(record, include_prices);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw_error(ErrorCode::kInvalidArgument, "cannot open '" + path + "' for writing");
  }
  out << content;
}

}  // namespace pathauction
