#include "cmj/graft_io.hpp"

#include <charconv>
#include <limits>
#include <optional>
#include <vector>

#include "cmj/error.hpp"

namespace cmj {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& reason) {
  fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + reason);
}

std::vector<std::string_view> split_tokens(std::string_view line, std::size_t number) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t space = line.find(' ', start);
    const std::string_view token = line.substr(start, space == std::string_view::npos ? space : space - start);
    if (token.empty()) parse_fail(number, "tokens must be separated by single spaces");
    tokens.push_back(token);
    if (space == std::string_view::npos) break;
    start = space + 1;
  }
  return tokens;
}

std::uint64_t parse_number(std::string_view token, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.front() == '+') {
    parse_fail(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

VertexId parse_vertex(std::string_view token, std::size_t line, std::uint64_t n) {
  const std::uint64_t v = parse_number(token, line, "vertex");
  if (v >= n) parse_fail(line, "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
  return static_cast<VertexId>(v);
}

}  // namespace

ParsedGraft parse_graft(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) parse_fail(1, "missing 'p graft <n> <m>' header");

  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::optional<Graph> graph;
  std::optional<std::size_t> t_line;
  VertexSet terminals;
  std::uint64_t edges_seen = 0;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t number = i + 1;
    const std::string_view line = lines[i];
    if (line.find('\r') != std::string_view::npos) parse_fail(number, "carriage return; LF line endings required");
    if (line.empty()) parse_fail(number, "empty line");
    const auto tokens = split_tokens(line, number);
    const std::string_view directive = tokens.front();

    if (i == 0) {
      if (directive != "p" || tokens.size() != 4 || tokens[1] != "graft") {
        parse_fail(number, "expected 'p graft <n> <m>'");
      }
      n = parse_number(tokens[2], number, "vertex count");
      m = parse_number(tokens[3], number, "edge count");
      if (n > std::numeric_limits<VertexId>::max() || m > std::numeric_limits<EdgeId>::max()) {
        parse_fail(number, "graph too large");
      }
      graph.emplace(static_cast<std::size_t>(n));
      continue;
    }
    if (directive == "c") continue;
    if (directive == "p") parse_fail(number, "duplicate 'p' header");
    if (directive == "t") {
      if (t_line) parse_fail(number, "duplicate 't' line (first on line " + std::to_string(*t_line) + ")");
      if (edges_seen > 0) parse_fail(number, "'t' line must precede the edge lines");
      t_line = number;
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const VertexId v = parse_vertex(tokens[k], number, n);
        if (seen[v]) parse_fail(number, "duplicate terminal " + std::to_string(v));
        seen[v] = 1;
        terminals.push_back(v);
      }
      continue;
    }
    if (directive == "e") {
      if (!t_line) parse_fail(number, "edge line before the 't' line");
      if (tokens.size() != 3) parse_fail(number, "expected 'e <u> <v>'");
      if (edges_seen == m) parse_fail(number, "more edge lines than the declared " + std::to_string(m));
      const VertexId u = parse_vertex(tokens[1], number, n);
      const VertexId v = parse_vertex(tokens[2], number, n);
      graph->add_edge(u, v);
      ++edges_seen;
      continue;
    }
    parse_fail(number, "unknown directive '" + std::string(directive) + "'");
  }
  if (!t_line) parse_fail(lines.size(), "missing 't' line");
  if (edges_seen != m) {
    parse_fail(lines.size(), "declared " + std::to_string(m) + " edges but found " + std::to_string(edges_seen));
  }

  const std::size_t loops = graph->stripped_loops();
  terminals = normalized(std::move(terminals));
  try {
    return {validate_graft(std::move(*graph), terminals), loops};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::no_join) throw;
    fail(ErrorKind::no_join, "line " + std::to_string(*t_line) + ": " + e.what());
  }
}

std::string format_graft(const Graft& graft) {
  std::string out = "p graft " + std::to_string(graft.vertex_count()) + " " + std::to_string(graft.edge_count()) + "\nt";
  for (VertexId v : graft.terminals()) out += " " + std::to_string(v);
  out += "\n";
  for (const Edge& e : graft.graph().edges()) out += "e " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

}  // namespace cmj
