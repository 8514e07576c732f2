#pragma once

// Plain-text graph format:
//   p <n_a> <n_b> <m>
//   e <a> <b>        (m lines, 0-based)
// Lines starting with '#' and blank lines are ignored.

#include "bihole/graph.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bihole {

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw parse_error(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  if (v > UINT32_MAX) throw parse_error(line, std::string(what) + " overflows 32 bits");
  return v;
}

}  // namespace detail

inline BipartiteGraph parse_graph(std::string_view text) {
  bool have_header = false;
  std::uint64_t n_a = 0, n_b = 0, m = 0;
  std::size_t header_line = 0;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "p") {
      if (have_header) throw parse_error(line_no, "duplicate header");
      if (tok.size() != 4) throw parse_error(line_no, "header must be 'p <n_a> <n_b> <m>'");
      n_a = detail::parse_count(tok[1], line_no, "n_a");
      n_b = detail::parse_count(tok[2], line_no, "n_b");
      m = detail::parse_count(tok[3], line_no, "m");
      have_header = true;
      header_line = line_no;
    } else if (tok[0] == "e") {
      if (!have_header) throw parse_error(line_no, "edge before header");
      if (tok.size() != 3) throw parse_error(line_no, "edge must be 'e <a> <b>'");
      const auto a = detail::parse_count(tok[1], line_no, "A-index");
      const auto b = detail::parse_count(tok[2], line_no, "B-index");
      if (a >= n_a) throw parse_error(line_no, "A-index " + std::to_string(a) + " out of range");
      if (b >= n_b) throw parse_error(line_no, "B-index " + std::to_string(b) + " out of range");
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    } else {
      throw parse_error(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw parse_error(line_no, "missing header");
  auto g = BipartiteGraph::build(static_cast<std::int64_t>(n_a), static_cast<std::int64_t>(n_b), edges);
  if (edges.size() != m || g.m() != m)
    throw parse_error(header_line, "header declares " + std::to_string(m) + " edges, found " +
                                       std::to_string(edges.size()) +
                                       (g.m() != edges.size() ? " (with duplicates)" : ""));
  return g;
}

inline std::string serialize_graph(const BipartiteGraph& g) {
  std::string out = "p " + std::to_string(g.n_a()) + " " + std::to_string(g.n_b()) + " " +
                    std::to_string(g.m()) + "\n";
  for (const auto& e : g.edges()) out += "e " + std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
  return out;
}

inline BipartiteGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

inline void write_graph_file(const std::string& path, const BipartiteGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_graph(g);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace bihole
