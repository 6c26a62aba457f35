#include "hyperflow/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace hyperflow {

namespace {

// Reads the next content line, skipping '%' comments and blank lines.
bool next_content_line(std::istream& in, std::string& line, size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

Hypergraph parse_hmetis(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "missing header");

  long long num_edges = 0, num_vertices = 0;
  std::string fmt;
  {
    std::istringstream iss(line);
    std::string trailing;
    if (!(iss >> num_edges >> num_vertices) || num_edges < 0 || num_vertices < 1) {
      throw ParseError(line_no, "malformed header, expected `|E| |V| [fmt]`");
    }
    iss >> fmt;
    if (iss >> trailing) throw ParseError(line_no, "trailing tokens in header");
    if (!fmt.empty() && fmt != "1" && fmt != "10" && fmt != "11") {
      throw ParseError(line_no, "unknown fmt flag `" + fmt + "`");
    }
  }
  const bool has_edge_weights = fmt == "1" || fmt == "11";
  const bool has_vertex_weights = fmt == "10" || fmt == "11";

  std::vector<std::vector<NodeID>> pins(num_edges);
  std::vector<Weight> edge_weights;
  if (has_edge_weights) edge_weights.reserve(num_edges);

  for (long long e = 0; e < num_edges; ++e) {
    if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "unexpected end of file, expected hyperedge line");
    std::istringstream iss(line);
    if (has_edge_weights) {
      Weight w;
      if (!(iss >> w)) throw ParseError(line_no, "missing hyperedge weight");
      if (w < 1) throw ParseError(line_no, "non-positive hyperedge weight");
      edge_weights.push_back(w);
    }
    long long pin;
    while (iss >> pin) {
      if (pin < 1 || pin > num_vertices) throw ParseError(line_no, "pin index out of range");
      pins[e].push_back(static_cast<NodeID>(pin - 1));
    }
    if (!iss.eof()) throw ParseError(line_no, "non-numeric token in pin list");
    if (pins[e].empty()) throw ParseError(line_no, "empty hyperedge");
  }

  std::vector<Weight> vertex_weights;
  if (has_vertex_weights) {
    vertex_weights.reserve(num_vertices);
    for (long long v = 0; v < num_vertices; ++v) {
      if (!next_content_line(in, line, line_no)) throw ParseError(line_no, "unexpected end of file, expected vertex weight line");
      std::istringstream iss(line);
      Weight w;
      std::string trailing;
      if (!(iss >> w)) throw ParseError(line_no, "malformed vertex weight");
      if (w < 1) throw ParseError(line_no, "non-positive vertex weight");
      if (iss >> trailing) throw ParseError(line_no, "trailing tokens after vertex weight");
      vertex_weights.push_back(w);
    }
  }

  return Hypergraph(static_cast<NodeID>(num_vertices), std::move(pins), std::move(vertex_weights),
                    std::move(edge_weights));
}

Hypergraph parse_hmetis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open hypergraph file: " + path);
  return parse_hmetis(in);
}

void write_hmetis(std::ostream& out, const Hypergraph& hg) {
  bool edge_weights = false, vertex_weights = false;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) edge_weights |= hg.hyperedge_weight(e) != 1;
  for (NodeID v = 0; v < hg.num_vertices(); ++v) vertex_weights |= hg.vertex_weight(v) != 1;

  out << hg.num_hyperedges() << ' ' << hg.num_vertices();
  if (edge_weights && vertex_weights) out << " 11";
  else if (vertex_weights) out << " 10";
  else if (edge_weights) out << " 1";
  out << '\n';

  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    if (edge_weights) out << hg.hyperedge_weight(e) << ' ';
    bool first = true;
    for (NodeID v : hg.pins(e)) {
      if (!first) out << ' ';
      out << (v + 1);
      first = false;
    }
    out << '\n';
  }
  if (vertex_weights) {
    for (NodeID v = 0; v < hg.num_vertices(); ++v) out << hg.vertex_weight(v) << '\n';
  }
}

Partition parse_partition(std::istream& in, const Hypergraph& hg, NodeID k) {
  std::vector<NodeID> assignment;
  assignment.reserve(hg.num_vertices());
  std::string line;
  size_t line_no = 0;
  while (next_content_line(in, line, line_no)) {
    std::istringstream iss(line);
    long long b;
    std::string trailing;
    if (!(iss >> b)) throw ParseError(line_no, "malformed block id");
    if (iss >> trailing) throw ParseError(line_no, "trailing tokens after block id");
    if (b < 0 || b >= static_cast<long long>(k)) throw ParseError(line_no, "block id out of range");
    assignment.push_back(static_cast<NodeID>(b));
  }
  if (assignment.size() != hg.num_vertices()) {
    throw ParseError(line_no, "expected " + std::to_string(hg.num_vertices()) + " lines, got " +
                                  std::to_string(assignment.size()));
  }
  return Partition(k, std::move(assignment), hg);
}

Partition parse_partition_file(const std::string& path, const Hypergraph& hg, NodeID k) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open partition file: " + path);
  return parse_partition(in, hg, k);
}

void write_partition(std::ostream& out, const Partition& p) {
  for (NodeID b : p.assignment()) out << b << '\n';
}

void write_partition_file(const std::string& path, const Partition& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open partition file for writing: " + path);
  write_partition(out, p);
}

}  // namespace hyperflow
