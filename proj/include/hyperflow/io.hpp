#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hyperflow/hypergraph.hpp"

namespace hyperflow {

// Raised for malformed hMetis or partition files; message names the
// offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// hMetis format: header `|E| |V| [fmt]` with fmt in {absent, 1, 10, 11}
// (hyperedge weights / vertex weights), 1-indexed pin lists, `%` comment
// lines skipped. Internal indices are 0-based; weights default to 1.
Hypergraph parse_hmetis(std::istream& in);
Hypergraph parse_hmetis_file(const std::string& path);

void write_hmetis(std::ostream& out, const Hypergraph& hg);

// Partition file: one block id per line, in vertex order.
Partition parse_partition(std::istream& in, const Hypergraph& hg, NodeID k);
Partition parse_partition_file(const std::string& path, const Hypergraph& hg, NodeID k);

void write_partition(std::ostream& out, const Partition& p);
void write_partition_file(const std::string& path, const Partition& p);

}  // namespace hyperflow
