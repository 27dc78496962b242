#ifndef VEPC_MPS_HPP
#define VEPC_MPS_HPP

#include <map>
#include <string>
#include <vector>

#include "vepc/ilp.hpp"

namespace vepc {

// MPS column/row names are capped at 8 characters; models always exceed
// that, so the writer emits V{i}/R{i} and keeps the descriptive names in
// a lookup table.
struct MpsDocument {
  std::string text;
  std::map<std::string, std::string> column_names;  // V{i} -> descriptive
  std::map<std::string, std::string> row_names;     // R{i} -> tag+provenance
};

// Fixed-format MPS subset: ROWS / COLUMNS / RHS / BOUNDS (BV) / ENDATA,
// objective sense minimize, all variables binary.
MpsDocument export_interchange(const MilpModel& model);

// Parse-back of the subset above, for round-trip checks.
struct ParsedMps {
  std::string name;
  std::vector<std::pair<std::string, char>> rows;  // (name, sense), obj excluded
  std::vector<std::string> columns;
  // (row name or objective name, column name) -> coefficient
  std::map<std::pair<std::string, std::string>, double> entries;
  std::map<std::string, double> rhs;
  std::vector<std::string> binaries;
  std::string objective_row;
};

ParsedMps parse_interchange(const std::string& text);

}  // namespace vepc

#endif  // VEPC_MPS_HPP
