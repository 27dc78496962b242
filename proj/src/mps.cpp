#include "vepc/mps.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace vepc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_entry(std::ostringstream& out, const std::string& col,
                const std::string& row, double coef) {
  out << "    " << std::left << std::setw(10) << col << std::setw(10) << row
      << fmt(coef) << "\n";
}

}  // namespace

MpsDocument export_interchange(const MilpModel& model) {
  MpsDocument doc;
  std::ostringstream out;
  out << "NAME          VEPC\n";
  out << "ROWS\n";
  out << " N  COST\n";
  const auto& cons = model.constraints();
  for (std::size_t r = 0; r < cons.size(); ++r) {
    std::string rn = "R" + std::to_string(r);
    out << " " << cons[r].sense << "  " << rn << "\n";
    doc.row_names[rn] = cons[r].tag +
                        (cons[r].provenance.empty() ? ""
                                                    : " " + cons[r].provenance);
  }
  // gather per-column entries, objective first
  std::vector<std::vector<std::pair<std::string, double>>> col_entries(
      model.variables().size());
  {
    std::map<int, double> obj;
    for (const LinTerm& t : model.objective()) obj[t.var] += t.coef;
    for (const auto& [var, coef] : obj)
      if (coef != 0.0)
        col_entries[static_cast<std::size_t>(var)].emplace_back("COST", coef);
  }
  for (std::size_t r = 0; r < cons.size(); ++r) {
    std::string rn = "R" + std::to_string(r);
    for (const LinTerm& t : cons[r].terms)
      if (t.coef != 0.0)
        col_entries[static_cast<std::size_t>(t.var)].emplace_back(rn, t.coef);
  }
  out << "COLUMNS\n";
  for (std::size_t v = 0; v < col_entries.size(); ++v) {
    std::string cn = "V" + std::to_string(v);
    doc.column_names[cn] = model.variables()[v].name;
    for (const auto& [row, coef] : col_entries[v]) emit_entry(out, cn, row, coef);
  }
  out << "RHS\n";
  for (std::size_t r = 0; r < cons.size(); ++r)
    if (cons[r].rhs != 0.0)
      emit_entry(out, "RHS", "R" + std::to_string(r), cons[r].rhs);
  out << "BOUNDS\n";
  for (std::size_t v = 0; v < model.variables().size(); ++v)
    out << " BV BND       V" << v << "\n";
  out << "ENDATA\n";
  doc.text = out.str();
  return doc;
}

ParsedMps parse_interchange(const std::string& text) {
  ParsedMps p;
  std::istringstream in(text);
  std::string line;
  std::string section;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ls(line);
    if (line[0] != ' ') {
      std::string head;
      ls >> head;
      if (head == "NAME") {
        ls >> p.name;
        continue;
      }
      section = head;
      if (head == "ENDATA") break;
      continue;
    }
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (section == "ROWS") {
      if (tok.size() != 2) throw ValidationError("bad ROWS line: " + line);
      if (tok[0] == "N")
        p.objective_row = tok[1];
      else
        p.rows.emplace_back(tok[1], tok[0][0]);
    } else if (section == "COLUMNS") {
      if (tok.size() < 3 || (tok.size() - 1) % 2 != 0)
        throw ValidationError("bad COLUMNS line: " + line);
      if (p.columns.empty() || p.columns.back() != tok[0])
        p.columns.push_back(tok[0]);
      for (std::size_t k = 1; k + 1 < tok.size(); k += 2)
        p.entries[{tok[k], tok[0]}] = std::stod(tok[k + 1]);
    } else if (section == "RHS") {
      for (std::size_t k = 1; k + 1 < tok.size(); k += 2)
        p.rhs[tok[k]] = std::stod(tok[k + 1]);
    } else if (section == "BOUNDS") {
      if (tok.size() >= 3 && tok[0] == "BV") p.binaries.push_back(tok[2]);
    }
  }
  return p;
}

}  // namespace vepc
