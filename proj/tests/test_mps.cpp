#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "vepc/mps.hpp"

using namespace vepc;
using namespace vepc::testing;

TEST_CASE("empty model exports a well-formed shell") {
  MilpModel m;
  MpsDocument doc = export_interchange(m);
  CHECK(doc.text.find("ROWS") != std::string::npos);
  CHECK(doc.text.find("COLUMNS") != std::string::npos);
  CHECK(doc.text.find("ENDATA") != std::string::npos);
  CHECK(doc.column_names.empty());
  ParsedMps back = parse_interchange(doc.text);
  CHECK(back.columns.empty());
  CHECK(back.rows.empty());
}

TEST_CASE("single variable model round-trips and solves") {
  // minimize x subject to x >= 1, x binary -> optimum 1
  MilpModel m;
  Variable v;
  v.kind = VarKind::XLoc;
  v.name = "xl_v1_MME";
  v.node = 1;
  v.function = VnfId::MME;
  int xi = m.add_variable(v);
  m.add_objective_term(1.0, xi);
  LinearConstraint con;
  con.tag = "eq8";
  con.terms = {{1.0, xi}};
  con.sense = 'G';
  con.rhs = 1.0;
  m.add_constraint(con);

  MpsDocument doc = export_interchange(m);
  REQUIRE(doc.column_names.size() == 1);
  CHECK(doc.column_names.begin()->second == "xl_v1_MME");

  ParsedMps back = parse_interchange(doc.text);
  REQUIRE(back.columns.size() == 1);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].second == 'G');
  CHECK(back.rhs.at(back.rows[0].first) == 1.0);
  CHECK(back.binaries == back.columns);
  CHECK(back.entries.at({back.rows[0].first, back.columns[0]}) == 1.0);
  CHECK(back.entries.at({back.objective_row, back.columns[0]}) == 1.0);

  // drive the bundled solver end to end
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "vepc_mps_test";
  fs::create_directories(dir);
  fs::path mps = dir / "m.mps", sol = dir / "m.sol";
  std::ofstream(mps) << doc.text;
  std::string cmd = "python3 " VEPC_SOLVER_SCRIPT " " + mps.string() + " " +
                    sol.string() + " 30 > /dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in(sol);
  std::string line, all;
  bool optimal = false, unit = false;
  while (std::getline(in, line)) {
    if (line == "status optimal") optimal = true;
    if (line.rfind("objective 1", 0) == 0) unit = true;
  }
  CHECK(optimal);
  CHECK(unit);
  fs::remove_all(dir);
}

TEST_CASE("full model round-trip preserves counts and coefficients") {
  Scenario s = tiny_scenario(2.5);
  s.flows[0].nas_procedure = NasProcedure::DedicatedBearer;
  s.flows[0].control_latency_budget_ms = 250.0;
  MilpModel m = build_model(s);
  MpsDocument doc = export_interchange(m);
  ParsedMps back = parse_interchange(doc.text);

  CHECK(back.columns.size() == m.variables().size());
  CHECK(back.rows.size() == m.constraints().size());
  CHECK(back.binaries.size() == m.variables().size());
  CHECK(doc.column_names.size() == m.variables().size());
  CHECK(doc.row_names.size() == m.constraints().size());

  // every constraint coefficient survives: compare per-row sums of entries
  for (std::size_t r = 0; r < m.constraints().size(); ++r) {
    const LinearConstraint& con = m.constraints()[r];
    const std::string row = back.rows[r].first;
    CHECK(back.rows[r].second == con.sense);
    double model_sum = 0;
    for (const LinTerm& t : con.terms) model_sum += t.coef;
    double file_sum = 0;
    for (const auto& [key, coef] : back.entries)
      if (key.first == row) file_sum += coef;
    CHECK(file_sum == doctest::Approx(model_sum).epsilon(1e-9));
    double rhs = back.rhs.count(row) ? back.rhs.at(row) : 0.0;
    CHECK(rhs == doctest::Approx(con.rhs).epsilon(1e-9));
  }

  // objective preserved too
  double obj_model = 0;
  for (const LinTerm& t : m.objective()) obj_model += t.coef;
  double obj_file = 0;
  for (const auto& [key, coef] : back.entries)
    if (key.first == back.objective_row) obj_file += coef;
  CHECK(obj_file == doctest::Approx(obj_model).epsilon(1e-9));
}

TEST_CASE("short generated names map back to descriptive names") {
  Scenario s = tiny_scenario();
  MilpModel m = build_model(s);
  MpsDocument doc = export_interchange(m);
  for (const auto& [shortn, longn] : doc.column_names) {
    CHECK(shortn.size() <= 8);
    CHECK(shortn[0] == 'V');
    bool found = false;
    for (const Variable& v : m.variables())
      if (v.name == longn) found = true;
    CHECK(found);
  }
  for (const auto& [shortn, longn] : doc.row_names) {
    CHECK(shortn.size() <= 8);
    CHECK(shortn[0] == 'R');
  }
}
