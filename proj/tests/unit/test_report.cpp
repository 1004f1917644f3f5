#include <doctest.h>

#include <regex>
#include <set>
#include <sstream>

#include "contractcase/report.hpp"
#include "fixture.hpp"

namespace cc = contractcase;

namespace {

std::size_t count_matches(const std::string& text, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

const std::regex kBox(R"(^    "[^"]+" \[label=)", std::regex::multiline);
const std::regex kCluster(R"(subgraph "cluster_)");
const std::regex kSolid(R"(^  "[^"]+" -> "[^"]+" \[label=)", std::regex::multiline);
const std::regex kDashed(R"(\[style=dashed\])");

// Edge set derived from the assumes lists: (supplier, consumer) for every
// contract whose assumption is discharged by a binding.
std::set<std::pair<std::string, std::string>> expected_solid(const cc::SpecificationStructure& s) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& c : s.components())
    for (const auto& k : c.contracts)
      for (const auto& a : k.assumes)
        for (const auto& r : s.refinements())
          for (const auto& b : r.bindings)
            if (b.target.component == c.name && b.target.local == a) out.emplace(b.source.str(), c.name + "." + k.id);
  return out;
}

}  // namespace

TEST_CASE("ferry contract graph") {
  const auto s = cctest::ferry_spec();
  const auto dot = cc::export_dot(s);

  CHECK(count_matches(dot, kBox) == 7);
  CHECK(count_matches(dot, kCluster) == 5);
  CHECK(count_matches(dot, kDashed) == 1);

  const auto expected = expected_solid(s);
  CHECK(expected.size() == 8);
  CHECK(count_matches(dot, kSolid) == expected.size());
  for (const auto& [from, to] : expected)
    CHECK(dot.find("\"" + from + "\" -> \"" + to + "\"") != std::string::npos);

  CHECK(dot.find("\"Ferry.G1\" -> \"MPCS.G1\" [style=dashed]") != std::string::npos);
  CHECK(dot.find("\"MPCS.G2\" -> \"DP.G1\" [label=\"A1\"]") != std::string::npos);
}

TEST_CASE("ferry contract graph matches the golden file") {
  CHECK(cc::export_dot(cctest::ferry_spec()) == cctest::read_file(cctest::golden_path("ferry.dot")));
}

TEST_CASE("empty structure renders an empty digraph") {
  const auto s = cctest::spec_from_text("");
  CHECK(cc::export_dot(s) == "digraph specification {\n}\n");
  CHECK(cc::export_dot(s, {true}) == "digraph specification {\n}\n");
}

TEST_CASE("export is byte-identical across runs") {
  CHECK(cc::export_dot(cctest::ferry_spec()) == cc::export_dot(cctest::ferry_spec()));
  CHECK(cc::export_dot(cctest::ferry_spec(), {true}) == cc::export_dot(cctest::ferry_spec(), {true}));
}

TEST_CASE("component graph merges parallel edges") {
  const auto dot = cc::export_dot(cctest::ferry_spec(), {true});
  CHECK(count_matches(dot, std::regex(R"(^  "[^"]+" \[label=)", std::regex::multiline)) == 5);
  CHECK(dot.find("\"MPCS\" [label=\"MPCS (2 contracts)\"]") != std::string::npos);
  CHECK(dot.find("\"SITAW\" -> \"MPCS\" [label=\"A2,A3\"]") != std::string::npos);
  CHECK(dot.find("\"MPCS\" -> \"DP\" [label=\"A1\"]") != std::string::npos);
  CHECK(dot.find("\"Ferry\" -> \"MPCS\" [style=dashed]") != std::string::npos);
  CHECK(count_matches(dot, kSolid) == 4);
}

TEST_CASE("labels escape quotes and cut long statements") {
  const auto s = cctest::spec_from_text(
      "component X {\n"
      "  contract G1 \"say \\\"hi\\\" \\\\ now and then keep going far beyond sixty characters of text\"\n"
      "}\n");
  const auto dot = cc::export_dot(s);
  CHECK(dot.find(R"(say \"hi\" \\ now)") != std::string::npos);
  CHECK(dot.find("of text") == std::string::npos);
}

TEST_CASE("diagnostic json") {
  cc::Diagnostic d{cc::Severity::error, "V201", {"f.ccs", 3, 4}, "msg"};
  const auto j = cc::to_json(d);
  CHECK(j.dump() == R"({"severity":"error","code":"V201","file":"f.ccs","line":3,"column":4,"message":"msg"})");
  CHECK(cc::to_json(cc::Diagnostics{}).dump() == "[]");
}

TEST_CASE("coverage json lists every status") {
  const auto c = cc::coverage(cctest::ferry_spec(), cctest::ferry_register());
  const auto j = cc::to_json(c);
  CHECK(j["covered"] == 12);
  CHECK(j["total"] == 12);
  CHECK(j["uncovered"].empty());
  CHECK(j["by_status"].size() == 4);
  CHECK(j["by_status"]["mitigated"] == 1);
  CHECK(j["by_status"]["accepted"] == 1);
  CHECK(j["by_status"]["open"] == 0);
}

TEST_CASE("ferry confidence json matches the golden file") {
  const auto s = cctest::ferry_spec();
  const auto cases = cctest::ferry_cases();
  const auto r = cc::propagate(s, cases, cctest::ferry_assessment("assessment-sitaw-contradicted.yaml"));
  REQUIRE(r);
  CHECK(cc::to_json(*r).dump(2) + "\n" == cctest::read_file(cctest::golden_path("ferry-confidence.json")));
}

TEST_CASE("value change json") {
  const std::vector<cc::ValueChange> changes{
      {cc::ValueChange::Scope::guarantee, "Ferry.G1", cc::TriValue::contradicted(), cc::TriValue::supported()}};
  CHECK(cc::to_json(changes).dump() ==
        R"([{"scope":"guarantee","key":"Ferry.G1","before":"Contradicted","after":"Supported"}])");
}
