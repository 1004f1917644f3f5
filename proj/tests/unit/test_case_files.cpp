#include <doctest.h>

#include "printers.hpp"

#include <set>

#include "contractcase/case_files.hpp"
#include "fixture.hpp"

namespace cc = contractcase;

namespace {

std::set<std::string> codes(const cc::Diagnostics& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(d.code);
  return out;
}

cc::Diagnostics case_errors(const std::string& text) {
  const auto r = cc::parse_case_file({"c.yaml", text});
  REQUIRE_FALSE(r);
  return r.diagnostics();
}

const char* kMinimal = R"(modules:
  - id: MPCS-G2-case
    target: {kind: contract, ref: MPCS.G2}
    nodes:
      - id: C1
        kind: claim
        text: Setpoints are safe
        children: [ev1]
      - id: ev1
        kind: evidence
        text: Test report
)";

}  // namespace

TEST_CASE("minimal module parses") {
  const auto r = cc::parse_case_file({"c.yaml", kMinimal});
  REQUIRE(r);
  REQUIRE(r->size() == 1);
  const auto& m = r->front();
  CHECK(m.id == "MPCS-G2-case");
  CHECK(m.target == cc::Target::contract({"MPCS", "G2"}));
  CHECK(m.top == "C1");
  REQUIRE(m.nodes.size() == 2);
  CHECK(m.nodes[0].children == std::vector<std::string>{"ev1"});
  CHECK(m.nodes[1].kind == cc::NodeKind::evidence);
  CHECK(m.nodes[1].location.line == 9);
  CHECK(m.leaf_key(m.nodes[1]) == "MPCS-G2-case.ev1");
}

TEST_CASE("JSON documents are accepted") {
  const auto r = cc::parse_case_file(
      {"c.json",
       R"({"modules": [{"id": "R2-case", "target": {"kind": "refinement", "ref": "R2"},
           "nodes": [{"id": "C1", "kind": "claim", "undeveloped": true}]}]})"});
  REQUIRE(r);
  CHECK(r->front().target == cc::Target::refinement("R2"));
  CHECK(r->front().nodes[0].undeveloped);
}

TEST_CASE("ferry case corpus has one module per contract and refinement") {
  const auto cases = cctest::ferry_cases();
  CHECK(cases.modules().size() == 12);
  const auto s = cctest::ferry_spec();
  CHECK(cases.modules().size() == s.contract_count() + s.refinements().size());
  const auto* ferry = cases.find("Ferry-G1-case");
  REQUIRE(ferry);
  const auto* away = ferry->find("away1");
  REQUIRE(away);
  CHECK(away->kind == cc::NodeKind::away);
  CHECK(away->away_target == "MPCS-G1-case");
}

TEST_CASE("case file errors") {
  CHECK(codes(case_errors(R"(modules:
  - id: M
    target: {kind: contract, ref: A.G}
    nodes:
      - {id: C1, kind: claim, children: [n7]}
)")) == std::set<std::string>{"E302"});

  CHECK(codes(case_errors(R"(modules:
  - id: M
    target: {kind: contract, ref: A.G}
    nodes:
      - {id: C1, kind: claim, undeveloped: true}
      - {id: C1, kind: evidence}
)")) == std::set<std::string>{"E301"});

  CHECK(codes(case_errors(R"(modules:
  - id: M
    target: {kind: contract, ref: A.G}
    nodes:
      - {id: C1, kind: warrant}
)")) == std::set<std::string>{"E303"});

  CHECK(codes(case_errors("modules: 3\n")) == std::set<std::string>{"E300"});
  CHECK(codes(case_errors("modules:\n  - id: M\n    colour: red\n")).count("E300"));
  CHECK(codes(case_errors("modules: [\n")).count("E300"));
  CHECK(codes(case_errors(R"(modules:
  - id: M
    target: {kind: contract, ref: A.G}
    top: nope
    nodes:
      - {id: C1, kind: claim, undeveloped: true}
)")).count("E302"));
  CHECK(codes(case_errors(R"(modules:
  - id: M
    target: {kind: contract, ref: A.G}
    nodes:
      - {id: C1, kind: evidence, target: X}
)")).count("E300"));
}

TEST_CASE("syntax errors carry a 1-based position") {
  const auto ds = case_errors("modules:\n  - id: [unclosed\n");
  REQUIRE_FALSE(ds.empty());
  CHECK(ds[0].location.line >= 2);
  CHECK(ds[0].location.column >= 1);
}

TEST_CASE("load_case_set reads a directory in name order and rejects duplicate modules") {
  cctest::TempDir dir;
  dir.write("b.yaml", kMinimal);
  dir.write("a.yml", "modules:\n  - id: X\n    target: {kind: refinement, ref: R1}\n    nodes:\n"
                     "      - {id: C1, kind: claim, undeveloped: true}\n");
  dir.write("notes.txt", "ignored");
  const auto set = cc::load_case_set(dir.path());
  REQUIRE(set);
  REQUIRE(set->modules().size() == 2);
  CHECK(set->modules()[0].id == "X");

  dir.write("c.json", R"({"modules": [{"id": "X", "target": {"kind": "refinement", "ref": "R1"}, "nodes": [{"id": "C1", "kind": "claim", "undeveloped": true}]}]})");
  const auto dup = cc::load_case_set(dir.path());
  REQUIRE_FALSE(dup);
  CHECK(codes(dup.diagnostics()) == std::set<std::string>{"E304"});

  const auto single = cc::load_case_set(dir.path() / "b.yaml");
  REQUIRE(single);
  CHECK(single->modules().size() == 1);

  const auto missing = cc::load_case_set(dir.path() / "nope");
  REQUIRE_FALSE(missing);
  CHECK(missing.diagnostics()[0].code == "E305");
}

TEST_CASE("assessments") {
  const auto one = cc::parse_assessment({"a.yaml", "MPCS-G2-case.ev1: supported\n"});
  REQUIRE(one);
  CHECK(one->size() == 1);
  CHECK(one->at("MPCS-G2-case.ev1") == cc::TriValue::supported());

  const auto json = cc::parse_assessment({"a.json", R"({"MPCS-G2-case.ev1": "supported"})"});
  REQUIRE(json);
  CHECK(*json == *one);

  const auto env = cc::parse_assessment({"a.yaml", "SITAW.A1: unknown\n"});
  REQUIRE(env);
  CHECK(env->at("SITAW.A1") == cc::TriValue::unknown());

  const auto bad = cc::parse_assessment({"a.yaml", "x: supported\ny: probably\n"});
  REQUIRE_FALSE(bad);
  REQUIRE(bad.diagnostics().size() == 1);
  CHECK(bad.diagnostics()[0].code == "E400");
  CHECK(bad.diagnostics()[0].location.line == 2);

  const auto dup = cc::parse_assessment({"a.yaml", "x: supported\nx: unknown\n"});
  REQUIRE_FALSE(dup);
  CHECK(dup.diagnostics()[0].code == "E401");
  CHECK(dup.diagnostics()[0].location.line == 2);

  const auto empty = cc::parse_assessment({"a.yaml", ""});
  REQUIRE(empty);
  CHECK(empty->empty());

  CHECK(cc::parse_assessment({"a.yaml", "x: \"\xff\"\n"}).diagnostics()[0].code == "E000");
}

TEST_CASE("risk registers") {
  const auto reg = cctest::ferry_register();
  CHECK(reg.items.size() == 12);
  REQUIRE(reg.requirements.size() == 1);
  CHECK(reg.requirements[0].concerns == cc::Target::contract({"SITAW", "G1"}));
  CHECK(reg.items[3].status == cc::RiskStatus::mitigated);
  CHECK(reg.items[3].references == std::vector<std::string>{"stpa/uca-12"});

  auto errors = [](const std::string& text) {
    const auto r = cc::parse_register({"r.yaml", text});
    REQUIRE_FALSE(r);
    return codes(r.diagnostics());
  };
  CHECK(errors("items:\n  - {id: I1, target: R1, status: maybe}\n") == std::set<std::string>{"R102"});
  CHECK(errors("items:\n  - {id: I1, target: R1, status: mitigated}\n") == std::set<std::string>{"R103"});
  CHECK(errors("items:\n  - {id: I1, target: R1, status: open}\n  - {id: I1, target: R2, status: open}\n") ==
        std::set<std::string>{"R105"});
  CHECK(errors("items: {}\n") == std::set<std::string>{"R100"});
  CHECK(errors("items:\n  - {id: I1, target: R1, status: open, severity: high}\n") == std::set<std::string>{"R100"});
}
