#include <doctest.h>

#include "printers.hpp"

#include <set>

#include "contractcase/risk_register.hpp"
#include "fixture.hpp"
#include "generators.hpp"

namespace cc = contractcase;

namespace {

cc::RiskItem item(std::string id, const std::string& target, cc::RiskStatus status = cc::RiskStatus::no_risk_found) {
  cc::RiskItem i;
  i.id = std::move(id);
  i.target = cc::Target::from_string(target);
  i.status = status;
  return i;
}

cc::AssuranceModule module_with_claim(std::string id, cc::Target target, std::vector<std::string> tags) {
  cc::AssuranceModule m;
  m.id = std::move(id);
  m.target = std::move(target);
  cc::ArgumentNode claim;
  claim.id = "C1";
  claim.undeveloped = true;
  claim.requirement_tags = std::move(tags);
  m.nodes.push_back(claim);
  m.top = "C1";
  return m;
}

}  // namespace

TEST_CASE("ferry checklist has 12 prompts in a fixed order") {
  const auto prompts = cc::generate_checklist(cctest::ferry_spec());
  REQUIRE(prompts.size() == 12);
  std::vector<std::string> targets;
  for (const auto& p : prompts) targets.push_back(p.target.ref);
  CHECK(targets == std::vector<std::string>{"DP.G1", "Ferry.G1", "FerryDeployer.G1", "MPCS.G1", "MPCS.G2", "SITAW.G1",
                                            "SITAW.G2", "R1", "R2", "R3", "R4", "R5"});
  for (std::size_t i = 0; i < 7; ++i) CHECK(prompts[i].kind == cc::PromptKind::contract_question);
  for (std::size_t i = 7; i < 12; ++i) CHECK(prompts[i].kind == cc::PromptKind::refinement_question);
}

TEST_CASE("prompts quote the questions verbatim") {
  const auto prompts = cc::generate_checklist(cctest::ferry_spec());
  const auto& g2 = prompts[4];
  CHECK(g2.text.find("even if all assumptions are true") != std::string::npos);
  CHECK(g2.text ==
        "Contract MPCS.G2 (\"Provides next setpoint to keep ferry in a safe state.\"): Is there any way that the "
        "guarantee could not hold even if all assumptions are true?");
  CHECK(prompts[8].text ==
        "Refinement R2 (SITAW.G1 -> MPCS.A2): Is there any way that the refinement could be invalid, i.e. that the "
        "independent guarantee or assumption can be true while at the same time the dependent assumption is not?");
  for (const auto& p : prompts) {
    const auto question = p.kind == cc::PromptKind::contract_question ? cc::kContractQuestion : cc::kRefinementQuestion;
    CHECK(p.text.find(question) != std::string::npos);
  }
}

TEST_CASE("empty structure gives an empty checklist") {
  CHECK(cc::generate_checklist(cc::SpecificationStructure{}).empty());
}

TEST_CASE("checklist size is contracts plus refinements") {
  cctest::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto d = cctest::random_declarations(rng);
    const auto s = cc::build_structure(d.components, d.refinements);
    REQUIRE(s);
    CHECK(cc::generate_checklist(*s).size() == s->contract_count() + s->refinements().size());
  }
}

TEST_CASE("coverage of the ferry register") {
  const auto s = cctest::ferry_spec();
  const auto empty = cc::coverage(s, {});
  CHECK(empty.covered == 0);
  CHECK(empty.total == 12);
  CHECK(empty.uncovered.size() == 12);
  CHECK(empty.fraction() == 0.0);

  const auto full = cc::coverage(s, cctest::ferry_register());
  CHECK(full.covered == 12);
  CHECK(full.total == 12);
  CHECK(full.uncovered.empty());
  CHECK(full.diagnostics.empty());
  CHECK(full.by_status.at(cc::RiskStatus::no_risk_found) == 10);
  CHECK(full.by_status.at(cc::RiskStatus::mitigated) == 1);
  CHECK(full.by_status.at(cc::RiskStatus::accepted) == 1);
}

TEST_CASE("dangling register references") {
  const auto s = cctest::ferry_spec();
  cc::RiskRegister reg;
  reg.items.push_back(item("I1", "R9"));
  reg.items.push_back(item("I2", "R1", cc::RiskStatus::mitigated));
  reg.items.back().mitigations = {"SR404"};
  reg.requirements.push_back({"SR1", "text", cc::Target::from_string("Nope.G1"), {}});
  std::set<std::string> codes;
  for (const auto& d : cc::check_register(s, reg)) codes.insert(d.code);
  CHECK(codes == std::set<std::string>{"R101", "R104"});

  const auto cov = cc::coverage(s, reg);
  CHECK(cov.covered == 1);
  CHECK_FALSE(cov.diagnostics.empty());
}

TEST_CASE("coverage never drops when an item is added") {
  const auto s = cctest::ferry_spec();
  const auto targets = cc::assurance_targets(s);
  cctest::Rng rng(12);
  for (int round = 0; round < 50; ++round) {
    cc::RiskRegister reg;
    double last = 0.0;
    for (int i = 0; i < 20; ++i) {
      reg.items.push_back(item("I" + std::to_string(i), targets[rng() % targets.size()].ref));
      const auto now = cc::coverage(s, reg).fraction();
      CHECK(now >= last);
      last = now;
    }
  }
}

TEST_CASE("safety requirement tracing") {
  cc::RiskRegister reg;
  reg.requirements.push_back({"SR1", "r", cc::Target::from_string("MPCS.G2"), {}});
  const cc::CaseSet tagged({module_with_claim("MPCS-G2-case", cc::Target::from_string("MPCS.G2"), {"SR1"})});
  CHECK(cc::trace_safety_requirements(reg, tagged).empty());

  const cc::CaseSet untagged({module_with_claim("MPCS-G2-case", cc::Target::from_string("MPCS.G2"), {})});
  const auto findings = cc::trace_safety_requirements(reg, untagged);
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].code == "R201");
  CHECK(findings[0].message.find("SR1") != std::string::npos);
  CHECK(findings[0].message.find("MPCS-G2-case") != std::string::npos);

  CHECK(cc::trace_safety_requirements({}, untagged).empty());
  CHECK(cc::trace_safety_requirements(reg, cc::CaseSet{}).size() == 1);
}

TEST_CASE("trace findings are exactly the untagged requirements") {
  cctest::Rng rng(4);
  const auto s = cctest::ferry_spec();
  const auto targets = cc::assurance_targets(s);
  for (int round = 0; round < 100; ++round) {
    cc::RiskRegister reg;
    std::vector<cc::AssuranceModule> modules;
    std::set<std::string> expected;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto sr = "SR" + std::to_string(t);
      reg.requirements.push_back({sr, "r", targets[t], {}});
      const bool tag = rng() % 2 == 0;
      if (!tag) expected.insert(sr);
      modules.push_back(module_with_claim("M" + std::to_string(t), targets[t], tag ? std::vector<std::string>{sr}
                                                                                  : std::vector<std::string>{}));
    }
    std::set<std::string> actual;
    for (const auto& d : cc::trace_safety_requirements(reg, cc::CaseSet(modules)))
      for (const auto& sr : reg.requirements)
        if (d.message.find(sr.id + " ") != std::string::npos) actual.insert(sr.id);
    CHECK(actual == expected);
  }
}

TEST_CASE("ferry register traces into the ferry case") {
  CHECK(cc::trace_safety_requirements(cctest::ferry_register(), cctest::ferry_cases()).empty());
}
