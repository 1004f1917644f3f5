#include "fixture.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#ifndef CONTRACTCASE_DATA_DIR
#error "CONTRACTCASE_DATA_DIR must be defined"
#endif
#ifndef CONTRACTCASE_GOLDEN_DIR
#error "CONTRACTCASE_GOLDEN_DIR must be defined"
#endif

namespace cc = contractcase;

namespace cctest {
namespace {

[[noreturn]] void die(const std::string& what, const cc::Diagnostics& diagnostics) {
  std::cerr << "fixture failure: " << what << '\n';
  for (const auto& d : diagnostics) std::cerr << "  " << d << '\n';
  std::abort();
}

}  // namespace

std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(CONTRACTCASE_DATA_DIR) / relative;
}

std::filesystem::path golden_path(const std::string& name) {
  return std::filesystem::path(CONTRACTCASE_GOLDEN_DIR) / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

cc::SpecificationStructure spec_from_text(const std::string& text, bool coarse) {
  auto parsed = cc::parse_spec({"inline.ccs", text}, {coarse});
  if (!parsed) die("inline spec", parsed.diagnostics());
  return std::move(parsed).value();
}

cc::SpecificationStructure ferry_spec(bool coarse) {
  const auto path = data_path("ferry/ferry.ccs");
  auto parsed = cc::parse_spec({path.string(), read_file(path)}, {coarse});
  if (!parsed) die("ferry spec", parsed.diagnostics());
  return std::move(parsed).value();
}

cc::CaseSet ferry_cases() {
  auto loaded = cc::load_case_set(data_path("ferry/cases"));
  if (!loaded) die("ferry cases", loaded.diagnostics());
  return std::move(loaded).value();
}

cc::AssessmentMap ferry_assessment(const std::string& file) {
  const auto path = data_path("ferry/" + file);
  auto parsed = cc::parse_assessment({path.string(), read_file(path)});
  if (!parsed) die("ferry assessment", parsed.diagnostics());
  return std::move(parsed).value();
}

cc::RiskRegister ferry_register() {
  const auto path = data_path("ferry/register.yaml");
  auto parsed = cc::parse_register({path.string(), read_file(path)});
  if (!parsed) die("ferry register", parsed.diagnostics());
  return std::move(parsed).value();
}

cc::CaseSet ferry_cases_without(const std::string& module_id) {
  const auto all = ferry_cases();
  std::vector<cc::AssuranceModule> kept;
  for (const auto& m : all.modules())
    if (m.id != module_id) kept.push_back(m);
  return cc::CaseSet(std::move(kept));
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("contractcase-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path TempDir::write(const std::string& name, const std::string& content) const {
  const auto file = path_ / name;
  std::filesystem::create_directories(file.parent_path());
  std::ofstream(file, std::ios::binary) << content;
  return file;
}

}  // namespace cctest
