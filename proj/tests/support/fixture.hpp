#pragma once

#include <filesystem>
#include <string>

#include "contractcase/case_files.hpp"
#include "contractcase/spec_dsl.hpp"

namespace cctest {

/// Path under the shipped data/ directory.
std::filesystem::path data_path(const std::string& relative);

/// Path under tests/golden.
std::filesystem::path golden_path(const std::string& name);

std::string read_file(const std::filesystem::path& path);

/// Parses a specification from text; aborts the test binary on failure so
/// fixtures can be used without ceremony.
contractcase::SpecificationStructure spec_from_text(const std::string& text, bool coarse = false);

contractcase::SpecificationStructure ferry_spec(bool coarse = false);
contractcase::CaseSet ferry_cases();
contractcase::AssessmentMap ferry_assessment(const std::string& file = "assessment.yaml");
contractcase::RiskRegister ferry_register();

/// Ferry cases with the module for `target` left out.
contractcase::CaseSet ferry_cases_without(const std::string& module_id);

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path write(const std::string& name, const std::string& content) const;

 private:
  std::filesystem::path path_;
};

}  // namespace cctest
