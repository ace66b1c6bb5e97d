#pragma once

#include "nevlab/scenario.hpp"

namespace nevlab {

// One executed check: the structured report plus its serializations.
struct CheckResult {
  std::string name;     // NN-type, directory-friendly
  std::string verdict;  // verdict string as reported
  int exit_code = 0;
  std::string report_json;
  std::string report_text;
  std::string profile_csv;
};

// Runs one check spec against the scenario's objects.
CheckResult run_check(const Scenario& scenario, const CheckSpec& check,
                      int index);

// Runs every check; when out_dir is nonempty, writes per-check
// <out>/<name>/{report.json,report.txt,profile.csv} atomically. Exit code:
// 2 when any check ends hypothesis-unmet (or undecided), else 1 when any
// inequality is violated (or a property is false), else 0.
int run_scenario(const Scenario& scenario,
                 const std::filesystem::path& out_dir,
                 std::vector<CheckResult>* results = nullptr);

// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace nevlab
