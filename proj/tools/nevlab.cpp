// nevlab: scenario-driven checks for value-distribution functionals on
// exponential-polynomial curves. See README.md for the scenario grammar.

#include <CLI11.hpp>
#include <iostream>

#include "nevlab/runner.hpp"

namespace {

constexpr const char* kVersion = "nevlab 1.0.0";
constexpr int kUsageExit = 64;

struct CommonFlags {
  std::string scenario_file;
  std::string out_dir;
  std::string grid;
  double epsilon = -1.0;
  int truncation = 0;
  unsigned seed = 0;
  bool seed_set = false;
  bool json_output = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_scenario = true) {
  if (needs_scenario)
    cmd->add_option("scenario", flags.scenario_file, "scenario JSON file")
        ->required();
  cmd->add_option("--out", flags.out_dir, "output directory for reports");
  cmd->add_option("--grid", flags.grid,
                  "grid override: min:max:points[:spacing]");
  cmd->add_option("--epsilon", flags.epsilon, "o(T_f) slack slope");
  cmd->add_option("--truncation", flags.truncation, "counting truncation M");
  cmd->add_option("--seed", flags.seed, "seed for randomized searches")
      ->each([&](const std::string&) { flags.seed_set = true; });
  cmd->add_flag("--json", flags.json_output, "print reports as JSON to stdout");
}

nevlab::Scenario load_with_overrides(const CommonFlags& flags) {
  nevlab::Scenario s = nevlab::load_scenario(flags.scenario_file);
  if (!flags.grid.empty()) {
    nevlab::GridSpec g;
    char spacing[16] = "geometric";
    const int n = std::sscanf(flags.grid.c_str(), "%lf:%lf:%d:%15s", &g.r_min,
                              &g.r_max, &g.points, spacing);
    if (n < 3)
      throw nevlab::Error("INVALID_VALUE",
                          "grid override must be min:max:points[:spacing]");
    g.spacing = spacing;
    s.grid = g;
  }
  for (auto& c : s.checks) {
    if (flags.epsilon >= 0.0) c.options.epsilon = flags.epsilon;
    if (flags.truncation >= 1) c.options.truncation = flags.truncation;
    if (flags.seed_set) c.options.seed = flags.seed;
  }
  if (flags.seed_set) s.seed = flags.seed;
  return s;
}

// Filter to one check type; when the scenario has no such check, synthesize
// one from the flags so the thin wrappers work on bare object files.
int run_filtered(const CommonFlags& flags, const std::string& type,
                 const std::vector<std::string>& curves,
                 const std::vector<std::string>& hypersurfaces,
                 int variable_index) {
  nevlab::Scenario s = load_with_overrides(flags);
  std::vector<nevlab::CheckSpec> filtered;
  for (const auto& c : s.checks)
    if (c.type == type) filtered.push_back(c);
  if (filtered.empty()) {
    nevlab::CheckSpec synth;
    synth.type = type;
    synth.curves = curves;
    synth.hypersurfaces = hypersurfaces;
    synth.variable_index = variable_index;
    synth.options.seed = s.seed;
    if (flags.epsilon >= 0.0) synth.options.epsilon = flags.epsilon;
    if (flags.truncation >= 1) synth.options.truncation = flags.truncation;
    if (synth.curves.empty() && !s.curves.empty() && type != "general-position" &&
        type != "certificate")
      synth.curves.push_back(s.curves.front().label);
    if (type == "uniqueness" && synth.curves.size() < 2 && s.curves.size() >= 2)
      synth.curves.push_back(s.curves[1].label);
    if (type == "fmt" && synth.hypersurfaces.empty() && !s.hypersurfaces.empty())
      synth.hypersurfaces.push_back(s.hypersurfaces.front().label);
    filtered.push_back(synth);
  } else if (!curves.empty() || !hypersurfaces.empty() || variable_index >= 0) {
    for (auto& c : filtered) {
      if (!curves.empty()) c.curves = curves;
      if (!hypersurfaces.empty()) c.hypersurfaces = hypersurfaces;
      if (variable_index >= 0) c.variable_index = variable_index;
    }
  }
  s.checks = filtered;
  std::vector<nevlab::CheckResult> results;
  const int code = nevlab::run_scenario(s, flags.out_dir, &results);
  for (const auto& r : results) {
    if (flags.json_output)
      std::cout << r.report_json;
    else
      std::cout << r.report_text << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nevlab: numerical checks of value-distribution inequalities for "
      "holomorphic curves with exponential-polynomial components"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  CommonFlags flags;
  std::vector<std::string> curves, hypersurfaces;
  std::vector<std::string> subset_labels;
  int variable_index = -1;

  auto* run = app.add_subcommand("run", "run every check in a scenario");
  add_common(run, flags);

  auto* fmt = app.add_subcommand("fmt-check", "First Main Theorem residual");
  add_common(fmt, flags);
  fmt->add_option("--curve", curves, "curve label");
  fmt->add_option("--hypersurface", hypersurfaces, "hypersurface label");

  auto* cartan = app.add_subcommand("cartan-check",
                                    "Cartan second main theorem (hyperplanes)");
  add_common(cartan, flags);
  cartan->add_option("--curve", curves, "curve label");
  cartan->add_option("--hypersurfaces", hypersurfaces, "hyperplane labels");

  auto* smt = app.add_subcommand("main-smt",
                                 "second main theorem for hypersurfaces");
  add_common(smt, flags);
  smt->add_option("--curve", curves, "curve label");
  smt->add_option("--hypersurfaces", hypersurfaces, "hypersurface labels");

  auto* degen = app.add_subcommand("degeneracy",
                                   "multiplicity degeneracy criterion");
  add_common(degen, flags);
  degen->add_option("--curve", curves, "curve label");
  degen->add_option("--hypersurfaces", hypersurfaces, "hypersurface labels");

  auto* uniq = app.add_subcommand("uniqueness", "uniqueness experiment");
  add_common(uniq, flags);
  uniq->add_option("--curves", curves, "two curve labels");
  uniq->add_option("--hypersurfaces", hypersurfaces, "hypersurface labels");

  auto* gp = app.add_subcommand("general-position",
                                "certificate table for all (N+1)-subsets");
  add_common(gp, flags);
  gp->add_option("--hypersurfaces", hypersurfaces, "hypersurface labels");

  auto* cert = app.add_subcommand("certificate",
                                  "Nullstellensatz certificate for a subset");
  add_common(cert, flags);
  cert->add_option("--subset", subset_labels,
                   "hypersurface labels forming the subset");
  cert->add_option("--var", variable_index, "variable index k");

  auto* profile = app.add_subcommand("profile", "CSV of T_f (and m, N)");
  add_common(profile, flags);
  profile->add_option("--curve", curves, "curve label");
  profile->add_option("--hypersurface", hypersurfaces, "hypersurface label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (run->parsed()) {
      nevlab::Scenario s = load_with_overrides(flags);
      std::vector<nevlab::CheckResult> results;
      const int code = nevlab::run_scenario(s, flags.out_dir, &results);
      for (const auto& r : results) {
        if (flags.json_output)
          std::cout << r.report_json;
        else
          std::cout << "[" << r.name << "] " << r.verdict << "\n";
      }
      return code;
    }
    if (fmt->parsed()) return run_filtered(flags, "fmt", curves, hypersurfaces, -1);
    if (cartan->parsed())
      return run_filtered(flags, "cartan", curves, hypersurfaces, -1);
    if (smt->parsed())
      return run_filtered(flags, "main-smt", curves, hypersurfaces, -1);
    if (degen->parsed())
      return run_filtered(flags, "degeneracy", curves, hypersurfaces, -1);
    if (uniq->parsed())
      return run_filtered(flags, "uniqueness", curves, hypersurfaces, -1);
    if (gp->parsed())
      return run_filtered(flags, "general-position", {}, hypersurfaces, -1);
    if (cert->parsed())
      return run_filtered(flags, "certificate", {}, subset_labels,
                          variable_index < 0 ? 0 : variable_index);
    if (profile->parsed())
      return run_filtered(flags, "profile", curves, hypersurfaces, -1);
    std::cout << app.help();
    return kUsageExit;
  } catch (const nevlab::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    if (e.code() == "PARSE_ERROR" || e.code() == "UNRESOLVED_REFERENCE" ||
        e.code() == "NON_HOMOGENEOUS" || e.code() == "DIMENSION_MISMATCH" ||
        e.code() == "INVALID_VALUE" || e.code() == "IO_ERROR")
      return kUsageExit;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
