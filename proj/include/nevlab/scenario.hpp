#pragma once

#include <filesystem>

#include "nevlab/theorems.hpp"

namespace nevlab {

struct GridSpec {
  double r_min = 2.0;
  double r_max = 50.0;
  int points = 40;
  std::string spacing = "geometric";  // or "linear"

  RGrid make() const;
  bool operator==(const GridSpec&) const = default;
};

struct CurveSpec {
  std::string label;
  std::vector<std::string> component_exprs;
  HolomorphicCurve curve;  // parsed and reduced
};

struct HypersurfaceSpec {
  std::string label;
  std::string form_expr;
  int degree = 1;
  std::optional<Hypersurface> hypersurface;  // parsed
};

struct CheckSpec {
  std::string type;  // fmt | cartan | main-smt | tf-transfer |
                     // counting-transfer | degeneracy | uniqueness |
                     // general-position | certificate | profile
  std::vector<std::string> curves;
  std::vector<std::string> hypersurfaces;
  std::vector<double> multiplicities;  // explicit l_j for degeneracy
  int q = 0;                           // for arithmetic-only degeneracy
  int variable_index = -1;             // for certificate
  CheckOptions options;

  bool operator==(const CheckSpec&) const;
};

struct Scenario {
  int dimension = 1;  // N; curves have N+1 components
  GridSpec grid;
  std::vector<CurveSpec> curves;
  std::vector<HypersurfaceSpec> hypersurfaces;
  std::vector<CheckSpec> checks;
  unsigned seed = 0;

  const CurveSpec& curve(const std::string& label) const;
  const HypersurfaceSpec& hypersurface(const std::string& label) const;

  bool operator==(const Scenario&) const;
};

// Parses and fully resolves a scenario document. Diagnostics carry a
// distinct code: PARSE_ERROR, UNRESOLVED_REFERENCE, NON_HOMOGENEOUS,
// DIMENSION_MISMATCH, INVALID_VALUE.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& file);

// Canonical JSON (original expression strings, fixed key order).
std::string serialize_scenario(const Scenario& s);

}  // namespace nevlab
