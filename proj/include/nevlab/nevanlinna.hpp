#pragma once

#include <functional>
#include <map>

#include "nevlab/curve.hpp"

namespace nevlab {

// Truncation level for counting functions; kUntruncated means full
// multiplicities.
inline constexpr int kUntruncated = 0;

struct RGrid {
  std::vector<double> radii;  // strictly increasing, all > 0

  static RGrid geometric(double r_min, double r_max, int points);
  static RGrid linear(double r_min, double r_max, int points);
  double r_max() const { return radii.back(); }
};

// Sampled functionals over a grid: tag -> values aligned with the radii.
// Tags follow the conventional names: "T_f", "m_f(D)", "N_f(D)", "N_f^M(D)".
struct NevanlinnaProfile {
  RGrid grid;
  std::vector<std::pair<std::string, std::vector<double>>> values;

  void add(const std::string& tag, std::vector<double> v);
  const std::vector<double>* find(const std::string& tag) const;
  // Header row "r,<tag>,...", then one row per radius, 17 significant
  // digits.
  std::string to_csv() const;
};

// T_f(r): circle average of log max_i |f_i|, trapezoid with node doubling.
std::vector<double> characteristic(const HolomorphicCurve& f,
                                   const RGrid& grid);

// m_f(r, D): circle average of d*log||f|| - log|Q(f)|, with the radius
// nudged by the standoff policy when it passes within 1e-9 of a zero of
// Q(f). Rejects Q(f) identically zero.
std::vector<double> proximity(const HolomorphicCurve& f, const Hypersurface& d,
                              const RGrid& grid);

// N_f^M(r, D) via the closed-form zero sum over one atlas computed at the
// top radius. M = kUntruncated gives N_f.
std::vector<double> counting(const HolomorphicCurve& f, const Hypersurface& d,
                             const RGrid& grid, int truncation = kUntruncated);

// Shared-atlas bundle: proximity and any number of counting truncations
// from a single zero atlas of Q(f).
struct HypersurfaceProfile {
  ZeroAtlas atlas;
  std::vector<double> proximity;
  std::vector<double> counting_full;
  std::map<int, std::vector<double>> counting_truncated;
};

HypersurfaceProfile hypersurface_profile(const HolomorphicCurve& f,
                                         const Hypersurface& d,
                                         const RGrid& grid,
                                         const std::vector<int>& truncations,
                                         bool with_proximity = true);

// Closed-form N^M from an atlas at an effective radius (standoff applied by
// the caller): sum over zeros of min(mult, M) * log(r/|a|), origin handled
// via mult0 * log r.
double counting_from_atlas(const ZeroAtlas& atlas, double r, int truncation);

// Effective radius under the standoff policy: nudged outward while a zero
// modulus lies within the standoff.
double effective_radius(const ZeroAtlas& atlas, double r);

// Circle average of a real integrand over |z| = r by periodic trapezoid
// with node doubling (256 start, 2^18 cap, successive difference 1e-8).
double circle_average(double r, const std::function<double(Complex)>& fn);

}  // namespace nevlab
