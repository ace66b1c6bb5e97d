#pragma once

#include <optional>

#include "nevlab/exp_poly.hpp"

namespace nevlab {

// Zeros with multiplicities of an ExpPoly inside the closed disk
// |z| <= disk_radius. Entries are sorted by (|z|, arg z in [0, 2pi)) and
// pairwise distinct beyond the clustering tolerance; the total multiplicity
// is cross-checked against the winding number on the outer circle.
struct ZeroAtlas {
  enum class Backend { exact, analytic };

  struct Zero {
    Complex location;
    int multiplicity;
  };

  double disk_radius = 0.0;
  // Nonzero when the requested radius had a zero within the standoff and
  // was nudged outward; disk_radius already includes the nudge.
  double radius_perturbation = 0.0;
  std::vector<Zero> zeros;
  Backend backend = Backend::exact;

  int total_multiplicity() const;
  // Total multiplicity of zeros with |z| <= t, truncated at cap (cap < 1
  // means no truncation). This is n_f^M(t, D) on the atlas.
  int count_up_to(double t, int cap = 0) const;
};

// Roots of each square-free factor from repeated gcd with the derivative;
// assigns multiplicities; keeps |z| <= r. Rejects the zero polynomial.
ZeroAtlas locate_zeros_polynomial(const UnivariatePoly& p, double r);

// (1/2 pi i) * contour integral of g'/g over |z - center| = radius, by
// trapezoidal quadrature with node doubling until the estimate settles
// within 0.25 of an integer. Throws ZERO_NEAR_CONTOUR when a zero sits too
// close to the circle for the quadrature to converge.
int winding_number(const ExpPoly& g, Complex center, double radius);

// Recursive subdivision over the disk bounding box: winding-0 cells are
// discarded, winding-1 cells refined and Newton-polished into simple zeros,
// higher-winding cells refined until they split or hit the cluster
// resolution limit. Requires g not identically zero.
ZeroAtlas locate_zeros_analytic(const ExpPoly& g, double r);

// Dispatches to the exact backend for plain polynomials, the analytic
// backend otherwise. The substrate of every counting function.
ZeroAtlas locate_zeros(const ExpPoly& g, double r);

// All complex roots of p (multiplicities ignored), Durand-Kerner iteration
// with Newton polish. Intended for square-free inputs.
std::vector<Complex> polynomial_roots(const UnivariatePoly& p);

}  // namespace nevlab
