#pragma once

#include <optional>
#include <string>

#include "nevlab/homogeneous.hpp"
#include "nevlab/zero_locator.hpp"

namespace nevlab {

// A holomorphic curve C -> P^N in a reduced representation: N+1 ExpPoly
// components without common zeros. Construct through reduce_representation
// so the invariant actually holds.
struct HolomorphicCurve {
  std::vector<ExpPoly> components;
  std::string label;

  int dimension() const { return static_cast<int>(components.size()) - 1; }
};

// Builds a reduced representation. Pure polynomial components have their
// monic gcd divided out exactly; anything else is verified to have no
// common zero on |z| <= working_radius via zero-atlas intersection and
// passed through. Rejects an all-zero component list and a detected common
// zero (with its location in the message).
HolomorphicCurve reduce_representation(std::vector<ExpPoly> components,
                                       const std::string& label,
                                       double working_radius);

// Wronskian test: exact in the ExpPoly ring.
bool is_linearly_nondegenerate(const HolomorphicCurve& f);

// With is_linearly_nondegenerate(f) == false, a nonzero coefficient vector
// c with sum_i c_i f_i == 0 (found by the kernel of the coefficient matrix).
std::vector<Complex> linear_dependence_kernel(const HolomorphicCurve& f);

struct AlgebraicDegeneracyResult {
  bool nondegenerate_up_to_bound;
  // Present when dependent: a nonzero form with witness(f) identically 0.
  std::optional<HomogeneousPolynomial> witness;
};

// Tests all degree-D monomials on f for linear independence over C in the
// z^k e^{lambda z} basis. "true" means no relation up to degree D, not a
// proof of nondegeneracy.
AlgebraicDegeneracyResult is_algebraically_nondegenerate(
    const HolomorphicCurve& f, int degree_bound);

// F = (Q_1(f) : ... : Q_q(f)) into P^{q-1}; reducedness follows from
// general position and is spot-verified on the working disk.
HolomorphicCurve build_derived_curve(const HolomorphicCurve& f,
                                     std::span<const HomogeneousPolynomial> qs,
                                     double working_radius);

ExpPoly compose(const HomogeneousPolynomial& q, const HolomorphicCurve& f);

}  // namespace nevlab
