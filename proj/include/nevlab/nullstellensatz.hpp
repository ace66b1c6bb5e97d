#pragma once

#include <optional>

#include "nevlab/curve.hpp"
#include "nevlab/homogeneous.hpp"

namespace nevlab {

// Witness that x_k^{m_k} lies in the ideal generated by the N+1 forms:
// x_k^{m_k} = sum_j cofactors[j] * Q_j, cofactors of degree m_k - n.
struct NullstellensatzCertificate {
  int variable_index = 0;
  int exponent = 0;  // m_k > n
  std::vector<HomogeneousPolynomial> cofactors;
  // (N+1) * sum_j (sum of |coefficients of cofactors[j]|), clamped to >= 1;
  // valid in ||f||^n <= c1 * max_j |Q_j(f)| because each |b_kj(f)| is at
  // most (sum |coeffs|) * ||f||^{m_k - n}.
  double bound_constant = 1.0;
  double residual = 0.0;  // max re-expansion coefficient error
};

// All N+1 certificates for one form family, with the shared norm-bound
// constant c1 = max_k of the per-variable constants.
struct CertificateSet {
  std::vector<HomogeneousPolynomial> forms;  // common degree n
  std::vector<NullstellensatzCertificate> certificates;
  int common_degree = 0;
  double c1 = 1.0;
};

// Smallest m_k in (n, m_max] whose graded linear system solves with
// least-squares residual <= 1e-9. Throws NO_CERTIFICATE when none does
// (either not general position or the bound is too small; the caller
// distinguishes).
NullstellensatzCertificate find_nullstellensatz_certificate(
    std::span<const HomogeneousPolynomial> qs, int variable_index, int m_max);

// Default search cap (N+1)*n + 1 when the caller passes m_max <= 0.
int default_certificate_bound(int num_vars, int common_degree);

CertificateSet find_certificate_set(std::span<const HomogeneousPolynomial> qs,
                                    int m_max = 0);

// Max over samples of ||f(z)||^n / (c1 * max_j |Q_j(f(z))|). Rejects a
// sample where every composite vanishes (contradicts general position for a
// reduced curve).
double verify_norm_bound(const CertificateSet& certs,
                         const HolomorphicCurve& f,
                         std::span<const Complex> samples);

enum class GeneralPosition { yes, no, undecided_at_bound };

struct GeneralPositionReport {
  GeneralPosition status = GeneralPosition::yes;
  // Subset of hypersurface indices that failed, when status != yes.
  std::vector<int> offending_subset;
  // Located common projective zero (length N+1), when status == no.
  std::vector<Complex> common_zero;
  // Per-subset certificate outcome in subset enumeration order.
  struct SubsetOutcome {
    std::vector<int> indices;
    bool certified = false;
  };
  std::vector<SubsetOutcome> subsets;
};

// Every (N+1)-subset of the hypersurfaces must admit certificates for every
// variable (after degree normalization within the subset). A failed search
// is "no" only when a common zero is actually located (N <= 2); otherwise
// the subset is undecided at the bound.
GeneralPositionReport check_general_position(std::span<const Hypersurface> ds,
                                             int dimension, int m_max = 0,
                                             unsigned seed = 0);

// Common projective zero of the forms, for N <= 2, by univariate root
// intersection (N = 1) or resultant elimination (N = 2). The seed controls
// the deterministic coordinate changes used on degenerate charts.
std::optional<std::vector<Complex>> locate_common_zero(
    std::span<const HomogeneousPolynomial> forms, unsigned seed = 0);

}  // namespace nevlab
