#pragma once

#include "nevlab/nevanlinna.hpp"
#include "nevlab/nullstellensatz.hpp"

namespace nevlab {

enum class Verdict {
  verified_on_grid,
  violated_at_r,
  hypothesis_unmet,
  uniqueness_implied,
  shared_set_fails,
  degeneracy_implied,
  not_implied,
};

std::string verdict_name(Verdict v);
// 0 for verified/implied, 1 for violated/not-implied, 2 for unmet
// hypotheses (including a failed shared-set condition).
int verdict_exit_code(Verdict v);

enum class HypothesisStatus { checked, assumed, violated };
std::string hypothesis_status_name(HypothesisStatus s);

struct HypothesisEntry {
  std::string name;
  HypothesisStatus status;
  std::string detail;
};

struct MarginStats {
  double min_slack = 0.0;        // min over grid of RHS - LHS
  double fitted_constant = 0.0;  // fitted O(1) (identities) or C (slack model)
  double residual_spread = 0.0;  // max - min of the residual on the tail
};

// Structured outcome of one theorem check. LHS/RHS are grid-aligned; extra
// named profiles go in columns. A violated-at-r verdict carries the witness
// radius; the uniqueness check may carry a witness point instead.
struct TheoremReport {
  std::string theorem;
  std::vector<HypothesisEntry> hypotheses;
  std::vector<double> radii;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  MarginStats margins;
  Verdict verdict = Verdict::verified_on_grid;
  std::optional<double> witness_radius;
  std::optional<Complex> witness_point;
  // Grid radii where the inequality failed but the exceptional-set model
  // absorbed the failure.
  std::vector<double> exceptional_radii;
  std::vector<std::string> notes;
};

struct CheckOptions {
  double epsilon = 0.05;       // slope of the o(T_f) slack allowance
  double exceptional_fraction = 0.05;  // tolerated violating grid fraction
  double lhs_scale = 1.0;      // deliberate-violation hook for testing
  int degree_bound = 4;        // algebraic nondegeneracy search bound
  int m_max = 0;               // certificate degree cap; 0 = default
  int truncation = 0;          // 0 = the theorem's own level
  unsigned seed = 0;
};

// Theorem 1.1: d T_f = m_f + N_f + O(1). Verified when the residual stays
// within 0.05 of its tail median.
TheoremReport check_fmt(const HolomorphicCurve& f, const Hypersurface& d,
                        const RGrid& grid, const CheckOptions& opts = {});

// Theorem 1.2 (Cartan): (q - (N+1)) T_f <= sum_j N_f^N(r, H_j) + o(T_f).
TheoremReport check_cartan(const HolomorphicCurve& f,
                           std::span<const Hypersurface> hs, const RGrid& grid,
                           const CheckOptions& opts = {});

// Theorem 1.3: T_f <= sum_j (1/d_j) N_f^{q-1}(r, D_j)
//                    + (1/n) N_f^{q-1}(r, D_{q+1}) + o(T_f).
TheoremReport check_main_smt(const HolomorphicCurve& f,
                             std::span<const Hypersurface> ds,
                             const RGrid& grid, const CheckOptions& opts = {});

// The derived-curve objects of the Theorem 1.3 proof, shared by the
// transfer checks.
struct SmtSetup {
  int n = 1;                                      // lcm of the degrees
  std::vector<HomogeneousPolynomial> normalized;  // Q_j^{n/d_j}
  std::vector<Hypersurface> with_sum;             // normalized D_j plus D_{q+1}
  HolomorphicCurve derived;                       // F into P^{q-1}
  std::vector<Hypersurface> hyperplanes;          // H_0..H_q in P^{q-1}
};
SmtSetup build_smt_setup(const HolomorphicCurve& f,
                         std::span<const Hypersurface> ds,
                         double working_radius);

// Proof identity (41): T_F = n T_f + O(1), same flatness test as the FMT.
TheoremReport check_tf_transfer(const HolomorphicCurve& f,
                                const HolomorphicCurve& derived, int n,
                                const RGrid& grid,
                                const CheckOptions& opts = {});

// Proof identity: N_F^{q-1}(r, H_i) = N_f^{q-1}(r, D_{i+1}) for the
// normalized hypersurfaces including the sum; the two sides compose through
// independent paths and must agree to 1e-6 at every radius.
TheoremReport check_counting_transfer(const HolomorphicCurve& f,
                                      const SmtSetup& setup, const RGrid& grid,
                                      const CheckOptions& opts = {});

// l_j for Theorem 1.4: minimum observed zero multiplicity of Q_j(f) on the
// working disk; +infinity when the composite is zero-free.
struct MultiplicityProfile {
  std::vector<double> l;
};
MultiplicityProfile make_multiplicity_profile(const HolomorphicCurve& f,
                                              std::span<const Hypersurface> ds,
                                              double working_radius);

// Theorem 1.4 arithmetic: S = sum 1/l_j against both the statement
// threshold 1/(q-1) and the proof threshold 1/q; "degeneracy-implied" only
// under the stricter 1/q, with any disagreement flagged.
TheoremReport evaluate_degeneracy_criterion(const MultiplicityProfile& profile,
                                            int q);

// Theorem 1.5 experiment. Order of business: identical curves short-circuit
// to trivial consistency; then the shared set Z (union of all composite
// atlases for both curves) is tested for projective agreement point by
// point; then the degree condition n > 2(q^2-1); then the Eq. (51)/(52)
// counting chain.
TheoremReport run_uniqueness_experiment(const HolomorphicCurve& f,
                                        const HolomorphicCurve& g,
                                        std::span<const Hypersurface> ds,
                                        const RGrid& grid,
                                        const CheckOptions& opts = {});

// Step (c) of the experiment in isolation: the counting chain through the
// first nonvanishing cross pair, reported with its margins.
TheoremReport uniqueness_chain(const HolomorphicCurve& f,
                               const HolomorphicCurve& g,
                               std::span<const Complex> shared_zeros, int q,
                               int n, const RGrid& grid,
                               const CheckOptions& opts = {});

}  // namespace nevlab
