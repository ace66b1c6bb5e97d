#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nevlab {

using Complex = std::complex<double>;

// Central numeric policy. Values here are contract-level: changing them
// changes which inputs are accepted and how canonical forms are decided.
namespace tol {

// Two frequencies are the same exponential term iff |a-b| <= freq_merge*(1+|a|).
inline constexpr double freq_merge = 1e-10;

// Coefficients at or below coeff_flush * (operation scale) are dropped after
// ring operations so canonical form stays decidable in floating point.
inline constexpr double coeff_flush = 1e-12;

// Least-squares residual threshold for Nullstellensatz certificates.
inline constexpr double certificate_residual = 1e-9;

// Relative singular-value threshold for linear-dependence detection.
inline constexpr double rank_threshold = 1e-8;

// Quadrature: successive trapezoid estimates must agree to this.
inline constexpr double quadrature = 1e-8;

// Radius standoff: a circle passing within this of a zero is perturbed.
inline constexpr double singularity_standoff = 1e-9;

// Zeros closer than this merge into one atlas entry.
inline constexpr double zero_cluster = 1e-8;

}  // namespace tol

// Error with a stable machine-readable code, used across parsing and
// hypothesis checking so the CLI can map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace nevlab
