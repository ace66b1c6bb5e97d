#pragma once

#include <vector>

#include "nevlab/types.hpp"

namespace nevlab {

// Dense univariate polynomial over C, coefficients ascending in z.
// Canonical form: empty coefficient list is the zero polynomial, otherwise
// the leading coefficient is nonzero.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Complex> coeffs);
  static UnivariatePoly constant(Complex c);
  static UnivariatePoly variable();  // z

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const;

  UnivariatePoly operator+(const UnivariatePoly& o) const;
  UnivariatePoly operator-(const UnivariatePoly& o) const;
  UnivariatePoly operator*(const UnivariatePoly& o) const;
  UnivariatePoly scaled(Complex c) const;
  UnivariatePoly derivative() const;
  Complex evaluate(Complex z) const;  // Horner

  double max_coeff_modulus() const;

  // Drops coefficients with modulus <= threshold, then re-trims.
  UnivariatePoly flushed(double threshold) const;

  // Quotient and remainder; remainder coefficients at or below
  // drop_tol are flushed so Euclid terminates in floating point.
  std::pair<UnivariatePoly, UnivariatePoly> divrem(const UnivariatePoly& d,
                                                   double drop_tol) const;

  UnivariatePoly monic() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

// Monic gcd by the Euclidean algorithm with relative coefficient tolerance.
// Exact for our desk-scale exactly-representable inputs; the tolerance keeps
// degree decisions stable under round-off.
UnivariatePoly poly_gcd(const UnivariatePoly& a, const UnivariatePoly& b,
                        double rel_tol = 1e-10);

std::string complex_to_string(Complex c);

}  // namespace nevlab
