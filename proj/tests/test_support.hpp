#pragma once

#include <random>

#include "nevlab/exp_poly.hpp"
#include "nevlab/homogeneous.hpp"
#include "nevlab/univariate.hpp"

namespace nevlab::testsupport {

inline Complex random_complex(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  return Complex(uni(rng), uni(rng));
}

// Random exponential polynomial: up to max_terms frequencies drawn from a
// small lattice (always including 0 as a candidate), coefficient
// polynomials of degree <= max_deg.
inline ExpPoly random_exp_poly(std::mt19937_64& rng, int max_terms = 3,
                               int max_deg = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> ndeg(0, max_deg);
  std::uniform_int_distribution<int> freq_re(-2, 2);
  std::uniform_int_distribution<int> freq_im(-1, 1);
  ExpPoly acc;
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    const Complex lambda(freq_re(rng), freq_im(rng));
    std::vector<Complex> coeffs;
    const int d = ndeg(rng);
    for (int i = 0; i <= d; ++i) coeffs.push_back(random_complex(rng));
    acc = acc + ExpPoly::exponential(lambda) *
                    ExpPoly::from_poly(UnivariatePoly(coeffs));
  }
  return acc;
}

// Monic polynomial with the given roots.
inline UnivariatePoly poly_from_roots(const std::vector<Complex>& roots) {
  UnivariatePoly p = UnivariatePoly::constant(Complex(1.0));
  for (const auto& r : roots) {
    p = p * UnivariatePoly({-r, Complex(1.0)});
  }
  return p;
}

inline bool approx_complex(Complex a, Complex b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Sparse form from (exponents, coefficient) pairs.
inline HomogeneousPolynomial make_form(
    int num_vars, int degree,
    const std::vector<std::pair<Exponents, Complex>>& terms) {
  MultiPoly p(num_vars);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return HomogeneousPolynomial(p, degree);
}

}  // namespace nevlab::testsupport
