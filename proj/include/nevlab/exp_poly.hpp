#pragma once

#include <span>
#include <vector>

#include "nevlab/univariate.hpp"

namespace nevlab {

// Exponential polynomial: a finite sum  sum_i p_i(z) * exp(lambda_i z)  with
// pairwise distinct frequencies lambda_i and nonzero coefficient polynomials
// p_i. Plain polynomials are the lambda = 0 special case. The class {z^k
// e^{lambda z}} with distinct lambda is linearly independent over C, so the
// canonical form (no zero polynomials, merged frequencies) makes identity
// testing exact.
//
// Values are immutable after construction; every operation is a pure
// function returning a fresh value.
class ExpPoly {
 public:
  struct Term {
    Complex freq;
    UnivariatePoly poly;
  };

  ExpPoly() = default;  // zero

  static ExpPoly constant(Complex c);
  static ExpPoly variable();                      // z
  static ExpPoly from_poly(UnivariatePoly p);     // p(z)
  static ExpPoly exponential(Complex lambda,      // c * e^{lambda z}
                             Complex c = Complex(1.0));

  // Terms sorted by (Re freq, Im freq); canonical.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // True when the only frequency is (near) zero, i.e. a plain polynomial.
  bool is_polynomial() const;
  // The lambda = 0 coefficient polynomial (zero polynomial if absent).
  UnivariatePoly polynomial_part() const;

  ExpPoly operator+(const ExpPoly& o) const;
  ExpPoly operator-(const ExpPoly& o) const;
  ExpPoly operator*(const ExpPoly& o) const;
  ExpPoly scaled(Complex c) const;
  ExpPoly derivative() const;  // term-wise (p' + lambda p) e^{lambda z}

  Complex evaluate(Complex z) const;

  // Largest coefficient modulus over all terms; 0 for the zero value.
  double max_coeff_modulus() const;

  std::string to_string() const;

 private:
  // Accumulates c * p(z) e^{lambda z}, merging lambda into an existing
  // frequency when within tolerance, and records `scale` as the magnitude
  // of the contribution for later flushing.
  friend class ExpPolyBuilder;
  std::vector<Term> terms_;
};

// Accumulator for sums of terms. Tracks, per frequency, the largest
// coefficient magnitude that ever contributed, so that round-off residues of
// exact cancellations can be flushed relative to the size of the computation
// rather than the (possibly tiny) result.
class ExpPolyBuilder {
 public:
  void add(Complex freq, const UnivariatePoly& poly, double scale);
  ExpPoly build() &&;

 private:
  struct Slot {
    Complex freq;
    UnivariatePoly poly;
    double scale = 0.0;
  };
  std::vector<Slot> slots_;  // sorted by (re, im)
};

// True iff |a-b| <= freq_merge * (1 + |a|).
bool freq_close(Complex a, Complex b);

// Determinant of the k x k matrix whose row i holds the (i-1)-th derivatives
// of the entries, expanded exactly in the ExpPoly ring.
ExpPoly wronskian(std::span<const ExpPoly> fs);

}  // namespace nevlab
