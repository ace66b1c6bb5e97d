#pragma once

#include <map>
#include <span>
#include <vector>

#include "nevlab/exp_poly.hpp"

namespace nevlab {

// Exponent vector, one entry per variable w0..wN.
using Exponents = std::vector<int>;

// Graded-lexicographic order: total degree first, then lexicographic on the
// exponent vector. Used everywhere a deterministic monomial order is needed.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over C, not necessarily homogeneous.
// Intermediate type for parsing and for building graded linear systems.
class MultiPoly {
 public:
  MultiPoly() : num_vars_(0) {}
  explicit MultiPoly(int num_vars) : num_vars_(num_vars) {}
  static MultiPoly constant(int num_vars, Complex c);
  static MultiPoly variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Complex, GradedLex>& terms() const {
    return terms_;
  }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(Complex c) const;
  MultiPoly pow(int e) const;

  Complex evaluate(std::span<const Complex> point) const;
  double sum_abs_coeffs() const;
  double max_abs_coeff() const;

  // True iff every stored monomial has total degree d.
  bool is_homogeneous_of_degree(int d) const;
  int max_degree() const;  // -1 for zero

  void add_term(const Exponents& e, Complex c);  // accumulates, then flushes 0
  std::string to_string() const;

 private:
  void flush(double scale);
  int num_vars_;
  std::map<Exponents, Complex, GradedLex> terms_;
};

// Homogeneous form Q of degree d >= 1 in N+1 variables; defines a
// hypersurface in P^N. Invariant: every exponent vector sums to exactly d
// and no zero coefficients are stored.
class HomogeneousPolynomial {
 public:
  // Throws NON_HOMOGENEOUS when some monomial is off-degree.
  HomogeneousPolynomial(MultiPoly p, int degree);

  int num_vars() const { return poly_.num_vars(); }
  int degree() const { return degree_; }
  const MultiPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  HomogeneousPolynomial operator*(const HomogeneousPolynomial& o) const;
  HomogeneousPolynomial scaled(Complex c) const;
  Complex evaluate(std::span<const Complex> point) const;
  double sum_abs_coeffs() const { return poly_.sum_abs_coeffs(); }
  std::string to_string() const { return poly_.to_string(); }

 private:
  MultiPoly poly_;
  int degree_;
};

struct Hypersurface {
  HomogeneousPolynomial defining_form;
  std::string label;
};

// Q^e expanded; rejects e < 1.
HomogeneousPolynomial power(const HomogeneousPolynomial& q, int e);

// n = lcm of the degrees; returns (n, [Q_j^{n/d_j}]), all of degree n.
std::pair<int, std::vector<HomogeneousPolynomial>> normalize_degrees(
    std::span<const HomogeneousPolynomial> qs);

// Hypersurface defined by sum of the (already degree-normalized) forms;
// rejects an identically-zero sum.
Hypersurface build_sum_hypersurface(std::span<const HomogeneousPolynomial> qs,
                                    const std::string& label = "D_sum");

// Exact substitution of curve components into Q, expanded in the ExpPoly
// ring. Rejects a num_vars / component-count mismatch.
ExpPoly compose(const HomogeneousPolynomial& q,
                std::span<const ExpPoly> components);

// All exponent vectors of the given total degree in num_vars variables, in
// graded-lex order.
std::vector<Exponents> monomials_of_degree(int num_vars, int degree);

// Max modulus of the coefficient-wise difference a - b, with no flushing.
double max_residual_coeff(const MultiPoly& a, const MultiPoly& b);

}  // namespace nevlab
