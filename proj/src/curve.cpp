#include "nevlab/curve.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace nevlab {

namespace {

bool all_polynomial(std::span<const ExpPoly> components) {
  return std::all_of(components.begin(), components.end(),
                     [](const ExpPoly& c) { return c.is_polynomial(); });
}

// |g(z0)| measured against the scale of g on a small circle around z0, so
// the test is invariant under rescaling g.
bool vanishes_at(const ExpPoly& g, Complex z0) {
  const double rho = 0.1;
  double scale = 0.0;
  for (int k = 0; k < 16; ++k) {
    const Complex z =
        z0 + std::polar(rho, 2.0 * std::numbers::pi * k / 16.0);
    scale = std::max(scale, std::abs(g.evaluate(z)));
  }
  if (scale == 0.0) return true;
  return std::abs(g.evaluate(z0)) <= 1e-6 * scale;
}

// Common zeros on the disk by atlas intersection: a common zero must appear
// in the atlas of the first nontrivial component and make every other
// component vanish.
std::optional<Complex> find_common_zero(std::span<const ExpPoly> components,
                                        double working_radius) {
  // A zero-free component rules out common zeros immediately; constants are
  // the cheap case of that.
  std::size_t anchor = components.size();
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].is_zero()) continue;
    if (components[i].is_polynomial() &&
        components[i].polynomial_part().degree() == 0)
      return std::nullopt;
    if (anchor == components.size()) anchor = i;
  }
  if (anchor == components.size()) return std::nullopt;  // caller rejects

  const ZeroAtlas atlas = locate_zeros(components[anchor], working_radius);
  for (const auto& z : atlas.zeros) {
    bool common = true;
    for (std::size_t i = 0; i < components.size() && common; ++i) {
      if (i == anchor || components[i].is_zero()) continue;
      common = vanishes_at(components[i], z.location);
    }
    if (common) return z.location;
  }
  return std::nullopt;
}

}  // namespace

HolomorphicCurve reduce_representation(std::vector<ExpPoly> components,
                                       const std::string& label,
                                       double working_radius) {
  const bool all_zero = std::all_of(
      components.begin(), components.end(),
      [](const ExpPoly& c) { return c.is_zero(); });
  if (components.empty() || all_zero)
    throw Error("INVALID_CURVE", "all curve components are identically zero");

  if (all_polynomial(components)) {
    UnivariatePoly g;
    for (const auto& c : components) {
      if (c.is_zero()) continue;
      g = g.is_zero() ? c.polynomial_part()
                      : poly_gcd(g, c.polynomial_part());
    }
    if (g.degree() >= 1) {
      const double drop = 1e-12;
      for (auto& c : components) {
        if (c.is_zero()) continue;
        auto [q, r] = c.polynomial_part().divrem(
            g, drop * std::max(1.0, c.polynomial_part().max_coeff_modulus()));
        (void)r;
        c = ExpPoly::from_poly(q);
      }
    }
    return HolomorphicCurve{std::move(components), label};
  }

  if (auto z0 = find_common_zero(components, working_radius))
    throw Error("COMMON_ZERO", "components share a zero near " +
                                   complex_to_string(*z0) +
                                   "; representation is not reduced");
  return HolomorphicCurve{std::move(components), label};
}

namespace {

// Coordinates of each ExpPoly in the shared z^k e^{lambda z} basis, columns
// in the given order.
Eigen::MatrixXcd coefficient_matrix(std::span<const ExpPoly> values) {
  struct BasisKey {
    Complex freq;
    int pow;
  };
  std::vector<BasisKey> basis;
  auto basis_index = [&](Complex freq, int pow) -> std::size_t {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].pow == pow && freq_close(basis[i].freq, freq)) return i;
    basis.push_back({freq, pow});
    return basis.size() - 1;
  };
  std::vector<std::vector<std::pair<std::size_t, Complex>>> cols;
  for (const auto& v : values) {
    std::vector<std::pair<std::size_t, Complex>> col;
    for (const auto& t : v.terms())
      for (int k = 0; k <= t.poly.degree(); ++k)
        if (t.poly.coeff(k) != Complex(0.0))
          col.emplace_back(basis_index(t.freq, k), t.poly.coeff(k));
    cols.push_back(std::move(col));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(basis.size()),
      static_cast<Eigen::Index>(values.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [row, c] : cols[j])
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = c;
  return m;
}

// Smallest right-singular vector when the matrix is rank deficient at the
// relative threshold; empty otherwise.
std::vector<Complex> kernel_vector(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return {};
  const double cutoff = tol::rank_threshold * sv(0);
  const Eigen::Index cols = m.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (rank >= cols && sv.size() >= cols) return {};
  std::vector<Complex> kernel(cols);
  for (Eigen::Index i = 0; i < cols; ++i) kernel[i] = svd.matrixV()(i, cols - 1);
  // Flush entries that are pure numerical noise so witnesses stay crisp.
  double maxmod = 0.0;
  for (const auto& c : kernel) maxmod = std::max(maxmod, std::abs(c));
  for (auto& c : kernel)
    if (std::abs(c) <= 1e-10 * maxmod) c = Complex(0.0);
  return kernel;
}

}  // namespace

bool is_linearly_nondegenerate(const HolomorphicCurve& f) {
  return !wronskian(f.components).is_zero();
}

std::vector<Complex> linear_dependence_kernel(const HolomorphicCurve& f) {
  return kernel_vector(coefficient_matrix(f.components));
}

AlgebraicDegeneracyResult is_algebraically_nondegenerate(
    const HolomorphicCurve& f, int degree_bound) {
  if (degree_bound < 1)
    throw Error("INVALID_VALUE", "degree bound must be >= 1");
  const int nv = static_cast<int>(f.components.size());
  const auto monos = monomials_of_degree(nv, degree_bound);

  std::vector<ExpPoly> values;
  values.reserve(monos.size());
  for (const auto& e : monos) {
    ExpPoly m = ExpPoly::constant(Complex(1.0));
    for (int i = 0; i < nv; ++i)
      for (int k = 0; k < e[i]; ++k) m = m * f.components[i];
    values.push_back(std::move(m));
  }

  const auto kernel = kernel_vector(coefficient_matrix(values));
  if (kernel.empty()) return {true, std::nullopt};

  MultiPoly witness(nv);
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (kernel[i] != Complex(0.0)) witness.add_term(monos[i], kernel[i]);
  HomogeneousPolynomial q(witness, degree_bound);
  if (!compose(q, f.components).is_zero())
    throw Error("DIAGNOSTIC",
                "degeneracy kernel did not verify: rank threshold and ring "
                "cleanup are inconsistent for this curve");
  return {false, std::move(q)};
}

HolomorphicCurve build_derived_curve(const HolomorphicCurve& f,
                                     std::span<const HomogeneousPolynomial> qs,
                                     double working_radius) {
  if (qs.empty()) throw Error("EMPTY_LIST", "no forms for the derived curve");
  std::vector<ExpPoly> comps;
  comps.reserve(qs.size());
  for (const auto& q : qs) comps.push_back(compose(q, f.components));

  const bool all_zero = std::all_of(comps.begin(), comps.end(),
                                    [](const ExpPoly& c) { return c.is_zero(); });
  if (all_zero)
    throw Error("INVALID_CURVE", "derived curve is identically zero");
  if (auto z0 = find_common_zero(comps, working_radius))
    throw Error("COMMON_ZERO",
                "derived curve components share a zero near " +
                    complex_to_string(*z0) +
                    "; general position of the forms is broken");
  return HolomorphicCurve{std::move(comps), "F[" + f.label + "]"};
}

ExpPoly compose(const HomogeneousPolynomial& q, const HolomorphicCurve& f) {
  return compose(q, std::span<const ExpPoly>(f.components));
}

}  // namespace nevlab
