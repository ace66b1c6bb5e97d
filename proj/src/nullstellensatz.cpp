#include "nevlab/nullstellensatz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "nevlab/parallel.hpp"
#include "nevlab/zero_locator.hpp"

namespace nevlab {

int default_certificate_bound(int num_vars, int common_degree) {
  return num_vars * common_degree + 1;
}

namespace {

// Index of each degree-d monomial for row lookup.
std::map<Exponents, int, GradedLex> index_monomials(
    const std::vector<Exponents>& monos) {
  std::map<Exponents, int, GradedLex> index;
  for (std::size_t i = 0; i < monos.size(); ++i)
    index.emplace(monos[i], static_cast<int>(i));
  return index;
}

}  // namespace

NullstellensatzCertificate find_nullstellensatz_certificate(
    std::span<const HomogeneousPolynomial> qs, int variable_index, int m_max) {
  if (qs.empty()) throw Error("EMPTY_LIST", "no forms given");
  const int nv = qs[0].num_vars();
  const int n = qs[0].degree();
  for (const auto& q : qs) {
    if (q.num_vars() != nv)
      throw Error("DIMENSION_MISMATCH", "forms over different spaces");
    if (q.degree() != n)
      throw Error("INVALID_VALUE", "certificate search needs a common degree");
  }
  if (variable_index < 0 || variable_index >= nv)
    throw Error("INVALID_VALUE", "variable index out of range");
  if (m_max <= 0) m_max = default_certificate_bound(nv, n);

  for (int m = n + 1; m <= m_max; ++m) {
    const auto cof_monos = monomials_of_degree(nv, m - n);
    const auto target_monos = monomials_of_degree(nv, m);
    const auto target_index = index_monomials(target_monos);
    const Eigen::Index rows = static_cast<Eigen::Index>(target_monos.size());
    const Eigen::Index cols =
        static_cast<Eigen::Index>(qs.size() * cof_monos.size());

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
    for (std::size_t j = 0; j < qs.size(); ++j) {
      for (std::size_t e = 0; e < cof_monos.size(); ++e) {
        const Eigen::Index col =
            static_cast<Eigen::Index>(j * cof_monos.size() + e);
        for (const auto& [qe, qc] : qs[j].poly().terms()) {
          Exponents t(nv);
          for (int i = 0; i < nv; ++i) t[i] = cof_monos[e][i] + qe[i];
          a(target_index.at(t), col) += qc;
        }
      }
    }
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
    Exponents xk(nv, 0);
    xk[variable_index] = m;
    b(target_index.at(xk)) = Complex(1.0);

    const Eigen::VectorXcd x =
        a.completeOrthogonalDecomposition().solve(b);
    const double residual = (a * x - b).cwiseAbs().maxCoeff();
    if (residual > tol::certificate_residual) continue;

    NullstellensatzCertificate cert;
    cert.variable_index = variable_index;
    cert.exponent = m;
    double coeff_sum = 0.0;
    for (std::size_t j = 0; j < qs.size(); ++j) {
      MultiPoly bkj(nv);
      for (std::size_t e = 0; e < cof_monos.size(); ++e) {
        const Complex c = x(static_cast<Eigen::Index>(j * cof_monos.size() + e));
        if (std::abs(c) > 1e-14) bkj.add_term(cof_monos[e], c);
      }
      coeff_sum += bkj.sum_abs_coeffs();
      cert.cofactors.emplace_back(std::move(bkj), m - n);
    }
    cert.bound_constant = std::max(1.0, nv * coeff_sum);

    // Verify the identity by exact expansion, independent of the solver.
    MultiPoly expansion(nv);
    for (std::size_t j = 0; j < qs.size(); ++j)
      expansion = expansion + cert.cofactors[j].poly() * qs[j].poly();
    MultiPoly target(nv);
    target.add_term(xk, Complex(1.0));
    cert.residual = max_residual_coeff(expansion, target);
    if (cert.residual > tol::certificate_residual) continue;
    return cert;
  }
  throw Error("NO_CERTIFICATE",
              "no certificate up to m_max = " + std::to_string(m_max) +
                  " for variable " + std::to_string(variable_index));
}

CertificateSet find_certificate_set(std::span<const HomogeneousPolynomial> qs,
                                    int m_max) {
  if (qs.empty()) throw Error("EMPTY_LIST", "no forms given");
  CertificateSet set;
  set.forms.assign(qs.begin(), qs.end());
  set.common_degree = qs[0].degree();
  const int nv = qs[0].num_vars();
  set.certificates.resize(nv);
  std::vector<std::exception_ptr> errors(nv);
  parallel_for(nv, [&](std::size_t k) {
    try {
      set.certificates[k] =
          find_nullstellensatz_certificate(qs, static_cast<int>(k), m_max);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  set.c1 = 1.0;
  for (const auto& c : set.certificates)
    set.c1 = std::max(set.c1, c.bound_constant);
  return set;
}

double verify_norm_bound(const CertificateSet& certs,
                         const HolomorphicCurve& f,
                         std::span<const Complex> samples) {
  if (certs.forms.empty() || certs.certificates.empty())
    throw Error("EMPTY_LIST", "empty certificate set");
  const int n = certs.common_degree;
  double worst = 0.0;
  for (const Complex& z : samples) {
    double norm_f = 0.0;
    for (const auto& c : f.components)
      norm_f = std::max(norm_f, std::abs(c.evaluate(z)));
    std::vector<Complex> point(f.components.size());
    for (std::size_t i = 0; i < f.components.size(); ++i)
      point[i] = f.components[i].evaluate(z);
    double max_q = 0.0;
    for (const auto& q : certs.forms)
      max_q = std::max(max_q, std::abs(q.evaluate(point)));
    const double lhs = std::pow(norm_f, n);
    if (max_q <= 1e-14 * lhs)
      throw Error("GENERAL_POSITION_BROKEN",
                  "all composites vanish at sample " + complex_to_string(z));
    worst = std::max(worst, lhs / (certs.c1 * max_q));
  }
  return worst;
}

namespace {

// Univariate restriction p(t) = Q(point(t)) where point(t) substitutes t
// for one coordinate with the others fixed.
UnivariatePoly restrict_to_variable(const HomogeneousPolynomial& q,
                                    std::span<const Complex> fixed,
                                    int var) {
  std::vector<Complex> coeffs(q.degree() + 1, Complex(0.0));
  for (const auto& [e, c] : q.poly().terms()) {
    Complex factor = c;
    for (int i = 0; i < q.num_vars(); ++i) {
      if (i == var) continue;
      for (int k = 0; k < e[i]; ++k) factor *= fixed[i];
    }
    coeffs[e[var]] += factor;
  }
  return UnivariatePoly(std::move(coeffs));
}

double form_scale(const HomogeneousPolynomial& q) {
  return std::max(1e-300, q.sum_abs_coeffs());
}

// Checks |Q(p)| against the form scale for a point normalized to unit max
// modulus.
bool vanishes_at_point(const HomogeneousPolynomial& q,
                       std::span<const Complex> p) {
  return std::abs(q.evaluate(p)) <= 1e-8 * form_scale(q);
}

void normalize_point(std::vector<Complex>& p) {
  double m = 0.0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  if (m > 0.0)
    for (auto& c : p) c /= m;
}

std::optional<std::vector<Complex>> common_zero_p1(
    std::span<const HomogeneousPolynomial> forms) {
  // Candidates: roots of the first form on the chart w1 = 1, plus (1 : 0).
  std::vector<std::vector<Complex>> candidates;
  const UnivariatePoly p =
      restrict_to_variable(forms[0], std::vector<Complex>{Complex(0.0), Complex(1.0)}, 0);
  if (p.is_zero()) return std::nullopt;  // degenerate input; caller retries
  for (const auto& r : polynomial_roots(p))
    candidates.push_back({r, Complex(1.0)});
  candidates.push_back({Complex(1.0), Complex(0.0)});
  for (auto& cand : candidates) {
    normalize_point(cand);
    bool all = true;
    for (const auto& q : forms)
      if (!vanishes_at_point(q, cand)) {
        all = false;
        break;
      }
    if (all) return cand;
  }
  return std::nullopt;
}

// Sylvester resultant of two univariate polynomials (as a number).
Complex sylvester_resultant(const UnivariatePoly& a, const UnivariatePoly& b) {
  const int da = a.degree(), db = b.degree();
  if (da < 0 || db < 0) return Complex(0.0);
  if (da == 0) return std::pow(a.coeff(0), db);
  if (db == 0) return std::pow(b.coeff(0), da);
  const int size = da + db;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < db; ++i)
    for (int k = 0; k <= da; ++k) s(i, i + k) = a.coeff(da - k);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k <= db; ++k) s(db + i, i + k) = b.coeff(db - k);
  return s.determinant();
}

std::optional<std::vector<Complex>> common_zero_p2(
    std::span<const HomogeneousPolynomial> forms, unsigned seed) {
  // Eliminate w2 between the first two forms on the chart w0 = 1: the
  // resultant in t = w1 is interpolated from Sylvester determinants at
  // seeded sample values, then each root is refined to a full point.
  const auto& q1 = forms[0];
  const auto& q2 = forms[1];
  const int dr = q1.degree() * q2.degree();
  std::mt19937_64 rng(seed * 977 + 13);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);

  std::vector<Complex> ts, vals;
  for (int i = 0; i < dr + 1; ++i) {
    ts.emplace_back(uni(rng), uni(rng));
    std::vector<Complex> fixed{Complex(1.0), ts.back(), Complex(0.0)};
    const UnivariatePoly a = restrict_to_variable(q1, fixed, 2);
    const UnivariatePoly b = restrict_to_variable(q2, fixed, 2);
    if (a.degree() != q1.degree() || b.degree() != q2.degree())
      return std::nullopt;  // chart degenerate; caller changes coordinates
    vals.push_back(sylvester_resultant(a, b));
  }
  // Interpolate the resultant as a polynomial in t (Vandermonde solve).
  Eigen::MatrixXcd v(dr + 1, dr + 1);
  Eigen::VectorXcd rhs(dr + 1);
  for (int i = 0; i <= dr; ++i) {
    Complex p(1.0);
    for (int j = 0; j <= dr; ++j) {
      v(i, j) = p;
      p *= ts[i];
    }
    rhs(i) = vals[i];
  }
  const Eigen::VectorXcd coeffs = v.colPivHouseholderQr().solve(rhs);
  std::vector<Complex> cv(coeffs.data(), coeffs.data() + coeffs.size());
  double scale = 0.0;
  for (const auto& c : cv) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return std::nullopt;  // positive-dimensional overlap
  UnivariatePoly res(cv);
  res = res.flushed(1e-10 * scale);
  if (res.is_zero() || res.degree() == 0) return std::nullopt;

  for (const auto& t : polynomial_roots(res)) {
    // Common w2 values over this (1 : t): shared roots of both
    // restrictions, via their gcd.
    std::vector<Complex> fixed{Complex(1.0), t, Complex(0.0)};
    const UnivariatePoly a = restrict_to_variable(q1, fixed, 2);
    const UnivariatePoly b = restrict_to_variable(q2, fixed, 2);
    UnivariatePoly g = poly_gcd(a, b, 1e-7);
    std::vector<Complex> w2s;
    if (g.degree() >= 1)
      w2s = polynomial_roots(g);
    else
      for (const auto& r : polynomial_roots(a)) w2s.push_back(r);
    for (const auto& w2 : w2s) {
      std::vector<Complex> cand{Complex(1.0), t, w2};
      normalize_point(cand);
      bool all = true;
      for (const auto& q : forms)
        if (!vanishes_at_point(q, cand)) {
          all = false;
          break;
        }
      if (all) return cand;
    }
  }
  return std::nullopt;
}

// Substitutes w_i -> sum_j M_ij w_j into the form.
HomogeneousPolynomial apply_linear_change(const HomogeneousPolynomial& q,
                                          const std::vector<std::vector<Complex>>& m) {
  const int nv = q.num_vars();
  std::vector<MultiPoly> images;
  for (int i = 0; i < nv; ++i) {
    MultiPoly img(nv);
    for (int j = 0; j < nv; ++j)
      img = img + MultiPoly::variable(nv, j).scaled(m[i][j]);
    images.push_back(std::move(img));
  }
  MultiPoly out(nv);
  for (const auto& [e, c] : q.poly().terms()) {
    MultiPoly mono = MultiPoly::constant(nv, c);
    for (int i = 0; i < nv; ++i)
      for (int k = 0; k < e[i]; ++k) mono = mono * images[i];
    out = out + mono;
  }
  return HomogeneousPolynomial(out, q.degree());
}

}  // namespace

std::optional<std::vector<Complex>> locate_common_zero(
    std::span<const HomogeneousPolynomial> forms, unsigned seed) {
  if (forms.empty()) return std::nullopt;
  const int nv = forms[0].num_vars();
  if (nv != 2 && nv != 3) return std::nullopt;  // witness search only for N <= 2

  // Retry under deterministic linear coordinate changes so degenerate
  // charts (vanishing leading coefficients, positive-dimensional pair
  // intersections) do not block the search.
  for (unsigned attempt = 0; attempt < 4; ++attempt) {
    std::vector<std::vector<Complex>> m(nv, std::vector<Complex>(nv));
    if (attempt == 0) {
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) m[i][j] = (i == j) ? 1.0 : 0.0;
    } else {
      std::mt19937_64 rng(seed * 131071 + attempt);
      std::uniform_real_distribution<double> uni(-1.0, 1.0);
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
          m[i][j] = Complex((i == j) ? 1.0 : 0.0) +
                    Complex(0.7 * uni(rng), 0.7 * uni(rng));
    }
    std::vector<HomogeneousPolynomial> moved;
    moved.reserve(forms.size());
    for (const auto& q : forms) moved.push_back(apply_linear_change(q, m));

    std::optional<std::vector<Complex>> zero =
        (nv == 2) ? common_zero_p1(moved)
                  : common_zero_p2(moved, seed + attempt);
    if (!zero) continue;
    // Map the point back: original coordinates are M * moved point.
    std::vector<Complex> back(nv, Complex(0.0));
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) back[i] += m[i][j] * (*zero)[j];
    normalize_point(back);
    bool all = true;
    for (const auto& q : forms)
      if (!vanishes_at_point(q, back)) {
        all = false;
        break;
      }
    if (all) return back;
  }
  return std::nullopt;
}

GeneralPositionReport check_general_position(std::span<const Hypersurface> ds,
                                             int dimension, int m_max,
                                             unsigned seed) {
  const int q = static_cast<int>(ds.size());
  const int take = dimension + 1;
  if (q <= dimension)
    throw Error("INVALID_VALUE",
                "general position needs more hypersurfaces than the "
                "dimension");
  for (const auto& d : ds)
    if (d.defining_form.num_vars() != dimension + 1)
      throw Error("DIMENSION_MISMATCH",
                  "hypersurface " + d.label + " lives in the wrong space");

  // Enumerate (N+1)-subsets in lexicographic order.
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(take);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == take) {
      subsets.push_back(pick);
      return;
    }
    for (int i = start; i <= q - (take - depth); ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);

  GeneralPositionReport report;
  report.subsets.resize(subsets.size());
  std::vector<std::exception_ptr> errors(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t s) {
    try {
      std::vector<HomogeneousPolynomial> forms;
      for (int idx : subsets[s]) forms.push_back(ds[idx].defining_form);
      auto [n, normalized] = normalize_degrees(forms);
      (void)n;
      bool ok = true;
      for (int k = 0; k < take && ok; ++k) {
        try {
          find_nullstellensatz_certificate(normalized, k, m_max);
        } catch (const Error& e) {
          if (e.code() != "NO_CERTIFICATE") throw;
          ok = false;
        }
      }
      report.subsets[s] = {subsets[s], ok};
    } catch (...) {
      errors[s] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (report.subsets[s].certified) continue;
    std::vector<HomogeneousPolynomial> forms;
    for (int idx : subsets[s]) forms.push_back(ds[idx].defining_form);
    auto [n, normalized] = normalize_degrees(forms);
    (void)n;
    if (auto zero = locate_common_zero(normalized, seed)) {
      report.status = GeneralPosition::no;
      report.offending_subset = subsets[s];
      report.common_zero = *zero;
      return report;
    }
    if (report.status == GeneralPosition::yes) {
      report.status = GeneralPosition::undecided_at_bound;
      report.offending_subset = subsets[s];
    }
  }
  return report;
}

}  // namespace nevlab
