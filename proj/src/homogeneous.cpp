#include "nevlab/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nevlab {

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(int num_vars, Complex c) {
  MultiPoly p(num_vars);
  if (c != Complex(0.0)) p.terms_.emplace(Exponents(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars)
    throw Error("DIMENSION_MISMATCH", "variable index out of range");
  MultiPoly p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), Complex(1.0));
  return p;
}

void MultiPoly::flush(double scale) {
  const double threshold = tol::coeff_flush * scale;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= threshold)
      it = terms_.erase(it);
    else
      ++it;
  }
}

void MultiPoly::add_term(const Exponents& e, Complex c) {
  if (static_cast<int>(e.size()) != num_vars_)
    throw Error("DIMENSION_MISMATCH", "exponent vector length mismatch");
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  } else if (c == Complex(0.0)) {
    terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (num_vars_ != o.num_vars_)
    throw Error("DIMENSION_MISMATCH", "adding forms over different spaces");
  MultiPoly out(*this);
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  out.flush(std::max(max_abs_coeff(), o.max_abs_coeff()));
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return *this + o.scaled(Complex(-1.0));
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (num_vars_ != o.num_vars_)
    throw Error("DIMENSION_MISMATCH",
                "multiplying forms over different spaces");
  MultiPoly out(num_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(num_vars_);
      for (int i = 0; i < num_vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  out.flush(max_abs_coeff() * o.max_abs_coeff());
  return out;
}

MultiPoly MultiPoly::scaled(Complex c) const {
  MultiPoly out(num_vars_);
  if (c == Complex(0.0)) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw Error("INVALID_VALUE", "negative power of a form");
  MultiPoly acc = MultiPoly::constant(num_vars_, Complex(1.0));
  for (int i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

Complex MultiPoly::evaluate(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != num_vars_)
    throw Error("DIMENSION_MISMATCH", "evaluation point length mismatch");
  Complex acc(0.0);
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    for (int i = 0; i < num_vars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    acc += m;
  }
  return acc;
}

double MultiPoly::sum_abs_coeffs() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

double MultiPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool MultiPoly::is_homogeneous_of_degree(int d) const {
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
  return true;
}

int MultiPoly::max_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << complex_to_string(c) << ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*w" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

HomogeneousPolynomial::HomogeneousPolynomial(MultiPoly p, int degree)
    : poly_(std::move(p)), degree_(degree) {
  if (degree_ < 1)
    throw Error("INVALID_VALUE", "homogeneous degree must be >= 1");
  if (!poly_.is_homogeneous_of_degree(degree_))
    throw Error("NON_HOMOGENEOUS",
                "form is not homogeneous of the declared degree " +
                    std::to_string(degree_));
}

HomogeneousPolynomial HomogeneousPolynomial::operator*(
    const HomogeneousPolynomial& o) const {
  return HomogeneousPolynomial(poly_ * o.poly_, degree_ + o.degree_);
}

HomogeneousPolynomial HomogeneousPolynomial::scaled(Complex c) const {
  if (c == Complex(0.0))
    throw Error("INVALID_VALUE", "scaling a defining form to zero");
  return HomogeneousPolynomial(poly_.scaled(c), degree_);
}

Complex HomogeneousPolynomial::evaluate(std::span<const Complex> point) const {
  return poly_.evaluate(point);
}

HomogeneousPolynomial power(const HomogeneousPolynomial& q, int e) {
  if (e < 1) throw Error("INVALID_VALUE", "power exponent must be >= 1");
  return HomogeneousPolynomial(q.poly().pow(e), q.degree() * e);
}

std::pair<int, std::vector<HomogeneousPolynomial>> normalize_degrees(
    std::span<const HomogeneousPolynomial> qs) {
  if (qs.empty()) throw Error("EMPTY_LIST", "no forms to normalize");
  long long n = 1;
  for (const auto& q : qs) n = std::lcm(n, static_cast<long long>(q.degree()));
  std::vector<HomogeneousPolynomial> out;
  out.reserve(qs.size());
  for (const auto& q : qs)
    out.push_back(power(q, static_cast<int>(n / q.degree())));
  return {static_cast<int>(n), std::move(out)};
}

Hypersurface build_sum_hypersurface(std::span<const HomogeneousPolynomial> qs,
                                    const std::string& label) {
  if (qs.empty()) throw Error("EMPTY_LIST", "no forms to sum");
  const int n = qs[0].degree();
  MultiPoly sum(qs[0].num_vars());
  for (const auto& q : qs) {
    if (q.degree() != n)
      throw Error("INVALID_VALUE", "sum hypersurface needs equal degrees");
    sum = sum + q.poly();
  }
  if (sum.is_zero())
    throw Error("HYPOTHESIS_SUM_ZERO",
                "sum of normalized forms is identically zero");
  return Hypersurface{HomogeneousPolynomial(std::move(sum), n), label};
}

ExpPoly compose(const HomogeneousPolynomial& q,
                std::span<const ExpPoly> components) {
  if (q.num_vars() != static_cast<int>(components.size()))
    throw Error("DIMENSION_MISMATCH",
                "form has " + std::to_string(q.num_vars()) +
                    " variables but curve has " +
                    std::to_string(components.size()) + " components");
  // Power tables per component up to the largest exponent used.
  std::vector<int> max_exp(components.size(), 0);
  for (const auto& [e, c] : q.poly().terms())
    for (std::size_t i = 0; i < components.size(); ++i)
      max_exp[i] = std::max(max_exp[i], e[i]);
  std::vector<std::vector<ExpPoly>> pows(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    pows[i].resize(max_exp[i] + 1);
    pows[i][0] = ExpPoly::constant(Complex(1.0));
    for (int k = 1; k <= max_exp[i]; ++k)
      pows[i][k] = pows[i][k - 1] * components[i];
  }
  ExpPoly acc;
  for (const auto& [e, c] : q.poly().terms()) {
    ExpPoly mono = ExpPoly::constant(c);
    for (std::size_t i = 0; i < components.size(); ++i)
      if (e[i] > 0) mono = mono * pows[i][e[i]];
    acc = acc + mono;
  }
  return acc;
}

std::vector<Exponents> monomials_of_degree(int num_vars, int degree) {
  std::vector<Exponents> out;
  Exponents current(num_vars, 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == num_vars - 1) {
      current[var] = remaining;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      current[var] = k;
      self(self, var + 1, remaining - k);
    }
  };
  if (num_vars >= 1 && degree >= 0) rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

double max_residual_coeff(const MultiPoly& a, const MultiPoly& b) {
  double m = 0.0;
  auto ita = a.terms().begin();
  auto itb = b.terms().begin();
  GradedLex less;
  while (ita != a.terms().end() || itb != b.terms().end()) {
    if (itb == b.terms().end() ||
        (ita != a.terms().end() && less(ita->first, itb->first))) {
      m = std::max(m, std::abs(ita->second));
      ++ita;
    } else if (ita == a.terms().end() || less(itb->first, ita->first)) {
      m = std::max(m, std::abs(itb->second));
      ++itb;
    } else {
      m = std::max(m, std::abs(ita->second - itb->second));
      ++ita;
      ++itb;
    }
  }
  return m;
}

}  // namespace nevlab
