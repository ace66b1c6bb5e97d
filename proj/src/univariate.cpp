#include "nevlab/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nevlab {

UnivariatePoly::UnivariatePoly(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

UnivariatePoly UnivariatePoly::constant(Complex c) {
  return UnivariatePoly({c});
}

UnivariatePoly UnivariatePoly::variable() {
  return UnivariatePoly({Complex(0.0), Complex(1.0)});
}

void UnivariatePoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

Complex UnivariatePoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0);
  return coeffs_[k];
}

Complex UnivariatePoly::leading() const {
  return coeffs_.empty() ? Complex(0.0) : coeffs_.back();
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
  std::vector<Complex> out(std::max(coeffs_.size(), o.coeffs_.size()),
                           Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
  std::vector<Complex> out(std::max(coeffs_.size(), o.coeffs_.size()),
                           Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
  if (coeffs_.empty() || o.coeffs_.empty()) return UnivariatePoly();
  std::vector<Complex> out(coeffs_.size() + o.coeffs_.size() - 1,
                           Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * o.coeffs_[j];
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::scaled(Complex c) const {
  if (c == Complex(0.0)) return UnivariatePoly();
  std::vector<Complex> out(coeffs_);
  for (auto& x : out) x *= c;
  return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (coeffs_.size() <= 1) return UnivariatePoly();
  std::vector<Complex> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    out[i - 1] = coeffs_[i] * Complex(static_cast<double>(i));
  return UnivariatePoly(std::move(out));
}

Complex UnivariatePoly::evaluate(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * z + *it;
  return acc;
}

double UnivariatePoly::max_coeff_modulus() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

UnivariatePoly UnivariatePoly::flushed(double threshold) const {
  std::vector<Complex> out(coeffs_);
  for (auto& c : out)
    if (std::abs(c) <= threshold) c = Complex(0.0);
  return UnivariatePoly(std::move(out));
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divrem(
    const UnivariatePoly& d, double drop_tol) const {
  if (d.is_zero()) throw Error("DIV_BY_ZERO", "polynomial division by zero");
  if (degree() < d.degree()) return {UnivariatePoly(), *this};

  std::vector<Complex> rem(coeffs_);
  std::vector<Complex> quot(degree() - d.degree() + 1, Complex(0.0));
  const Complex lead = d.leading();
  for (int k = degree(); k >= d.degree(); --k) {
    Complex factor = rem[k] / lead;
    quot[k - d.degree()] = factor;
    for (int j = 0; j <= d.degree(); ++j)
      rem[k - d.degree() + j] -= factor * d.coeffs_[j];
    rem[k] = Complex(0.0);  // eliminate exactly
  }
  UnivariatePoly r(std::move(rem));
  return {UnivariatePoly(std::move(quot)), r.flushed(drop_tol)};
}

UnivariatePoly UnivariatePoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Complex(1.0) / leading());
}

UnivariatePoly poly_gcd(const UnivariatePoly& a, const UnivariatePoly& b,
                        double rel_tol) {
  const double scale =
      std::max({1.0, a.max_coeff_modulus(), b.max_coeff_modulus()});
  const double drop = rel_tol * scale;
  UnivariatePoly x = a.flushed(drop).monic();
  UnivariatePoly y = b.flushed(drop).monic();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    auto [q, r] = x.divrem(y, drop);
    (void)q;
    x = std::move(y);
    y = r.monic();
    // renormalizing each remainder keeps coefficient growth in check
  }
  return x.monic();
}

std::string complex_to_string(Complex c) {
  char buf[80];
  const double re = c.real(), im = c.imag();
  if (im == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", re);
    return buf;
  }
  if (re == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17gi", im);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", re, im);
  return buf;
}

std::string UnivariatePoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == Complex(0.0)) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << complex_to_string(coeffs_[k]) << ")";
    if (k == 1)
      os << "*z";
    else if (k > 1)
      os << "*z^" << k;
  }
  return os.str();
}

}  // namespace nevlab
