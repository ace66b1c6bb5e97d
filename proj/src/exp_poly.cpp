#include "nevlab/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace nevlab {

bool freq_close(Complex a, Complex b) {
  return std::abs(a - b) <= tol::freq_merge * (1.0 + std::abs(a));
}

namespace {
bool freq_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}
}  // namespace

void ExpPolyBuilder::add(Complex freq, const UnivariatePoly& poly,
                         double scale) {
  if (poly.is_zero() && scale == 0.0) return;
  // Merge into an existing slot within tolerance. Linear scan is fine at
  // desk scale and keeps the merge decision independent of insertion order
  // for well-separated frequencies.
  for (auto& s : slots_) {
    if (freq_close(s.freq, freq)) {
      s.poly = s.poly + poly;
      s.scale = std::max(s.scale, scale);
      return;
    }
  }
  Slot s{freq, poly, scale};
  auto pos = std::lower_bound(
      slots_.begin(), slots_.end(), s,
      [](const Slot& x, const Slot& y) { return freq_less(x.freq, y.freq); });
  slots_.insert(pos, std::move(s));
}

ExpPoly ExpPolyBuilder::build() && {
  ExpPoly out;
  for (auto& s : slots_) {
    UnivariatePoly p = s.poly.flushed(tol::coeff_flush * s.scale);
    // Canonical form also flushes within the term itself.
    p = p.flushed(tol::coeff_flush * p.max_coeff_modulus());
    if (!p.is_zero()) out.terms_.push_back({s.freq, std::move(p)});
  }
  return out;
}

ExpPoly ExpPoly::constant(Complex c) {
  return from_poly(UnivariatePoly::constant(c));
}

ExpPoly ExpPoly::variable() { return from_poly(UnivariatePoly::variable()); }

ExpPoly ExpPoly::from_poly(UnivariatePoly p) {
  ExpPoly out;
  if (!p.is_zero()) out.terms_.push_back({Complex(0.0), std::move(p)});
  return out;
}

ExpPoly ExpPoly::exponential(Complex lambda, Complex c) {
  ExpPoly out;
  if (c != Complex(0.0))
    out.terms_.push_back({lambda, UnivariatePoly::constant(c)});
  return out;
}

bool ExpPoly::is_polynomial() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && freq_close(terms_[0].freq, Complex(0.0));
}

UnivariatePoly ExpPoly::polynomial_part() const {
  for (const auto& t : terms_)
    if (freq_close(t.freq, Complex(0.0))) return t.poly;
  return UnivariatePoly();
}

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
  ExpPolyBuilder b;
  for (const auto& t : terms_) b.add(t.freq, t.poly, t.poly.max_coeff_modulus());
  for (const auto& t : o.terms_)
    b.add(t.freq, t.poly, t.poly.max_coeff_modulus());
  return std::move(b).build();
}

ExpPoly ExpPoly::operator-(const ExpPoly& o) const {
  return *this + o.scaled(Complex(-1.0));
}

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
  ExpPolyBuilder b;
  for (const auto& ta : terms_) {
    const double sa = ta.poly.max_coeff_modulus();
    for (const auto& tb : o.terms_) {
      b.add(ta.freq + tb.freq, ta.poly * tb.poly,
            sa * tb.poly.max_coeff_modulus());
    }
  }
  return std::move(b).build();
}

ExpPoly ExpPoly::scaled(Complex c) const {
  if (c == Complex(0.0)) return ExpPoly();
  ExpPoly out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.freq, t.poly.scaled(c)});
  return out;
}

ExpPoly ExpPoly::derivative() const {
  ExpPolyBuilder b;
  for (const auto& t : terms_) {
    const double scale =
        t.poly.max_coeff_modulus() * (1.0 + std::abs(t.freq));
    b.add(t.freq, t.poly.derivative() + t.poly.scaled(t.freq), scale);
  }
  return std::move(b).build();
}

Complex ExpPoly::evaluate(Complex z) const {
  Complex acc(0.0);
  for (const auto& t : terms_)
    acc += t.poly.evaluate(z) * std::exp(t.freq * z);
  return acc;
}

double ExpPoly::max_coeff_modulus() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.poly.max_coeff_modulus());
  return m;
}

std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << t.poly.to_string() << "]";
    if (t.freq != Complex(0.0))
      os << "*exp((" << complex_to_string(t.freq) << ")z)";
  }
  return os.str();
}

ExpPoly wronskian(std::span<const ExpPoly> fs) {
  const std::size_t k = fs.size();
  if (k == 0) throw Error("EMPTY_LIST", "wronskian of an empty list");

  // rows[i][j] = (i-th derivative of fs[j])
  std::vector<std::vector<ExpPoly>> rows(k, std::vector<ExpPoly>(k));
  for (std::size_t j = 0; j < k; ++j) {
    rows[0][j] = fs[j];
    for (std::size_t i = 1; i < k; ++i) rows[i][j] = rows[i - 1][j].derivative();
  }

  // Laplace expansion along the top remaining row, memoized on the column
  // subset. 2^k subproblems, k <= projective dimension + 1 here.
  std::map<unsigned, ExpPoly> memo;
  auto minor_det = [&](auto&& self, unsigned cols_mask) -> ExpPoly {
    auto it = memo.find(cols_mask);
    if (it != memo.end()) return it->second;
    const int row = static_cast<int>(k) - __builtin_popcount(cols_mask);
    ExpPoly det;
    if (cols_mask == 0) {
      det = ExpPoly::constant(Complex(1.0));
    } else {
      int sign = 1;
      for (std::size_t j = 0; j < k; ++j) {
        const unsigned bit = 1u << j;
        if (!(cols_mask & bit)) continue;
        ExpPoly contrib = rows[row][j] * self(self, cols_mask & ~bit);
        det = det + (sign > 0 ? contrib : contrib.scaled(Complex(-1.0)));
        sign = -sign;
      }
    }
    memo.emplace(cols_mask, det);
    return det;
  };
  const unsigned full = (k >= 32) ? 0u : ((1u << k) - 1u);
  if (k >= 32) throw Error("TOO_LARGE", "wronskian size out of range");
  return minor_det(minor_det, full);
}

}  // namespace nevlab
