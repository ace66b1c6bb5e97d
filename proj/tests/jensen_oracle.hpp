#pragma once

#include <cmath>
#include <functional>

#include "nevlab/zero_locator.hpp"

namespace nevlab::testsupport {

// Adaptive-Simpson quadrature; tolerant of step discontinuities by interval
// width flooring. The first levels bisect unconditionally: step integrands
// like n(t)/t can satisfy the Simpson agreement identity exactly on a wide
// interval while both estimates are wrong. Test oracle only.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double fa, double fm,
                               double fb, double tol, int depth,
                               int forced_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || b - a < 1e-12 ||
      (forced_depth <= 0 && std::abs(left + right - whole) < 15.0 * tol))
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1,
                          forced_depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1,
                          forced_depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10) {
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 48, 12);
}

// Independent route for N_f^M(r, D): numeric integration of the atlas step
// function (n^M(t) - n^M(0)) / t plus the origin term, per the defining
// integral. Never uses the closed-form zero sum.
inline double counting_by_integration(const ZeroAtlas& atlas, double r,
                                      int truncation) {
  const int at_origin = [&] {
    int total = 0;
    for (const auto& z : atlas.zeros)
      if (std::abs(z.location) <= 1e-9)
        total += (truncation >= 1) ? std::min(z.multiplicity, truncation)
                                   : z.multiplicity;
    return total;
  }();
  auto n_of_t = [&](double t) {
    return static_cast<double>(atlas.count_up_to(t, truncation) - at_origin);
  };
  const double integral =
      integrate([&](double t) { return t > 0.0 ? n_of_t(t) / t : 0.0; },
                0.0, r, 1e-10);
  return integral + at_origin * std::log(r);
}

}  // namespace nevlab::testsupport
