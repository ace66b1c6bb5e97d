#include "nevlab/zero_locator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace nevlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double arg_0_2pi(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  return a;
}

void sort_atlas(std::vector<ZeroAtlas::Zero>& zeros) {
  std::sort(zeros.begin(), zeros.end(),
            [](const ZeroAtlas::Zero& a, const ZeroAtlas::Zero& b) {
              const double ra = std::abs(a.location), rb = std::abs(b.location);
              if (ra != rb) return ra < rb;
              return arg_0_2pi(a.location) < arg_0_2pi(b.location);
            });
}

// Merge zeros closer than the cluster resolution limit, summing
// multiplicities.
void cluster_atlas(std::vector<ZeroAtlas::Zero>& zeros) {
  std::vector<ZeroAtlas::Zero> merged;
  for (const auto& z : zeros) {
    bool absorbed = false;
    for (auto& m : merged) {
      if (std::abs(m.location - z.location) <= tol::zero_cluster) {
        m.multiplicity += z.multiplicity;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(z);
  }
  zeros = std::move(merged);
}

// Applies the boundary standoff policy: the counting circle is nudged
// outward while any zero modulus falls within the standoff of it, then the
// atlas keeps zeros with |z| <= radius.
void apply_standoff_and_filter(const std::vector<ZeroAtlas::Zero>& all,
                               ZeroAtlas& atlas) {
  for (const auto& z : all) {
    if (std::abs(std::abs(z.location) - atlas.disk_radius) <=
        tol::singularity_standoff) {
      atlas.radius_perturbation += tol::singularity_standoff;
      atlas.disk_radius += tol::singularity_standoff;
    }
  }
  for (const auto& z : all)
    if (std::abs(z.location) <= atlas.disk_radius) atlas.zeros.push_back(z);
  sort_atlas(atlas.zeros);
}

// Conservation cross-check against the argument principle. When the outer
// circle itself is too close to a zero for the quadrature, fall back to a
// circle through the widest gap between zero shells and compare against the
// atlas count inside it.
void verify_conservation(const ExpPoly& g, const ZeroAtlas& atlas) {
  int winding = 0;
  int expected = atlas.total_multiplicity();
  try {
    winding = winding_number(g, Complex(0.0), atlas.disk_radius);
  } catch (const Error& e) {
    if (e.code() != "ZERO_NEAR_CONTOUR") throw;
    std::vector<double> shells;
    for (const auto& z : atlas.zeros) shells.push_back(std::abs(z.location));
    std::sort(shells.begin(), shells.end());
    double best_r = 0.5 * atlas.disk_radius, best_gap = -1.0;
    double lo = 0.0;
    shells.push_back(atlas.disk_radius);
    for (double s : shells) {
      const double gap = s - lo;
      if (gap > best_gap) {
        best_gap = gap;
        best_r = 0.5 * (lo + s);
      }
      lo = s;
    }
    if (best_gap <= 4.0 * tol::singularity_standoff) return;  // nothing usable
    winding = winding_number(g, Complex(0.0), best_r);
    expected = atlas.count_up_to(best_r);
  }
  if (winding != expected)
    throw Error("CONSERVATION_MISMATCH",
                "atlas multiplicity " + std::to_string(expected) +
                    " disagrees with winding number " +
                    std::to_string(winding));
}

}  // namespace

int ZeroAtlas::total_multiplicity() const {
  int total = 0;
  for (const auto& z : zeros) total += z.multiplicity;
  return total;
}

int ZeroAtlas::count_up_to(double t, int cap) const {
  int total = 0;
  for (const auto& z : zeros)
    if (std::abs(z.location) <= t)
      total += (cap >= 1) ? std::min(z.multiplicity, cap) : z.multiplicity;
  return total;
}

std::vector<Complex> polynomial_roots(const UnivariatePoly& p) {
  const int d = p.degree();
  if (d <= 0) return {};
  if (d == 1) return {-p.coeff(0) / p.coeff(1)};

  // Cauchy bound on root moduli.
  double bound = 0.0;
  for (int i = 0; i < d; ++i)
    bound = std::max(bound, std::abs(p.coeff(i) / p.leading()));
  bound += 1.0;

  // Durand-Kerner with deterministic, non-symmetric starting points.
  std::vector<Complex> roots(d);
  for (int k = 0; k < d; ++k) {
    const double angle = kTwoPi * k / d + 0.4;
    roots[k] = 0.7 * bound * std::polar(1.0, angle);
  }
  const int max_iters = 600;
  for (int iter = 0; iter < max_iters; ++iter) {
    double max_step = 0.0;
    for (int k = 0; k < d; ++k) {
      Complex denom = p.leading();
      for (int j = 0; j < d; ++j)
        if (j != k) denom *= roots[k] - roots[j];
      if (denom == Complex(0.0)) {
        roots[k] += Complex(1e-6, 2e-6);  // deterministic nudge off collision
        max_step = 1.0;
        continue;
      }
      const Complex step = p.evaluate(roots[k]) / denom;
      roots[k] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step <= 1e-14 * (1.0 + bound)) break;
  }

  // Newton polish against the original polynomial.
  const UnivariatePoly dp = p.derivative();
  for (auto& z : roots) {
    for (int i = 0; i < 8; ++i) {
      const Complex der = dp.evaluate(z);
      if (std::abs(der) == 0.0) break;
      const Complex step = p.evaluate(z) / der;
      z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
  }
  return roots;
}

namespace {

// Distinct roots with multiplicities via the derivative-gcd chain:
// mult_p(a) = 1 + mult_{gcd(p, p')}(a) for every root a of p.
std::vector<ZeroAtlas::Zero> roots_with_multiplicity(const UnivariatePoly& p) {
  if (p.degree() <= 0) return {};
  const UnivariatePoly g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) {
    std::vector<ZeroAtlas::Zero> out;
    for (const auto& z : polynomial_roots(p)) out.push_back({z, 1});
    return out;
  }
  auto [square_free, rem] =
      p.divrem(g, 1e-10 * std::max(1.0, p.max_coeff_modulus()));
  (void)rem;  // remainder is round-off by construction
  std::vector<ZeroAtlas::Zero> out;
  for (const auto& z : polynomial_roots(square_free)) out.push_back({z, 1});
  for (const auto& iz : roots_with_multiplicity(g)) {
    // Every root of gcd(p, p') is a root of the square-free part; match by
    // proximity and lift its multiplicity.
    auto best = out.end();
    double best_dist = 1e300;
    for (auto it = out.begin(); it != out.end(); ++it) {
      const double dist = std::abs(it->location - iz.location);
      if (dist < best_dist) {
        best_dist = dist;
        best = it;
      }
    }
    if (best != out.end() &&
        best_dist <= 1e-6 * (1.0 + std::abs(iz.location))) {
      best->multiplicity += iz.multiplicity;
    } else {
      // Matching failed; keep the chain root so the total stays honest and
      // the conservation cross-check can flag real trouble.
      out.push_back({iz.location, iz.multiplicity + 1});
    }
  }
  return out;
}

}  // namespace

ZeroAtlas locate_zeros_polynomial(const UnivariatePoly& p, double r) {
  if (p.is_zero())
    throw Error("ZERO_FUNCTION", "cannot locate zeros of the zero polynomial");
  if (r <= 0.0) throw Error("INVALID_VALUE", "disk radius must be positive");

  std::vector<ZeroAtlas::Zero> all = roots_with_multiplicity(p);
  sort_atlas(all);
  cluster_atlas(all);

  ZeroAtlas atlas;
  atlas.backend = ZeroAtlas::Backend::exact;
  atlas.disk_radius = r;
  apply_standoff_and_filter(all, atlas);
  verify_conservation(ExpPoly::from_poly(p), atlas);
  return atlas;
}

int winding_number(const ExpPoly& g, Complex center, double radius) {
  if (g.is_zero())
    throw Error("ZERO_FUNCTION", "winding number of the zero function");
  if (radius <= 0.0) throw Error("INVALID_VALUE", "radius must be positive");
  const ExpPoly dg = g.derivative();

  auto sample_term = [&](double theta) -> Complex {
    const Complex z = center + std::polar(radius, theta);
    const Complex gz = g.evaluate(z);
    const Complex dgz = dg.evaluate(z);
    // Local proximity estimate: a zero within the standoff of the contour
    // makes the Newton distance |g/g'| tiny. A global min/max test is
    // useless here because exponential terms give the circle a huge dynamic
    // range without any zero nearby.
    const double ag = std::abs(gz);
    const double adg = std::abs(dgz);
    if (ag == 0.0 || (adg > 0.0 && ag / adg <= tol::singularity_standoff))
      throw Error("ZERO_NEAR_CONTOUR",
                  "zero within standoff of the integration circle");
    return dgz / gz * (z - center);
  };

  // Trapezoid on the periodic integrand (g'/g)(z) * (z - center); node
  // doubling reuses previous samples. Acceptance needs two consecutive
  // estimates agreeing tightly on a nonnegative integer.
  int nodes = 256;
  const int max_nodes = 1 << 18;
  Complex sum(0.0);
  for (int j = 0; j < nodes; ++j) sum += sample_term(kTwoPi * j / nodes);
  double prev = 1e300;
  while (true) {
    const double estimate = (sum / static_cast<double>(nodes)).real();
    const double rounded = std::round(estimate);
    if (rounded >= -0.1 && std::abs(estimate - rounded) <= 0.25 &&
        std::abs(estimate - prev) <= 0.05)
      return static_cast<int>(rounded);
    if (2 * nodes > max_nodes)
      throw Error("ZERO_NEAR_CONTOUR",
                  "winding quadrature failed to settle; zero near contour");
    prev = estimate;
    for (int j = 0; j < nodes; ++j)
      sum += sample_term(kTwoPi * (2 * j + 1) / (2 * nodes));
    nodes *= 2;
  }
}

namespace {

// Axis-aligned cell for the subdivision backend.
struct Cell {
  double x0, x1, y0, y1;
  double diam() const { return std::hypot(x1 - x0, y1 - y0); }
  Complex center() const { return Complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)); }
  bool contains(Complex z, double margin) const {
    return z.real() >= x0 - margin && z.real() <= x1 + margin &&
           z.imag() >= y0 - margin && z.imag() <= y1 + margin;
  }
};

class BoundaryZero {};  // internal signal: retry with nudged geometry

// Winding number along a rectangle boundary by phase tracking. Consecutive
// phase steps are kept below pi/2 AND below what the local phase rate
// |g'/g| allows; the rate bound is what prevents aliasing when the phase
// spins through full turns between samples (an exponential term does
// exactly that on long edges). A vanishing sample or a bisection that
// cannot settle signals a zero on or very near the boundary.
class RectWinding {
 public:
  explicit RectWinding(const ExpPoly& g) : g_(g), dg_(g.derivative()) {}

  int compute(const Cell& c) const {
    const Complex corners[5] = {
        Complex(c.x0, c.y0), Complex(c.x1, c.y0), Complex(c.x1, c.y1),
        Complex(c.x0, c.y1), Complex(c.x0, c.y0)};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) total += edge_phase(corners[e], corners[e + 1]);
    const double w = total / kTwoPi;
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.25) throw BoundaryZero{};
    return static_cast<int>(rounded);
  }

 private:
  struct Sample {
    Complex value;
    double rate;  // |g'/g|, a bound on the phase rate along any direction
  };

  double edge_phase(Complex a, Complex b) const {
    const int initial = 8;
    double total = 0.0;
    Complex prev_pt = a;
    Sample prev = sample_at(a);
    for (int i = 1; i <= initial; ++i) {
      const Complex pt = a + (b - a) * (static_cast<double>(i) / initial);
      const Sample cur = sample_at(pt);
      total += step_phase(prev_pt, pt, prev, cur, 0);
      prev_pt = pt;
      prev = cur;
    }
    return total;
  }

  double step_phase(Complex pa, Complex pb, const Sample& sa, const Sample& sb,
                    int depth) const {
    const double len = std::abs(pb - pa);
    const double d = std::arg(sb.value / sa.value);
    if (std::abs(d) <= std::numbers::pi / 2.0 &&
        len * std::max(sa.rate, sb.rate) <= 1.25)
      return d;
    if (depth >= 48) throw BoundaryZero{};
    const Complex mid = 0.5 * (pa + pb);
    const Sample sm = sample_at(mid);
    return step_phase(pa, mid, sa, sm, depth + 1) +
           step_phase(mid, pb, sm, sb, depth + 1);
  }

  Sample sample_at(Complex z) const {
    const Complex v = g_.evaluate(z);
    if (v == Complex(0.0)) throw BoundaryZero{};
    return {v, std::abs(dg_.evaluate(z) / v)};
  }

  const ExpPoly& g_;
  const ExpPoly dg_;
};

// Newton iteration on g; empty when the step stalls, the derivative dies,
// or the iterate leaves the leash around the start.
std::optional<Complex> newton_polish(const ExpPoly& g, const ExpPoly& dg,
                                     Complex z, double leash) {
  const Complex start = z;
  for (int i = 0; i < 80; ++i) {
    const Complex der = dg.evaluate(z);
    if (der == Complex(0.0)) return std::nullopt;
    const Complex step = g.evaluate(z) / der;
    z -= step;
    if (std::abs(z - start) > leash) return std::nullopt;
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z))) return z;
  }
  return std::nullopt;
}

}  // namespace

ZeroAtlas locate_zeros_analytic(const ExpPoly& g, double r) {
  if (g.is_zero())
    throw Error("ZERO_FUNCTION", "cannot locate zeros of the zero function");
  if (r <= 0.0) throw Error("INVALID_VALUE", "disk radius must be positive");

  const ExpPoly dg = g.derivative();
  RectWinding winding(g);

  // Deterministic retry offsets for root boxes that land on a zero.
  const double nudges[] = {0.0,      3.1e-3,  -5.7e-3, 9.3e-3,
                           -1.29e-2, 1.73e-2, -2.31e-2};

  std::vector<ZeroAtlas::Zero> found;
  bool done = false;
  for (double nudge : nudges) {
    found.clear();
    const double half = r * (1.0 + 5.3e-3) + 0.01 + nudge;
    const Cell root{-half, half, -half, half};
    try {
      std::deque<std::pair<Cell, int>> work;
      const int w0 = winding.compute(root);
      if (w0 > 0) work.emplace_back(root, w0);
      while (!work.empty()) {
        auto [cell, w] = work.front();
        work.pop_front();
        if (w == 1 && cell.diam() <= 1e-5) {
          // Simple zero: Newton from the cell center, accepted only if it
          // stays inside this cell so neighboring zeros cannot be stolen.
          auto polished =
              newton_polish(g, dg, cell.center(), 3.0 * cell.diam());
          if (polished && cell.contains(*polished, 0.02 * cell.diam())) {
            found.push_back({*polished, 1});
            continue;
          }
          if (cell.diam() <= 1e-10) {
            found.push_back({cell.center(), 1});
            continue;
          }
          // else: keep splitting until Newton grips
        }
        if (w >= 2 && cell.diam() <= tol::zero_cluster) {
          // Resolution limit: one location carrying the whole cluster.
          found.push_back({cell.center(), w});
          continue;
        }
        // Split into four children; shifted split lines when a zero sits on
        // the shared edges. Children must account for exactly w zeros.
        const double sx[] = {0.5, 0.503, 0.4971, 0.5091};
        const double sy[] = {0.5, 0.4963, 0.5077, 0.4917};
        bool split_ok = false;
        for (int attempt = 0; attempt < 4 && !split_ok; ++attempt) {
          const double mx = cell.x0 + (cell.x1 - cell.x0) * sx[attempt];
          const double my = cell.y0 + (cell.y1 - cell.y0) * sy[attempt];
          const Cell kids[4] = {{cell.x0, mx, cell.y0, my},
                                {mx, cell.x1, cell.y0, my},
                                {cell.x0, mx, my, cell.y1},
                                {mx, cell.x1, my, cell.y1}};
          try {
            int sum = 0;
            std::vector<std::pair<Cell, int>> accepted;
            for (const auto& kid : kids) {
              const int kw = winding.compute(kid);
              sum += kw;
              if (kw > 0) accepted.emplace_back(kid, kw);
            }
            if (sum != w) continue;  // a zero slipped through an edge
            for (auto& a : accepted) work.push_back(std::move(a));
            split_ok = true;
          } catch (const BoundaryZero&) {
            continue;
          }
        }
        if (!split_ok) {
          // Tiny cells can stop splitting cleanly when cancellation noise
          // in the evaluated sum swamps the true values; the zeros are
          // inside this cell, just unresolvable through this
          // representation. Record the cluster at the resolution reached.
          if (cell.diam() <= 1e-5) {
            found.push_back({cell.center(), w});
            continue;
          }
          throw Error("DIAGNOSTIC",
                      "subdivision stalled; could not separate zeros from "
                      "cell boundaries");
        }
      }
      done = true;
    } catch (const BoundaryZero&) {
      continue;  // outer box unlucky; nudge and restart
    }
    if (done) break;
  }
  if (!done)
    throw Error("DIAGNOSTIC", "analytic zero location failed to initialize");

  sort_atlas(found);
  cluster_atlas(found);

  ZeroAtlas atlas;
  atlas.backend = ZeroAtlas::Backend::analytic;
  atlas.disk_radius = r;
  apply_standoff_and_filter(found, atlas);
  verify_conservation(g, atlas);
  return atlas;
}

ZeroAtlas locate_zeros(const ExpPoly& g, double r) {
  if (g.is_polynomial()) return locate_zeros_polynomial(g.polynomial_part(), r);
  return locate_zeros_analytic(g, r);
}

}  // namespace nevlab
