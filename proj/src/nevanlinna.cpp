#include "nevlab/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "nevlab/parallel.hpp"

namespace nevlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Zeros this close to the origin count as sitting at the origin; well above
// root-polish error, well below any separated zero of a desk-scale scenario.
constexpr double kOriginRadius = 1e-9;
}  // namespace

RGrid RGrid::geometric(double r_min, double r_max, int points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
    throw Error("INVALID_VALUE", "grid needs 0 < r_min < r_max, points >= 2");
  RGrid g;
  const double ratio = r_max / r_min;
  for (int k = 0; k < points; ++k)
    g.radii.push_back(r_min *
                      std::pow(ratio, static_cast<double>(k) / (points - 1)));
  g.radii.back() = r_max;
  return g;
}

RGrid RGrid::linear(double r_min, double r_max, int points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
    throw Error("INVALID_VALUE", "grid needs 0 < r_min < r_max, points >= 2");
  RGrid g;
  for (int k = 0; k < points; ++k)
    g.radii.push_back(r_min + (r_max - r_min) * k / (points - 1));
  g.radii.back() = r_max;
  return g;
}

void NevanlinnaProfile::add(const std::string& tag, std::vector<double> v) {
  if (v.size() != grid.radii.size())
    throw Error("INVALID_VALUE", "profile column length mismatch");
  values.emplace_back(tag, std::move(v));
}

const std::vector<double>* NevanlinnaProfile::find(
    const std::string& tag) const {
  for (const auto& [t, v] : values)
    if (t == tag) return &v;
  return nullptr;
}

std::string NevanlinnaProfile::to_csv() const {
  std::ostringstream os;
  os << "r";
  for (const auto& [tag, v] : values) os << "," << tag;
  os << "\n";
  char buf[40];
  for (std::size_t i = 0; i < grid.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", grid.radii[i]);
    os << buf;
    for (const auto& [tag, v] : values) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      os << "," << buf;
    }
    os << "\n";
  }
  return os.str();
}

double circle_average(double r, const std::function<double(Complex)>& fn) {
  int nodes = 256;
  const int max_nodes = 1 << 18;
  auto sample = [&](double theta) { return fn(std::polar(r, theta)); };
  double sum = 0.0;
  for (int j = 0; j < nodes; ++j) sum += sample(kTwoPi * j / nodes);
  double prev = 1e300;
  int doublings = 0;
  while (true) {
    const double estimate = sum / nodes;
    if (doublings >= 2 && std::abs(estimate - prev) <= tol::quadrature)
      return estimate;
    if (2 * nodes > max_nodes) return estimate;  // capped; callers' margins
                                                 // are far looser than this
    prev = estimate;
    for (int j = 0; j < nodes; ++j)
      sum += sample(kTwoPi * (2 * j + 1) / (2 * nodes));
    nodes *= 2;
    ++doublings;
  }
}

namespace {

double log_norm(const HolomorphicCurve& f, Complex z) {
  double m = 0.0;
  for (const auto& c : f.components) m = std::max(m, std::abs(c.evaluate(z)));
  // ||f|| > 0 everywhere by reducedness; the floor only guards underflow.
  return std::log(std::max(m, 1e-300));
}

}  // namespace

std::vector<double> characteristic(const HolomorphicCurve& f,
                                   const RGrid& grid) {
  std::vector<double> out(grid.radii.size());
  parallel_for(grid.radii.size(), [&](std::size_t i) {
    out[i] = circle_average(grid.radii[i],
                            [&](Complex z) { return log_norm(f, z); });
  });
  return out;
}

double effective_radius(const ZeroAtlas& atlas, double r) {
  double r_eff = r;
  for (const auto& z : atlas.zeros) {
    if (std::abs(std::abs(z.location) - r_eff) <= tol::singularity_standoff)
      r_eff += tol::singularity_standoff;
  }
  return r_eff;
}

double counting_from_atlas(const ZeroAtlas& atlas, double r, int truncation) {
  double total = 0.0;
  for (const auto& z : atlas.zeros) {
    const double mod = std::abs(z.location);
    const double mult = (truncation >= 1)
                            ? std::min(z.multiplicity, truncation)
                            : z.multiplicity;
    if (mod <= kOriginRadius)
      total += mult * std::log(r);
    else if (mod <= r)
      total += mult * std::log(r / mod);
  }
  return total;
}

HypersurfaceProfile hypersurface_profile(const HolomorphicCurve& f,
                                         const Hypersurface& d,
                                         const RGrid& grid,
                                         const std::vector<int>& truncations,
                                         bool with_proximity) {
  const ExpPoly composite = compose(d.defining_form, f);
  if (composite.is_zero())
    throw Error("HYPOTHESIS_CURVE_IN_D",
                "Q(f) is identically zero: the curve lies in " + d.label);

  HypersurfaceProfile prof;
  prof.atlas = locate_zeros(composite, grid.r_max());

  const int degree = d.defining_form.degree();
  const std::size_t count = grid.radii.size();
  prof.counting_full.resize(count);
  for (int m : truncations)
    if (m >= 1) prof.counting_truncated[m].resize(count);
  if (with_proximity) prof.proximity.resize(count);

  parallel_for(count, [&](std::size_t i) {
    const double r_eff = effective_radius(prof.atlas, grid.radii[i]);
    prof.counting_full[i] = counting_from_atlas(prof.atlas, r_eff, 0);
    for (auto& [m, column] : prof.counting_truncated)
      column[i] = counting_from_atlas(prof.atlas, r_eff, m);
    if (with_proximity) {
      prof.proximity[i] = circle_average(r_eff, [&](Complex z) {
        const double num = degree * log_norm(f, z);
        const double den =
            std::log(std::max(std::abs(composite.evaluate(z)), 1e-300));
        return num - den;
      });
    }
  });
  return prof;
}

std::vector<double> proximity(const HolomorphicCurve& f, const Hypersurface& d,
                              const RGrid& grid) {
  return hypersurface_profile(f, d, grid, {}, true).proximity;
}

std::vector<double> counting(const HolomorphicCurve& f, const Hypersurface& d,
                             const RGrid& grid, int truncation) {
  auto prof = hypersurface_profile(
      f, d, grid, truncation >= 1 ? std::vector<int>{truncation}
                                  : std::vector<int>{},
      false);
  if (truncation >= 1) return prof.counting_truncated.at(truncation);
  return prof.counting_full;
}

}  // namespace nevlab
