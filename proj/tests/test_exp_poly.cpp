#include <doctest.h>

#include <numbers>
#include <random>

#include "test_support.hpp"

using namespace nevlab;
using namespace nevlab::testsupport;

namespace {
const ExpPoly kOne = ExpPoly::constant(Complex(1.0));
const ExpPoly kZ = ExpPoly::variable();
const ExpPoly kExpZ = ExpPoly::exponential(Complex(1.0));
}  // namespace

TEST_CASE("add: inverses and cancellation") {
  CHECK((kZ + kZ.scaled(Complex(-1.0))).is_zero());
  const ExpPoly twice = kExpZ + kExpZ;
  REQUIRE(twice.terms().size() == 1);
  CHECK(approx_complex(twice.terms()[0].poly.coeff(0), Complex(2.0)));
  // (1 + e^z) + (z - e^z) = 1 + z
  const ExpPoly sum = (kOne + kExpZ) + (kZ - kExpZ);
  CHECK(sum.is_polynomial());
  CHECK(approx_complex(sum.evaluate(Complex(0.7, -0.3)), Complex(1.7, -0.3)));
}

TEST_CASE("multiply: frequencies add") {
  const ExpPoly inv = ExpPoly::exponential(Complex(-1.0));
  const ExpPoly prod = kExpZ * inv;
  CHECK(prod.is_polynomial());
  CHECK(approx_complex(prod.evaluate(Complex(2.0, 1.0)), Complex(1.0)));

  const ExpPoly z2 = kZ * kZ;
  CHECK(z2.polynomial_part().degree() == 2);

  // (1+e^z)^2 = 1 + 2e^z + e^{2z}
  const ExpPoly sq = (kOne + kExpZ) * (kOne + kExpZ);
  REQUIRE(sq.terms().size() == 3);
  CHECK(approx_complex(sq.terms()[1].poly.coeff(0), Complex(2.0)));
  CHECK(approx_complex(sq.terms()[2].freq, Complex(2.0)));
}

TEST_CASE("differentiate: term rule (p' + lambda p) e^{lambda z}") {
  CHECK(approx_complex((kZ * kZ).derivative().evaluate(Complex(3.0)),
                       Complex(6.0)));
  const ExpPoly e2z = ExpPoly::exponential(Complex(2.0));
  const ExpPoly de2z = e2z.derivative();
  REQUIRE(de2z.terms().size() == 1);
  CHECK(approx_complex(de2z.terms()[0].poly.coeff(0), Complex(2.0)));
  // d/dz (z e^{2z}) = (1 + 2z) e^{2z}
  const ExpPoly ze2z = kZ * e2z;
  const ExpPoly d = ze2z.derivative();
  REQUIRE(d.terms().size() == 1);
  CHECK(approx_complex(d.terms()[0].poly.coeff(0), Complex(1.0)));
  CHECK(approx_complex(d.terms()[0].poly.coeff(1), Complex(2.0)));
}

TEST_CASE("is_identically_zero is exact on the canonical form") {
  CHECK((kExpZ * kExpZ - ExpPoly::exponential(Complex(2.0))).is_zero());
  CHECK(!(kOne + kExpZ).is_zero());
  const ExpPoly lhs = (kOne + kZ) * (kOne + kZ);
  const ExpPoly rhs =
      ExpPoly::from_poly(UnivariatePoly({Complex(1), Complex(2), Complex(1)}));
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("evaluate: classic points") {
  CHECK(approx_complex((kZ * kZ).evaluate(Complex(2.0)), Complex(4.0)));
  CHECK(approx_complex(kExpZ.evaluate(Complex(0.0, std::numbers::pi)),
                       Complex(-1.0)));
  const ExpPoly g = kOne + ExpPoly::exponential(Complex(2.0));
  CHECK(std::abs(g.evaluate(Complex(0.0, std::numbers::pi / 2))) < 1e-12);
}

TEST_CASE("wronskian examples") {
  SUBCASE("W(1, z, z^2) = 2") {
    const ExpPoly w = wronskian(std::vector<ExpPoly>{kOne, kZ, kZ * kZ});
    REQUIRE(w.is_polynomial());
    CHECK(approx_complex(w.polynomial_part().coeff(0), Complex(2.0)));
    CHECK(w.polynomial_part().degree() == 0);
  }
  SUBCASE("W(1, z, 2z) = 0") {
    CHECK(wronskian(std::vector<ExpPoly>{kOne, kZ, kZ.scaled(Complex(2.0))})
              .is_zero());
  }
  SUBCASE("W(1, e^z) = e^z") {
    const ExpPoly w = wronskian(std::vector<ExpPoly>{kOne, kExpZ});
    REQUIRE(w.terms().size() == 1);
    CHECK(approx_complex(w.terms()[0].freq, Complex(1.0)));
    CHECK(approx_complex(w.terms()[0].poly.coeff(0), Complex(1.0)));
  }
}

TEST_CASE("ring laws hold pointwise on random instances") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 12; ++trial) {
    const ExpPoly a = random_exp_poly(rng);
    const ExpPoly b = random_exp_poly(rng);
    const ExpPoly c = random_exp_poly(rng);
    const ExpPoly ab = a * b;
    const ExpPoly ba = b * a;
    const ExpPoly ab_c = (a * b) * c;
    const ExpPoly a_bc = a * (b * c);
    const ExpPoly dist_l = a * (b + c);
    const ExpPoly dist_r = a * b + a * c;
    const ExpPoly add_comm = (a + b) - (b + a);
    for (int k = 0; k < 20; ++k) {
      const Complex z = random_complex(rng, 1.5);
      const double scale =
          1.0 + std::max({std::abs(ab.evaluate(z)), std::abs(ab_c.evaluate(z)),
                          std::abs(dist_l.evaluate(z))});
      CHECK(std::abs(ab.evaluate(z) - ba.evaluate(z)) <= 1e-9 * scale);
      CHECK(std::abs(ab_c.evaluate(z) - a_bc.evaluate(z)) <= 1e-9 * scale);
      CHECK(std::abs(dist_l.evaluate(z) - dist_r.evaluate(z)) <= 1e-9 * scale);
      CHECK(std::abs(add_comm.evaluate(z)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("product rule pointwise") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpPoly a = random_exp_poly(rng);
    const ExpPoly b = random_exp_poly(rng);
    const ExpPoly lhs = (a * b).derivative();
    const ExpPoly rhs = a.derivative() * b + a * b.derivative();
    for (int k = 0; k < 20; ++k) {
      const Complex z = random_complex(rng, 1.5);
      const double scale = 1.0 + std::abs(lhs.evaluate(z));
      CHECK(std::abs(lhs.evaluate(z) - rhs.evaluate(z)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("identically zero implies zero at sampled points") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpPoly a = random_exp_poly(rng);
    const ExpPoly diff = a * a - a * a;  // forced cancellation
    REQUIRE(diff.is_zero());
    const double scale = 1.0 + a.max_coeff_modulus() * a.max_coeff_modulus();
    for (int k = 0; k < 10; ++k)
      CHECK(std::abs(diff.evaluate(random_complex(rng))) <= 1e-12 * scale);
  }
}

TEST_CASE("wronskian of a dependent list vanishes identically") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 8; ++trial) {
    const ExpPoly a = random_exp_poly(rng, 2, 2);
    const ExpPoly b = random_exp_poly(rng, 2, 2);
    // Third entry is a fixed linear combination of the first two.
    const ExpPoly c =
        a.scaled(random_complex(rng)) + b.scaled(random_complex(rng));
    CHECK(wronskian(std::vector<ExpPoly>{a, b, c}).is_zero());
  }
}

TEST_CASE("frequency merge tolerance recombines products deterministically") {
  // e^z * e^z and e^{2z} must land in one term even after rounding.
  const ExpPoly a = ExpPoly::exponential(Complex(1.0 / 3.0));
  const ExpPoly b = ExpPoly::exponential(Complex(2.0 / 3.0));
  const ExpPoly sum = a * b - ExpPoly::exponential(Complex(1.0));
  CHECK(sum.is_zero());
}
