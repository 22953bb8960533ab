#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pseudoreg/gf.hpp"

using namespace pseudoreg;

namespace {

// x^{q^i} by repeated multiplication, no tables involved.
Elem frob_naive(const FieldTower& F, Elem x, int i) {
  Elem y = x;
  for (int k = 0; k < i; ++k) {
    Elem z{1};
    for (std::uint32_t j = 0; j < F.q(); ++j) z = F.mul(z, y);
    y = z;
  }
  return y;
}

std::vector<std::tuple<int, int, int>> small_towers() {
  return {{2, 1, 3}, {3, 1, 2}, {3, 1, 3}, {2, 2, 3}, {2, 2, 4}, {5, 1, 3}, {3, 2, 2}, {2, 3, 3}, {7, 1, 2}};
}

}  // namespace

TEST(Tower, LeastIrreducibleOverGF2IsXCubedPlusXPlusOne) {
  FieldTower F(2, 1, 3);
  EXPECT_EQ(F.g(), (Poly{1, 1, 0, 1}));
  EXPECT_EQ(F.order(), 8u);
}

TEST(Tower, LeastIrreducibleQuadraticOverGF3) {
  FieldTower F(3, 1, 2);
  EXPECT_EQ(F.g(), (Poly{1, 0, 1}));
}

TEST(Tower, GF4BaseUsesXSquaredPlusXPlusOne) {
  FieldTower F(2, 2, 3);
  EXPECT_EQ(F.f(), (Poly{1, 1, 1}));
  EXPECT_EQ(F.q(), 4u);
  EXPECT_EQ(F.order(), 64u);
}

TEST(Tower, RejectsNonPrime) {
  EXPECT_THROW(FieldTower(4, 1, 3), PreconditionError);
  EXPECT_THROW(FieldTower(1, 1, 3), PreconditionError);
}

TEST(Tower, RejectsSmallT) { EXPECT_THROW(FieldTower(3, 1, 1), PreconditionError); }

TEST(Tower, RejectsReducibleOverride) {
  TowerOptions opt;
  opt.g_override = Poly{1, 0, 0, 1};  // x^3+1 = (x+1)(x^2+x+1)
  EXPECT_THROW(FieldTower(2, 1, 3, opt), PreconditionError);
  opt.g_override = Poly{1, 0, 1, 1};
  EXPECT_NO_THROW(FieldTower(2, 1, 3, opt));
}

TEST(Tower, SizingErrorAboveBound) {
  EXPECT_THROW(FieldTower(2, 1, 25), SizingError);
  TowerOptions opt;
  opt.enumeration_bound = 100;
  EXPECT_THROW(FieldTower(5, 1, 3, opt), SizingError);
}

TEST(Tower, ParsePoly) {
  EXPECT_EQ(parse_poly("1,1,0,1"), (Poly{1, 1, 0, 1}));
  EXPECT_EQ(format_poly(Poly{1, 1, 0, 1}), "1,1,0,1");
  EXPECT_THROW(parse_poly("1,,2"), PreconditionError);
  EXPECT_THROW(parse_poly("x"), PreconditionError);
}

TEST(Tower, IrreducibleScanAgreesWithRootCountForCubics) {
  // A cubic is irreducible iff it has no root.
  const SmallField gf3(3, {0, 1});
  for (std::uint32_t a = 0; a < 27; ++a) {
    Poly f{a % 3, (a / 3) % 3, a / 9, 1};
    bool root = false;
    for (std::uint32_t x = 0; x < 3; ++x) root = root || (f[0] + f[1] * x + f[2] * x * x + x * x * x) % 3 == 0;
    EXPECT_EQ(is_irreducible(gf3, f), !root);
  }
}

TEST(Tower, FieldAxiomsOnSamples) {
  std::mt19937_64 rng(7);
  for (auto [p, e, t] : small_towers()) {
    FieldTower F(p, e, t);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(F.order() - 1));
    for (int it = 0; it < 300; ++it) {
      Elem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      EXPECT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
      EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
      EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
      if (a.code != 0) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
    }
  }
}

TEST(Tower, TablesAgreeWithPolynomialArithmetic) {
  std::mt19937_64 rng(11);
  for (auto [p, e, t] : small_towers()) {
    FieldTower T(p, e, t);
    TowerOptions opt;
    opt.table_threshold = 0;
    FieldTower S(p, e, t, opt);
    ASSERT_TRUE(T.has_tables());
    ASSERT_FALSE(S.has_tables());
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(T.order() - 1));
    for (int it = 0; it < 300; ++it) {
      Elem a{pick(rng)}, b{pick(rng)};
      EXPECT_EQ(T.add(a, b), S.add(a, b));
      EXPECT_EQ(T.mul(a, b), S.mul(a, b));
      EXPECT_EQ(T.frob(a, 1), S.frob(a, 1));
      EXPECT_EQ(T.norm(a), S.norm(a));
      EXPECT_EQ(T.lead(a), S.lead(a));
      if (a.code) EXPECT_EQ(T.inv(a), S.inv(a));
    }
  }
}

TEST(Tower, FrobeniusIsAutomorphismFixingBase) {
  for (auto [p, e, t] : small_towers()) {
    FieldTower F(p, e, t);
    int fixed = 0;
    for (std::uint32_t c = 0; c < F.order(); ++c) {
      const Elem x{c};
      EXPECT_EQ(F.frob(x, 1), frob_naive(F, x, 1));
      EXPECT_EQ(F.frob(x, t), x);
      if (F.frob(x, 1) == x) {
        ++fixed;
        EXPECT_TRUE(F.in_base(x));
      }
      const Elem y{(c * 7 + 3) % static_cast<std::uint32_t>(F.order())};
      EXPECT_EQ(F.frob(F.add(x, y), 1), F.add(F.frob(x, 1), F.frob(y, 1)));
      EXPECT_EQ(F.frob(F.mul(x, y), 1), F.mul(F.frob(x, 1), F.frob(y, 1)));
    }
    EXPECT_EQ(fixed, static_cast<int>(F.q()));
  }
}

TEST(Tower, FrobPCyclesWithPeriodET) {
  FieldTower F(2, 2, 3);
  for (std::uint32_t c = 0; c < F.order(); ++c) {
    EXPECT_EQ(F.frob_p(Elem{c}, 6), Elem{c});
    EXPECT_EQ(F.frob_p(Elem{c}, 2), F.frob(Elem{c}, 1));
    EXPECT_EQ(F.frob_p(F.frob_p(Elem{c}, 1), -1), Elem{c});
  }
}

TEST(Norm, ProductOfConjugates) {
  FieldTower F(3, 1, 3);
  const Elem g = F.primitive();
  const Elem prod = F.mul(F.mul(g, frob_naive(F, g, 1)), frob_naive(F, g, 2));
  EXPECT_EQ(F.norm(g), prod);
  Elem g13{1};
  for (int i = 0; i < 13; ++i) g13 = F.mul(g13, g);
  EXPECT_EQ(F.norm(g), g13);
  EXPECT_TRUE(F.in_base(prod));
  EXPECT_NE(prod.code, 0u);
  EXPECT_EQ(F.norm(F.zero()), F.zero());
  EXPECT_EQ(F.norm(Elem{2}), F.pow(Elem{2}, std::uint64_t{3}));
}

TEST(Norm, MultiplicativeAndKernelSize) {
  for (auto [p, e, t] : std::vector<std::tuple<int, int, int>>{
           {3, 1, 3}, {2, 2, 3}, {2, 2, 4}, {5, 1, 3}, {3, 1, 4}, {5, 1, 5}, {3, 1, 5}}) {
    FieldTower F(p, e, t);
    std::uint64_t kernel = 0;
    for (std::uint32_t c = 0; c < F.order(); ++c) {
      const Elem x{c};
      const Elem n = F.norm(x);
      EXPECT_TRUE(F.in_base(n));
      if (n == F.one()) ++kernel;
      const Elem y{(c * 13 + 5) % static_cast<std::uint32_t>(F.order())};
      EXPECT_EQ(F.norm(F.mul(x, y)), F.mul(n, F.norm(y)));
    }
    EXPECT_EQ(BigInt(kernel), theta(t - 1, F.q()));
  }
}

TEST(ElemOrder, Examples) {
  FieldTower F4(2, 1, 4);
  EXPECT_EQ(F4.elem_order(F4.one()), 1);
  EXPECT_EQ(F4.elem_order(F4.zero()), 1);
  std::map<int, int> census;
  for (std::uint32_t c = 0; c < F4.order(); ++c) {
    const int m = F4.elem_order(Elem{c});
    EXPECT_EQ(4 % m, 0);
    EXPECT_EQ(F4.elem_order(F4.frob(Elem{c}, 1)), m);
    census[m]++;
  }
  EXPECT_EQ(census[1], 2);
  EXPECT_EQ(census[2], 2);
  EXPECT_EQ(census[4], 12);

  FieldTower F3(3, 1, 3);
  for (std::uint32_t c = 3; c < F3.order(); ++c) EXPECT_EQ(F3.elem_order(Elem{c}), 3);
}

TEST(Theta, Values) {
  EXPECT_EQ(theta(2, 3), 13);
  EXPECT_EQ(theta(-1, 7), 0);
  EXPECT_EQ(theta(0, 7), 1);
  EXPECT_EQ(theta(3, 4), 85);
}

TEST(Theta, Inverse) {
  EXPECT_EQ(theta_inverse(1, 5, 7), 1);
  EXPECT_EQ(theta_inverse(2, 5, 3), 91);
  EXPECT_EQ((4 * 91) % 121, 1);
  EXPECT_THROW(theta_inverse(2, 4, 3), PreconditionError);
  for (int q : {2, 3, 4, 5, 7})
    for (int t = 2; t <= 7; ++t)
      for (int nu : galois_generators(t)) {
        const BigInt d = theta_inverse(nu, t, q);
        EXPECT_EQ(mod_floor(d * theta(nu - 1, q), theta(t - 1, q)), 1);
        EXPECT_GE(d, 0);
        EXPECT_LT(d, theta(t - 1, q));
      }
}

TEST(Tower, PowNegativeExponent) {
  FieldTower F(3, 1, 3);
  for (std::uint32_t c = 1; c < F.order(); ++c) {
    const Elem x{c};
    EXPECT_EQ(F.pow(x, BigInt(-1)), F.inv(x));
    EXPECT_EQ(F.mul(F.pow(x, BigInt(-5)), F.pow(x, BigInt(5))), F.one());
  }
}

TEST(Tower, CoefficientRoundTrip) {
  FieldTower F(2, 2, 3);
  for (std::uint32_t c = 0; c < F.order(); ++c) {
    const auto co = F.coeffs(Elem{c});
    EXPECT_EQ(F.from_coeffs(co), Elem{c});
    const auto digits = F.prime_digits(Elem{c});
    EXPECT_EQ(digits.size(), 6u);
  }
  EXPECT_EQ(F.coeffs(F.root()), (std::vector<std::uint32_t>{0, 1, 0}));
}

TEST(Tower, RootSatisfiesG) {
  for (auto [p, e, t] : small_towers()) {
    FieldTower F(p, e, t);
    Elem acc{0};
    Elem vp{1};
    for (int i = 0; i <= t; ++i) {
      acc = F.add(acc, F.mul(Elem{F.g()[i]}, vp));
      vp = F.mul(vp, F.root());
    }
    EXPECT_EQ(acc, F.zero());
  }
}
