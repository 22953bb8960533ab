#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pseudoreg/projspace.hpp"

using namespace pseudoreg;

namespace {

Vec random_vec(std::mt19937_64& rng, std::uint64_t s, int n) {
  std::uniform_int_distribution<std::uint64_t> pick(0, s - 1);
  Vec v(n);
  for (auto& c : v) c = Elem{static_cast<std::uint32_t>(pick(rng))};
  return v;
}

}  // namespace

TEST(Points, NormalizationIsScaleInvariant) {
  FieldTower F(3, 1, 3);
  std::mt19937_64 rng(1);
  for (int it = 0; it < 200; ++it) {
    Vec v = random_vec(rng, F.order(), 3);
    if (is_zero(v)) continue;
    const Elem c{static_cast<std::uint32_t>(1 + it % 26)};
    Vec w = v;
    for (auto& x : w) x = F.mul(x, c);
    EXPECT_EQ(normalize(F, v), normalize(F, w));
  }
  EXPECT_THROW(normalize(F, Vec(3, Elem{0})), PreconditionError);
}

TEST(Span, Basics) {
  FieldTower F(3, 1, 3);
  const ProjPoint P{{Elem{1}, Elem{5}, Elem{7}}};
  EXPECT_EQ(span(F, Level::Extension, {P}).dim(), 0);
  EXPECT_EQ(span(F, Level::Extension, {P, P}).dim(), 0);
  const ProjPoint A{{Elem{1}, Elem{0}, Elem{0}}}, B{{Elem{0}, Elem{1}, Elem{0}}}, C{{Elem{0}, Elem{0}, Elem{1}}};
  EXPECT_EQ(span(F, Level::Extension, {A, B, C}).dim(), 2);
}

TEST(Span, RrefCanonicity) {
  FieldTower F(2, 2, 3);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    Mat rows{random_vec(rng, F.order(), 4), random_vec(rng, F.order(), 4)};
    Mat rescaled{rows[1], rows[0]};
    for (auto& x : rescaled[0]) x = F.mul(x, Elem{5});
    for (std::size_t j = 0; j < 4; ++j) rescaled[1][j] = F.add(rows[0][j], rows[1][j]);
    EXPECT_EQ(span_vectors(F, 4, Level::Extension, rows), span_vectors(F, 4, Level::Extension, rescaled));
  }
}

TEST(Meet, Examples) {
  FieldTower F(3, 1, 2);
  const auto A = span_vectors(F, 4, Level::Base, {{Elem{1}, Elem{0}, Elem{0}, Elem{0}}});
  const auto B = span_vectors(F, 4, Level::Base,
                              {{Elem{1}, Elem{0}, Elem{0}, Elem{0}}, {Elem{0}, Elem{1}, Elem{0}, Elem{0}}});
  EXPECT_EQ(meet(F, A, B), A);
  const auto C = span_vectors(F, 4, Level::Base, {{Elem{0}, Elem{1}, Elem{0}, Elem{0}}});
  EXPECT_TRUE(meet(F, A, C).empty());
  const auto H1 = span_vectors(F, 4, Level::Base, kernel(F, {{Elem{1}, Elem{0}, Elem{0}, Elem{0}}}, 4));
  const auto H2 = span_vectors(F, 4, Level::Base, kernel(F, {{Elem{0}, Elem{1}, Elem{2}, Elem{0}}}, 4));
  EXPECT_EQ(H1.dim(), 2);
  EXPECT_EQ(meet(F, H1, H2).dim(), 1);
}

TEST(Meet, ModularLawExhaustiveLinesAndPlanesOfPG33) {
  // All lines against a fixed set of planes and lines of PG(3,3).
  FieldTower F(3, 1, 2);
  const int n = 4;
  const auto npts = space_point_count(F, n, Level::Base);
  EXPECT_EQ(npts, 40u);
  std::set<Mat> lines;
  for (std::uint64_t i = 0; i < npts; ++i)
    for (std::uint64_t j = i + 1; j < npts; ++j)
      lines.insert(span(F, Level::Base, {space_point_at(F, n, Level::Base, i), space_point_at(F, n, Level::Base, j)})
                       .rows());
  EXPECT_EQ(lines.size(), 130u);
  std::vector<Subspace> subs;
  for (const auto& r : lines) subs.emplace_back(n, Level::Base, r);
  for (std::uint64_t i = 0; i < npts; i += 3) {
    const auto P = space_point_at(F, n, Level::Base, i);
    subs.push_back(span_vectors(F, n, Level::Base, kernel(F, {P.x}, n)));
  }
  for (std::size_t i = 0; i < subs.size(); i += 2)
    for (std::size_t j = 0; j < subs.size(); ++j) {
      const auto& A = subs[i];
      const auto& B = subs[j];
      EXPECT_EQ(A.dim() + B.dim(), join(F, A, B).dim() + meet(F, A, B).dim());
    }
}

TEST(Enumerate, Counts) {
  FieldTower F3(3, 1, 2);
  EXPECT_EQ(space_point_count(F3, 2, Level::Base), 4u);
  EXPECT_EQ(space_point_count(F3, 3, Level::Base), 13u);
  FieldTower F4(2, 2, 2);
  EXPECT_EQ(space_point_count(F4, 3, Level::Base), 21u);
  std::set<ProjPoint> seen;
  for (std::uint64_t i = 0; i < 21; ++i) {
    const auto P = space_point_at(F4, 3, Level::Base, i);
    EXPECT_EQ(normalize(F4, P.x), P);
    seen.insert(P);
  }
  EXPECT_EQ(seen.size(), 21u);
}

TEST(Enumerate, SubspacePointsAreDistinctAndInside) {
  FieldTower F(3, 1, 3);
  const auto S = span_vectors(F, 3, Level::Extension,
                              {{Elem{1}, Elem{4}, Elem{9}}, {Elem{0}, Elem{1}, Elem{2}}});
  std::set<ProjPoint> seen;
  for_each_point(F, S, [&](const ProjPoint& P) {
    EXPECT_TRUE(contains(F, S, P.x));
    EXPECT_EQ(normalize(F, P.x), P);
    seen.insert(P);
  });
  EXPECT_EQ(seen.size(), 28u);
}

TEST(Collineation, SigmaHatAction) {
  FieldTower F(3, 1, 3);
  const auto s = sigma_hat(F, 3, 1);
  const Elem a = F.primitive();
  const ProjPoint P{{F.one(), a, F.mul(a, a)}};
  const ProjPoint expect{{F.one(), F.pow(a, std::uint64_t{3}), F.pow(a, std::uint64_t{6})}};
  EXPECT_EQ(apply(F, s, P), expect);
  const ProjPoint R{{Elem{1}, Elem{2}, Elem{0}}};
  EXPECT_EQ(apply(F, s, R), R);
  EXPECT_TRUE(same_collineation(F, power(F, s, 3), identity_collineation(3)));
  EXPECT_FALSE(same_collineation(F, power(F, s, 2), identity_collineation(3)));
  EXPECT_THROW(sigma_hat(F, 3, 3), PreconditionError);
}

TEST(Collineation, SigmaHatFixesExactlyTheRationalPoints) {
  FieldTower F(3, 1, 2);
  const auto s = sigma_hat(F, 3, 1);
  const auto total = space_point_count(F, 3, Level::Extension);
  int fixed = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    const auto P = space_point_at(F, 3, Level::Extension, i);
    if (apply(F, s, P) == P) ++fixed;
  }
  EXPECT_EQ(fixed, 13);
}

TEST(Collineation, GroupActionLaws) {
  FieldTower F(2, 2, 3);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 30; ++it) {
    Mat M1{random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3)};
    Mat M2{random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3)};
    if (det(F, M1).code == 0 || det(F, M2).code == 0) continue;
    const Collineation c1{M1, static_cast<int>(it % 6)}, c2{M2, static_cast<int>((it * 5) % 6)};
    const auto c12 = compose(F, c1, c2);
    const auto cinv = inverse(F, c1);
    for (int k = 0; k < 10; ++k) {
      Vec v = random_vec(rng, F.order(), 3);
      if (is_zero(v)) continue;
      const auto P = normalize(F, v);
      EXPECT_EQ(apply(F, c12, P), apply(F, c1, apply(F, c2, P)));
      EXPECT_EQ(apply(F, cinv, apply(F, c1, P)), P);
    }
    const auto S = span_vectors(F, 3, Level::Extension, {random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3)});
    EXPECT_EQ(apply_sub(F, c1, S).dim(), S.dim());
  }
}

TEST(Matrix, InverseAndDeterminant) {
  FieldTower F(5, 1, 2);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 40; ++it) {
    Mat A{random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3), random_vec(rng, F.order(), 3)};
    const auto inv = mat_inverse(F, A);
    EXPECT_EQ(inv.has_value(), det(F, A).code != 0);
    if (inv) EXPECT_EQ(mat_mul(F, A, *inv), identity_mat(3));
  }
}
