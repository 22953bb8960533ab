#include <gtest/gtest.h>

#include <map>
#include <set>

#include "pseudoreg/fieldred.hpp"

using namespace pseudoreg;

TEST(FieldReduce, ImageIsPlaneOf13Points) {
  FieldTower F(3, 1, 3);
  const ProjPoint P{{Elem{1}, Elem{17}}};
  const auto S = field_reduce(F, P);
  EXPECT_EQ(S.ambient(), 6);
  EXPECT_EQ(S.dim(), 2);
  EXPECT_EQ(point_count(F, S), 13u);
}

TEST(FieldReduce, SpreadCoversPG53ExactlyOnce) {
  FieldTower F(3, 1, 3);
  std::map<ProjPoint, int> cover;
  const auto n = space_point_count(F, 2, Level::Extension);
  EXPECT_EQ(n, 28u);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto P = space_point_at(F, 2, Level::Extension, i);
    const auto S = field_reduce(F, P);
    for_each_point(F, S, [&](const ProjPoint& X) {
      cover[X]++;
      EXPECT_EQ(spread_point(F, X.x), P);
    });
  }
  EXPECT_EQ(cover.size(), 364u);
  for (const auto& [X, c] : cover) EXPECT_EQ(c, 1);
}

TEST(Blowup, SpreadElementGivesSinglePoint) {
  FieldTower F(2, 2, 3);
  const ProjPoint P{{Elem{1}, Elem{9}}};
  const auto L = blowup_B(F, field_reduce(F, P));
  ASSERT_EQ(L.points.size(), 1u);
  EXPECT_EQ(L.points[0], P);
  EXPECT_EQ(L.rank, 3);
  EXPECT_FALSE(L.scattered);
}

TEST(Blowup, SinglePointIsScatteredRankOne) {
  FieldTower F(3, 1, 3);
  Vec y(6, Elem{0});
  y[1] = Elem{1};
  y[4] = Elem{2};
  const auto L = blowup_B(F, span_vectors(F, 6, Level::Base, {y}));
  EXPECT_EQ(L.points.size(), 1u);
  EXPECT_EQ(L.rank, 1);
  EXPECT_TRUE(L.scattered);
}

TEST(Blowup, GraphOfFrobeniusGivesStandardPseudoregulus) {
  for (auto [p, e, t] : std::vector<std::tuple<int, int, int>>{{3, 1, 3}, {2, 2, 3}, {3, 1, 4}}) {
    FieldTower F(p, e, t);
    Mat rows;
    Elem vj = F.one();
    for (int j = 0; j < t; ++j) {
      rows.push_back(reduce_vector(F, {vj, F.frob(vj, 1)}));
      vj = F.mul(vj, F.root());
    }
    const auto L = blowup_B(F, span_vectors(F, 2 * t, Level::Base, rows));
    EXPECT_EQ(BigInt(L.points.size()), theta(t - 1, F.q()));
    EXPECT_TRUE(L.scattered);
    EXPECT_EQ(L.rank, t);
    for (const auto& P : L.points) {
      EXPECT_EQ(P.x[0], F.one());
      EXPECT_EQ(F.norm(P.x[1]), F.one());
    }
  }
}

TEST(Blowup, MonotoneUnderInclusion) {
  FieldTower F(3, 1, 3);
  Mat rows;
  for (std::uint64_t i : {3u, 50u, 111u, 200u}) rows.push_back(space_point_at(F, 6, Level::Base, i).x);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const Mat small(rows.begin(), rows.begin() + k);
    const Mat big(rows.begin(), rows.begin() + k + 1);
    const auto A = blowup_B(F, span_vectors(F, 6, Level::Base, small));
    const auto B = blowup_B(F, span_vectors(F, 6, Level::Base, big));
    EXPECT_TRUE(std::includes(B.points.begin(), B.points.end(), A.points.begin(), A.points.end()));
  }
}

TEST(Blowup, RankSizeBoundOverAllLinesOfPG53) {
  FieldTower F(3, 1, 3);
  const auto n = space_point_count(F, 6, Level::Base);
  std::set<Mat> lines;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = i + 1; j < n; ++j)
      lines.insert(span(F, Level::Base, {space_point_at(F, 6, Level::Base, i), space_point_at(F, 6, Level::Base, j)})
                       .rows());
  ASSERT_EQ(lines.size(), 11011u);
  int single = 0, scattered = 0;
  for (const auto& rows : lines) {
    const auto L = blowup_B(F, Subspace(6, Level::Base, rows));
    EXPECT_LE(L.points.size(), 4u);
    EXPECT_EQ(L.scattered, L.points.size() == 4u);
    single += L.points.size() == 1u;
    scattered += L.scattered;
  }
  // Lines inside one of the 28 spread planes: 28 * 13.
  EXPECT_EQ(single, 364);
  EXPECT_EQ(scattered, 11011 - 364);
}
