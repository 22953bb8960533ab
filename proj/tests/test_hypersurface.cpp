#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "pseudoreg/hypersurface.hpp"

using namespace pseudoreg;

TEST(Hypersurface, MembershipExamples) {
  FieldTower F(3, 1, 3);
  EXPECT_TRUE(membership(F, to_proj(F, {F.one(), F.one()})));
  EXPECT_FALSE(membership(F, to_proj(F, {F.one(), F.zero()})));
}

TEST(Hypersurface, SizeIsThetaSquaredByScan) {
  FieldTower F(3, 1, 3);
  const auto n = space_point_count(F, 6, Level::Base);
  std::set<ProjPoint> scanned;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto P = space_point_at(F, 6, Level::Base, i);
    if (membership(F, P)) scanned.insert(P);
  }
  EXPECT_EQ(scanned.size(), 169u);
  const auto pts = q_points(F);
  std::set<ProjPoint> listed;
  for (const auto& P : pts) listed.insert(to_proj(F, P));
  EXPECT_EQ(listed, scanned);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(point_key(F, pts[i - 1]), point_key(F, pts[i]));
  for (const auto& P : pts) EXPECT_EQ(from_key(F, point_key(F, P)), P);
}

TEST(Hypersurface, FamiliesPartitionQ) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}}) {
    FieldTower F(p, e, 3);
    const auto Q = q_points(F);
    for (int h = 0; h < 3; ++h) {
      const auto fam = family(F, h);
      EXPECT_EQ(BigInt(fam.size()), theta(2, F.q()));
      std::map<QPoint, int> cover;
      for (const auto& S : fam) {
        const auto pts = family_points(F, S);
        EXPECT_EQ(BigInt(pts.size()), theta(2, F.q()));
        const auto sub = family_subspace(F, S);
        EXPECT_EQ(sub.dim(), 2);
        for (const auto& P : pts) {
          cover[P]++;
          EXPECT_TRUE(in_Q(F, P.a, P.b));
          EXPECT_TRUE(contains(F, sub, to_proj(F, P).x));
        }
      }
      EXPECT_EQ(cover.size(), Q.size());
      for (const auto& [P, c] : cover) EXPECT_EQ(c, 1);
    }
  }
}

TEST(Hypersurface, FieldReductionOfStandardSetIsS0) {
  FieldTower F(3, 1, 3);
  for (const auto& S : family(F, 0)) EXPECT_EQ(field_reduce(F, ProjPoint{{F.one(), S.k}}), family_subspace(F, S));
}

TEST(Hypersurface, FamilyMembersClosedUnderJoins) {
  FieldTower F(2, 2, 3);
  std::mt19937_64 rng(2);
  for (int h = 0; h < 3; ++h) {
    for (const auto& S : family(F, h)) {
      const auto pts = family_points(F, S);
      for (int r = 0; r < 4; ++r) {
        const auto& u = pts[rng() % pts.size()];
        const auto& w = pts[rng() % pts.size()];
        if (u == w) continue;
        const QLine L{u, w};
        EXPECT_TRUE(line_in_Q(F, L));
        const auto fams = containing_families(F, L);
        EXPECT_NE(std::find(fams.begin(), fams.end(), h), fams.end());
      }
    }
  }
}

TEST(Hypersurface, LinesThroughUnitPoint) {
  for (auto [p, e, t] : std::vector<std::tuple<int, int, int>>{{3, 1, 3}, {2, 2, 3}, {2, 2, 4}, {5, 1, 3}}) {
    FieldTower F(p, e, t);
    const auto lines = lines_through_unit(F);
    EXPECT_EQ(BigInt(lines.size()), count_N1(F.q(), t));
    std::vector<std::array<std::uint64_t, 2>> keys;
    for (const auto& L : lines) {
      EXPECT_TRUE(line_in_Q(F, L));
      keys.push_back(line_key(F, L));
    }
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end());
    EXPECT_EQ(keys, lines_through_bruteforce(F, {F.one(), F.one()}));
    // h = 0 gives the lines inside S_{0,1}.
    int in_s0 = 0;
    for (const auto& L : lines) {
      const auto fams = containing_families(F, L);
      in_s0 += std::find(fams.begin(), fams.end(), 0) != fams.end();
    }
    EXPECT_EQ(BigInt(in_s0), theta(t - 2, F.q()));
  }
}

TEST(Hypersurface, N1ExamplesAndDegreeCensus) {
  EXPECT_EQ(count_N1(3, 3), 12);
  EXPECT_EQ(count_N1(4, 4), 82);
  EXPECT_EQ(degree_sum(4, 4), 2 * 12 + 4 * 240);
  for (auto [p, e, t] : std::vector<std::tuple<int, int, int>>{{3, 1, 3}, {2, 2, 4}, {2, 1, 6}, {3, 1, 4}, {2, 3, 2}}) {
    FieldTower F(p, e, t);
    EXPECT_EQ(degree_sum(F.q(), t), degree_sum_scan(F));
  }
  // Prime t: every nonrational element has degree t.
  EXPECT_EQ(degree_sum(5, 5), 5 * (3125 - 5));
}

TEST(Hypersurface, LinesThroughGenericPoints) {
  FieldTower F(2, 2, 3);
  std::mt19937_64 rng(9);
  const auto Q = q_points(F);
  for (int r = 0; r < 6; ++r) {
    const auto P = Q[rng() % Q.size()];
    std::vector<std::array<std::uint64_t, 2>> keys;
    for (const auto& L : lines_through(F, P)) {
      const auto pts = line_points(F, L);
      EXPECT_NE(std::find(pts.begin(), pts.end(), P), pts.end());
      keys.push_back(line_key(F, L));
    }
    std::sort(keys.begin(), keys.end());
    EXPECT_EQ(keys, lines_through_bruteforce(F, P));
  }
}

TEST(Hypersurface, AllLinesMatchN2AndLieInFamilies) {
  for (auto [p, e, N2] : std::vector<std::tuple<int, int, int>>{{3, 1, 507}, {2, 2, 1323}}) {
    FieldTower F(p, e, 3);
    EXPECT_EQ(count_N2(F.q(), 3), N2);
    const auto lines = all_lines_bruteforce(F, Exec::Parallel);
    EXPECT_EQ(lines, all_lines_bruteforce(F, Exec::Serial));
    EXPECT_EQ(static_cast<int>(lines.size()), N2);
    std::map<std::uint64_t, int> through;
    for (const auto& k : lines) {
      const QLine L{from_key(F, k[0]), from_key(F, k[1])};
      EXPECT_FALSE(containing_families(F, L).empty());
      for (const auto& P : line_points(F, L)) through[point_key(F, P)]++;
    }
    // Every point of Q is on exactly N1 lines.
    EXPECT_EQ(BigInt(through.size()), theta(2, F.q()) * theta(2, F.q()));
    for (const auto& [k, c] : through) EXPECT_EQ(c, count_N1(F.q(), 3));
    // Incidences counted two ways.
    EXPECT_EQ(count_N2(F.q(), 3) * (F.q() + 1), theta(2, F.q()) * theta(2, F.q()) * count_N1(F.q(), 3));
  }
}

TEST(Hypersurface, SublineCounts) {
  EXPECT_EQ(subline_count(3, 3), 26);
  EXPECT_EQ(subline_count(4, 3), 42);
  EXPECT_EQ(subline_count(4, 4), 1037);
  EXPECT_EQ(subline_count(5, 5), 81224);
  for (int t : {3, 5, 7})
    for (std::uint64_t q : {7u, 8u, 9u, 11u}) EXPECT_EQ(subline_count(q, t), subline_count_prime(q, t));
  // N = N2 - theta^2 theta_{t-2}/(q+1) lines, theta_{t-1} per subline.
  for (auto [q, t] : std::vector<std::pair<std::uint64_t, int>>{{3, 3}, {4, 4}, {5, 5}, {8, 6}}) {
    const BigInt th = theta(t - 1, q);
    EXPECT_EQ((count_N2(q, t) - th * th * theta(t - 2, q) / (q + 1)) / th, subline_count(q, t));
  }
}

TEST(Hypersurface, RejectsQBelowT) {
  EXPECT_THROW(count_N1(3, 4), HypothesisError);
  EXPECT_THROW(count_N2(2, 3), HypothesisError);
  EXPECT_THROW(subline_count(4, 5), HypothesisError);
  FieldTower F(2, 1, 3);
  EXPECT_THROW(lines_through_unit(F), HypothesisError);
  EXPECT_THROW(family(F, 3), PreconditionError);
}
