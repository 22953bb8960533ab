#pragma once

// The hypersurface Q = {<(a,b)>_q : N(a) = N(b)} of PG(2t-1, q), its families
// S_h = {S_{h,k}}, the lines it contains and the related counts.

#include <array>
#include <cstdint>
#include <vector>

#include "pseudoreg/exec.hpp"
#include "pseudoreg/fieldred.hpp"

namespace pseudoreg {

// Point <(a,b)>_q of PG(2t-1, q); normalized means the first nonzero GF(q)
// coordinate of (a,b) is 1, matching normalize() after reduce_vector.
struct QPoint {
  Elem a, b;

  friend bool operator==(const QPoint&, const QPoint&) = default;
  friend auto operator<=>(const QPoint&, const QPoint&) = default;
};

QPoint normalize_pair(const FieldTower& F, Elem a, Elem b);
std::uint64_t point_key(const FieldTower& F, const QPoint& P);  // a * q^t + b, P normalized
QPoint from_key(const FieldTower& F, std::uint64_t key);

bool in_Q(const FieldTower& F, Elem a, Elem b);
// P is a point of PG(2t-1, q) in reduced coordinates.
bool membership(const FieldTower& F, const ProjPoint& P);
ProjPoint to_proj(const FieldTower& F, const QPoint& P);

// All points of Q, sorted by key.
std::vector<QPoint> q_points(const FieldTower& F);

struct FamilySubspace {
  int h = 0;
  Elem k;
};

std::vector<FamilySubspace> family(const FieldTower& F, int h);
// {<(z, k z^{q^h})>_q}, theta_{t-1} points sorted by key.
std::vector<QPoint> family_points(const FieldTower& F, const FamilySubspace& S);
// Same as a subspace of PG(2t-1, q).
Subspace family_subspace(const FieldTower& F, const FamilySubspace& S);

// A line of PG(2t-1, q) through two points; key is its two smallest point keys.
struct QLine {
  QPoint u, w;
};

std::vector<QPoint> line_points(const FieldTower& F, const QLine& L);
std::array<std::uint64_t, 2> line_key(const FieldTower& F, const QLine& L);
bool line_in_Q(const FieldTower& F, const QLine& L);
// h with the line inside some S_{h,k}; empty when there is none.
std::vector<int> containing_families(const FieldTower& F, const QLine& L);

// Canonical representatives of the classes y -> a y + b (a in GF(q)*, b in GF(q))
// of GF(q^t) \ GF(q): zero constant coefficient, first nonzero coefficient 1.
std::vector<Elem> canonical_nonrational(const FieldTower& F);

// Lines of Q through <(1,1)>: <P, Q_{y,h}> for canonical y, 0 <= h < [F_q(y):F_q].
std::vector<QLine> lines_through_unit(const FieldTower& F);
// Lines of Q through P, the image of the previous set under (x,y) -> (ax, by).
std::vector<QLine> lines_through(const FieldTower& F, const QPoint& P);
// Brute-force scan of Q; line keys, sorted.
std::vector<std::array<std::uint64_t, 2>> lines_through_bruteforce(const FieldTower& F, const QPoint& P);
// Every line contained in Q, by scanning pairs of points of Q; keys sorted.
std::vector<std::array<std::uint64_t, 2>> all_lines_bruteforce(const FieldTower& F, Exec exec = Exec::Parallel);

// sum over y in GF(q^t) \ GF(q) of [F_q(y) : F_q].
BigInt degree_sum(std::uint64_t q, int t);
BigInt degree_sum_scan(const FieldTower& F);

// Closed forms; q < t raises HypothesisError.
BigInt count_N1(std::uint64_t q, int t);
BigInt count_N2(std::uint64_t q, int t);
BigInt subline_count(std::uint64_t q, int t);
// (t-1) theta_{t-1} theta_{t-2} / theta_1, t prime.
BigInt subline_count_prime(std::uint64_t q, int t);

}  // namespace pseudoreg
