#pragma once

// Field reduction PG(r-1, q^t) -> PG(rt-1, q) with respect to the power basis
// 1, v, .., v^{t-1} of GF(q^t) over GF(q), and the linear sets B(S).

#include <vector>

#include "pseudoreg/projspace.hpp"

namespace pseudoreg {

struct LinearSet {
  std::vector<ProjPoint> points;  // sorted
  Subspace witness;
  int rank = 0;
  bool scattered = false;
};

// (x_1, .., x_r) -> GF(q) coordinates, block i holds the coefficients of x_i.
Vec reduce_vector(const FieldTower& F, const Vec& x);
Vec lift_vector(const FieldTower& F, const Vec& y);

// The (t-1)-space of GF(q)-points of <P>.
Subspace field_reduce(const FieldTower& F, const ProjPoint& P);

// GF(q)-point of PG(rt-1, q) -> the point of PG(r-1, q^t) whose spread element holds it.
ProjPoint spread_point(const FieldTower& F, const Vec& y);

LinearSet blowup_B(const FieldTower& F, const Subspace& S);

}  // namespace pseudoreg
