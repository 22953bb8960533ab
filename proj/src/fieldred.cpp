#include "pseudoreg/fieldred.hpp"

#include <algorithm>

namespace pseudoreg {

Vec reduce_vector(const FieldTower& F, const Vec& x) {
  Vec out;
  out.reserve(x.size() * F.t());
  for (Elem c : x)
    for (auto d : F.coeffs(c)) out.push_back(Elem{d});
  return out;
}

Vec lift_vector(const FieldTower& F, const Vec& y) {
  const std::size_t t = F.t();
  if (y.size() % t != 0) throw PreconditionError("lift_vector: length not a multiple of t");
  Vec out(y.size() / t);
  std::vector<std::uint32_t> block(t);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < t; ++j) block[j] = y[i * t + j].code;
    out[i] = F.from_coeffs(block);
  }
  return out;
}

Subspace field_reduce(const FieldTower& F, const ProjPoint& P) {
  Mat rows;
  Elem vj = F.one();
  for (int j = 0; j < F.t(); ++j) {
    Vec scaled(P.x.size());
    for (std::size_t i = 0; i < P.x.size(); ++i) scaled[i] = F.mul(vj, P.x[i]);
    rows.push_back(reduce_vector(F, scaled));
    vj = F.mul(vj, F.root());
  }
  const int n = static_cast<int>(P.x.size()) * F.t();
  return span_vectors(F, n, Level::Base, std::move(rows));
}

ProjPoint spread_point(const FieldTower& F, const Vec& y) { return normalize(F, lift_vector(F, y)); }

LinearSet blowup_B(const FieldTower& F, const Subspace& S) {
  if (S.ambient() % F.t() != 0) throw PreconditionError("blowup_B: ambient dimension not a multiple of t");
  std::vector<ProjPoint> pts;
  const std::uint64_t count = point_count(F, S);
  pts.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) pts.push_back(spread_point(F, point_at(F, S, i).x));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LinearSet L;
  L.rank = S.rank();
  L.scattered = BigInt(pts.size()) == theta(S.dim(), F.q());
  L.points = std::move(pts);
  L.witness = S;
  return L;
}

}  // namespace pseudoreg
