#pragma once

// Points, subspaces and collineations of PG(n-1, F), F = GF(q) or GF(q^t).
// Both levels share the element type of the tower: a GF(q) vector is simply a
// vector whose codes are all below q.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pseudoreg/gf.hpp"

namespace pseudoreg {

enum class Level { Base, Extension };

using Vec = std::vector<Elem>;
using Mat = std::vector<Vec>;  // row major

std::uint64_t level_size(const FieldTower& F, Level level);

struct ProjPoint {
  Vec x;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& P) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Elem c : P.x) h = (h ^ c.code) * 1099511628211ull;
    return h;
  }
};

// Leftmost nonzero coordinate scaled to 1. Throws on the zero vector.
ProjPoint normalize(const FieldTower& F, Vec v);
bool is_zero(const Vec& v);

// Subspace in reduced row echelon form; rows().empty() is the empty subspace.
class Subspace {
 public:
  Subspace() = default;
  Subspace(int n, Level level, Mat rref_rows) : n_(n), level_(level), rows_(std::move(rref_rows)) {}

  int ambient() const { return n_; }  // vector dimension n of PG(n-1, F)
  Level level() const { return level_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  int dim() const { return rank() - 1; }
  bool empty() const { return rows_.empty(); }
  const Mat& rows() const { return rows_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  int n_ = 0;
  Level level_ = Level::Extension;
  Mat rows_;
};

// Row reduction in place, returns the rank; rows past the rank are dropped.
int rref(const FieldTower& F, Mat& rows);
int rank_of(const FieldTower& F, Mat rows);
Subspace span_vectors(const FieldTower& F, int n, Level level, Mat rows);
Subspace span(const FieldTower& F, Level level, const std::vector<ProjPoint>& points);
Subspace join(const FieldTower& F, const Subspace& A, const Subspace& B);
Subspace meet(const FieldTower& F, const Subspace& A, const Subspace& B);
bool contains(const FieldTower& F, const Subspace& S, const Vec& v);
bool contains(const FieldTower& F, const Subspace& outer, const Subspace& inner);
// Basis of {c : sum_j c_j r_j = 0 for every row r} (column vectors of length n).
Mat kernel(const FieldTower& F, const Mat& rows, int n);
// Dual coordinates: hyperplanes containing S, as rows.
Mat annihilator(const FieldTower& F, const Subspace& S);

// Enumeration of the points of S. Index i in [0, point_count) maps to a
// normalized point; the order is fixed so index ranges partition the work.
std::uint64_t point_count(const FieldTower& F, const Subspace& S);
ProjPoint point_at(const FieldTower& F, const Subspace& S, std::uint64_t index);
// Same for the whole space PG(n-1, F).
std::uint64_t space_point_count(const FieldTower& F, int n, Level level);
ProjPoint space_point_at(const FieldTower& F, int n, Level level, std::uint64_t index);
// Normalized coefficient vector with the given index (length k, over the level).
Vec normalized_vector_at(std::uint64_t s, int k, std::uint64_t index);
void for_each_point(const FieldTower& F, const Subspace& S, const std::function<void(const ProjPoint&)>& fn);
Subspace whole_space(const FieldTower& F, int n, Level level);

// Matrices.
Mat identity_mat(int n);
Mat mat_mul(const FieldTower& F, const Mat& A, const Mat& B);
Vec mat_vec(const FieldTower& F, const Mat& A, const Vec& v);
std::optional<Mat> mat_inverse(const FieldTower& F, const Mat& A);
Elem det(const FieldTower& F, Mat A);
Mat transpose(const Mat& A);
Mat frob_mat(const FieldTower& F, const Mat& A, int p_exponent);
Vec frob_vec(const FieldTower& F, const Vec& v, int p_exponent);

// x -> M * x^{p^a}.
struct Collineation {
  Mat M;
  int a = 0;
};

Collineation identity_collineation(int n);
Collineation projectivity(Mat M);
// Coordinatewise x -> x^{q^nu}.
Collineation sigma_hat(const FieldTower& F, int n, int nu);
Collineation compose(const FieldTower& F, const Collineation& c1, const Collineation& c2);  // c1 after c2
Collineation inverse(const FieldTower& F, const Collineation& c);
Collineation power(const FieldTower& F, const Collineation& c, int k);
bool is_projectivity(const FieldTower& F, const Collineation& c);
Vec apply_vec(const FieldTower& F, const Collineation& c, const Vec& v);
ProjPoint apply(const FieldTower& F, const Collineation& c, const ProjPoint& P);
Subspace apply_sub(const FieldTower& F, const Collineation& c, const Subspace& S);
// Same point map (matrices equal up to a scalar, same automorphism).
bool same_collineation(const FieldTower& F, const Collineation& c1, const Collineation& c2);

}  // namespace pseudoreg
