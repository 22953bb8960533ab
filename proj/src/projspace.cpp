#include "pseudoreg/projspace.hpp"

#include <algorithm>

namespace pseudoreg {

std::uint64_t level_size(const FieldTower& F, Level level) {
  return level == Level::Base ? F.q() : F.order();
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem c) { return c.code == 0; });
}

ProjPoint normalize(const FieldTower& F, Vec v) {
  auto it = std::find_if(v.begin(), v.end(), [](Elem c) { return c.code != 0; });
  if (it == v.end()) throw PreconditionError("zero vector is not a projective point");
  if (it->code != 1) {
    const Elem s = F.inv(*it);
    for (auto jt = it; jt != v.end(); ++jt) *jt = F.mul(*jt, s);
  }
  return ProjPoint{std::move(v)};
}

int rref(const FieldTower& F, Mat& rows) {
  if (rows.empty()) return 0;
  const int n = static_cast<int>(rows[0].size());
  int r = 0;
  for (int col = 0; col < n && r < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col].code != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    const Elem s = F.inv(rows[r][col]);
    for (int j = col; j < n; ++j) rows[r][j] = F.mul(rows[r][j], s);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][col].code == 0) continue;
      const Elem c = rows[i][col];
      for (int j = col; j < n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(c, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return r;
}

int rank_of(const FieldTower& F, Mat rows) { return rref(F, rows); }

Subspace span_vectors(const FieldTower& F, int n, Level level, Mat rows) {
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != n) throw PreconditionError("span: dimension mismatch");
  rref(F, rows);
  return Subspace(n, level, std::move(rows));
}

Subspace span(const FieldTower& F, Level level, const std::vector<ProjPoint>& points) {
  if (points.empty()) throw PreconditionError("span of an empty point list");
  Mat rows;
  for (const auto& P : points) rows.push_back(P.x);
  return span_vectors(F, static_cast<int>(points[0].x.size()), level, std::move(rows));
}

Subspace join(const FieldTower& F, const Subspace& A, const Subspace& B) {
  if (A.ambient() != B.ambient()) throw PreconditionError("join: ambient mismatch");
  Mat rows = A.rows();
  rows.insert(rows.end(), B.rows().begin(), B.rows().end());
  const Level level = (A.level() == Level::Base && B.level() == Level::Base) ? Level::Base : Level::Extension;
  return span_vectors(F, A.ambient(), level, std::move(rows));
}

Mat kernel(const FieldTower& F, const Mat& rows_in, int n) {
  Mat rows = rows_in;
  rref(F, rows);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(n, false);
  for (const auto& row : rows) {
    int c = 0;
    while (row[c].code == 0) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  Mat out;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, Elem{0});
    v[free] = Elem{1};
    for (std::size_t i = 0; i < rows.size(); ++i) v[pivot_col[i]] = F.neg(rows[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

Mat annihilator(const FieldTower& F, const Subspace& S) { return kernel(F, S.rows(), S.ambient()); }

Subspace meet(const FieldTower& F, const Subspace& A, const Subspace& B) {
  if (A.ambient() != B.ambient()) throw PreconditionError("meet: ambient mismatch");
  const Level level = (A.level() == Level::Base && B.level() == Level::Base) ? Level::Base : Level::Extension;
  if (A.empty() || B.empty()) return Subspace(A.ambient(), level, {});
  Mat duals = annihilator(F, A);
  Mat db = annihilator(F, B);
  duals.insert(duals.end(), db.begin(), db.end());
  if (duals.empty()) return Subspace(A.ambient(), level, A.rows());
  return span_vectors(F, A.ambient(), level, kernel(F, duals, A.ambient()));
}

bool contains(const FieldTower& F, const Subspace& S, const Vec& v) {
  if (is_zero(v)) return true;
  Mat rows = S.rows();
  rows.push_back(v);
  return rref(F, rows) == S.rank();
}

bool contains(const FieldTower& F, const Subspace& outer, const Subspace& inner) {
  for (const auto& row : inner.rows())
    if (!contains(F, outer, row)) return false;
  return true;
}

Vec normalized_vector_at(std::uint64_t s, int k, std::uint64_t index) {
  Vec v(k, Elem{0});
  std::uint64_t block = 1;
  for (int i = 0; i < k - 1; ++i) block *= s;
  for (int j = 0; j < k; ++j) {
    if (index < block) {
      v[j] = Elem{1};
      for (int i = k - 1; i > j; --i) {
        v[i] = Elem{static_cast<std::uint32_t>(index % s)};
        index /= s;
      }
      return v;
    }
    index -= block;
    block /= s;
  }
  throw PreconditionError("point index out of range");
}

namespace {

std::uint64_t checked_theta(std::uint64_t s, int k) {
  std::uint64_t total = 0, block = 1;
  for (int i = 0; i < k; ++i) {
    total += block;
    if (i + 1 < k) {
      if (block > (std::uint64_t{1} << 62) / s) throw SizingError("point count overflows 64 bits");
      block *= s;
    }
  }
  return total;
}

}  // namespace

std::uint64_t point_count(const FieldTower& F, const Subspace& S) {
  return checked_theta(level_size(F, S.level()), S.rank());
}

ProjPoint point_at(const FieldTower& F, const Subspace& S, std::uint64_t index) {
  const Vec lambda = normalized_vector_at(level_size(F, S.level()), S.rank(), index);
  Vec v(S.ambient(), Elem{0});
  for (int i = 0; i < S.rank(); ++i) {
    if (lambda[i].code == 0) continue;
    for (int j = 0; j < S.ambient(); ++j) v[j] = F.add(v[j], F.mul(lambda[i], S.rows()[i][j]));
  }
  return ProjPoint{std::move(v)};
}

std::uint64_t space_point_count(const FieldTower& F, int n, Level level) {
  return checked_theta(level_size(F, level), n);
}

ProjPoint space_point_at(const FieldTower& F, int n, Level level, std::uint64_t index) {
  return ProjPoint{normalized_vector_at(level_size(F, level), n, index)};
}

void for_each_point(const FieldTower& F, const Subspace& S, const std::function<void(const ProjPoint&)>& fn) {
  const std::uint64_t count = point_count(F, S);
  for (std::uint64_t i = 0; i < count; ++i) fn(point_at(F, S, i));
}

Subspace whole_space(const FieldTower& F, int n, Level level) {
  return span_vectors(F, n, level, identity_mat(n));
}

Mat identity_mat(int n) {
  Mat I(n, Vec(n, Elem{0}));
  for (int i = 0; i < n; ++i) I[i][i] = Elem{1};
  return I;
}

Mat mat_mul(const FieldTower& F, const Mat& A, const Mat& B) {
  const std::size_t n = A.size(), m = B[0].size(), k = B.size();
  Mat C(n, Vec(m, Elem{0}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (A[i][l].code == 0) continue;
      for (std::size_t j = 0; j < m; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][l], B[l][j]));
    }
  return C;
}

Vec mat_vec(const FieldTower& F, const Mat& A, const Vec& v) {
  Vec out(A.size(), Elem{0});
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = F.add(out[i], F.mul(A[i][j], v[j]));
  return out;
}

std::optional<Mat> mat_inverse(const FieldTower& F, const Mat& A) {
  const int n = static_cast<int>(A.size());
  Mat aug(n, Vec(2 * n, Elem{0}));
  for (int i = 0; i < n; ++i) {
    std::copy(A[i].begin(), A[i].end(), aug[i].begin());
    aug[i][n + i] = Elem{1};
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (aug[i][col].code != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(aug[col], aug[piv]);
    const Elem s = F.inv(aug[col][col]);
    for (int j = 0; j < 2 * n; ++j) aug[col][j] = F.mul(aug[col][j], s);
    for (int i = 0; i < n; ++i) {
      if (i == col || aug[i][col].code == 0) continue;
      const Elem c = aug[i][col];
      for (int j = 0; j < 2 * n; ++j) aug[i][j] = F.sub(aug[i][j], F.mul(c, aug[col][j]));
    }
  }
  Mat inv(n, Vec(n));
  for (int i = 0; i < n; ++i) std::copy(aug[i].begin() + n, aug[i].end(), inv[i].begin());
  return inv;
}

Elem det(const FieldTower& F, Mat A) {
  const int n = static_cast<int>(A.size());
  Elem d{1};
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (A[i][col].code != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Elem{0};
    if (piv != col) {
      std::swap(A[col], A[piv]);
      d = F.neg(d);
    }
    d = F.mul(d, A[col][col]);
    const Elem s = F.inv(A[col][col]);
    for (int i = col + 1; i < n; ++i) {
      if (A[i][col].code == 0) continue;
      const Elem c = F.mul(A[i][col], s);
      for (int j = col; j < n; ++j) A[i][j] = F.sub(A[i][j], F.mul(c, A[col][j]));
    }
  }
  return d;
}

Mat transpose(const Mat& A) {
  Mat T(A[0].size(), Vec(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
  return T;
}

Vec frob_vec(const FieldTower& F, const Vec& v, int p_exponent) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.frob_p(v[i], p_exponent);
  return out;
}

Mat frob_mat(const FieldTower& F, const Mat& A, int p_exponent) {
  Mat out;
  out.reserve(A.size());
  for (const auto& row : A) out.push_back(frob_vec(F, row, p_exponent));
  return out;
}

namespace {

int reduce_exponent(const FieldTower& F, int a) {
  const int period = F.e() * F.t();
  a %= period;
  return a < 0 ? a + period : a;
}

}  // namespace

Collineation identity_collineation(int n) { return Collineation{identity_mat(n), 0}; }

Collineation projectivity(Mat M) { return Collineation{std::move(M), 0}; }

Collineation sigma_hat(const FieldTower& F, int n, int nu) {
  if (gcd_int(nu, F.t()) != 1)
    throw PreconditionError("sigma_hat needs gcd(nu, t) = 1, got nu=" + std::to_string(nu));
  return Collineation{identity_mat(n), reduce_exponent(F, F.e() * nu)};
}

Collineation compose(const FieldTower& F, const Collineation& c1, const Collineation& c2) {
  return Collineation{mat_mul(F, c1.M, frob_mat(F, c2.M, c1.a)), reduce_exponent(F, c1.a + c2.a)};
}

Collineation inverse(const FieldTower& F, const Collineation& c) {
  auto Minv = mat_inverse(F, c.M);
  if (!Minv) throw PreconditionError("singular collineation matrix");
  return Collineation{frob_mat(F, *Minv, -c.a), reduce_exponent(F, -c.a)};
}

Collineation power(const FieldTower& F, const Collineation& c, int k) {
  Collineation base = k >= 0 ? c : inverse(F, c);
  Collineation out = identity_collineation(static_cast<int>(c.M.size()));
  for (int i = 0; i < std::abs(k); ++i) out = compose(F, base, out);
  return out;
}

bool is_projectivity(const FieldTower& F, const Collineation& c) { return reduce_exponent(F, c.a) == 0; }

Vec apply_vec(const FieldTower& F, const Collineation& c, const Vec& v) {
  if (v.size() != c.M.size()) throw PreconditionError("collineation dimension mismatch");
  return mat_vec(F, c.M, c.a == 0 ? v : frob_vec(F, v, c.a));
}

ProjPoint apply(const FieldTower& F, const Collineation& c, const ProjPoint& P) {
  return normalize(F, apply_vec(F, c, P.x));
}

Subspace apply_sub(const FieldTower& F, const Collineation& c, const Subspace& S) {
  Mat rows;
  for (const auto& row : S.rows()) rows.push_back(apply_vec(F, c, row));
  bool rational = S.level() == Level::Base;
  for (const auto& row : c.M)
    for (Elem x : row) rational = rational && F.in_base(x);
  return span_vectors(F, S.ambient(), rational ? Level::Base : Level::Extension, std::move(rows));
}

bool same_collineation(const FieldTower& F, const Collineation& c1, const Collineation& c2) {
  if (reduce_exponent(F, c1.a - c2.a) != 0) return false;
  Vec a, b;
  for (const auto& row : c1.M) a.insert(a.end(), row.begin(), row.end());
  for (const auto& row : c2.M) b.insert(b.end(), row.begin(), row.end());
  return normalize(F, a) == normalize(F, b);
}

}  // namespace pseudoreg
