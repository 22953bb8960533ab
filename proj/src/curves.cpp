#include "pseudoreg/curves.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include <omp.h>

namespace pseudoreg {

namespace {

int thread_slots(Exec exec) { return exec == Exec::Parallel ? omp_get_max_threads() : 1; }

template <class T>
std::vector<T> merge_sorted(std::vector<std::vector<T>>& parts) {
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// Columns a_i P_i (i < N) with sum a_i P_i = P_N; empty when the N+1 points
// are not a frame.
std::optional<Mat> frame_columns(const FieldTower& F, const std::vector<Vec>& P) {
  const std::size_t N = P[0].size();
  Mat cols(N);
  for (std::size_t i = 0; i < N; ++i) cols[i] = P[i];
  auto inv = mat_inverse(F, transpose(cols));
  if (!inv) return std::nullopt;
  const Vec a = mat_vec(F, *inv, P[N]);
  Mat B(N, Vec(N));
  for (std::size_t i = 0; i < N; ++i) {
    if (a[i].code == 0) return std::nullopt;
    for (std::size_t r = 0; r < N; ++r) B[r][i] = F.mul(a[i], P[i][r]);
  }
  return B;
}

Vec moment(const FieldTower& F, Elem l, int n) {
  Vec v(n + 1);
  Elem x = F.one();
  for (int i = 0; i <= n; ++i) {
    v[i] = x;
    x = F.mul(x, l);
  }
  return v;
}

Vec infinity_point(int n) {
  Vec v(n + 1, Elem{0});
  v[n] = Elem{1};
  return v;
}

bool all_in_base(const FieldTower& F, const Vec& v) {
  return std::all_of(v.begin(), v.end(), [&](Elem c) { return F.in_base(c); });
}

// Calls fn on every k-subset of {0..n-1} until it returns false.
template <class Fn>
bool for_each_subset(int n, int k, Fn fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Elem> line_base(const FieldTower& F, Elem y, int h) {
  std::vector<Elem> R;
  const std::uint64_t e = static_cast<std::uint64_t>(ipow(F.q(), h) - 1);
  for (std::uint32_t l = 0; l < F.q(); ++l) R.push_back(F.pow(F.add(F.one(), F.mul(Elem{l}, y)), e));
  R.push_back(F.pow(y, e));
  return R;
}

Subline scaled(const FieldTower& F, const std::vector<Elem>& R, Elem k) {
  Subline s;
  s.reserve(R.size());
  for (Elem x : R) s.push_back(F.mul(k, x));
  std::sort(s.begin(), s.end());
  return s;
}

int inverse_mod(int a, int m) {
  if (m == 1) return 0;
  return static_cast<int>(mod_inverse(a, m));
}

}  // namespace

std::vector<ProjPoint> subline_closure(const FieldTower& F, const ProjPoint& P1, const ProjPoint& P2,
                                       const ProjPoint& P3) {
  const std::array<ProjPoint, 3> src{ProjPoint{{F.one(), F.zero()}}, ProjPoint{{F.zero(), F.one()}},
                                     ProjPoint{{F.one(), F.one()}}};
  auto M = projectivity_line(F, src, {P1, P2, P3});
  if (!M) throw PreconditionError("subline_closure: points are not distinct");
  std::vector<ProjPoint> out{normalize(F, mat_vec(F, *M, {F.zero(), F.one()}))};
  for (std::uint32_t l = 0; l < F.q(); ++l) out.push_back(normalize(F, mat_vec(F, *M, {F.one(), Elem{l}})));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subline> enumerate_sublines_A(const FieldTower& F, Exec exec) {
  const auto K = norm_one_elements(F);
  std::vector<char> inK(F.order(), 0);
  for (Elem k : K) inK[k.code] = 1;
  const std::int64_t n = static_cast<std::int64_t>(K.size());
  std::vector<std::vector<Subline>> parts(thread_slots(exec));
  auto scan = [&](std::int64_t i, std::vector<Subline>& sink) {
    const Elem k1 = K[i];
    for (std::int64_t j = i + 1; j < n; ++j) {
      const Elem k2 = K[j];
      const Elem d21 = F.sub(k2, k1);
      for (std::int64_t l = j + 1; l < n; ++l) {
        const Elem k3 = K[l];
        // k(x) = (c1 k1 + x c2 k2) / (c1 + x c2): 0 -> k1, 1 -> k3, inf -> k2.
        const Elem c2 = F.div(F.sub(k3, k1), d21);
        const Elem c1 = F.sub(F.one(), c2);
        Subline r{k1, k2, k3};
        bool ok = true;
        for (std::uint32_t x = 2; x < F.q() && ok; ++x) {
          const Elem den = F.add(c1, F.mul(Elem{x}, c2));
          if (den.code == 0) {
            ok = false;
            break;
          }
          const Elem k = F.div(F.add(F.mul(c1, k1), F.mul(F.mul(Elem{x}, c2), k2)), den);
          ok = inK[k.code] && k.code > k3.code;
          r.push_back(k);
        }
        if (ok) {
          std::sort(r.begin(), r.end());
          sink.push_back(std::move(r));
        }
      }
    }
  };
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < n; ++i) scan(i, parts[0]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) scan(i, parts[omp_get_thread_num()]);
  }
  return merge_sorted(parts);
}

namespace {

SublineCensus census_from(std::vector<Subline> all, std::uint64_t multiplicity) {
  SublineCensus c;
  c.generated = all.size();
  std::sort(all.begin(), all.end());
  c.uniform = true;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    c.uniform = c.uniform && (j - i) == multiplicity;
    c.sublines.push_back(all[i]);
    i = j;
  }
  return c;
}

}  // namespace

SublineCensus enumerate_sublines_B(const FieldTower& F, Exec exec) {
  const auto K = norm_one_elements(F);
  std::vector<std::vector<Elem>> bases;
  for (Elem y : canonical_nonrational(F)) {
    const int m = F.elem_order(y);
    for (int h = 1; h < m; ++h) bases.push_back(line_base(F, y, h));
  }
  const std::int64_t total = static_cast<std::int64_t>(bases.size() * K.size());
  std::vector<std::vector<Subline>> parts(thread_slots(exec));
  const std::int64_t nk = static_cast<std::int64_t>(K.size());
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < total; ++i) parts[0].push_back(scaled(F, bases[i / nk], K[i % nk]));
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i)
      parts[omp_get_thread_num()].push_back(scaled(F, bases[i / nk], K[i % nk]));
  }
  std::vector<Subline> all;
  for (auto& p : parts) all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return census_from(std::move(all), F.q() + 1);
}

SublineCensus enumerate_sublines_qlines(const FieldTower& F) {
  std::vector<Subline> all;
  for (const auto& key : all_lines_bruteforce(F)) {
    const QLine L{from_key(F, key[0]), from_key(F, key[1])};
    const auto fams = containing_families(F, L);
    if (std::find(fams.begin(), fams.end(), 0) != fams.end()) continue;
    Subline r;
    for (const auto& P : line_points(F, L)) r.push_back(F.div(P.b, P.a));
    std::sort(r.begin(), r.end());
    all.push_back(std::move(r));
  }
  return census_from(std::move(all), static_cast<std::uint64_t>(theta(F.t() - 1, F.q())));
}

std::vector<ProjPoint> subline_points(const FieldTower& F, const Subline& r) {
  std::vector<ProjPoint> out;
  for (Elem k : r) out.push_back(ProjPoint{{F.one(), k}});
  return out;
}

bool subline_in_standard_set(const FieldTower& F, const Subline& r) {
  if (r.size() != F.q() + 1) return false;
  for (Elem k : r)
    if (F.norm(k) != F.one()) return false;
  const auto pts = subline_points(F, r);
  return subline_closure(F, pts[0], pts[1], pts[2]) == pts;
}

SublineClass classify_subline(const FieldTower& F, const Subline& r, int nu) {
  const int t = F.t();
  if (F.q() < static_cast<std::uint32_t>(t)) throw HypothesisError("subline classification needs q >= t");
  if (r.empty()) throw PreconditionError("classify_subline: empty subline");
  const Elem r0 = r[0];
  const Elem r0_inv = F.inv(r0);
  std::vector<Elem> s;
  for (Elem k : r) s.push_back(F.mul(k, r0_inv));
  std::sort(s.begin(), s.end());
  for (Elem y : canonical_nonrational(F)) {
    const int m = F.elem_order(y);
    for (int h = 1; h < m; ++h) {
      const auto R = line_base(F, y, h);
      for (Elem rho : R) {
        if (scaled(F, R, F.inv(rho)) != s) continue;
        SublineClass c;
        c.h = h;
        c.y = y;
        c.k = F.div(r0, rho);
        c.m = m;
        c.n = static_cast<int>((static_cast<long long>(h) * inverse_mod(nu % m, m)) % m);
        c.delta = theta_inverse(nu, t, F.q());
        return c;
      }
    }
  }
  throw Error("classify_subline: no family S_h (h >= 1) carries a transversal line");
}

std::optional<NrcFit> fit_nrc(const FieldTower& F, const std::vector<ProjPoint>& X) {
  if (X.size() != F.q() + 1) return std::nullopt;
  const std::set<ProjPoint> pts(X.begin(), X.end());
  if (pts.size() != X.size()) return std::nullopt;
  for (const auto& P : X)
    if (!all_in_base(F, P.x)) return std::nullopt;
  NrcFit fit;
  fit.span = span(F, Level::Base, X);
  const int n = fit.span.dim();
  fit.order = n;
  if (n < 1) return std::nullopt;
  if (n == 1) return fit;
  // Coordinates in the RREF basis of the span.
  std::vector<int> pivots;
  for (const auto& row : fit.span.rows())
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j].code != 0) {
        pivots.push_back(static_cast<int>(j));
        break;
      }
  std::vector<Vec> C;
  for (const auto& P : X) {
    Vec c;
    for (int p : pivots) c.push_back(P.x[p]);
    C.push_back(std::move(c));
  }
  auto independent = [&](const std::vector<int>& idx) {
    Mat rows;
    for (int i : idx) rows.push_back(C[i]);
    return rank_of(F, std::move(rows)) == static_cast<int>(idx.size());
  };
  const int size = static_cast<int>(X.size());
  if (size == n + 1) return fit;
  if (size == n + 2) {
    if (!for_each_subset(size, n + 1, independent)) return std::nullopt;
    return fit;
  }
  // X0, X1, X2 -> parameters inf, 0, 1; injective parameters for X3..X_{n+1}.
  std::set<ProjPoint> target;
  for (const auto& c : C) target.insert(normalize(F, c));
  std::vector<Vec> dst(C.begin(), C.begin() + n + 2);
  auto dframe = frame_columns(F, dst);
  if (!dframe) return std::nullopt;
  std::vector<std::uint32_t> params(n - 1, 0);
  std::vector<char> used(F.q(), 0);
  used[0] = used[1] = 1;
  bool found = false;
  std::function<void(int)> assign = [&](int pos) {
    if (found) return;
    if (pos == n - 1) {
      std::vector<Vec> src{infinity_point(n), moment(F, F.zero(), n), moment(F, F.one(), n)};
      for (auto p : params) src.push_back(moment(F, Elem{p}, n));
      auto sframe = frame_columns(F, src);
      if (!sframe) return;
      const Mat T = mat_mul(F, *dframe, *mat_inverse(F, *sframe));
      if (!target.count(normalize(F, mat_vec(F, T, infinity_point(n))))) return;
      for (std::uint32_t l = 0; l < F.q(); ++l)
        if (!target.count(normalize(F, mat_vec(F, T, moment(F, Elem{l}, n))))) return;
      found = true;
      return;
    }
    for (std::uint32_t p = 2; p < F.q(); ++p) {
      if (used[p]) continue;
      used[p] = 1;
      params[pos] = p;
      assign(pos + 1);
      used[p] = 0;
    }
  };
  assign(0);
  if (!found) return std::nullopt;
  return fit;
}

NormalRationalCurve standard_nrc(const FieldTower& F, int N) {
  NormalRationalCurve C;
  C.T = identity_mat(N);
  for (std::uint32_t l = 0; l < F.order(); ++l) C.points.push_back(normalize(F, moment(F, Elem{l}, N - 1)));
  C.points.push_back(ProjPoint{infinity_point(N - 1)});
  std::sort(C.points.begin(), C.points.end());
  return C;
}

NormalRationalCurve nrc_through(const FieldTower& F, const std::vector<ProjPoint>& pts) {
  if (pts.empty()) throw PreconditionError("nrc_through: no points");
  const int N = static_cast<int>(pts[0].x.size());
  if (static_cast<int>(pts.size()) != N + 2) throw PreconditionError("nrc_through: need N+2 points in PG(N-1)");
  for (int i = 0; i < N + 2; ++i)
    for (int j = i + 1; j < N + 2; ++j) {
      std::vector<ProjPoint> rest;
      for (int k = 0; k < N + 2; ++k)
        if (k != i && k != j) rest.push_back(pts[k]);
      if (span(F, Level::Extension, rest).rank() != N) {
        std::string which;
        for (int k = 0; k < N + 2; ++k)
          if (k != i && k != j) which += (which.empty() ? "" : ",") + std::to_string(k);
        throw PreconditionError("nrc_through: points {" + which + "} lie in a hyperplane");
      }
    }
  std::vector<Vec> P;
  for (int i = 0; i <= N; ++i) P.push_back(pts[i].x);
  const Mat B = *frame_columns(F, P);
  const Vec a = mat_vec(F, *mat_inverse(F, B), pts[N + 1].x);
  Vec b(N);
  for (int i = 0; i < N; ++i) b[i] = F.inv(a[i]);
  // W[i][k]: coefficient of l^k in prod_{j != i} (l - b_j).
  Mat W(N, Vec(N, Elem{0}));
  for (int i = 0; i < N; ++i) {
    Vec poly{F.one()};
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      Vec next(poly.size() + 1, Elem{0});
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] = F.add(next[k + 1], poly[k]);
        next[k] = F.sub(next[k], F.mul(b[j], poly[k]));
      }
      poly = std::move(next);
    }
    W[i] = poly;
  }
  NormalRationalCurve C;
  C.T = mat_mul(F, B, W);
  for (std::uint32_t l = 0; l < F.order(); ++l) C.points.push_back(normalize(F, mat_vec(F, C.T, moment(F, Elem{l}, N - 1))));
  C.points.push_back(normalize(F, mat_vec(F, C.T, infinity_point(N - 1))));
  std::sort(C.points.begin(), C.points.end());
  for (const auto& X : pts)
    if (!std::binary_search(C.points.begin(), C.points.end(), X)) throw Error("nrc_through: input point missed");
  return C;
}

RationalityReport is_fq_rational(const FieldTower& F, const NormalRationalCurve& C) {
  const int N = static_cast<int>(C.T.size());
  if (F.q() < static_cast<std::uint32_t>(N + 1)) throw HypothesisError("rationality test needs q >= N+1");
  RationalityReport rep;
  std::vector<ProjPoint> rat;
  for (const auto& P : C.points)
    if (all_in_base(F, P.x)) rat.push_back(P);
  rep.rational_points = rat.size();
  rep.rational = rat.size() == F.q() + 1;
  if (rep.rational) {
    const std::vector<ProjPoint> first(rat.begin(), rat.begin() + N + 2);
    const auto fit = fit_nrc(F, rat);
    rep.cross_check = nrc_through(F, first).points == C.points && fit && fit->order == N - 1;
  } else {
    rep.cross_check = rat.size() <= static_cast<std::size_t>(N + 1);
  }
  return rep;
}

Elem projected_k(const FieldTower& F, const Mat& A_inv, const Vec& a) {
  const Vec c = mat_vec(F, A_inv, a);
  const int t = static_cast<int>(c.size());
  return F.div(c[t - 1], c[t - 2]);
}

PreimageReport preimage_curve(const FieldTower& F, const Subline& r, const ProjPoint& P_gamma, int nu) {
  const int t = F.t();
  PreimageReport rep;
  rep.r = r;
  rep.cls = classify_subline(F, r, nu);
  const Mat A = conjugate_columns(F, P_gamma, nu);
  const auto A_inv = mat_inverse(F, A);
  if (!A_inv) throw PreconditionError("preimage_curve: point is not imaginary");
  const std::set<Elem> rs(r.begin(), r.end());
  const auto count = space_point_count(F, t, Level::Base);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto a = space_point_at(F, t, Level::Base, i);
    if (rs.count(projected_k(F, *A_inv, a.x))) rep.preimage.push_back(a);
  }
  std::sort(rep.preimage.begin(), rep.preimage.end());
  rep.fit = fit_nrc(F, rep.preimage);
  rep.order_matches = rep.fit && rep.fit->order == rep.cls.n;
  // <k'^delta x^{delta theta_{h-1}}> over x in <1, y>, k'^{q-1} = k, through iota.
  const BigInt mod = F.order() - 1;
  const Elem kp = F.exp(F.log(rep.cls.k) / (F.q() - 1));
  const BigInt e = mod_floor(rep.cls.delta * theta(rep.cls.h - 1, F.q()), mod);
  const Elem kd = F.pow(kp, rep.cls.delta);
  std::vector<ProjPoint> model;
  std::vector<Elem> xs;
  for (std::uint32_t l = 0; l < F.q(); ++l) xs.push_back(F.add(F.one(), F.mul(Elem{l}, rep.cls.y)));
  xs.push_back(rep.cls.y);
  for (Elem x : xs) {
    const Elem u = F.mul(kd, F.pow(x, e));
    Vec c(t);
    for (int i = 0; i < t; ++i) c[i] = F.frob(u, nu * ((i + 2) % t));
    model.push_back(normalize(F, mat_vec(F, A, c)));
  }
  std::sort(model.begin(), model.end());
  model.erase(std::unique(model.begin(), model.end()), model.end());
  rep.model_matches = model == rep.preimage;
  return rep;
}

CountIdentities nrc_count_identities(std::uint64_t q, int t) {
  if (!is_prime(t)) throw PreconditionError("count identities are stated for prime t");
  const BigInt Q = q;
  CountIdentities c;
  BigInt K1 = ipow(Q, t - 1);
  for (int i = 0; i <= t - 2; ++i) K1 *= ipow(Q, t - 1) - ipow(Q, i);
  BigInt prod = 1;
  for (int i = 0; i <= t - 1; ++i) prod *= ipow(Q, t) - ipow(Q, i);
  const BigInt d3 = Q * (ipow(Q, t) - 1) * (ipow(Q, t - 1) - 1);
  const BigInt dn = Q * (Q * Q - 1) * (Q - 1);
  c.K1 = K1;
  c.K2 = ipow(Q, t) - Q;
  c.K3 = prod / d3;
  c.nu_curves = prod / dn;
  c.integral = prod % d3 == 0 && prod % dn == 0;
  c.identity = c.K1 == c.K2 * c.K3;
  return c;
}

bool check_congruence(std::uint64_t q, int t, int m, int nu, int h, int n) {
  if (gcd_int(nu, t) != 1 || t % m != 0) throw PreconditionError("check_congruence: need gcd(nu,t)=1 and m | t");
  const BigInt mod = theta(m - 1, q);
  const BigInt lhs = mod_floor(theta_inverse(nu, t, q) * theta(h - 1, q), mod);
  const BigInt rhs = mod_floor((ipow(BigInt(q), nu * n) - 1) / (ipow(BigInt(q), nu) - 1), mod);
  return lhs == rhs;
}

CongruenceGrid congruence_grid(const std::vector<std::uint64_t>& qs, int t_min, int t_max) {
  CongruenceGrid g;
  for (auto q : qs)
    for (int t = t_min; t <= t_max; ++t)
      for (int m : divisors(t))
        for (int nu : galois_generators(t))
          for (int h = 0; h < t; ++h) {
            const int n0 = static_cast<int>((static_cast<long long>(h) * inverse_mod(nu % m, m)) % m);
            for (int n : {n0, n0 + m, n0 + 2 * m}) {
              ++g.cases;
              g.failures += !check_congruence(q, t, m, nu, h, n);
            }
          }
  return g;
}

std::vector<PowerLine> all_lines(const FieldTower& F) {
  const int t = F.t();
  const auto count = space_point_count(F, t, Level::Base);
  std::set<Mat> seen;
  std::vector<PowerLine> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto P = space_point_at(F, t, Level::Base, i);
    for (std::uint64_t j = i + 1; j < count; ++j) {
      const auto S = span(F, Level::Base, {P, space_point_at(F, t, Level::Base, j)});
      if (!seen.insert(S.rows()).second) continue;
      std::vector<std::uint32_t> r0, r1;
      for (Elem c : S.rows()[0]) r0.push_back(c.code);
      for (Elem c : S.rows()[1]) r1.push_back(c.code);
      out.push_back({F.from_coeffs(r0), F.from_coeffs(r1)});
    }
  }
  return out;
}

int line_order(const FieldTower& F, const PowerLine& l) { return F.elem_order(F.div(l.y, l.x)); }

std::vector<Elem> line_elements(const FieldTower& F, const PowerLine& l) {
  std::vector<Elem> out;
  for (std::uint32_t c = 0; c < F.q(); ++c) out.push_back(F.add(l.x, F.mul(Elem{c}, l.y)));
  out.push_back(l.y);
  return out;
}

namespace {

int digit_sum(BigInt d, std::uint64_t q) {
  int s = 0;
  while (d > 0) {
    s += static_cast<int>(d % q);
    d /= q;
  }
  return s;
}

}  // namespace

LinePower power_of_line(const FieldTower& F, const PowerLine& l, const BigInt& d) {
  if (d < 0) throw PreconditionError("power_of_line: negative exponent");
  LinePower P;
  for (Elem x : line_elements(F, l)) P.points.push_back(F.normalize_q(F.pow(x, d)));
  std::sort(P.points.begin(), P.points.end());
  P.points.erase(std::unique(P.points.begin(), P.points.end()), P.points.end());
  P.m = line_order(F, l);
  P.digit_sum = digit_sum(d, F.q());
  P.degenerate = P.points.size() < F.q() + 1;
  return P;
}

std::vector<ProjPoint> as_points(const FieldTower& F, const std::vector<Elem>& xs) {
  std::vector<ProjPoint> out;
  for (Elem x : xs) {
    Vec v;
    for (auto c : F.coeffs(x)) v.push_back(Elem{c});
    out.push_back(normalize(F, std::move(v)));
  }
  return out;
}

LinePowerReport verify_line_power(const FieldTower& F, const PowerLine& l, int nu, int h) {
  const int t = F.t();
  LinePowerReport rep;
  if (gcd_int(nu, t) != 1 || nu < 1 || nu >= t) throw PreconditionError("verify_line_power: nu must generate");
  if (h < 1 || h >= t) throw PreconditionError("verify_line_power: h out of range");
  rep.m = line_order(F, l);
  if (h % rep.m == 0) throw PreconditionError("verify_line_power: o(l) divides h");
  rep.n = static_cast<int>((static_cast<long long>(h) * inverse_mod(nu % rep.m, rep.m)) % rep.m);
  if (F.q() < static_cast<std::uint32_t>(rep.n)) throw HypothesisError("verify_line_power: q < n");
  const BigInt mod = F.order() - 1;
  rep.d = theta_inverse(nu, t, F.q()) * theta(h - 1, F.q());
  rep.d_prime = (ipow(BigInt(F.q()), nu * rep.n) - 1) / (ipow(BigInt(F.q()), nu) - 1);
  const auto P = power_of_line(F, l, rep.d);
  if (auto fit = fit_nrc(F, as_points(F, P.points))) {
    rep.fitted_order = fit->order;
    rep.span_dim = fit->span.dim();
  }
  const auto xs = line_elements(F, l);
  std::vector<Vec> pd;
  for (const auto& X : as_points(F, [&] {
         std::vector<Elem> v;
         for (Elem x : xs) v.push_back(F.pow(x, rep.d_prime));
         return v;
       }()))
    pd.push_back(X.x);
  rep.general_position = for_each_subset(static_cast<int>(pd.size()), rep.n + 1, [&](const std::vector<int>& idx) {
    Mat rows;
    for (int i : idx) rows.push_back(pd[i]);
    return rank_of(F, std::move(rows)) == rep.n + 1;
  });
  const Elem beta = F.pow(xs[0], mod_floor(rep.d_prime - rep.d, mod));
  rep.equivalent = true;
  for (Elem x : xs)
    rep.equivalent = rep.equivalent &&
                     F.normalize_q(F.mul(beta, F.pow(x, rep.d))) == F.normalize_q(F.pow(x, rep.d_prime));
  rep.digit_sum_ok = digit_sum(rep.d_prime, F.q()) == rep.n;
  return rep;
}

InverseReport verify_inverse_power(const FieldTower& F, const PowerLine& l) {
  const int t = F.t();
  if (F.q() + 1 < static_cast<std::uint32_t>(t)) throw HypothesisError("inverse power needs q+1 >= t");
  InverseReport rep;
  rep.m = line_order(F, l);
  std::vector<Elem> inv, frob;
  const BigInt e = theta(t - 2, F.q());
  for (Elem x : line_elements(F, l)) {
    inv.push_back(F.normalize_q(F.inv(x)));
    frob.push_back(F.normalize_q(F.frob(F.pow(x, e), 1)));
  }
  std::sort(inv.begin(), inv.end());
  std::sort(frob.begin(), frob.end());
  rep.frobenius_match = inv == frob;
  inv.erase(std::unique(inv.begin(), inv.end()), inv.end());
  if (auto fit = fit_nrc(F, as_points(F, inv))) rep.fitted_order = fit->order;
  return rep;
}

bool check_vandermonde_projection(const FieldTower& F, Elem alpha, int nu) {
  const int t = F.t();
  if (F.elem_order(alpha) != t) throw PreconditionError("vandermonde check: alpha must generate GF(q^t)");
  const ProjPoint P{moment(F, alpha, t - 1)};
  const auto s = sigma_hat(F, t, nu);
  std::vector<ProjPoint> conj;
  ProjPoint X = P;
  Elem shift = F.zero();
  for (int i = 0; i <= t - 3; ++i) {
    conj.push_back(X);
    shift = F.add(shift, F.frob(alpha, nu * i));
    X = apply(F, s, X);
  }
  Vec e1(t, Elem{0}), e2(t, Elem{0});
  e1[t - 2] = F.one();
  e2[t - 1] = F.one();
  ProjectionConfig cfg{standard_subgeometry(t), span(F, Level::Extension, conj),
                       span_vectors(F, t, Level::Extension, {e1, e2})};
  if (!meet(F, cfg.center, cfg.axis).empty()) return false;
  for (std::uint32_t x = 0; x < F.q(); ++x) {
    Vec expect(t, Elem{0});
    expect[t - 2] = F.one();
    expect[t - 1] = F.add(Elem{x}, shift);
    if (project_point(F, cfg, normalize(F, moment(F, Elem{x}, t - 1))) != normalize(F, expect)) return false;
  }
  return project_point(F, cfg, ProjPoint{infinity_point(t - 1)}) == ProjPoint{infinity_point(t - 1)};
}

bool CarrierReport::ok() const {
  if (BigInt(curves) != expected || BigInt(sublines.size()) != expected) return false;
  if (by_family.size() != 1 || by_family.begin()->first != expected_h) return false;
  return all_in_standard_set && all_rational && preimages_match && vandermonde;
}

CarrierReport verify_carrier_curves(const FieldTower& F, int nu, Exec exec) {
  const int t = F.t();
  if (!is_prime(t)) throw HypothesisError("carrier curves need t prime");
  if (F.q() < static_cast<std::uint32_t>(t + 1)) throw HypothesisError("carrier curves need q >= t+1");
  CarrierReport rep;
  rep.expected_h = (t - nu % t) % t;
  rep.expected = theta(t - 1, F.q()) * theta(t - 2, F.q()) / theta(1, F.q());
  const ProjPoint P = default_imaginary_point(F);
  const auto s = sigma_hat(F, t, nu);
  std::vector<ProjPoint> conj;
  ProjPoint X = P;
  for (int i = 0; i < t; ++i) {
    conj.push_back(X);
    X = apply(F, s, X);
  }
  const Mat A = conjugate_columns(F, P, nu);
  const Mat A_inv = *mat_inverse(F, A);
  std::vector<ProjPoint> R;
  const auto count = space_point_count(F, t, Level::Base);
  for (std::uint64_t i = 0; i < count; ++i) R.push_back(space_point_at(F, t, Level::Base, i));
  std::sort(R.begin(), R.end());
  const std::int64_t n = static_cast<std::int64_t>(R.size());

  struct Item {
    std::vector<ProjPoint> rational;
    bool rational_ok;
  };
  std::vector<std::vector<Item>> parts(thread_slots(exec));
  auto scan = [&](std::int64_t i, std::vector<Item>& sink) {
    for (std::int64_t j = i + 1; j < n; ++j) {
      std::vector<ProjPoint> pts{R[i], R[j]};
      pts.insert(pts.end(), conj.begin(), conj.end());
      const auto C = nrc_through(F, pts);
      Item it;
      for (const auto& Y : C.points)
        if (all_in_base(F, Y.x)) it.rational.push_back(Y);
      // Record each curve once, from its two smallest rational points.
      if (it.rational.size() < 2 || it.rational[0] != R[i] || it.rational[1] != R[j]) {
        if (it.rational.size() != F.q() + 1) sink.push_back({{}, false});
        continue;
      }
      const auto rr = is_fq_rational(F, C);
      it.rational_ok = rr.rational && rr.cross_check;
      sink.push_back(std::move(it));
    }
  };
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < n; ++i) scan(i, parts[0]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) scan(i, parts[omp_get_thread_num()]);
  }
  std::vector<Item> items;
  for (auto& p : parts) items.insert(items.end(), p.begin(), p.end());
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.rational < b.rational; });

  rep.all_rational = true;
  rep.all_in_standard_set = true;
  rep.preimages_match = true;
  std::set<Subline> distinct;
  for (const auto& it : items) {
    rep.all_rational = rep.all_rational && it.rational_ok;
    if (!it.rational_ok) continue;
    ++rep.curves;
    Subline r;
    for (const auto& Y : it.rational) r.push_back(projected_k(F, A_inv, Y.x));
    std::sort(r.begin(), r.end());
    rep.all_in_standard_set = rep.all_in_standard_set && subline_in_standard_set(F, r);
    std::vector<ProjPoint> pre;
    const std::set<Elem> rs(r.begin(), r.end());
    for (const auto& a : R)
      if (rs.count(projected_k(F, A_inv, a.x))) pre.push_back(a);
    rep.preimages_match = rep.preimages_match && pre == it.rational;
    if (distinct.insert(r).second) rep.by_family[classify_subline(F, r, nu).h]++;
  }
  rep.sublines.assign(distinct.begin(), distinct.end());
  rep.vandermonde = check_vandermonde_projection(F, F.root(), nu);
  for (std::uint32_t c = F.order() - 1; c > F.order() - 40; --c)
    if (F.elem_order(Elem{c}) == t) rep.vandermonde = rep.vandermonde && check_vandermonde_projection(F, Elem{c}, nu);
  return rep;
}

}  // namespace pseudoreg
