#include "pseudoreg/hypersurface.hpp"

#include <algorithm>

#include <omp.h>

namespace pseudoreg {

QPoint normalize_pair(const FieldTower& F, Elem a, Elem b) {
  if (a.code != 0) {
    const Elem c{F.base().inv(F.lead(a))};
    return {F.mul(c, a), F.mul(c, b)};
  }
  if (b.code == 0) throw PreconditionError("normalize_pair: zero vector");
  return {a, F.normalize_q(b)};
}

std::uint64_t point_key(const FieldTower& F, const QPoint& P) {
  return std::uint64_t{P.a.code} * F.order() + P.b.code;
}

QPoint from_key(const FieldTower& F, std::uint64_t key) {
  return {Elem{static_cast<std::uint32_t>(key / F.order())}, Elem{static_cast<std::uint32_t>(key % F.order())}};
}

bool in_Q(const FieldTower& F, Elem a, Elem b) { return F.norm(a) == F.norm(b); }

bool membership(const FieldTower& F, const ProjPoint& P) {
  const Vec ab = lift_vector(F, P.x);
  if (ab.size() != 2) throw PreconditionError("membership: point must lie in PG(2t-1, q)");
  return in_Q(F, ab[0], ab[1]);
}

ProjPoint to_proj(const FieldTower& F, const QPoint& P) { return normalize(F, reduce_vector(F, {P.a, P.b})); }

namespace {

std::vector<std::uint32_t> norm_table(const FieldTower& F) {
  std::vector<std::uint32_t> out(F.order());
  for (std::uint32_t c = 0; c < F.order(); ++c) out[c] = F.norm(Elem{c}).code;
  return out;
}

}  // namespace

std::vector<QPoint> q_points(const FieldTower& F) {
  const auto N = norm_table(F);
  std::vector<std::vector<Elem>> by_norm(F.q());
  for (std::uint32_t c = 1; c < F.order(); ++c) by_norm[N[c]].push_back(Elem{c});
  std::vector<QPoint> out;
  for (std::uint32_t c = 1; c < F.order(); ++c) {
    if (F.lead(Elem{c}) != 1) continue;
    for (Elem b : by_norm[N[c]]) out.push_back({Elem{c}, b});
  }
  return out;
}

std::vector<FamilySubspace> family(const FieldTower& F, int h) {
  if (h < 0 || h >= F.t()) throw PreconditionError("family: h out of range");
  std::vector<FamilySubspace> out;
  const Elem g = F.pow(F.primitive(), std::uint64_t{F.q() - 1});
  Elem k = F.one();
  const auto count = static_cast<std::uint64_t>(theta(F.t() - 1, F.q()));
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back({h, k});
    k = F.mul(k, g);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.k < y.k; });
  return out;
}

std::vector<QPoint> family_points(const FieldTower& F, const FamilySubspace& S) {
  std::vector<QPoint> out;
  for (std::uint32_t c = 1; c < F.order(); ++c)
    if (F.lead(Elem{c}) == 1) out.push_back({Elem{c}, F.mul(S.k, F.frob(Elem{c}, S.h))});
  return out;
}

Subspace family_subspace(const FieldTower& F, const FamilySubspace& S) {
  Mat rows;
  Elem z = F.one();
  for (int j = 0; j < F.t(); ++j) {
    rows.push_back(reduce_vector(F, {z, F.mul(S.k, F.frob(z, S.h))}));
    z = F.mul(z, F.root());
  }
  return span_vectors(F, 2 * F.t(), Level::Base, std::move(rows));
}

std::vector<QPoint> line_points(const FieldTower& F, const QLine& L) {
  std::vector<QPoint> out{normalize_pair(F, L.u.a, L.u.b)};
  for (std::uint32_t l = 0; l < F.q(); ++l)
    out.push_back(normalize_pair(F, F.add(L.w.a, F.mul(Elem{l}, L.u.a)), F.add(L.w.b, F.mul(Elem{l}, L.u.b))));
  return out;
}

std::array<std::uint64_t, 2> line_key(const FieldTower& F, const QLine& L) {
  std::vector<std::uint64_t> keys;
  for (const auto& P : line_points(F, L)) keys.push_back(point_key(F, P));
  std::partial_sort(keys.begin(), keys.begin() + 2, keys.end());
  return {keys[0], keys[1]};
}

bool line_in_Q(const FieldTower& F, const QLine& L) {
  for (const auto& P : line_points(F, L))
    if (!in_Q(F, P.a, P.b)) return false;
  return true;
}

std::vector<int> containing_families(const FieldTower& F, const QLine& L) {
  const auto pts = line_points(F, L);
  std::vector<int> out;
  for (int h = 0; h < F.t(); ++h) {
    bool ok = true;
    Elem k{0};
    for (const auto& P : pts) {
      if (P.a.code == 0) {
        ok = false;
        break;
      }
      const Elem kp = F.div(P.b, F.frob(P.a, h));
      if (k.code == 0) k = kp;
      if (kp != k) {
        ok = false;
        break;
      }
    }
    if (ok && F.norm(k) == F.one()) out.push_back(h);
  }
  return out;
}

std::vector<Elem> canonical_nonrational(const FieldTower& F) {
  std::vector<Elem> out;
  for (std::uint32_t c = F.q(); c < F.order(); c += F.q())
    if (F.lead(Elem{c}) == 1) out.push_back(Elem{c});
  return out;
}

std::vector<QLine> lines_through_unit(const FieldTower& F) {
  if (F.q() < static_cast<std::uint32_t>(F.t())) throw HypothesisError("lines of Q are classified only for q >= t");
  const QPoint P{F.one(), F.one()};
  std::vector<QLine> out;
  for (Elem y : canonical_nonrational(F)) {
    const int m = F.elem_order(y);
    for (int h = 0; h < m; ++h) out.push_back({P, normalize_pair(F, y, F.frob(y, h))});
  }
  return out;
}

std::vector<QLine> lines_through(const FieldTower& F, const QPoint& P) {
  if (P.a.code == 0 || !in_Q(F, P.a, P.b)) throw PreconditionError("lines_through: point not on Q");
  std::vector<QLine> out;
  for (const auto& L : lines_through_unit(F))
    out.push_back({normalize_pair(F, F.mul(P.a, L.u.a), F.mul(P.b, L.u.b)),
                   normalize_pair(F, F.mul(P.a, L.w.a), F.mul(P.b, L.w.b))});
  return out;
}

std::vector<std::array<std::uint64_t, 2>> lines_through_bruteforce(const FieldTower& F, const QPoint& P) {
  const QPoint Pn = normalize_pair(F, P.a, P.b);
  std::vector<std::array<std::uint64_t, 2>> out;
  for (const auto& X : q_points(F)) {
    if (X == Pn) continue;
    const QLine L{Pn, X};
    if (line_in_Q(F, L)) out.push_back(line_key(F, L));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::array<std::uint64_t, 2>> all_lines_bruteforce(const FieldTower& F, Exec exec) {
  const auto pts = q_points(F);
  const auto N = norm_table(F);
  const std::int64_t n = static_cast<std::int64_t>(pts.size());
  std::vector<std::vector<std::array<std::uint64_t, 2>>> parts(exec == Exec::Parallel ? omp_get_max_threads() : 1);
  // Each line is recorded from the pair of its two smallest points only.
  auto scan = [&](std::int64_t i, std::vector<std::array<std::uint64_t, 2>>& sink) {
    const QPoint& u = pts[i];
    const std::uint64_t ku = point_key(F, u);
    for (std::int64_t j = i + 1; j < n; ++j) {
      const QPoint& w = pts[j];
      const std::uint64_t kw = point_key(F, w);
      bool ok = true;
      for (std::uint32_t l = 1; l < F.q() && ok; ++l) {
        const Elem a = F.add(w.a, F.mul(Elem{l}, u.a));
        const Elem b = F.add(w.b, F.mul(Elem{l}, u.b));
        if (N[a.code] != N[b.code]) {
          ok = false;
          break;
        }
        ok = point_key(F, normalize_pair(F, a, b)) > kw;
      }
      if (ok) sink.push_back({ku, kw});
    }
  };
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < n; ++i) scan(i, parts[0]);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) scan(i, parts[omp_get_thread_num()]);
  }
  std::vector<std::array<std::uint64_t, 2>> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

void require_q_ge_t(std::uint64_t q, int t) {
  if (t < 2) throw PreconditionError("t must be at least 2");
  if (q < static_cast<std::uint64_t>(t)) throw HypothesisError("the counting results need q >= t");
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  if (a % b != 0) throw Error("count formula is not integral");
  return a / b;
}

}  // namespace

BigInt degree_sum(std::uint64_t q, int t) {
  BigInt sum = 0;
  for (int m : divisors(t)) {
    if (m == 1) continue;
    BigInt exact = 0;
    for (int d : divisors(m)) exact += mobius(m / d) * ipow(BigInt(q), d);
    sum += m * exact;
  }
  return sum;
}

BigInt degree_sum_scan(const FieldTower& F) {
  BigInt sum = 0;
  for (std::uint32_t c = 0; c < F.order(); ++c)
    if (!F.in_base(Elem{c})) sum += F.elem_order(Elem{c});
  return sum;
}

BigInt count_N1(std::uint64_t q, int t) {
  require_q_ge_t(q, t);
  return exact_div(degree_sum(q, t), BigInt(q) * (q - 1));
}

BigInt count_N2(std::uint64_t q, int t) {
  require_q_ge_t(q, t);
  const BigInt th = theta(t - 1, q);
  return exact_div(th * th * degree_sum(q, t), BigInt(q) * (q * q - 1));
}

BigInt subline_count(std::uint64_t q, int t) {
  require_q_ge_t(q, t);
  return exact_div(theta(t - 1, q) * (count_N1(q, t) - theta(t - 2, q)), BigInt(q + 1));
}

BigInt subline_count_prime(std::uint64_t q, int t) {
  require_q_ge_t(q, t);
  if (!is_prime(t)) throw PreconditionError("subline_count_prime: t must be prime");
  return exact_div((t - 1) * theta(t - 1, q) * theta(t - 2, q), theta(1, q));
}

}  // namespace pseudoreg
