#include "pseudoreg/linset.hpp"

#include <algorithm>
#include <unordered_set>

namespace pseudoreg {

Subgeometry standard_subgeometry(int n) { return {identity_collineation(n), identity_collineation(n)}; }

Subgeometry embedded_subgeometry(const FieldTower& F, Mat M) {
  Collineation c = projectivity(std::move(M));
  Collineation ci = inverse(F, c);
  return {std::move(c), std::move(ci)};
}

std::vector<ProjPoint> subgeometry_points(const FieldTower& F, const Subgeometry& S) {
  const int n = static_cast<int>(S.embed.M.size());
  const auto count = space_point_count(F, n, Level::Base);
  std::vector<ProjPoint> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(apply(F, S.embed, space_point_at(F, n, Level::Base, i)));
  return out;
}

namespace {

bool all_in_base(const FieldTower& F, const Vec& v) {
  return std::all_of(v.begin(), v.end(), [&](Elem c) { return F.in_base(c); });
}

// GF(q)-rank of the coefficient matrix of a list of GF(q^t) elements.
int gf_q_rank(const FieldTower& F, const Vec& elems) {
  Mat rows;
  for (Elem x : elems) {
    Vec r;
    for (auto c : F.coeffs(x)) r.push_back(Elem{c});
    rows.push_back(std::move(r));
  }
  return rank_of(F, std::move(rows));
}

}  // namespace

bool in_subgeometry(const FieldTower& F, const Subgeometry& S, const ProjPoint& P) {
  return all_in_base(F, apply(F, S.embed_inv, P).x);
}

Collineation fixing_generator(const FieldTower& F, const Subgeometry& S, int nu) {
  const int n = static_cast<int>(S.embed.M.size());
  return compose(F, S.embed, compose(F, sigma_hat(F, n, nu), S.embed_inv));
}

Subspace pull_back(const FieldTower& F, const Subgeometry& S, const Subspace& X) {
  return apply_sub(F, S.embed_inv, X);
}

bool in_hyperplane_span(const FieldTower& F, const Subgeometry& S, const Subspace& X) {
  // Rational forms c with c . y = 0 for every row y: t GF(q)-equations per row.
  const Subspace Y = pull_back(F, S, X);
  const int n = Y.ambient();
  Mat eqs;
  for (const auto& row : Y.rows()) {
    std::vector<std::vector<std::uint32_t>> co;
    for (Elem y : row) co.push_back(F.coeffs(y));
    for (int i = 0; i < F.t(); ++i) {
      Vec eq(n);
      for (int j = 0; j < n; ++j) eq[j] = Elem{co[j][i]};
      eqs.push_back(std::move(eq));
    }
  }
  return rank_of(F, std::move(eqs)) < n;
}

void check_projection(const FieldTower& F, const ProjectionConfig& cfg) {
  const int n = static_cast<int>(cfg.sigma.embed.M.size());
  if (cfg.center.ambient() != n || cfg.axis.ambient() != n)
    throw PreconditionError("projection: ambient dimension mismatch");
  if (cfg.axis.empty()) throw PreconditionError("projection: empty axis");
  if (cfg.center.rank() + cfg.axis.rank() != n)
    throw PreconditionError("projection: center and axis dimensions are not complementary");
  if (!meet(F, cfg.center, cfg.axis).empty()) throw PreconditionError("projection: center meets axis");
  if (cfg.center.empty()) return;
  for (const auto& P : subgeometry_points(F, cfg.sigma))
    if (contains(F, cfg.center, P.x)) throw PreconditionError("projection: center meets the subgeometry");
}

ProjPoint project_point(const FieldTower& F, const ProjectionConfig& cfg, const ProjPoint& P) {
  const Subspace through = join(F, cfg.center, span(F, Level::Extension, {P}));
  const Subspace X = meet(F, through, cfg.axis);
  if (X.rank() != 1) throw Error("projection: <center, P> does not meet the axis in a point");
  return normalize(F, X.rows()[0]);
}

std::vector<ProjPoint> project(const FieldTower& F, const ProjectionConfig& cfg) {
  check_projection(F, cfg);
  std::vector<ProjPoint> out;
  for (const auto& P : subgeometry_points(F, cfg.sigma)) out.push_back(project_point(F, cfg, P));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

int pivot_of(const Vec& row) {
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j].code != 0) return static_cast<int>(j);
  return -1;
}

}  // namespace

ProjPoint line_coords(const FieldTower& F, const Subspace& line, const ProjPoint& X) {
  if (line.rank() != 2) throw PreconditionError("line_coords: not a line");
  if (!contains(F, line, X.x)) throw PreconditionError("line_coords: point not on the line");
  return normalize(F, {X.x[pivot_of(line.rows()[0])], X.x[pivot_of(line.rows()[1])]});
}

ProjPoint from_line_coords(const FieldTower& F, const Subspace& line, const ProjPoint& c) {
  Vec v(line.ambient());
  for (int j = 0; j < line.ambient(); ++j)
    v[j] = F.add(F.mul(c.x[0], line.rows()[0][j]), F.mul(c.x[1], line.rows()[1][j]));
  return normalize(F, std::move(v));
}

namespace {

Mat conjugate_rows(const FieldTower& F, const ProjPoint& P, const Collineation& sigma) {
  Mat rows;
  Vec v = P.x;
  for (int i = 0; i < F.t(); ++i) {
    rows.push_back(v);
    v = apply_vec(F, sigma, v);
  }
  return rows;
}

}  // namespace

bool is_imaginary(const FieldTower& F, const ProjPoint& P, const Collineation& sigma) {
  if (static_cast<int>(P.x.size()) != F.t()) throw PreconditionError("is_imaginary: point must lie in PG(t-1, q^t)");
  return det(F, conjugate_rows(F, P, sigma)).code != 0;
}

bool is_imaginary_span(const FieldTower& F, const ProjPoint& P, const Collineation& sigma) {
  std::vector<ProjPoint> conj;
  ProjPoint X = P;
  for (int i = 0; i < F.t(); ++i) {
    conj.push_back(X);
    X = apply(F, sigma, X);
  }
  return span(F, Level::Extension, conj).rank() == F.t();
}

bool is_imaginary_coords(const FieldTower& F, const ProjPoint& P) {
  return gf_q_rank(F, P.x) == static_cast<int>(P.x.size());
}

std::vector<Elem> norm_one_elements(const FieldTower& F) {
  const std::uint64_t count = (F.order() - 1) / (F.q() - 1);
  std::vector<Elem> out;
  out.reserve(count);
  const Elem g = F.pow(F.primitive(), std::uint64_t{F.q() - 1});
  Elem x = F.one();
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(x);
    x = F.mul(x, g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> standard_pseudoregulus(const FieldTower& F) {
  std::vector<ProjPoint> out;
  for (Elem k : norm_one_elements(F)) out.push_back(ProjPoint{{F.one(), k}});
  return out;
}

namespace {

// Columns a*P1, b*P2 with a*P1 + b*P2 = P3.
std::optional<Mat> frame_matrix(const FieldTower& F, const std::array<ProjPoint, 3>& P) {
  const Elem d = F.sub(F.mul(P[0].x[0], P[1].x[1]), F.mul(P[0].x[1], P[1].x[0]));
  if (d.code == 0) return std::nullopt;
  const Elem di = F.inv(d);
  const Elem a = F.mul(di, F.sub(F.mul(P[2].x[0], P[1].x[1]), F.mul(P[2].x[1], P[1].x[0])));
  const Elem b = F.mul(di, F.sub(F.mul(P[0].x[0], P[2].x[1]), F.mul(P[0].x[1], P[2].x[0])));
  if (a.code == 0 || b.code == 0) return std::nullopt;
  return Mat{{F.mul(a, P[0].x[0]), F.mul(b, P[1].x[0])}, {F.mul(a, P[0].x[1]), F.mul(b, P[1].x[1])}};
}

}  // namespace

std::optional<Mat> projectivity_line(const FieldTower& F, const std::array<ProjPoint, 3>& src,
                                     const std::array<ProjPoint, 3>& dst) {
  auto Bs = frame_matrix(F, src);
  auto Bd = frame_matrix(F, dst);
  if (!Bs || !Bd) return std::nullopt;
  return mat_mul(F, *Bd, *mat_inverse(F, *Bs));
}

bool same_pair(const std::array<ProjPoint, 2>& a, const std::array<ProjPoint, 2>& b) {
  return (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0]);
}

std::optional<PseudoregulusWitness> is_pseudoregulus(const FieldTower& F, const std::vector<ProjPoint>& L) {
  const auto ref = standard_pseudoregulus(F);
  if (L.size() != ref.size()) return std::nullopt;
  for (const auto& P : L)
    if (P.x.size() != 2) throw PreconditionError("is_pseudoregulus: points must lie on PG(1, q^t)");
  std::unordered_set<ProjPoint, ProjPointHash> target(L.begin(), L.end());
  if (target.size() != L.size()) return std::nullopt;
  // The stabilizer of the standard set is transitive on it, so ref[0] -> L[0].
  const std::array<ProjPoint, 3> src{ref[0], ref[1], ref[2]};
  for (std::size_t i = 1; i < L.size(); ++i) {
    for (std::size_t j = 1; j < L.size(); ++j) {
      if (j == i) continue;
      auto M = projectivity_line(F, src, {L[0], L[i], L[j]});
      if (!M) continue;
      bool ok = true;
      for (std::size_t r = 3; r < ref.size() && ok; ++r) ok = target.count(normalize(F, mat_vec(F, *M, ref[r].x))) > 0;
      if (!ok) continue;
      PseudoregulusWitness w;
      w.transversals = {normalize(F, {(*M)[0][0], (*M)[1][0]}), normalize(F, {(*M)[0][1], (*M)[1][1]})};
      w.phi = *M;
      return w;
    }
  }
  return std::nullopt;
}

Mat conjugate_columns(const FieldTower& F, const ProjPoint& P, int nu) {
  const int t = F.t();
  Mat A(t, Vec(t));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) A[i][j] = F.frob(P.x[i], nu * j);
  return A;
}

Collineation kappa(const FieldTower& F, const ProjPoint& P_gamma, int nu) {
  auto inv = mat_inverse(F, conjugate_columns(F, P_gamma, nu));
  if (!inv) throw PreconditionError("kappa: point is not imaginary");
  return projectivity(std::move(*inv));
}

ProjPoint iota(const FieldTower& F, int nu, Elem lambda) {
  const int t = F.t();
  Vec v(t);
  for (int i = 0; i < t; ++i) v[i] = F.frob(lambda, nu * ((i + 2) % t));
  return normalize(F, std::move(v));
}

ProjPoint default_imaginary_point(const FieldTower& F) {
  Vec v(F.t());
  Elem x = F.one();
  for (int i = 0; i < F.t(); ++i) {
    v[i] = x;
    x = F.mul(x, F.root());
  }
  return ProjPoint{v};
}

ProjectionConfig config_from_point(const FieldTower& F, const ProjPoint& P_gamma, int nu) {
  const int t = F.t();
  if (t < 3) throw PreconditionError("projection configurations need t >= 3");
  const auto s = sigma_hat(F, t, nu);
  std::vector<ProjPoint> conj;
  ProjPoint X = P_gamma;
  for (int i = 0; i < t; ++i) {
    conj.push_back(X);
    X = apply(F, s, X);
  }
  ProjectionConfig cfg;
  cfg.sigma = standard_subgeometry(t);
  cfg.center = span(F, Level::Extension, std::vector<ProjPoint>(conj.begin(), conj.begin() + (t - 2)));
  cfg.axis = span(F, Level::Extension, {conj[t - 2], conj[t - 1]});
  return cfg;
}

std::optional<ProjPoint> recover_p_gamma(const FieldTower& F, const ProjectionConfig& cfg, int nu) {
  const int t = F.t();
  const Subspace G = pull_back(F, cfg.sigma, cfg.center);
  const auto s = sigma_hat(F, t, nu);
  const auto s_inv = inverse(F, s);
  const Subspace Hs = join(F, G, apply_sub(F, s, G));
  if (Hs.dim() != t - 2) return std::nullopt;
  const Subspace H = apply_sub(F, s_inv, Hs);
  Subspace Q = H;
  Subspace Hj = H;
  for (int j = 1; j <= t - 2; ++j) {
    Hj = apply_sub(F, s, Hj);
    Q = meet(F, Q, Hj);
  }
  if (Q.rank() != 1) return std::nullopt;
  ProjPoint P = normalize(F, Q.rows()[0]);
  P = apply(F, power(F, s, 3), P);
  if (!is_imaginary(F, P, s)) return std::nullopt;
  std::vector<ProjPoint> conj;
  ProjPoint X = P;
  for (int i = 0; i <= t - 3; ++i) {
    conj.push_back(X);
    X = apply(F, s, X);
  }
  if (!(span(F, Level::Extension, conj) == G)) return std::nullopt;
  return apply(F, cfg.sigma.embed, P);
}

PhiData phi_data(const FieldTower& F, const ProjectionConfig& cfg, const Vec& v1, const Vec& v2) {
  const int t = F.t();
  PhiData out;
  if (!contains(F, cfg.axis, v1) || !contains(F, cfg.axis, v2)) throw PreconditionError("phi_data: vectors off the axis");
  // Columns: rows of the center, then v1, v2.
  Mat basis = cfg.center.rows();
  basis.push_back(v1);
  basis.push_back(v2);
  auto Binv = mat_inverse(F, transpose(basis));
  if (!Binv) return out;
  Vec mu1(t), mu2(t);
  for (int j = 0; j < t; ++j) {
    Vec e(t, Elem{0});
    e[j] = F.one();
    const Vec coef = mat_vec(F, *Binv, mat_vec(F, cfg.sigma.embed.M, e));
    mu1[j] = coef[t - 2];
    mu2[j] = coef[t - 1];
  }
  if (gf_q_rank(F, mu1) != t || gf_q_rank(F, mu2) != t) return out;
  out.bijective = true;
  std::vector<Elem> phi(F.order());
  std::vector<std::uint32_t> a(t, 0);
  for (std::uint64_t idx = 0; idx < F.order(); ++idx) {
    std::uint64_t r = idx;
    Elem l1 = F.zero(), l2 = F.zero();
    for (int j = 0; j < t; ++j) {
      a[j] = static_cast<std::uint32_t>(r % F.q());
      r /= F.q();
      l1 = F.add(l1, F.mul(Elem{a[j]}, mu1[j]));
      l2 = F.add(l2, F.mul(Elem{a[j]}, mu2[j]));
    }
    phi[l1.code] = l2;
  }
  out.alpha = phi[1];
  out.norm_one = true;
  for (std::uint32_t c = 1; c < F.order(); ++c)
    out.norm_one = out.norm_one && F.norm(F.div(phi[c], Elem{c})) == F.one();
  for (int nu = 1; nu < t && out.nu_phi == 0; ++nu) {
    bool ok = true;
    for (std::uint32_t c = 0; c < F.order() && ok; ++c) ok = phi[c] == F.mul(out.alpha, F.frob(Elem{c}, nu));
    if (ok) out.nu_phi = nu;
  }
  // (beta l)^phi = beta l^phi exactly for beta in GF(q); lambda over a sample
  // when the field is large.
  const std::uint32_t step = F.order() <= 4096 ? 1 : static_cast<std::uint32_t>(F.order() / 64) | 1;
  out.semilinear = true;
  for (std::uint32_t b = 0; b < F.order() && out.semilinear; ++b) {
    for (std::uint32_t l = 1; l < F.order(); l += step) {
      const bool commutes = phi[F.mul(Elem{b}, Elem{l}).code] == F.mul(Elem{b}, phi[l]);
      if (commutes != F.in_base(Elem{b})) {
        out.semilinear = false;
        break;
      }
    }
  }
  return out;
}

bool MainTheoremReport::consistent() const {
  if (!agree()) return false;
  if (!cond_i) return true;
  if (!clause_a || !clause_b) return false;
  if (nus_ii != nus_iii || nus_ii.size() != 2) return false;
  if (!phi.bijective || !phi.norm_one || !phi.semilinear || phi.nu_phi == 0) return false;
  return std::find(nus_iii.begin(), nus_iii.end(), phi.nu_phi) != nus_iii.end();
}

MainTheoremReport verify_main_theorem(const FieldTower& F, const ProjectionConfig& cfg) {
  const int t = F.t();
  if (F.q() <= 2) throw HypothesisError("the projection characterization needs q > 2");
  if (t < 3) throw HypothesisError("the projection characterization needs t >= 3");
  if (cfg.center.dim() != t - 3 || cfg.axis.dim() != 1)
    throw PreconditionError("verify_main_theorem: center must be a (t-3)-space and axis a line");
  check_projection(F, cfg);

  MainTheoremReport rep;
  const auto L = project(F, cfg);
  std::vector<ProjPoint> Lc;
  for (const auto& X : L) Lc.push_back(line_coords(F, cfg.axis, X));
  const auto witness = is_pseudoregulus(F, Lc);
  rep.cond_i = witness.has_value();
  if (witness)
    for (const auto& T : witness->transversals) rep.transversals.push_back(from_line_coords(F, cfg.axis, T));

  const Subspace G = pull_back(F, cfg.sigma, cfg.center);
  const bool in_hyper = in_hyperplane_span(F, cfg.sigma, cfg.center);
  rep.clause_a = true;
  rep.clause_b = true;
  for (int nu : galois_generators(t)) {
    const auto s = sigma_hat(F, t, nu);
    if (!in_hyper && meet(F, G, apply_sub(F, s, G)).dim() == t - 4) rep.nus_ii.push_back(nu);
    const auto P = recover_p_gamma(F, cfg, nu);
    if (!P) continue;
    rep.nus_iii.push_back(nu);
    const auto sg = fixing_generator(F, cfg.sigma, nu);
    if (!rep.p_gamma) {
      rep.p_gamma = *P;
      rep.nu = nu;
    }
    // (a): the conjugates of Gamma meet in the single point P^{s^{t-3}}.
    Subspace I = cfg.center, Gj = cfg.center;
    for (int i = 1; i <= t - 3; ++i) {
      Gj = apply_sub(F, sg, Gj);
      I = meet(F, I, Gj);
    }
    const ProjPoint last = apply(F, power(F, sg, t - 3), *P);
    rep.clause_a = rep.clause_a && I.rank() == 1 && normalize(F, I.rows()[0]) == last;
    // (b): transversals from <Gamma, P^{s^i}>, i = t-2, t-1.
    std::array<ProjPoint, 2> pred;
    for (int k = 0; k < 2; ++k) {
      const ProjPoint Pi = apply(F, power(F, sg, t - 2 + k), *P);
      const Subspace X = meet(F, join(F, cfg.center, span(F, Level::Extension, {Pi})), cfg.axis);
      if (X.rank() != 1) {
        rep.clause_b = false;
        pred[k] = Pi;
      } else {
        pred[k] = normalize(F, X.rows()[0]);
      }
    }
    if (rep.predicted_transversals.empty()) rep.predicted_transversals = {pred[0], pred[1]};
    rep.clause_b = rep.clause_b && rep.transversals.size() == 2 &&
                   same_pair({rep.transversals[0], rep.transversals[1]}, pred);
  }
  rep.cond_ii = !rep.nus_ii.empty();
  rep.cond_iii = !rep.nus_iii.empty();
  if (!rep.cond_iii) {
    rep.clause_a = false;
    rep.clause_b = false;
  }
  if (witness) {
    auto lift = [&](Elem a, Elem b) {
      Vec v(t);
      for (int j = 0; j < t; ++j)
        v[j] = F.add(F.mul(a, cfg.axis.rows()[0][j]), F.mul(b, cfg.axis.rows()[1][j]));
      return v;
    };
    const Mat& M = witness->phi;
    rep.phi = phi_data(F, cfg, lift(M[0][0], M[1][0]), lift(M[0][1], M[1][1]));
  }
  return rep;
}

bool is_exterior(const FieldTower& F, const Subgeometry& S, const Subspace& line) {
  const Subspace Y = pull_back(F, S, line);
  const auto count = point_count(F, Y);
  for (std::uint64_t i = 0; i < count; ++i)
    if (all_in_base(F, point_at(F, Y, i).x)) return false;
  return true;
}

std::vector<ProjPoint> splash(const FieldTower& F, const Subgeometry& S, const Subspace& line) {
  if (line.rank() != 2) throw PreconditionError("splash: not a line");
  const Subspace Y = pull_back(F, S, line);
  const int n = Y.ambient();
  const Vec& u = Y.rows()[0];
  const Vec& w = Y.rows()[1];
  const auto count = space_point_count(F, n, Level::Base);
  std::vector<ProjPoint> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Vec c = space_point_at(F, n, Level::Base, i).x;
    Elem cu = F.zero(), cw = F.zero();
    for (int j = 0; j < n; ++j) {
      cu = F.add(cu, F.mul(c[j], u[j]));
      cw = F.add(cw, F.mul(c[j], w[j]));
    }
    if (cu.code == 0 && cw.code == 0) throw PreconditionError("splash: line inside the span of a hyperplane");
    Vec X(n);
    for (int j = 0; j < n; ++j) X[j] = F.sub(F.mul(cw, u[j]), F.mul(cu, w[j]));
    out.push_back(apply(F, S.embed, normalize(F, std::move(X))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SplashReport verify_splash(const FieldTower& F, const Subgeometry& S, const Subspace& line) {
  if (!is_exterior(F, S, line)) throw PreconditionError("splash: line meets the subgeometry");
  if (in_hyperplane_span(F, S, line)) throw PreconditionError("splash: line inside the span of a hyperplane");
  SplashReport rep;
  rep.splash = splash(F, S, line);
  std::vector<ProjPoint> Lc;
  for (const auto& X : rep.splash) Lc.push_back(line_coords(F, line, X));
  const auto witness = is_pseudoregulus(F, Lc);
  rep.pseudoregulus = witness.has_value();
  if (witness)
    for (const auto& T : witness->transversals) rep.transversals.push_back(from_line_coords(F, line, T));
  for (int nu : galois_generators(F.t())) {
    const auto s = fixing_generator(F, S, nu);
    const Subspace X = meet(F, line, apply_sub(F, s, line));
    if (X.empty()) continue;
    rep.meeting_nus.push_back(nu);
    if (rep.predicted_transversals.empty()) {
      const Subspace Xi = meet(F, line, apply_sub(F, inverse(F, s), line));
      if (X.rank() == 1 && Xi.rank() == 1)
        rep.predicted_transversals = {normalize(F, X.rows()[0]), normalize(F, Xi.rows()[0])};
    }
  }
  rep.agree = rep.pseudoregulus == !rep.meeting_nus.empty();
  if (rep.agree && rep.pseudoregulus)
    rep.agree = rep.predicted_transversals.size() == 2 && rep.transversals.size() == 2 &&
                same_pair({rep.transversals[0], rep.transversals[1]},
                          {rep.predicted_transversals[0], rep.predicted_transversals[1]});
  return rep;
}

}  // namespace pseudoreg
