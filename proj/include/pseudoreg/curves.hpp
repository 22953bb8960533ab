#pragma once

// q-order sublines inside the standard pseudoregulus set, their families and
// preimage curves, normal rational curves, and d-powers of lines of PG_q(F_{q^t}).

#include <map>
#include <optional>
#include <vector>

#include "pseudoreg/exec.hpp"
#include "pseudoreg/hypersurface.hpp"
#include "pseudoreg/linset.hpp"

namespace pseudoreg {

// Unique q-order subline of PG(1, q^t) through three distinct points, sorted.
std::vector<ProjPoint> subline_closure(const FieldTower& F, const ProjPoint& P1, const ProjPoint& P2,
                                       const ProjPoint& P3);

// A subline inside {<(1,k)> : N(k) = 1}, stored as its q+1 values k, sorted.
using Subline = std::vector<Elem>;

// Triple closure over 3-subsets of the norm-one elements; each subline is
// recorded from its three smallest points.
std::vector<Subline> enumerate_sublines_A(const FieldTower& F, Exec exec = Exec::Parallel);

// Structured lines of Q: k * {z^{q^h-1} : z in <1, y>_q} for canonical y,
// 1 <= h < [F_q(y):F_q] and N(k) = 1.
struct SublineCensus {
  std::vector<Subline> sublines;  // sorted, distinct
  std::uint64_t generated = 0;    // structured lines visited
  bool uniform = false;           // every subline produced exactly q+1 times
};
SublineCensus enumerate_sublines_B(const FieldTower& F, Exec exec = Exec::Parallel);

// Sublines B(f) for the lines f of Q outside S_0 from the exhaustive scan,
// with the check that each subline comes from exactly theta_{t-1} lines.
SublineCensus enumerate_sublines_qlines(const FieldTower& F);

bool subline_in_standard_set(const FieldTower& F, const Subline& r);
std::vector<ProjPoint> subline_points(const FieldTower& F, const Subline& r);

struct SublineClass {
  int h = 0;
  Elem y;    // canonical, r = k * {z^{q^h-1} : z in <1,y>_q}
  Elem k;
  int m = 0;  // [F_q(y):F_q]
  int n = 0;  // h * nu^{-1} mod m, in 1..m-1
  BigInt delta;  // theta_{nu-1}^{-1} mod theta_{t-1}
};

// Throws HypothesisError for q < t and Error when no family fits.
SublineClass classify_subline(const FieldTower& F, const Subline& r, int nu);

// Normal rational curve fitted to a point set over GF(q).
struct NrcFit {
  int order = 0;
  Subspace span;
};

// Points are GF(q)-vectors. Empty unless the set is exactly the point set of
// a normal rational curve of order rank-1 with parameters in GF(q).
std::optional<NrcFit> fit_nrc(const FieldTower& F, const std::vector<ProjPoint>& X);

// Point set {T (1, l, .., l^n) : l in GF(q^t)} u {T e_n} over the whole field.
struct NormalRationalCurve {
  Mat T;  // (rows n+1) ambient <- standard coordinates
  std::vector<ProjPoint> points;  // sorted
};

// Unique order-(N-1) curve through N+2 points of PG(N-1, q^t), no N in a
// hyperplane; PreconditionError names a dependent N-subset otherwise.
NormalRationalCurve nrc_through(const FieldTower& F, const std::vector<ProjPoint>& pts);
NormalRationalCurve standard_nrc(const FieldTower& F, int N);

struct RationalityReport {
  std::uint64_t rational_points = 0;
  bool rational = false;       // q+1 rational points
  bool cross_check = false;    // refit over GF(q) reproduces the curve
};
// q >= N+1 required (HypothesisError otherwise).
RationalityReport is_fq_rational(const FieldTower& F, const NormalRationalCurve& C);

struct PreimageReport {
  Subline r;
  SublineClass cls;
  std::vector<ProjPoint> preimage;  // points of Sigma, sorted
  std::optional<NrcFit> fit;
  bool order_matches = false;
  bool model_matches = false;  // equals the power-of-line model through iota
  bool ok() const { return fit && order_matches && model_matches && preimage.size() >= 3; }
};

// Projection configuration from an imaginary point in the normal form; the
// u-parameter of a rational point a is (A^{-1} a)_{t-2}.
PreimageReport preimage_curve(const FieldTower& F, const Subline& r, const ProjPoint& P_gamma, int nu);
// k-value of the projection of a rational point in the kappa frame.
Elem projected_k(const FieldTower& F, const Mat& A_inv, const Vec& a);

struct CountIdentities {
  BigInt K1, K2, K3, nu_curves;
  bool integral = false;
  bool identity = false;
};
// t prime (PreconditionError otherwise).
CountIdentities nrc_count_identities(std::uint64_t q, int t);

// theta_{nu-1}^{-1} theta_{h-1} = (q^{nu n}-1)/(q^nu-1) mod theta_{m-1}.
bool check_congruence(std::uint64_t q, int t, int m, int nu, int h, int n);
struct CongruenceGrid {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};
CongruenceGrid congruence_grid(const std::vector<std::uint64_t>& qs, int t_min, int t_max);

// Lines of PG_q(F_{q^t}) as pairs spanning them.
struct PowerLine {
  Elem x, y;
};
std::vector<PowerLine> all_lines(const FieldTower& F);
int line_order(const FieldTower& F, const PowerLine& l);
std::vector<Elem> line_elements(const FieldTower& F, const PowerLine& l);  // q+1 representatives

struct LinePower {
  std::vector<Elem> points;  // normalized, sorted, distinct
  int m = 0;
  int digit_sum = 0;
  bool degenerate = false;  // fewer than q+1 image points
};
LinePower power_of_line(const FieldTower& F, const PowerLine& l, const BigInt& d);
std::vector<ProjPoint> as_points(const FieldTower& F, const std::vector<Elem>& xs);

struct LinePowerReport {
  int m = 0, n = 0;
  BigInt d, d_prime;
  int fitted_order = -1;
  int span_dim = -1;
  bool general_position = false;  // any n+1 points of l^{d'} independent
  bool equivalent = false;        // lambda_beta maps l^d onto l^{d'} pointwise
  bool digit_sum_ok = false;
  bool ok() const { return fitted_order == n && span_dim == n && general_position && equivalent && digit_sum_ok; }
};
LinePowerReport verify_line_power(const FieldTower& F, const PowerLine& l, int nu, int h);

struct InverseReport {
  bool frobenius_match = false;  // l^{-1} = (l^{theta_{t-2}})^q pointwise
  int fitted_order = -1;
  int m = 0;
  bool ok() const { return frobenius_match && fitted_order == m - 1; }
};
InverseReport verify_inverse_power(const FieldTower& F, const PowerLine& l);

struct CarrierReport {
  std::uint64_t curves = 0;          // distinct curves over all pairs of Sigma
  std::vector<Subline> sublines;     // distinct projections
  std::map<int, std::uint64_t> by_family;
  int expected_h = 0;                // -nu mod t
  bool all_in_standard_set = false;
  bool all_rational = false;
  bool preimages_match = false;      // preimage of each subline is the curve's rational part
  bool vandermonde = false;
  BigInt expected;                   // theta_{t-1} theta_{t-2} / theta_1
  bool ok() const;
};
// t prime, q >= t+1 (HypothesisError otherwise).
CarrierReport verify_carrier_curves(const FieldTower& F, int nu, Exec exec = Exec::Parallel);
// Projection of C_t from <P, .., P^{s^{t-3}}>, P = (1, a, .., a^{t-1}), onto X_1 = .. = X_{t-2} = 0.
bool check_vandermonde_projection(const FieldTower& F, Elem alpha, int nu);

}  // namespace pseudoreg
