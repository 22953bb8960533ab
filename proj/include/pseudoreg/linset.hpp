#pragma once

// Canonical subgeometries, projections, linear sets of pseudoregulus type on a
// line, the three-way characterization of projecting configurations, and
// exterior splashes.

#include <array>
#include <optional>
#include <vector>

#include "pseudoreg/fieldred.hpp"

namespace pseudoreg {

// Sigma = embed(standard subgeometry); embed is a projectivity.
struct Subgeometry {
  Collineation embed;
  Collineation embed_inv;
};

Subgeometry standard_subgeometry(int n);
Subgeometry embedded_subgeometry(const FieldTower& F, Mat M);
std::vector<ProjPoint> subgeometry_points(const FieldTower& F, const Subgeometry& S);
bool in_subgeometry(const FieldTower& F, const Subgeometry& S, const ProjPoint& P);
// embed * sigma_hat(nu) * embed^{-1}
Collineation fixing_generator(const FieldTower& F, const Subgeometry& S, int nu);
// Subspace pulled back to standard coordinates.
Subspace pull_back(const FieldTower& F, const Subgeometry& S, const Subspace& X);
// True when some hyperplane of Sigma spans a subspace containing X.
bool in_hyperplane_span(const FieldTower& F, const Subgeometry& S, const Subspace& X);

struct ProjectionConfig {
  Subgeometry sigma;
  Subspace center;
  Subspace axis;
};

void check_projection(const FieldTower& F, const ProjectionConfig& cfg);
// <center, P> meet axis for one point P of Sigma.
ProjPoint project_point(const FieldTower& F, const ProjectionConfig& cfg, const ProjPoint& P);
// Projection of all of Sigma (sorted, distinct).
std::vector<ProjPoint> project(const FieldTower& F, const ProjectionConfig& cfg);

// Coordinates on a line with respect to its RREF basis, and back.
ProjPoint line_coords(const FieldTower& F, const Subspace& line, const ProjPoint& X);
ProjPoint from_line_coords(const FieldTower& F, const Subspace& line, const ProjPoint& c);

// Imaginary points with respect to a fixing generator, three ways.
bool is_imaginary(const FieldTower& F, const ProjPoint& P, const Collineation& sigma);
bool is_imaginary_span(const FieldTower& F, const ProjPoint& P, const Collineation& sigma);
// Coordinates linearly independent over GF(q) (standard subgeometry only).
bool is_imaginary_coords(const FieldTower& F, const ProjPoint& P);

// {<(1,k)> : N(k) = 1}
std::vector<ProjPoint> standard_pseudoregulus(const FieldTower& F);
std::vector<Elem> norm_one_elements(const FieldTower& F);

struct PseudoregulusWitness {
  std::array<ProjPoint, 2> transversals;  // images of <(1,0)>, <(0,1)>
  Mat phi;                                // 2x2, maps the standard set onto the input
};

// Projectivity of PG(1) through three point pairs (src[i] -> dst[i]).
std::optional<Mat> projectivity_line(const FieldTower& F, const std::array<ProjPoint, 3>& src,
                                     const std::array<ProjPoint, 3>& dst);
// Input: points of PG(1, q^t) as 2-vectors.
std::optional<PseudoregulusWitness> is_pseudoregulus(const FieldTower& F, const std::vector<ProjPoint>& L);
bool same_pair(const std::array<ProjPoint, 2>& a, const std::array<ProjPoint, 2>& b);

// Matrix with columns b, b^sigma, .., b^{sigma^{t-1}}; kappa is its inverse.
Mat conjugate_columns(const FieldTower& F, const ProjPoint& P, int nu);
Collineation kappa(const FieldTower& F, const ProjPoint& P_gamma, int nu);
// <(l^{s^2}, .., l^{s^{t-1}}, l, l^s)>
ProjPoint iota(const FieldTower& F, int nu, Elem lambda);

// Configuration built from an imaginary point: Sigma standard,
// Gamma = <P, .., P^{s^{t-3}}>, axis = <P^{s^{t-2}}, P^{s^{t-1}}>.
ProjectionConfig config_from_point(const FieldTower& F, const ProjPoint& P_gamma, int nu);
ProjPoint default_imaginary_point(const FieldTower& F);

struct PhiData {
  bool bijective = false;
  Elem alpha;          // phi(1)
  int nu_phi = 0;      // phi(x) = alpha x^{q^nu_phi}, 0 if no such form
  bool norm_one = false;
  bool semilinear = false;
};

struct MainTheoremReport {
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  std::vector<int> nus_ii;
  std::vector<int> nus_iii;
  std::optional<ProjPoint> p_gamma;  // for the first generator in nus_iii
  int nu = 0;
  bool clause_a = false;
  bool clause_b = false;
  std::vector<ProjPoint> transversals;  // ambient coordinates, from the projection
  std::vector<ProjPoint> predicted_transversals;
  PhiData phi;

  bool agree() const { return cond_i == cond_ii && cond_ii == cond_iii; }
  // All statements of the theorem hold for this configuration.
  bool consistent() const;
};

MainTheoremReport verify_main_theorem(const FieldTower& F, const ProjectionConfig& cfg);

// P_Gamma for one generator, by the hyperplane construction; empty when the
// construction fails.
std::optional<ProjPoint> recover_p_gamma(const FieldTower& F, const ProjectionConfig& cfg, int nu);
// v1, v2 span the axis with the projection equal to {<l v1 + l^q v2>}.
PhiData phi_data(const FieldTower& F, const ProjectionConfig& cfg, const Vec& v1, const Vec& v2);

struct SplashReport {
  std::vector<ProjPoint> splash;  // ambient coordinates
  bool pseudoregulus = false;
  std::vector<int> meeting_nus;  // generators with l meet l^s nonempty
  std::vector<ProjPoint> transversals;
  std::vector<ProjPoint> predicted_transversals;
  bool agree = false;
};

std::vector<ProjPoint> splash(const FieldTower& F, const Subgeometry& S, const Subspace& line);
bool is_exterior(const FieldTower& F, const Subgeometry& S, const Subspace& line);
SplashReport verify_splash(const FieldTower& F, const Subgeometry& S, const Subspace& line);

}  // namespace pseudoreg
