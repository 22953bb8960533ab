#include "pseudoreg/campaigns.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <omp.h>

#include "pseudoreg/curves.hpp"
#include "pseudoreg/hypersurface.hpp"
#include "pseudoreg/linset.hpp"

namespace pseudoreg {

using nlohmann::json;

namespace {

// Work sizes above which the optional oracles are skipped unless requested.
constexpr std::uint64_t kOracleOrder = 4096;
constexpr std::uint64_t kPreimageOrder = 4096;
constexpr std::uint64_t kScanPoints = 1u << 20;

json header(const char* cmd, const FieldTower& F, const Campaign& c) {
  return json{{"command", cmd},  {"p", F.p()},         {"e", F.e()},        {"q", F.q()},
              {"t", F.t()},      {"nu", c.nu},         {"f", format_poly(F.f())},
              {"g", format_poly(F.g())}};
}

std::vector<ProjPoint> all_points(const FieldTower& F, int n, Level level) {
  std::vector<ProjPoint> out;
  const auto c = space_point_count(F, n, level);
  for (std::uint64_t i = 0; i < c; ++i) out.push_back(space_point_at(F, n, level, i));
  return out;
}

bool imaginary_point(const FieldTower& F, const ProjPoint& P, int nu) {
  return is_imaginary(F, P, sigma_hat(F, F.t(), nu));
}

}  // namespace

json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

FieldTower make_tower(const Campaign& c) {
  validate(c);
  TowerOptions opt;
  if (c.f_poly) opt.f_override = parse_poly(*c.f_poly);
  if (c.g_poly) opt.g_override = parse_poly(*c.g_poly);
  return FieldTower(c.p, c.e, c.t, opt);
}

void validate(const Campaign& c) {
  if (!is_prime(c.p)) throw PreconditionError("p must be prime");
  if (c.e < 1 || c.t < 2) throw PreconditionError("need e >= 1 and t >= 2");
  if (c.nu < 1 || c.nu >= c.t || gcd_int(c.nu, c.t) != 1) throw PreconditionError("nu must satisfy 1 <= nu < t, gcd(nu,t) = 1");
}

json run_sublines(const Campaign& c) {
  const FieldTower F = make_tower(c);
  const int t = F.t();
  json r = header("sublines", F, c);
  const bool in_hyp = F.q() >= static_cast<std::uint32_t>(t);
  if (!in_hyp && !c.allow_out_of_hypothesis) throw HypothesisError("subline census needs q >= t");
  r["in_hypothesis"] = in_hyp;
  const auto B = enumerate_sublines_B(F);
  r["total"] = B.sublines.size();
  r["algorithm_b_generated"] = B.generated;
  r["algorithm_b_uniform"] = B.uniform;
  bool agree = B.uniform;
  if (in_hyp) {
    const BigInt formula = subline_count(F.q(), t);
    r["formula_value"] = big_json(formula);
    agree = agree && BigInt(B.sublines.size()) == formula;
  } else {
    r["formula_value"] = nullptr;
  }
  if (c.slow_oracle || F.order() <= kOracleOrder) {
    const auto A = enumerate_sublines_A(F);
    r["algorithm_a_total"] = A.size();
    r["algorithm_a_agree"] = A == B.sublines;
    agree = agree && A == B.sublines;
  }
  if (c.slow_oracle && F.order() <= 256) {
    const auto Ql = enumerate_sublines_qlines(F);
    r["qline_oracle_agree"] = Ql.sublines == B.sublines && Ql.uniform;
    agree = agree && Ql.sublines == B.sublines && Ql.uniform;
  }
  json by_family = json::object();
  if (in_hyp && F.order() <= kPreimageOrder) {
    const ProjPoint P = default_imaginary_point(F);
    const std::int64_t n = static_cast<std::int64_t>(B.sublines.size());
    std::vector<int> hs(n), ns(n);
    std::vector<char> ok(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        const auto rep = preimage_curve(F, B.sublines[i], P, c.nu);
        hs[i] = rep.cls.h;
        ns[i] = rep.cls.n;
        ok[i] = rep.ok();
      } catch (const Error&) {
        hs[i] = ns[i] = -1;
        ok[i] = 0;
      }
    }
    std::map<int, std::pair<std::uint64_t, std::set<int>>> fam;
    std::uint64_t bad = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      fam[hs[i]].first++;
      fam[hs[i]].second.insert(ns[i]);
      bad += !ok[i];
    }
    for (const auto& [h, v] : fam) {
      json order = v.second.size() == 1 ? json(*v.second.begin()) : json(std::vector<int>(v.second.begin(), v.second.end()));
      by_family[std::to_string(h)] = {{"count", v.first}, {"preimage_order", order}};
    }
    r["preimage_failures"] = bad;
    agree = agree && bad == 0;
    if (is_prime(t)) {
      const BigInt size = theta(t - 1, F.q()) * theta(t - 2, F.q()) / theta(1, F.q());
      bool fam_ok = static_cast<int>(fam.size()) == t - 1;
      for (const auto& [h, v] : fam) fam_ok = fam_ok && BigInt(v.first) == size;
      r["family_size_expected"] = big_json(size);
      r["families_ok"] = fam_ok;
      agree = agree && fam_ok;
    }
  } else {
    r["preimages"] = "skipped";
  }
  r["by_family"] = by_family;
  r["agree"] = agree;
  r["ok"] = agree;
  return r;
}

json run_verify_main(const Campaign& c) {
  const FieldTower F = make_tower(c);
  const int t = F.t();
  if (t < 3) throw PreconditionError("verify-main needs t >= 3");
  if (F.q() == 2 && !c.allow_out_of_hypothesis) throw HypothesisError("verify-main needs q > 2");
  json r = header("verify-main", F, c);
  const auto S = standard_subgeometry(t);
  std::uint64_t imag = 0, imag_pass = 0, non_imag = 0, all_false = 0, discrepancies = 0;
  if (t == 3) {
    const Elem v = F.root();
    const auto ax1 = span(F, Level::Extension, {ProjPoint{{Elem{0}, Elem{1}, v}}, ProjPoint{{Elem{1}, v, Elem{0}}}});
    const auto ax2 = span(F, Level::Extension, {ProjPoint{{Elem{1}, Elem{0}, v}}, ProjPoint{{Elem{0}, Elem{1}, Elem{1}}}});
    const auto ax3 = span(F, Level::Extension, {ProjPoint{{Elem{1}, v, v}}, ProjPoint{{Elem{0}, v, Elem{1}}}});
    std::vector<ProjPoint> centers;
    if (c.exhaustive) {
      centers = all_points(F, 3, Level::Extension);
    } else {
      std::mt19937_64 rng(c.seed);
      const auto n = space_point_count(F, 3, Level::Extension);
      for (std::uint64_t k = 0; k < c.samples; ++k) centers.push_back(space_point_at(F, 3, Level::Extension, rng() % n));
      centers.push_back(default_imaginary_point(F));
    }
    const std::int64_t n = static_cast<std::int64_t>(centers.size());
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : imag, imag_pass, non_imag, all_false, discrepancies)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto& P = centers[i];
      if (in_subgeometry(F, S, P)) continue;
      const auto& axis = !contains(F, ax1, P.x) ? ax1 : !contains(F, ax2, P.x) ? ax2 : ax3;
      MainTheoremReport rep;
      try {
        rep = verify_main_theorem(F, ProjectionConfig{S, span(F, Level::Extension, {P}), axis});
      } catch (const Error&) {
        ++discrepancies;
        continue;
      }
      discrepancies += !rep.consistent();
      if (imaginary_point(F, P, c.nu)) {
        ++imag;
        imag_pass += rep.cond_i && rep.cond_ii && rep.cond_iii && rep.clause_a && rep.clause_b && rep.p_gamma == P;
      } else {
        ++non_imag;
        all_false += !rep.cond_i && !rep.cond_ii && !rep.cond_iii;
      }
    }
    r["mode"] = c.exhaustive ? "exhaustive" : "sampled";
  } else {
    if (c.exhaustive) throw PreconditionError("exhaustive verify-main is implemented for t = 3");
    std::mt19937_64 rng(c.seed);
    const auto n = space_point_count(F, t, Level::Extension);
    auto rand_point = [&] { return space_point_at(F, t, Level::Extension, rng() % n); };
    for (std::uint64_t k = 0; k < c.samples; ++k) {
      // Alternate between conjugate-span centers and random ones.
      ProjectionConfig cfg{S, {}, {}};
      ProjPoint P = rand_point();
      const bool from_point = k % 2 == 0 && imaginary_point(F, P, c.nu);
      if (from_point) {
        cfg = config_from_point(F, P, c.nu);
      } else {
        std::vector<ProjPoint> gens;
        for (int i = 0; i < t - 2; ++i) gens.push_back(rand_point());
        cfg.center = span(F, Level::Extension, gens);
        if (cfg.center.rank() != t - 2) continue;
      }
      cfg.axis = span(F, Level::Extension, {rand_point(), rand_point()});
      if (cfg.axis.rank() != 2) continue;
      try {
        check_projection(F, cfg);
      } catch (const PreconditionError&) {
        continue;
      }
      const auto rep = verify_main_theorem(F, cfg);
      discrepancies += !rep.consistent();
      if (from_point) {
        ++imag;
        imag_pass += rep.cond_i && rep.cond_ii && rep.cond_iii && recover_p_gamma(F, cfg, c.nu) == P;
      } else if (!rep.cond_i) {
        ++non_imag;
        all_false += !rep.cond_ii && !rep.cond_iii;
      }
    }
    r["mode"] = "sampled";
  }
  r["imaginary_centers"] = imag;
  r["imaginary_pass"] = imag_pass;
  r["non_imaginary_centers"] = non_imag;
  r["non_imaginary_all_false"] = all_false;
  r["discrepancies"] = discrepancies;
  if (t == 3 && c.exhaustive) r["imaginary_expected"] = big_json(nrc_count_identities(F.q(), 3).K1);
  bool ok = imag == imag_pass && non_imag == all_false && discrepancies == 0;
  if (t == 3 && c.exhaustive) ok = ok && BigInt(imag) == nrc_count_identities(F.q(), 3).K1;
  r["ok"] = ok;
  return r;
}

json run_hypersurface(const Campaign& c) {
  const FieldTower F = make_tower(c);
  const int t = F.t();
  if (F.q() < static_cast<std::uint32_t>(t) && !c.allow_out_of_hypothesis)
    throw HypothesisError("line counts on Q need q >= t");
  json r = header("hypersurface", F, c);
  bool ok = true;
  const auto Q = q_points(F);
  const BigInt th = theta(t - 1, F.q());
  r["size"] = Q.size();
  r["size_expected"] = big_json(th * th);
  ok = ok && BigInt(Q.size()) == th * th;
  const auto scan_n = space_point_count(F, 2 * t, Level::Base);
  if (c.exhaustive || scan_n <= kScanPoints) {
    std::uint64_t members = 0;
#pragma omp parallel for schedule(static) reduction(+ : members)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(scan_n); ++i)
      members += membership(F, space_point_at(F, 2 * t, Level::Base, i));
    r["size_by_scan"] = members;
    ok = ok && members == Q.size();
  }
  std::set<std::uint64_t> qkeys;
  for (const auto& P : Q) qkeys.insert(point_key(F, P));
  bool partition = true;
  for (int h = 0; h < t; ++h) {
    std::set<std::uint64_t> seen;
    std::uint64_t total = 0;
    for (const auto& S : family(F, h))
      for (const auto& P : family_points(F, S)) {
        seen.insert(point_key(F, P));
        ++total;
      }
    partition = partition && total == Q.size() && seen == qkeys;
  }
  r["families_partition"] = partition;
  ok = ok && partition;
  bool s0 = true;
  for (const auto& S : family(F, 0)) s0 = s0 && field_reduce(F, ProjPoint{{F.one(), S.k}}) == family_subspace(F, S);
  r["field_reduction_is_S0"] = s0;
  ok = ok && s0;
  if (F.q() >= static_cast<std::uint32_t>(t)) {
    const auto unit = lines_through_unit(F);
    std::vector<std::array<std::uint64_t, 2>> keys;
    for (const auto& L : unit) keys.push_back(line_key(F, L));
    std::sort(keys.begin(), keys.end());
    const BigInt N1 = count_N1(F.q(), t);
    const BigInt N2 = count_N2(F.q(), t);
    r["N1"] = big_json(N1);
    r["N1_constructed"] = unit.size();
    r["N2"] = big_json(N2);
    ok = ok && BigInt(unit.size()) == N1;
    if (c.exhaustive || Q.size() <= 5000) {
      const bool unit_ok = keys == lines_through_bruteforce(F, {F.one(), F.one()});
      const auto lines = all_lines_bruteforce(F);
      std::uint64_t outside = 0;
      for (const auto& k : lines)
        outside += containing_families(F, QLine{from_key(F, k[0]), from_key(F, k[1])}).empty();
      r["N1_bruteforce_agree"] = unit_ok;
      r["N2_scanned"] = lines.size();
      r["lines_outside_families"] = outside;
      ok = ok && unit_ok && BigInt(lines.size()) == N2 && outside == 0;
    }
  }
  r["ok"] = ok;
  return r;
}

json run_powers(const Campaign& c) {
  const FieldTower F = make_tower(c);
  const int t = F.t();
  json r = header("powers", F, c);
  const auto lines = all_lines(F);
  std::uint64_t checked = 0, passed = 0, skipped = 0, inv_checked = 0, inv_passed = 0;
  const auto gens = galois_generators(t);
  const std::int64_t n = static_cast<std::int64_t>(lines.size());
  const bool inverse_ok = F.q() + 1 >= static_cast<std::uint32_t>(t);
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : checked, passed, skipped, inv_checked, inv_passed)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& l = lines[i];
    const int m = line_order(F, l);
    for (int nu : gens)
      for (int h = 1; h < t; ++h) {
        if (h % m == 0) continue;
        try {
          const auto rep = verify_line_power(F, l, nu, h);
          ++checked;
          passed += rep.ok();
        } catch (const HypothesisError&) {
          ++skipped;
        } catch (const Error&) {
          ++checked;
        }
      }
    if (inverse_ok) {
      ++inv_checked;
      try {
        inv_passed += verify_inverse_power(F, l).ok();
      } catch (const Error&) {
      }
    }
  }
  r["lines"] = lines.size();
  r["power_checks"] = checked;
  r["power_pass"] = passed;
  r["out_of_hypothesis"] = skipped;
  r["inverse_checks"] = inv_checked;
  r["inverse_pass"] = inv_passed;
  r["ok"] = checked == passed && inv_checked == inv_passed && checked > 0;
  return r;
}

json run_nrc(const Campaign& c) {
  const FieldTower F = make_tower(c);
  const int t = F.t();
  json r = header("nrc", F, c);
  bool ok = true;
  if (is_prime(t)) {
    const auto k = nrc_count_identities(F.q(), t);
    r["K1"] = big_json(k.K1);
    r["K2"] = big_json(k.K2);
    r["K3"] = big_json(k.K3);
    r["nu_curves"] = big_json(k.nu_curves);
    r["identities"] = k.integral && k.identity;
    ok = ok && k.integral && k.identity;
  }
  const auto grid = congruence_grid({2, 3, 4, 5, 7, 8, 9}, 2, 8);
  r["congruence_cases"] = grid.cases;
  r["congruence_failures"] = grid.failures;
  ok = ok && grid.failures == 0;
  if (F.q() >= static_cast<std::uint32_t>(t + 1)) {
    const auto rr = is_fq_rational(F, standard_nrc(F, t));
    r["standard_curve_rational"] = rr.rational && rr.cross_check;
    ok = ok && rr.rational && rr.cross_check;
  }
  const bool carrier_hyp = is_prime(t) && F.q() >= static_cast<std::uint32_t>(t + 1);
  if (carrier_hyp) {
    const auto rep = verify_carrier_curves(F, c.nu);
    json fam = json::object();
    for (const auto& [h, n] : rep.by_family) fam[std::to_string(h)] = n;
    r["carrier"] = {{"curves", rep.curves},
                    {"sublines", rep.sublines.size()},
                    {"expected", big_json(rep.expected)},
                    {"expected_h", rep.expected_h},
                    {"by_family", fam},
                    {"all_in_standard_set", rep.all_in_standard_set},
                    {"all_rational", rep.all_rational},
                    {"preimages_match", rep.preimages_match},
                    {"vandermonde", rep.vandermonde},
                    {"ok", rep.ok()}};
    ok = ok && rep.ok();
  } else if (!c.allow_out_of_hypothesis && is_prime(t)) {
    throw HypothesisError("carrier curves need q >= t+1");
  } else {
    r["carrier"] = "out-of-hypothesis";
  }
  r["ok"] = ok;
  return r;
}

json run_splash(const Campaign& c) {
  const FieldTower F = make_tower(c);
  const int t = F.t();
  json r = header("splash", F, c);
  const auto S = standard_subgeometry(t);
  std::vector<Subspace> lines;
  if (t == 3 && (c.exhaustive || F.order() <= 4096)) {
    for (const auto& d : all_points(F, 3, Level::Extension))
      lines.push_back(span_vectors(F, 3, Level::Extension, kernel(F, {d.x}, 3)));
    r["mode"] = "exhaustive";
  } else {
    std::mt19937_64 rng(c.seed);
    const auto n = space_point_count(F, t, Level::Extension);
    for (std::uint64_t k = 0; k < c.samples; ++k)
      lines.push_back(span(F, Level::Extension, {space_point_at(F, t, Level::Extension, rng() % n),
                                                 space_point_at(F, t, Level::Extension, rng() % n)}));
    const auto P = default_imaginary_point(F);
    for (int nu : galois_generators(t)) lines.push_back(span(F, Level::Extension, {P, apply(F, sigma_hat(F, t, nu), P)}));
    r["mode"] = "sampled";
  }
  std::uint64_t exterior = 0, pseudo = 0, disagree = 0, bad_size = 0;
  const std::int64_t n = static_cast<std::int64_t>(lines.size());
  const BigInt size = theta(t - 1, F.q());
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : exterior, pseudo, disagree, bad_size)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& line = lines[i];
    if (line.rank() != 2 || !is_exterior(F, S, line) || in_hyperplane_span(F, S, line)) continue;
    ++exterior;
    SplashReport rep;
    try {
      rep = verify_splash(F, S, line);
    } catch (const Error&) {
      ++disagree;
      continue;
    }
    disagree += !rep.agree;
    pseudo += rep.pseudoregulus;
    bad_size += rep.pseudoregulus && BigInt(rep.splash.size()) != size;
  }
  r["exterior_lines"] = exterior;
  r["pseudoregulus"] = pseudo;
  r["disagreements"] = disagree;
  r["wrong_size"] = bad_size;
  r["ok"] = disagree == 0 && bad_size == 0 && exterior > 0;
  return r;
}

json run_counts(const Campaign& c) {
  validate(c);
  const std::uint64_t q = ipow(c.p, c.e).convert_to<std::uint64_t>();
  const int t = c.t;
  if (q < static_cast<std::uint64_t>(t) && !c.allow_out_of_hypothesis) throw HypothesisError("counts need q >= t");
  json r{{"command", "counts"}, {"p", c.p}, {"e", c.e}, {"q", q}, {"t", t}, {"nu", c.nu}};
  bool ok = true;
  if (q >= static_cast<std::uint64_t>(t)) {
    const BigInt N1 = count_N1(q, t), N2 = count_N2(q, t), sc = subline_count(q, t);
    r["N1"] = big_json(N1);
    r["N2"] = big_json(N2);
    r["subline_count_formula"] = big_json(sc);
    // Lines of Q outside S_0 come theta_{t-1} to a subline.
    const BigInt th = theta(t - 1, q);
    const bool via_lines = (N2 - th * th * theta(t - 2, q) / (q + 1)) == sc * th;
    r["subline_count_from_N2"] = via_lines;
    ok = ok && via_lines;
    if (is_prime(t)) {
      const bool prime_ok = subline_count_prime(q, t) == sc;
      r["prime_formula_agree"] = prime_ok;
      ok = ok && prime_ok;
    }
    if (c.exhaustive) {
      const FieldTower F = make_tower(c);
      const auto B = enumerate_sublines_B(F);
      r["subline_count_enumerated"] = B.sublines.size();
      r["algorithm_b_uniform"] = B.uniform;
      ok = ok && B.uniform && BigInt(B.sublines.size()) == sc;
    }
  }
  if (is_prime(t)) {
    const auto k = nrc_count_identities(q, t);
    r["K1"] = big_json(k.K1);
    r["K2"] = big_json(k.K2);
    r["K3"] = big_json(k.K3);
    r["nu_curves"] = big_json(k.nu_curves);
    r["K_identities"] = k.integral && k.identity;
    ok = ok && k.integral && k.identity;
  }
  r["agree"] = ok;
  r["ok"] = ok;
  return r;
}

}  // namespace pseudoreg
