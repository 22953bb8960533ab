#include "pseudoreg/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "pseudoreg/campaigns.hpp"
#include "pseudoreg/errors.hpp"
#include "pseudoreg/hypersurface.hpp"

namespace pseudoreg {

using nlohmann::json;

namespace {

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string to_csv(const json& r) {
  std::ostringstream os;
  const std::string cmd = r.value("command", "");
  if (cmd == "counts" || cmd == "sublines") {
    const std::vector<std::string> cols{"q", "t", "N1", "N2", "subline_count_formula", "subline_count_enumerated", "agree"};
    json row = r;
    if (cmd == "sublines") {
      row["subline_count_formula"] = r["formula_value"];
      row["subline_count_enumerated"] = r["total"];
      const auto q = r["q"].get<std::uint64_t>();
      const int t = r["t"].get<int>();
      if (q >= static_cast<std::uint64_t>(t)) {
        row["N1"] = big_json(count_N1(q, t));
        row["N2"] = big_json(count_N2(q, t));
      }
    }
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
    os << "\n";
    return os.str();
  }
  // Scalar fields only, in key order.
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.items())
    if (!v.is_structured()) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << "\n";
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_cell(r[keys[i]]);
  os << "\n";
  return os.str();
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattered linear sets of pseudoregulus type: verification campaigns"};
  app.require_subcommand(1);
  Campaign c;
  int threads = 0;
  std::string format = "json";
  std::string out_path;
  std::string f_poly, g_poly;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", c.p, "characteristic")->envname("PSEUDOREG_P");
    sub->add_option("--e", c.e, "q = p^e")->envname("PSEUDOREG_E");
    sub->add_option("--t", c.t, "extension degree")->envname("PSEUDOREG_T");
    sub->add_option("--nu", c.nu, "generator exponent, gcd(nu,t) = 1")->envname("PSEUDOREG_NU");
    sub->add_option("--f-poly", f_poly, "defining polynomial of GF(q) over GF(p), low degree first")
        ->envname("PSEUDOREG_F_POLY");
    sub->add_option("--g-poly", g_poly, "defining polynomial of GF(q^t) over GF(q), low degree first")
        ->envname("PSEUDOREG_G_POLY");
    sub->add_option("--threads", threads, "OpenMP threads (0 = runtime default)")->envname("PSEUDOREG_THREADS");
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("PSEUDOREG_FORMAT");
    sub->add_option("--out", out_path, "write the report here instead of stdout")->envname("PSEUDOREG_OUT");
    sub->add_option("--samples", c.samples, "sample count for sampled modes")->envname("PSEUDOREG_SAMPLES");
    sub->add_option("--seed", c.seed, "sampling seed")->envname("PSEUDOREG_SEED");
    sub->add_flag("--allow-out-of-hypothesis", c.allow_out_of_hypothesis, "run outside the theorem hypotheses")
        ->envname("PSEUDOREG_ALLOW_OUT_OF_HYPOTHESIS");
    sub->add_flag("--slow-oracle", c.slow_oracle, "also run the brute-force oracles")->envname("PSEUDOREG_SLOW_ORACLE");
    sub->add_flag("--exhaustive", c.exhaustive, "exhaustive instead of sampled scans")->envname("PSEUDOREG_EXHAUSTIVE");
  };

  const std::map<std::string, std::function<json(const Campaign&)>> commands{
      {"sublines", run_sublines}, {"verify-main", run_verify_main}, {"hypersurface", run_hypersurface},
      {"powers", run_powers},     {"nrc", run_nrc},                 {"splash", run_splash},
      {"counts", run_counts}};
  const std::map<std::string, std::string> help{
      {"sublines", "q-order sublines of the standard set: census, families, preimage curves"},
      {"verify-main", "projection characterisation of pseudoregulus type"},
      {"hypersurface", "the hypersurface Q, its families and lines"},
      {"powers", "d-powers of lines of PG_q(F_{q^t})"},
      {"nrc", "normal rational curves: counts, congruences, carrier curves"},
      {"splash", "splashes of exterior lines"},
      {"counts", "closed-form counts only"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) {
    subs[name] = app.add_subcommand(name, help.at(name));
    add_common(subs[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  std::string name;
  for (const auto& [n, s] : subs)
    if (s->parsed()) name = n;
  if (!f_poly.empty()) c.f_poly = f_poly;
  if (!g_poly.empty()) c.g_poly = g_poly;
  if (threads > 0) omp_set_num_threads(threads);

  json report;
  try {
    report = commands.at(name)(c);
  } catch (const HypothesisError& e) {
    err << "out of hypothesis: " << e.what() << " (use --allow-out-of-hypothesis)\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = format == "csv" ? to_csv(report) : report.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  return report.value("ok", false) ? 0 : 1;
}

}  // namespace pseudoreg
