#pragma once

// Verification campaigns shared by the command-line runner and the acceptance
// suite. Each returns a JSON report whose "ok" field is false iff some
// assertion failed; reports do not depend on the thread count.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "pseudoreg/gf.hpp"

namespace pseudoreg {

struct Campaign {
  std::uint32_t p = 3;
  int e = 1;
  int t = 3;
  int nu = 1;
  std::optional<std::string> f_poly;  // "c0,c1,.." low degree first
  std::optional<std::string> g_poly;
  bool slow_oracle = false;
  bool exhaustive = false;
  bool allow_out_of_hypothesis = false;
  std::uint64_t samples = 100;
  std::uint64_t seed = 1;
};

FieldTower make_tower(const Campaign& c);
// Rejects gcd(nu,t) != 1 and bad sizes with PreconditionError.
void validate(const Campaign& c);

nlohmann::json run_sublines(const Campaign& c);
nlohmann::json run_verify_main(const Campaign& c);
nlohmann::json run_hypersurface(const Campaign& c);
nlohmann::json run_powers(const Campaign& c);
nlohmann::json run_nrc(const Campaign& c);
nlohmann::json run_splash(const Campaign& c);
nlohmann::json run_counts(const Campaign& c);

// Integers that fit are emitted as numbers, larger ones as decimal strings.
nlohmann::json big_json(const BigInt& x);

}  // namespace pseudoreg
