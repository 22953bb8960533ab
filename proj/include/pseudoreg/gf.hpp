#pragma once

// Exact arithmetic in the tower GF(p) < GF(q) < GF(q^t), q = p^e.
//
// An element of GF(q^t) is identified by its integer code
//   code = sum_i c_i q^i,   c_i in GF(q) the coefficient of v^i,
// where v is a root of the defining polynomial g and each c_i is itself the
// code sum_j a_j p^j of a GF(q) element in the basis 1, u, .., u^{e-1}
// (u a root of f). Codes below q are exactly the elements of GF(q).
//
// When q^t is below the table threshold, multiplication, inversion and the
// Frobenius powers use discrete log tables and addition uses Zech logarithms.
// Above it, every operation falls back to polynomial arithmetic.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pseudoreg/errors.hpp"

namespace pseudoreg {

using BigInt = boost::multiprecision::cpp_int;

// Coefficients low degree first.
using Poly = std::vector<std::uint32_t>;

struct Elem {
  std::uint32_t code = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct ElemHash {
  std::size_t operator()(Elem x) const noexcept {
    return std::hash<std::uint32_t>{}(x.code);
  }
};

struct TowerOptions {
  std::optional<Poly> f_override;  // monic, degree e, coefficients in GF(p)
  std::optional<Poly> g_override;  // monic, degree t, coefficients are GF(q) codes
  std::uint64_t table_threshold = std::uint64_t{1} << 20;
  std::uint64_t enumeration_bound = std::uint64_t{1} << 24;
};

// Parses "1,1,0,1" (low degree first).
Poly parse_poly(std::string_view text);
std::string format_poly(const Poly& poly);

bool is_prime(std::uint64_t n);

// Arithmetic in GF(s) = GF(p)[x]/(modulus), elements coded base p.
// Used for GF(p) itself (modulus x) and for GF(q).
class SmallField {
 public:
  SmallField(std::uint32_t p, const Poly& modulus);

  std::uint32_t size() const { return size_; }
  std::uint32_t characteristic() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * size_ + b]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[a * size_ + neg_[b]]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * size_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

 private:
  std::uint32_t p_;
  std::uint32_t size_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
};

// Polynomial helpers over a SmallField.
Poly poly_mod(const SmallField& field, Poly a, const Poly& b);
bool is_irreducible(const SmallField& field, const Poly& poly);
// Least monic irreducible of the given degree, candidates ordered by
// sum c_i s^i with s the field size.
Poly least_irreducible(const SmallField& field, int degree);

class FieldTower {
 public:
  FieldTower(std::uint32_t p, int e, int t, const TowerOptions& options = {});

  std::uint32_t p() const { return p_; }
  int e() const { return e_; }
  int t() const { return t_; }
  std::uint32_t q() const { return q_; }
  std::uint64_t order() const { return order_; }
  const Poly& f() const { return f_; }
  const Poly& g() const { return g_; }
  bool has_tables() const { return tables_; }
  const SmallField& base() const { return base_; }
  std::string describe() const;

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  // Root v of g; the reduction basis is 1, v, .., v^{t-1}.
  Elem root() const { return Elem{q_}; }
  Elem primitive() const { return primitive_; }
  bool in_base(Elem x) const { return x.code < q_; }

  Elem add(Elem a, Elem b) const {
    if (!tables_) return add_slow(a, b);
    if (a.code == 0) return b;
    if (b.code == 0) return a;
    const std::uint32_t la = log_[a.code];
    std::uint32_t diff = log_[b.code] + mod_ - la;
    if (diff >= mod_) diff -= mod_;
    const std::uint32_t z = zech_[diff];
    if (z == kNoLog) return Elem{0};
    return Elem{exp_[la + z]};
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a.code == 0) return a;
    return mul(a, minus_one_);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!tables_) return mul_slow(a, b);
    if (a.code == 0 || b.code == 0) return Elem{0};
    return Elem{exp_[log_[a.code] + log_[b.code]]};
  }
  // Throws PreconditionError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem x, std::uint64_t n) const;
  Elem pow(Elem x, const BigInt& n) const;  // n may be negative for x != 0
  // x^{q^i}, i taken mod t.
  Elem frob(Elem x, int i) const;
  // x^{p^a}, a taken mod e*t.
  Elem frob_p(Elem x, int a) const;
  // x * x^q * .. * x^{q^{t-1}}, lies in GF(q).
  Elem norm(Elem x) const;
  // Smallest m | t with x in GF(q^m); 1 for x = 0.
  int elem_order(Elem x) const;

  std::uint32_t log(Elem x) const;  // base primitive(); x != 0
  Elem exp(std::uint64_t n) const;

  // t GF(q) coefficients of x (coefficient of v^i at index i).
  std::vector<std::uint32_t> coeffs(Elem x) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;
  // e*t GF(p) digits.
  std::vector<std::uint32_t> prime_digits(Elem x) const;
  // First nonzero GF(q) coefficient, 0 for x = 0.
  std::uint32_t lead(Elem x) const {
    if (tables_) return lead_[x.code];
    return lead_slow(x);
  }
  // Representative of <x>_q with leading coefficient 1.
  Elem normalize_q(Elem x) const;

  // Scalar multiplication by a GF(q) element c (code < q).
  Elem scale(std::uint32_t c, Elem x) const { return mul(Elem{c}, x); }

 private:
  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

  Elem add_slow(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;
  Elem pow_slow(Elem x, std::uint64_t n) const;
  std::uint32_t lead_slow(Elem x) const;
  void build_tables();
  Elem find_primitive() const;

  std::uint32_t p_;
  int e_;
  int t_;
  std::uint32_t q_;
  std::uint64_t order_;
  std::uint32_t mod_;  // order - 1 (multiplicative group order)
  Poly f_;
  Poly g_;
  SmallField base_;
  bool tables_ = false;
  Elem primitive_{1};
  Elem minus_one_{1};
  std::vector<std::uint64_t> qpow_mod_;  // q^i mod (order-1), i < t
  std::vector<std::uint32_t> exp_;       // size 2*(order-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::vector<std::uint16_t> lead_;
};

// theta_s = (q^{s+1}-1)/(q-1), s >= -1.
BigInt theta(int s, const BigInt& q);
inline BigInt theta(int s, std::uint64_t q) { return theta(s, BigInt(q)); }
BigInt ipow(const BigInt& base, unsigned exponent);
BigInt mod_floor(const BigInt& a, const BigInt& m);
// Inverse of a modulo m; throws PreconditionError when gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);
// Least nonnegative d with d * theta_{nu-1} = 1 (mod theta_{t-1}).
BigInt theta_inverse(int nu, int t, std::uint64_t q);

int gcd_int(int a, int b);
std::vector<int> divisors(int n);
// Generators nu in [1, t-1] of Gal(GF(q^t)/GF(q)) (gcd(nu, t) = 1).
std::vector<int> galois_generators(int t);

}  // namespace pseudoreg
