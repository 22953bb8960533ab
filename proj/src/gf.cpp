#include "pseudoreg/gf.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace pseudoreg {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Poly parse_poly(std::string_view text) {
  Poly out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view tok = text.substr(pos, next - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw PreconditionError("bad polynomial coefficient '" + std::string(tok) + "'");
    out.push_back(value);
    pos = next + 1;
  }
  return out;
}

std::string format_poly(const Poly& poly) {
  std::ostringstream os;
  for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? "," : "") << poly[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// SmallField

SmallField::SmallField(std::uint32_t p, const Poly& modulus) : p_(p) {
  const int degree = static_cast<int>(modulus.size()) - 1;
  if (degree < 1 || modulus.back() != 1)
    throw PreconditionError("SmallField modulus must be monic of degree >= 1");
  std::uint64_t size = 1;
  for (int i = 0; i < degree; ++i) size *= p;
  if (size > 1024) throw SizingError("base field GF(q) larger than 1024 elements");
  size_ = static_cast<std::uint32_t>(size);

  auto decode = [&](std::uint32_t c) {
    std::vector<std::uint32_t> d(degree);
    for (int i = 0; i < degree; ++i) {
      d[i] = c % p;
      c /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t c = 0;
    for (int i = degree - 1; i >= 0; --i) c = c * p + d[i];
    return c;
  };

  add_.resize(std::size_t{size_} * size_);
  mul_.resize(std::size_t{size_} * size_);
  neg_.resize(size_);
  inv_.assign(size_, 0);
  for (std::uint32_t a = 0; a < size_; ++a) {
    const auto da = decode(a);
    std::vector<std::uint32_t> dn(degree);
    for (int i = 0; i < degree; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<std::uint16_t>(encode(dn));
    for (std::uint32_t b = 0; b < size_; ++b) {
      const auto db = decode(b);
      std::vector<std::uint32_t> ds(degree);
      for (int i = 0; i < degree; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * size_ + b] = static_cast<std::uint16_t>(encode(ds));
      std::vector<std::uint64_t> prod(2 * degree - 1, 0);
      for (int i = 0; i < degree; ++i)
        for (int j = 0; j < degree; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
      for (int k = 2 * degree - 2; k >= degree; --k) {
        const std::uint64_t c = prod[k];
        if (c == 0) continue;
        for (int j = 0; j < degree; ++j)
          prod[k - degree + j] = (prod[k - degree + j] + (p - c) * modulus[j]) % p;
        prod[k] = 0;
      }
      std::vector<std::uint32_t> dm(degree);
      for (int i = 0; i < degree; ++i) dm[i] = static_cast<std::uint32_t>(prod[i]);
      mul_[a * size_ + b] = static_cast<std::uint16_t>(encode(dm));
    }
  }
  for (std::uint32_t a = 1; a < size_; ++a)
    for (std::uint32_t b = 1; b < size_; ++b)
      if (mul_[a * size_ + b] == 1) {
        inv_[a] = static_cast<std::uint16_t>(b);
        break;
      }
}

Poly poly_mod(const SmallField& field, Poly a, const Poly& b) {
  Poly d = b;
  trim(d);
  if (d.empty()) throw PreconditionError("polynomial division by zero");
  trim(a);
  const std::size_t db = d.size() - 1;
  const std::uint32_t lead_inv = field.inv(d.back());
  while (a.size() >= d.size()) {
    const std::uint32_t c = field.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = field.sub(a[shift + j], field.mul(c, d[j]));
    trim(a);
  }
  return a;
}

bool is_irreducible(const SmallField& field, const Poly& poly) {
  Poly f = poly;
  trim(f);
  const int degree = static_cast<int>(f.size()) - 1;
  if (degree < 1) return false;
  const std::uint32_t s = field.size();
  for (int d = 1; 2 * d <= degree; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= s;
    Poly candidate(d + 1, 0);
    candidate[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t rest = idx;
      for (int i = 0; i < d; ++i) {
        candidate[i] = static_cast<std::uint32_t>(rest % s);
        rest /= s;
      }
      if (poly_mod(field, f, candidate).empty()) return false;
    }
  }
  return true;
}

Poly least_irreducible(const SmallField& field, int degree) {
  const std::uint32_t s = field.size();
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= s;
  Poly candidate(degree + 1, 0);
  candidate[degree] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (int i = 0; i < degree; ++i) {
      candidate[i] = static_cast<std::uint32_t>(rest % s);
      rest /= s;
    }
    if (is_irreducible(field, candidate)) return candidate;
  }
  throw Error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// FieldTower

namespace {

Poly checked_modulus(const SmallField& field, const std::optional<Poly>& override_poly, int degree,
                     const char* name) {
  if (!override_poly) return least_irreducible(field, degree);
  const Poly& poly = *override_poly;
  if (static_cast<int>(poly.size()) != degree + 1 || poly.back() != 1)
    throw PreconditionError(std::string("override ") + name + " must be monic of degree " +
                            std::to_string(degree));
  for (auto c : poly)
    if (c >= field.size())
      throw PreconditionError(std::string("override ") + name + " has a coefficient outside the base field");
  if (!is_irreducible(field, poly))
    throw PreconditionError(std::string("override ") + name + " = " + format_poly(poly) + " is reducible");
  return poly;
}

std::uint32_t checked_prime(std::uint32_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  if (p > 1024) throw SizingError("characteristic exceeds 1024");
  return p;
}

}  // namespace

FieldTower::FieldTower(std::uint32_t p, int e, int t, const TowerOptions& options)
    : p_(p), e_(e), t_(t), base_(checked_prime(p), {0, 1}) {
  if (e < 1) throw PreconditionError("extension degree e must be >= 1");
  if (t < 2) throw PreconditionError("extension degree t must be >= 2");
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > 1024) throw SizingError("q = p^e exceeds 1024");
  }
  q_ = static_cast<std::uint32_t>(q);
  std::uint64_t order = 1;
  for (int i = 0; i < t; ++i) {
    if (order > options.enumeration_bound / q)
      throw SizingError("q^t exceeds the enumeration bound " + std::to_string(options.enumeration_bound));
    order *= q;
  }
  order_ = order;
  mod_ = static_cast<std::uint32_t>(order_ - 1);

  const SmallField prime_field(p, {0, 1});
  f_ = checked_modulus(prime_field, options.f_override, e, "f");
  base_ = SmallField(p, f_);
  g_ = checked_modulus(base_, options.g_override, t, "g");

  minus_one_ = Elem{p - 1};
  qpow_mod_.resize(t);
  std::uint64_t acc = 1;
  for (int i = 0; i < t; ++i) {
    qpow_mod_[i] = acc % mod_;
    acc *= q_;
  }
  primitive_ = find_primitive();
  tables_ = order_ <= options.table_threshold;
  if (tables_) build_tables();
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "GF(" << q_ << "^" << t_ << ") p=" << p_ << " e=" << e_ << " t=" << t_ << " f=[" << format_poly(f_)
     << "] g=[" << format_poly(g_) << "]";
  return os.str();
}

Elem FieldTower::add_slow(Elem a, Elem b) const {
  std::uint32_t x = a.code, y = b.code, out = 0, scale = 1;
  for (int i = 0; i < t_; ++i) {
    out += base_.add(x % q_, y % q_) * scale;
    x /= q_;
    y /= q_;
    scale *= q_;
  }
  return Elem{out};
}

Elem FieldTower::mul_slow(Elem a, Elem b) const {
  std::vector<std::uint32_t> da(t_), db(t_);
  std::uint32_t x = a.code, y = b.code;
  for (int i = 0; i < t_; ++i) {
    da[i] = x % q_;
    db[i] = y % q_;
    x /= q_;
    y /= q_;
  }
  std::vector<std::uint32_t> prod(2 * t_ - 1, 0);
  for (int i = 0; i < t_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < t_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(da[i], db[j]));
  }
  for (int k = 2 * t_ - 2; k >= t_; --k) {
    const std::uint32_t c = prod[k];
    if (c == 0) continue;
    for (int j = 0; j < t_; ++j) prod[k - t_ + j] = base_.sub(prod[k - t_ + j], base_.mul(c, g_[j]));
    prod[k] = 0;
  }
  std::uint32_t out = 0;
  for (int i = t_ - 1; i >= 0; --i) out = out * q_ + prod[i];
  return Elem{out};
}

Elem FieldTower::pow_slow(Elem x, std::uint64_t n) const {
  Elem result{1};
  Elem base = x;
  while (n > 0) {
    if (n & 1) result = mul_slow(result, base);
    base = mul_slow(base, base);
    n >>= 1;
  }
  return result;
}

std::uint32_t FieldTower::lead_slow(Elem x) const {
  std::uint32_t c = x.code;
  for (int i = 0; i < t_; ++i) {
    if (c % q_ != 0) return c % q_;
    c /= q_;
  }
  return 0;
}

Elem FieldTower::find_primitive() const {
  const auto factors = prime_factors(mod_);
  for (std::uint32_t c = 1; c < order_; ++c) {
    bool ok = true;
    for (auto r : factors) {
      if (pow_slow(Elem{c}, mod_ / r) == Elem{1}) {
        ok = false;
        break;
      }
    }
    if (ok) return Elem{c};
  }
  throw Error("no primitive element found");
}

void FieldTower::build_tables() {
  exp_.resize(2 * std::size_t{mod_});
  log_.assign(order_, kNoLog);
  Elem cur{1};
  for (std::uint32_t i = 0; i < mod_; ++i) {
    exp_[i] = cur.code;
    log_[cur.code] = i;
    cur = mul_slow(cur, primitive_);
  }
  for (std::uint32_t i = 0; i < mod_; ++i) exp_[i + mod_] = exp_[i];
  zech_.resize(mod_);
  for (std::uint32_t n = 0; n < mod_; ++n) {
    const Elem y = add_slow(Elem{exp_[n]}, Elem{1});
    zech_[n] = y.code == 0 ? kNoLog : log_[y.code];
  }
  lead_.resize(order_);
  for (std::uint32_t c = 0; c < order_; ++c) lead_[c] = static_cast<std::uint16_t>(lead_slow(Elem{c}));
}

Elem FieldTower::inv(Elem a) const {
  if (a.code == 0) throw PreconditionError("inverse of zero");
  if (tables_) return Elem{exp_[(mod_ - log_[a.code]) % mod_]};
  return pow_slow(a, mod_ - 1);
}

Elem FieldTower::pow(Elem x, std::uint64_t n) const {
  if (n == 0) return Elem{1};
  if (x.code == 0) return Elem{0};
  const std::uint64_t r = n % mod_;
  if (tables_) return Elem{exp_[(std::uint64_t{log_[x.code]} * r) % mod_]};
  return pow_slow(x, r);
}

Elem FieldTower::pow(Elem x, const BigInt& n) const {
  if (n == 0) return Elem{1};
  if (x.code == 0) {
    if (n < 0) throw PreconditionError("negative power of zero");
    return Elem{0};
  }
  const BigInt r = mod_floor(n, BigInt(mod_));
  const auto small = r.convert_to<std::uint64_t>();
  if (small == 0) return Elem{1};
  return pow(x, small);
}

Elem FieldTower::frob(Elem x, int i) const {
  i %= t_;
  if (i < 0) i += t_;
  if (i == 0 || x.code < q_) return x;
  if (tables_) return Elem{exp_[(std::uint64_t{log_[x.code]} * qpow_mod_[i]) % mod_]};
  return pow_slow(x, qpow_mod_[i]);
}

Elem FieldTower::frob_p(Elem x, int a) const {
  const int period = e_ * t_;
  a %= period;
  if (a < 0) a += period;
  std::uint64_t n = 1;
  for (int i = 0; i < a; ++i) n = (n * p_) % mod_;
  if (a > 0 && n == 0) n = mod_;
  return a == 0 ? x : pow(x, n);
}

Elem FieldTower::norm(Elem x) const {
  const std::uint64_t theta_t1 = mod_ / (q_ - 1);
  return pow(x, theta_t1);
}

int FieldTower::elem_order(Elem x) const {
  if (x.code == 0) return 1;
  for (int m : divisors(t_))
    if (frob(x, m) == x) return m;
  return t_;
}

std::uint32_t FieldTower::log(Elem x) const {
  if (x.code == 0) throw PreconditionError("log of zero");
  if (!tables_) throw Error("discrete log tables not built for this tower");
  return log_[x.code];
}

Elem FieldTower::exp(std::uint64_t n) const {
  if (tables_) return Elem{exp_[n % mod_]};
  return pow_slow(primitive_, n % mod_);
}

std::vector<std::uint32_t> FieldTower::coeffs(Elem x) const {
  std::vector<std::uint32_t> out(t_);
  std::uint32_t c = x.code;
  for (int i = 0; i < t_; ++i) {
    out[i] = c % q_;
    c /= q_;
  }
  return out;
}

Elem FieldTower::from_coeffs(std::span<const std::uint32_t> c) const {
  if (static_cast<int>(c.size()) != t_) throw PreconditionError("coefficient vector must have length t");
  std::uint32_t out = 0;
  for (int i = t_ - 1; i >= 0; --i) {
    if (c[i] >= q_) throw PreconditionError("coefficient outside GF(q)");
    out = out * q_ + c[i];
  }
  return Elem{out};
}

std::vector<std::uint32_t> FieldTower::prime_digits(Elem x) const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(e_) * t_);
  std::uint32_t c = x.code;
  for (auto& d : out) {
    d = c % p_;
    c /= p_;
  }
  return out;
}

Elem FieldTower::normalize_q(Elem x) const {
  if (x.code == 0) return x;
  const std::uint32_t l = lead(x);
  if (l == 1) return x;
  return mul(Elem{base_.inv(l)}, x);
}

// ---------------------------------------------------------------------------
// Integer helpers

BigInt ipow(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigInt theta(int s, const BigInt& q) {
  if (s < -1) throw PreconditionError("theta_s needs s >= -1");
  return (ipow(q, static_cast<unsigned>(s + 1)) - 1) / (q - 1);
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod_floor(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt quotient = old_r / r;
    BigInt tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw PreconditionError("value is not invertible modulo m");
  return mod_floor(old_s, m);
}

BigInt theta_inverse(int nu, int t, std::uint64_t q) {
  if (nu < 1 || gcd_int(nu, t) != 1)
    throw PreconditionError("theta_inverse needs gcd(nu, t) = 1, got nu=" + std::to_string(nu) +
                            " t=" + std::to_string(t));
  const BigInt modulus = theta(t - 1, q);
  if (modulus == 1) return 0;
  return mod_inverse(theta(nu - 1, q), modulus);
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<int> galois_generators(int t) {
  std::vector<int> out;
  for (int nu = 1; nu < t; ++nu)
    if (gcd_int(nu, t) == 1) out.push_back(nu);
  return out;
}

}  // namespace pseudoreg
