#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace gradings {

using json = nlohmann::json;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Serializable description of a coefficient field.
struct FieldSpec {
  enum class Kind { rationals, prime, quadratic };
  Kind kind = Kind::rationals;
  std::uint64_t p = 0;
  std::shared_ptr<const FieldSpec> base;
  // Coefficients c0, c1 of the monic minimal polynomial x^2 + c1 x + c0, as base element JSON.
  json c0, c1;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p) {
    FieldSpec s;
    s.kind = Kind::prime;
    s.p = p;
    return s;
  }
  static FieldSpec quadratic(const FieldSpec& base, json c0, json c1) {
    FieldSpec s;
    s.kind = Kind::quadratic;
    s.base = std::make_shared<const FieldSpec>(base);
    s.c0 = std::move(c0);
    s.c1 = std::move(c1);
    return s;
  }

  std::uint64_t characteristic() const {
    switch (kind) {
      case Kind::rationals: return 0;
      case Kind::prime: return p;
      case Kind::quadratic: return base->characteristic();
    }
    return 0;
  }

  json to_json() const {
    switch (kind) {
      case Kind::rationals: return json{{"kind", "rationals"}};
      case Kind::prime: return json{{"kind", "prime"}, {"p", p}};
      case Kind::quadratic:
        return json{{"kind", "quadratic"}, {"base", base->to_json()}, {"minpoly", json::array({c0, c1, "1"})}};
    }
    return {};
  }

  static FieldSpec from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw FieldError("field spec: missing kind");
    const std::string k = j["kind"];
    if (k == "rationals") return rationals();
    if (k == "prime") {
      if (!j.contains("p") || !j["p"].is_number_unsigned()) throw FieldError("field spec: bad modulus");
      return prime(j["p"].get<std::uint64_t>());
    }
    if (k == "quadratic") {
      if (!j.contains("base") || !j.contains("minpoly")) throw FieldError("field spec: incomplete extension");
      const json& m = j["minpoly"];
      if (!m.is_array() || m.size() != 3) throw FieldError("field spec: minpoly must have 3 coefficients");
      auto is_one = [](const json& c) {
        return (c.is_number_integer() && c.get<long long>() == 1) || (c.is_string() && c.get<std::string>() == "1");
      };
      if (!is_one(m[2])) throw FieldError("field spec: minpoly must be monic");
      return quadratic(from_json(j["base"]), m[0], m[1]);
    }
    throw FieldError("field spec: unknown kind " + k);
  }
};

/// GF(p) with residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!detail::is_prime_u64(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    return r < 0 ? static_cast<value_type>(r + static_cast<std::int64_t>(p_)) : static_cast<value_type>(r);
  }
  value_type from_mpz(const mpz_class& n) const {
    mpz_class r = n % mpz_class(static_cast<unsigned long>(p_));
    if (r < 0) r += static_cast<unsigned long>(p_);
    return r.get_ui();
  }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ || s < a ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const { return detail::mulmod(a, b, p_); }
  value_type inv(value_type a) const {
    if (a == 0) throw FieldError("division by zero");
    std::int64_t t = 0, nt = 1;
    std::uint64_t r = p_, nr = a;
    while (nr) {
      std::uint64_t q = r / nr;
      std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
      t = nt;
      nt = tmp;
      std::uint64_t rr = r - q * nr;
      r = nr;
      nr = rr;
    }
    return from_int(t);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  bool eq(value_type a, value_type b) const { return a == b; }

  std::optional<value_type> sqrt(value_type a) const {
    if (a == 0) return value_type{0};
    if (p_ == 2) return a;
    if (detail::powmod(a, (p_ - 1) / 2, p_) != 1) return std::nullopt;
    // Tonelli-Shanks
    std::uint64_t q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    std::uint64_t z = 2;
    while (detail::powmod(z, (p_ - 1) / 2, p_) != p_ - 1) ++z;
    std::uint64_t m = s, c = detail::powmod(z, q, p_), t = detail::powmod(a, q, p_),
                  r = detail::powmod(a, (q + 1) / 2, p_);
    while (t != 1) {
      std::uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = mul(tt, tt);
        ++i;
      }
      std::uint64_t b = c;
      for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return std::min(r, p_ - r);
  }

  /// Ordering used to pick canonical representatives: numeric residue order.
  bool magnitude_less(value_type a, value_type b) const { return a < b; }

  std::string to_string(value_type a) const { return std::to_string(a); }
  json to_json(value_type a) const { return to_string(a); }
  value_type from_json(const json& j) const {
    if (j.is_number_integer()) return from_int(j.get<std::int64_t>());
    if (!j.is_string()) throw FieldError("GF(p) element must be a decimal string");
    mpz_class n;
    if (n.set_str(j.get<std::string>(), 10) != 0) throw FieldError("bad GF(p) element: " + j.get<std::string>());
    return from_mpz(n);
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    return std::uniform_int_distribution<std::uint64_t>(0, p_ - 1)(rng);
  }

 private:
  std::uint64_t p_;
};

/// The rational numbers, backed by GMP.
class RationalField {
 public:
  using value_type = mpq_class;

  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t n) const { return mpq_class(static_cast<long>(n)); }
  value_type from_mpz(const mpz_class& n) const { return mpq_class(n); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw FieldError("division by zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }

  std::optional<value_type> sqrt(const value_type& a) const {
    if (a < 0) return std::nullopt;
    mpz_class n = a.get_num(), d = a.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
  }

  /// Absolute value first, then positive before negative.
  bool magnitude_less(const value_type& a, const value_type& b) const {
    int c = cmp(abs(a), abs(b));
    if (c != 0) return c < 0;
    return a > b;
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  json to_json(const value_type& a) const { return to_string(a); }
  value_type from_json(const json& j) const {
    if (j.is_number_integer()) return from_int(j.get<std::int64_t>());
    if (!j.is_string()) throw FieldError("rational element must be a string");
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0)
      throw FieldError("bad rational: " + j.get<std::string>());
    q.canonicalize();
    return q;
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    std::int64_t num = std::uniform_int_distribution<std::int64_t>(-9, 9)(rng);
    std::int64_t den = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
    mpq_class q(static_cast<long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
  }
};

/// Base[x]/(x^2 + c1 x + c0); elements a + b x.
template <class Base>
class QuadraticField {
 public:
  using base_type = typename Base::value_type;
  struct value_type {
    base_type a, b;
    bool operator==(const value_type& o) const { return a == o.a && b == o.b; }
  };

  QuadraticField(Base base, base_type c0, base_type c1) : base_(std::move(base)), c0_(std::move(c0)), c1_(std::move(c1)) {
    if (base_.characteristic() == 2) throw FieldError("quadratic extensions require characteristic != 2");
    base_type disc = base_.sub(base_.mul(c1_, c1_), base_.mul(base_.from_int(4), c0_));
    if (base_.sqrt(disc)) throw FieldError("extension polynomial is reducible over the base field");
  }

  const Base& base() const { return base_; }
  const base_type& c0() const { return c0_; }
  const base_type& c1() const { return c1_; }
  std::uint64_t characteristic() const { return base_.characteristic(); }
  FieldSpec spec() const { return FieldSpec::quadratic(base_.spec(), base_.to_json(c0_), base_.to_json(c1_)); }

  value_type zero() const { return {base_.zero(), base_.zero()}; }
  value_type one() const { return {base_.one(), base_.zero()}; }
  value_type generator() const { return {base_.zero(), base_.one()}; }
  value_type from_int(std::int64_t n) const { return {base_.from_int(n), base_.zero()}; }
  value_type from_mpz(const mpz_class& n) const { return {base_.from_mpz(n), base_.zero()}; }
  value_type embed(const base_type& a) const { return {a, base_.zero()}; }
  value_type add(const value_type& x, const value_type& y) const { return {base_.add(x.a, y.a), base_.add(x.b, y.b)}; }
  value_type sub(const value_type& x, const value_type& y) const { return {base_.sub(x.a, y.a), base_.sub(x.b, y.b)}; }
  value_type neg(const value_type& x) const { return {base_.neg(x.a), base_.neg(x.b)}; }
  value_type mul(const value_type& x, const value_type& y) const {
    // (a + b x)(c + d x) with x^2 = -c1 x - c0
    base_type ac = base_.mul(x.a, y.a), bd = base_.mul(x.b, y.b);
    base_type cross = base_.add(base_.mul(x.a, y.b), base_.mul(x.b, y.a));
    return {base_.sub(ac, base_.mul(bd, c0_)), base_.sub(cross, base_.mul(bd, c1_))};
  }
  value_type inv(const value_type& x) const {
    if (is_zero(x)) throw FieldError("division by zero");
    // conjugate (a - b c1) - b x, norm a^2 - a b c1 + b^2 c0
    value_type conj{base_.sub(x.a, base_.mul(x.b, c1_)), base_.neg(x.b)};
    base_type n = base_.add(base_.sub(base_.mul(x.a, x.a), base_.mul(base_.mul(x.a, x.b), c1_)),
                            base_.mul(base_.mul(x.b, x.b), c0_));
    base_type ni = base_.inv(n);
    return {base_.mul(conj.a, ni), base_.mul(conj.b, ni)};
  }
  value_type div(const value_type& x, const value_type& y) const { return mul(x, inv(y)); }
  bool is_zero(const value_type& x) const { return base_.is_zero(x.a) && base_.is_zero(x.b); }
  bool eq(const value_type& x, const value_type& y) const { return base_.eq(x.a, y.a) && base_.eq(x.b, y.b); }

  std::optional<value_type> sqrt(const value_type& z) const {
    // Work in the basis {1, t} with t = x + c1/2, t^2 = D.
    base_type half = base_.inv(base_.from_int(2));
    base_type h = base_.mul(c1_, half);
    base_type D = base_.sub(base_.mul(h, h), c0_);
    // z = c + d x = (c - d h) + d t
    base_type c = base_.sub(z.a, base_.mul(z.b, h)), d = z.b;
    auto to_x = [&](const base_type& p, const base_type& q) -> value_type {
      return {base_.add(p, base_.mul(q, h)), q};  // p + q t = (p + q h) + q x
    };
    auto check = [&](const value_type& w) -> std::optional<value_type> {
      if (eq(mul(w, w), z)) return w;
      return std::nullopt;
    };
    if (base_.is_zero(d)) {
      if (auto r = base_.sqrt(c)) return check(to_x(*r, base_.zero()));
      if (auto r = base_.sqrt(base_.div(c, D))) return check(to_x(base_.zero(), *r));
      return std::nullopt;
    }
    // D b^4 - c b^2 + d^2/4 = 0
    base_type disc = base_.sub(base_.mul(c, c), base_.mul(D, base_.mul(d, d)));
    auto s = base_.sqrt(disc);
    if (!s) return std::nullopt;
    for (int sign : {1, -1}) {
      base_type num = sign > 0 ? base_.add(c, *s) : base_.sub(c, *s);
      base_type b2 = base_.div(num, base_.mul(base_.from_int(2), D));
      auto b = base_.sqrt(b2);
      if (!b || base_.is_zero(*b)) continue;
      base_type a = base_.div(d, base_.mul(base_.from_int(2), *b));
      if (auto w = check(to_x(a, *b))) return w;
    }
    return std::nullopt;
  }

  /// Compare the x-coordinate first, then the constant coordinate.
  bool magnitude_less(const value_type& x, const value_type& y) const {
    if (!base_.eq(x.b, y.b)) return base_.magnitude_less(x.b, y.b);
    return base_.magnitude_less(x.a, y.a);
  }

  std::string to_string(const value_type& x) const {
    return "(" + base_.to_string(x.a) + "," + base_.to_string(x.b) + ")";
  }
  json to_json(const value_type& x) const { return json::array({base_.to_json(x.a), base_.to_json(x.b)}); }
  value_type from_json(const json& j) const {
    if (j.is_array() && j.size() == 2) return {base_.from_json(j[0]), base_.from_json(j[1])};
    return embed(base_.from_json(j));
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    return {base_.random(rng), base_.random(rng)};
  }

 private:
  Base base_;
  base_type c0_, c1_;
};

using GaussianRationals = QuadraticField<RationalField>;
using AnyField = std::variant<PrimeField, RationalField, QuadraticField<PrimeField>, QuadraticField<RationalField>>;

/// Roots of t^2 + c1 t + c0 in F, smallest under magnitude_less first.
template <class F>
std::vector<typename F::value_type> quadratic_roots(const F& f, const typename F::value_type& c0,
                                                    const typename F::value_type& c1) {
  using V = typename F::value_type;
  V disc = f.sub(f.mul(c1, c1), f.mul(f.from_int(4), c0));
  auto s = f.sqrt(disc);
  if (!s) return {};
  V two_inv = f.inv(f.from_int(2));
  V r1 = f.mul(f.add(f.neg(c1), *s), two_inv);
  V r2 = f.mul(f.sub(f.neg(c1), *s), two_inv);
  if (f.eq(r1, r2)) return {r1};
  if (f.magnitude_less(r2, r1)) std::swap(r1, r2);
  return {r1, r2};
}

template <class F>
std::optional<typename F::value_type> sqrt_minus_one(const F& f) {
  if (f.characteristic() == 2) return f.one();
  auto roots = quadratic_roots(f, f.one(), f.zero());
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

template <class F>
std::optional<typename F::value_type> primitive_cube_root(const F& f) {
  if (f.characteristic() == 3) throw FieldError("no primitive cube root of unity in characteristic 3");
  if (f.characteristic() == 2) {
    return std::nullopt;
  }
  auto roots = quadratic_roots(f, f.one(), f.one());
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

inline AnyField make_field(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldSpec::Kind::rationals: return RationalField{};
    case FieldSpec::Kind::prime: return PrimeField(spec.p);
    case FieldSpec::Kind::quadratic: {
      AnyField base = make_field(*spec.base);
      if (auto* pf = std::get_if<PrimeField>(&base))
        return QuadraticField<PrimeField>(*pf, pf->from_json(spec.c0), pf->from_json(spec.c1));
      if (auto* rf = std::get_if<RationalField>(&base))
        return QuadraticField<RationalField>(*rf, rf->from_json(spec.c0), rf->from_json(spec.c1));
      throw FieldError("towers of quadratic extensions are not supported");
    }
  }
  throw FieldError("unknown field kind");
}

/// Named fields accepted by the command line.
inline FieldSpec named_field(const std::string& name) {
  if (name == "gf13") return FieldSpec::prime(13);
  if (name == "q") return FieldSpec::rationals();
  if (name == "q-i") return FieldSpec::quadratic(FieldSpec::rationals(), "1", "0");
  if (name == "q-omega") return FieldSpec::quadratic(FieldSpec::rationals(), "1", "1");
  if (name.size() > 2 && name.size() < 20 && name.rfind("gf", 0) == 0) {
    std::uint64_t p = 0;
    for (char c : name.substr(2)) {
      if (c < '0' || c > '9') throw FieldError("unknown field name " + name);
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    PrimeField check(p);
    return FieldSpec::prime(p);
  }
  throw FieldError("unknown field name " + name);
}

}  // namespace gradings
