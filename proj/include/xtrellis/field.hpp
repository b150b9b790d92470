#pragma once
// Exact arithmetic in GF(p^e), elements encoded as integers in [0, q) whose
// base-p digits are the coefficients of the polynomial representative.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "xtrellis/error.hpp"

namespace xtrellis {

using Elem = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

// Polynomials over GF(p), ascending coefficients, trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime and small; Fermat.
  std::uint64_t r = 1, b = a % p;
  std::uint32_t ex = p - 2;
  while (ex) {
    if (ex & 1u) r = r * b % p;
    b = b * b % p;
    ex >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

/// Remainder of a modulo b over GF(p); b must be nonzero after trimming.
inline Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline bool is_irreducible(const Poly& modulus, std::uint32_t p) {
  const std::size_t e = modulus.size() - 1;
  if (e <= 1) return e == 1;
  // Any reducible polynomial has a monic factor of degree <= e/2.
  for (std::size_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly f(d + 1, 0);
      std::uint64_t x = v;
      for (std::size_t i = 0; i < d; ++i) {
        f[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      f[d] = 1;
      if (poly_mod(modulus, f, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^e) with log/antilog tables. Immutable once built; share through FieldPtr.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = 1u << 20;

  /// Builds GF(p^e). Without a modulus the smallest irreducible monic
  /// polynomial (by integer encoding, i.e. compared from the top coefficient
  /// down) is chosen, so x^3+x+1 for GF(8) and x^8+x^4+x^3+x+1 for GF(256).
  static FieldPtr make(std::uint32_t p, std::uint32_t e,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    require(detail::is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    require(e >= 1, ErrorKind::DegreeMismatch, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q *= p;
      require(q <= kMaxOrder, ErrorKind::PreconditionViolated, "field order exceeds 2^20");
    }
    detail::Poly mod;
    if (modulus) {
      mod = *modulus;
      require(mod.size() == e + 1, ErrorKind::DegreeMismatch,
              "modulus must have degree " + std::to_string(e));
      require(mod.back() == 1, ErrorKind::DegreeMismatch, "modulus must be monic");
      for (auto c : mod)
        require(c < p, ErrorKind::DegreeMismatch, "modulus coefficient out of range");
      require(detail::is_irreducible(mod, p), ErrorKind::ReducibleModulus,
              "modulus is reducible over GF(" + std::to_string(p) + ")");
    } else {
      std::uint64_t lower = q;  // p^e choices for the lower coefficients
      bool found = false;
      for (std::uint64_t v = 0; v < lower && !found; ++v) {
        detail::Poly cand(e + 1, 0);
        std::uint64_t x = v;
        for (std::uint32_t i = 0; i < e; ++i) {
          cand[i] = static_cast<std::uint32_t>(x % p);
          x /= p;
        }
        cand[e] = 1;
        if (detail::is_irreducible(cand, p)) {
          mod = cand;
          found = true;
        }
      }
      require(found, ErrorKind::ReducibleModulus, "no irreducible polynomial found");
    }
    return std::shared_ptr<const Field>(new Field(p, e, static_cast<std::uint32_t>(q), std::move(mod)));
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t e() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Elem primitive() const noexcept { return primitive_; }

  bool same_as(const Field& o) const noexcept {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (p_ == 2) return a;
    Elem r = 0, scale = 1;
    while (a) {
      const Elem d = a % p_;
      r += ((p_ - d) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    require(a != 0, ErrorKind::DivisionByZero, "inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const noexcept {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1)];
  }

  /// Coefficients of the representative polynomial, ascending, length e.
  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(e_, 0);
    for (std::uint32_t i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  Elem from_digits(std::span<const std::uint32_t> d) const {
    Elem v = 0, scale = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      v += (d[i] % p_) * scale;
      scale *= p_;
    }
    return v;
  }

  std::string name() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    return os.str();
  }

 private:
  Field(std::uint32_t p, std::uint32_t e, std::uint32_t q, std::vector<std::uint32_t> mod)
      : p_(p), e_(e), q_(q), modulus_(std::move(mod)) {
    if (p_ != 2 && q_ <= 256) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
    }
    build_tables();
  }

  Elem add_digits(Elem a, Elem b) const noexcept {
    Elem r = 0, scale = 1;
    while (a || b) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }

  // Schoolbook product reduced by the modulus; only used to seed the tables.
  Elem slow_mul(Elem a, Elem b) const {
    const auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * e_, 0);
    for (std::uint32_t i = 0; i < e_; ++i)
      for (std::uint32_t j = 0; j < e_; ++j) prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
    for (auto& c : prod) c %= p_;
    for (std::size_t deg = prod.size(); deg-- > e_;) {
      const std::uint64_t c = prod[deg];
      if (c == 0) continue;
      prod[deg] = 0;
      for (std::uint32_t i = 0; i < e_; ++i) {
        const std::uint64_t sub = c * modulus_[i] % p_;
        prod[deg - e_ + i] = (prod[deg - e_ + i] + p_ - sub) % p_;
      }
    }
    std::vector<std::uint32_t> d(e_);
    for (std::uint32_t i = 0; i < e_; ++i) d[i] = static_cast<std::uint32_t>(prod[i]);
    return from_digits(d);
  }

  Elem slow_pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k) {
      if (k & 1u) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  }

  void build_tables() {
    const std::uint64_t order = q_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(q_), 0);
    log_.assign(q_, 0);
    if (q_ == 2) {
      primitive_ = 1;
      exp_[0] = exp_[1] = exp_[2] = 1;
      return;
    }
    const auto factors = detail::prime_factors(order);
    primitive_ = 0;
    for (Elem g = 2; g < q_ && primitive_ == 0; ++g) {
      bool ok = true;
      for (auto r : factors)
        if (slow_pow(g, order / r) == 1) {
          ok = false;
          break;
        }
      if (ok) primitive_ = g;
    }
    Elem x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      exp_[i] = x;
      log_[x] = static_cast<std::uint32_t>(i);
      x = slow_mul(x, primitive_);
    }
    for (std::uint64_t i = order; i < exp_.size(); ++i) exp_[i] = exp_[i - order];
  }

  std::uint32_t p_, e_, q_;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_ = 1;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
};

inline void require_same_field(const Field& a, const Field& b) {
  require(&a == &b || a.same_as(b), ErrorKind::FieldMismatch, a.name() + " vs " + b.name());
}

/// Element bound to its field, for API-level arithmetic with mismatch checks.
class FieldElement {
 public:
  FieldElement(FieldPtr f, Elem v) : field_(std::move(f)), value_(v) {
    require(value_ < field_->q(), ErrorKind::PreconditionViolated, "element index out of range");
  }

  const FieldPtr& field() const noexcept { return field_; }
  Elem value() const noexcept { return value_; }
  std::vector<std::uint32_t> repr() const { return field_->digits(value_); }

  FieldElement operator+(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->add(value_, o.value_)};
  }
  FieldElement operator-(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->sub(value_, o.value_)};
  }
  FieldElement operator*(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->mul(value_, o.value_)};
  }
  FieldElement operator/(const FieldElement& o) const {
    require_same_field(*field_, *o.field_);
    return {field_, field_->div(value_, o.value_)};
  }
  FieldElement operator-() const { return {field_, field_->neg(value_)}; }
  FieldElement inverse() const { return {field_, field_->inv(value_)}; }

  bool operator==(const FieldElement& o) const {
    return value_ == o.value_ && (field_ == o.field_ || field_->same_as(*o.field_));
  }

 private:
  FieldPtr field_;
  Elem value_;
};

struct AxiomCheck {
  std::uint64_t triples = 0;  // (a, b, c) combinations examined
  bool exhaustive = false;
  bool ok = true;
  std::string failure;
};

/// Field axioms on the lookup tables: every pair for identities, inverses and
/// commutativity; every triple for associativity and distributivity when
/// q <= max_exhaustive, otherwise a fixed stride through the triples.
inline AxiomCheck ff_check_axioms(const Field& f, std::uint32_t max_exhaustive = 64) {
  AxiomCheck r;
  const Elem q = f.q();
  auto bad = [&](const std::string& what, Elem a, Elem b, Elem c) {
    if (!r.ok) return;
    r.ok = false;
    r.failure = what + " fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
  };
  for (Elem a = 0; a < q; ++a) {
    if (f.add(a, 0) != a || f.mul(a, 1) != a || f.mul(a, 0) != 0) bad("identity", a, 0, 0);
    if (f.add(a, f.neg(a)) != 0) bad("additive inverse", a, 0, 0);
    if (a != 0 && f.mul(a, f.inv(a)) != 1) bad("multiplicative inverse", a, 0, 0);
    for (Elem b = 0; b < q; ++b) {
      if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) bad("commutativity", a, b, 0);
      if (a != 0 && b != 0 && f.mul(a, b) == 0) bad("no zero divisors", a, b, 0);
    }
  }
  r.exhaustive = q <= max_exhaustive;
  const Elem step = r.exhaustive ? 1 : std::max<Elem>(1, q / max_exhaustive);
  for (Elem a = 0; a < q; a += step)
    for (Elem b = 0; b < q; b += step)
      for (Elem c = 0; c < q; c += step) {
        ++r.triples;
        if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) bad("additive associativity", a, b, c);
        if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) bad("multiplicative associativity", a, b, c);
        if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) bad("distributivity", a, b, c);
      }
  return r;
}

}  // namespace xtrellis
