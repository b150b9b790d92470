#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace xtrellis {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(BigInt(num), BigInt(den)); }

inline BigInt floor_of(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);  // always positive
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

inline BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

/// A real quantity that is exact when it can be: log_q M is rational exactly
/// when q and M are powers of a common integer, and everything derived from
/// it stays rational. Otherwise falls back to a double compared with kTol.
struct Real {
  static constexpr double kTol = 1e-9;

  std::optional<Rational> exact;
  double approx = 0.0;

  static Real of(const Rational& r) { return {r, to_double(r)}; }
  static Real of(double d) { return {std::nullopt, d}; }
  static Real integer(std::int64_t v) { return of(rat(v)); }

  bool is_exact() const { return exact.has_value(); }

  friend Real operator+(const Real& a, const Real& b) {
    if (a.exact && b.exact) return of(*a.exact + *b.exact);
    return of(a.approx + b.approx);
  }
  friend Real operator-(const Real& a, const Real& b) {
    if (a.exact && b.exact) return of(*a.exact - *b.exact);
    return of(a.approx - b.approx);
  }
  friend Real operator*(const Real& a, const Real& b) {
    if (a.exact && b.exact) return of(*a.exact * *b.exact);
    return of(a.approx * b.approx);
  }
  friend Real operator/(const Real& a, const Real& b) {
    if (a.exact && b.exact) return of(*a.exact / *b.exact);
    return of(a.approx / b.approx);
  }

  /// Floor, with values within kTol below an integer snapped up to it.
  std::int64_t floor() const {
    if (exact) return floor_of(*exact).convert_to<std::int64_t>();
    return static_cast<std::int64_t>(std::floor(approx + kTol));
  }

  /// a <= b, exact when both are.
  friend bool leq(const Real& a, const Real& b) {
    if (a.exact && b.exact) return *a.exact <= *b.exact;
    return a.approx <= b.approx + kTol;
  }
  friend bool equal(const Real& a, const Real& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return std::fabs(a.approx - b.approx) <= kTol;
  }

  std::string str() const {
    if (exact) return to_string(*exact);
    return std::to_string(approx);
  }
};

/// log_base(value) for positive integers; exact when both are powers of a
/// common integer.
inline Real log_ratio(std::uint64_t value, std::uint64_t base) {
  if (value == 1) return Real::integer(0);
  // Smallest integer root of `base`: base = root^bexp.
  auto perfect_root = [](std::uint64_t x) {
    for (std::uint64_t r = 2; r * r <= x; ++r) {
      std::uint64_t y = x;
      std::uint64_t e = 0;
      while (y % r == 0) {
        y /= r;
        ++e;
      }
      if (y == 1) return std::pair<std::uint64_t, std::uint64_t>{r, e};
    }
    return std::pair<std::uint64_t, std::uint64_t>{x, 1};
  };
  const auto [root, bexp] = perfect_root(base);
  std::uint64_t y = value, vexp = 0;
  while (y % root == 0) {
    y /= root;
    ++vexp;
  }
  if (y == 1)
    return Real::of(rat(static_cast<std::int64_t>(vexp), static_cast<std::int64_t>(bexp)));
  return Real::of(std::log(static_cast<double>(value)) / std::log(static_cast<double>(base)));
}

}  // namespace xtrellis
