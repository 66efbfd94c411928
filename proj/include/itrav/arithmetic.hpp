#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

#include "itrav/config.hpp"

// Value policies for the three arithmetic modes. A policy turns the
// neighbour sum `acc` of one equation into the new state entry:
//   signed   (b_i - acc) * d      i.e. (-b_i + acc) * (-d)
//   unsigned (b_i + acc) * d

namespace itrav {

template <class V>
struct Arithmetic;

/// Arbitrary-precision signed integers.
template <>
struct Arithmetic<mpz_class> {
  static constexpr ArithmeticMode mode = ArithmeticMode::exact;

  explicit Arithmetic(std::uint64_t d, const TraversalConfig& cfg = {})
      : d_(cfg.exact_diagonal ? *cfg.exact_diagonal : mpz_from(d)) {}

  mpz_class zero() const { return 0; }
  mpz_class initial() const { return d_; }
  bool is_zero(const mpz_class& v) const { return sgn(v) == 0; }
  void accumulate(mpz_class& acc, const mpz_class& v) const { acc += v; }

  void finish_signed(mpz_class& acc, bool rhs) const {
    if (rhs)
      acc = 1 - acc;
    else
      acc = -acc;
    acc *= d_;
  }
  void finish_unsigned(mpz_class& acc, bool rhs) const {
    if (rhs) acc += 1;
    acc *= d_;
  }

  std::string to_string(const mpz_class& v) const { return v.get_str(); }

  static mpz_class mpz_from(std::uint64_t v) {
    mpz_class out = static_cast<unsigned long>(v >> 32);
    out <<= 32;
    out += static_cast<unsigned long>(v & 0xffffffffu);
    return out;
  }

 private:
  mpz_class d_;
};

/// Fixed-width nonnegative integers clamped at a cap. Clamping never maps a
/// nonzero value to zero, so supports are preserved.
template <>
struct Arithmetic<std::uint64_t> {
  static constexpr ArithmeticMode mode = ArithmeticMode::saturate;

  explicit Arithmetic(std::uint64_t d, const TraversalConfig& cfg = {})
      : d_(d), cap_(cfg.saturation_cap) {}

  std::uint64_t zero() const { return 0; }
  std::uint64_t initial() const { return clamp_mul(1); }
  bool is_zero(std::uint64_t v) const { return v == 0; }

  // Operands never exceed the cap (<= 2^63), so the sum cannot wrap.
  void accumulate(std::uint64_t& acc, std::uint64_t v) const {
    acc += v;
    if (acc > cap_) acc = cap_;
  }

  void finish_signed(std::uint64_t&, bool) const {
    throw ConfigError("saturating arithmetic cannot represent signed iterations");
  }
  void finish_unsigned(std::uint64_t& acc, bool rhs) const {
    if (rhs) accumulate(acc, 1);
    acc = clamp_mul(acc);
  }

  std::string to_string(std::uint64_t v) const { return std::to_string(v); }

  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t clamp_mul(std::uint64_t v) const {
    if (v != 0 && d_ > cap_ / v) return cap_;
    return std::min(v * d_, cap_);
  }

  std::uint64_t d_;
  std::uint64_t cap_;
};

/// Doubles; non-finite results raise NumericError.
template <>
struct Arithmetic<double> {
  static constexpr ArithmeticMode mode = ArithmeticMode::floating;

  explicit Arithmetic(std::uint64_t d, const TraversalConfig& = {})
      : d_(static_cast<double>(d)) {}

  double zero() const { return 0.0; }
  double initial() const { return d_; }
  bool is_zero(double v) const { return v == 0.0; }
  void accumulate(double& acc, double v) const { acc += v; }

  void finish_signed(double& acc, bool rhs) const {
    acc = ((rhs ? 1.0 : 0.0) - acc) * d_;
    check(acc);
  }
  void finish_unsigned(double& acc, bool rhs) const {
    acc = ((rhs ? 1.0 : 0.0) + acc) * d_;
    check(acc);
  }

  std::string to_string(double v) const {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

 private:
  static void check(double v) {
    if (!std::isfinite(v))
      throw NumericError("state entry overflowed floating-point range; regularize more often");
  }

  double d_;
};

}  // namespace itrav
