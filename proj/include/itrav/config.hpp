#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "itrav/graph.hpp"

namespace itrav {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A floating-point state entry became infinite or NaN.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A signed run disagreed with the combinatorial reference (a state entry
/// cancelled to zero for the chosen d).
class CancellationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Variant { jacobi, gauss_seidel, unsigned_ccs };
enum class ArithmeticMode { exact, saturate, floating };

#ifdef NDEBUG
inline constexpr bool kCrossCheckByDefault = false;
#else
inline constexpr bool kCrossCheckByDefault = true;
#endif

inline constexpr std::uint64_t kDefaultSaturationCap = std::uint64_t{1} << 62;

struct TraversalConfig {
  Variant variant = Variant::unsigned_ccs;
  ArithmeticMode mode = ArithmeticMode::exact;
  bool masking = false;
  std::optional<std::uint32_t> regularization_period;  // M, FLOAT only
  std::optional<std::uint64_t> d;                      // falls back to Graph::d()
  // EXACT only: replaces d and may exceed 64 bits.
  std::optional<mpz_class> exact_diagonal;
  std::uint64_t saturation_cap = kDefaultSaturationCap;
  bool snapshots = false;
  // Signed variants only: compare the frontiers with the combinatorial
  // traversal and throw CancellationError on disagreement.
  bool cross_check = kCrossCheckByDefault;

  std::uint64_t diagonal(const Graph& g) const { return d.value_or(g.d()); }

  std::string diagonal_string(const Graph& g) const {
    return exact_diagonal ? exact_diagonal->get_str() : std::to_string(diagonal(g));
  }

  bool is_signed() const { return variant != Variant::unsigned_ccs; }

  void validate() const {
    if (d && *d < 1) throw ConfigError("d must be >= 1");
    if (exact_diagonal) {
      if (mode != ArithmeticMode::exact)
        throw ConfigError("a wide diagonal needs exact arithmetic");
      if (*exact_diagonal < 1) throw ConfigError("d must be >= 1");
    }
    if (mode == ArithmeticMode::saturate && variant != Variant::unsigned_ccs)
      throw ConfigError("saturating arithmetic requires the unsigned variant");
    if (mode == ArithmeticMode::saturate &&
        (saturation_cap < 1 || saturation_cap > (std::uint64_t{1} << 63)))
      throw ConfigError("saturation cap must lie in [1, 2^63]");
    if (regularization_period) {
      if (mode != ArithmeticMode::floating)
        throw ConfigError("regularization applies to floating-point arithmetic only");
      if (*regularization_period < 1) throw ConfigError("regularization period must be >= 1");
    }
  }
};

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::jacobi: return "jacobi";
    case Variant::gauss_seidel: return "gauss-seidel";
    case Variant::unsigned_ccs: return "unsigned-ccs";
  }
  return "?";
}

inline std::string_view to_string(ArithmeticMode m) {
  switch (m) {
    case ArithmeticMode::exact: return "exact";
    case ArithmeticMode::saturate: return "saturate";
    case ArithmeticMode::floating: return "float";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "jacobi") return Variant::jacobi;
  if (s == "gauss-seidel") return Variant::gauss_seidel;
  if (s == "unsigned-ccs") return Variant::unsigned_ccs;
  throw ConfigError("unknown variant '" + std::string(s) + "'");
}

inline ArithmeticMode parse_arithmetic(std::string_view s) {
  if (s == "exact") return ArithmeticMode::exact;
  if (s == "saturate") return ArithmeticMode::saturate;
  if (s == "float") return ArithmeticMode::floating;
  throw ConfigError("unknown arithmetic mode '" + std::string(s) + "'");
}

}  // namespace itrav
