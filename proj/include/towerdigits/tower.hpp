#pragma once

// Power towers ^h(q^E) reduced mod 10^n, with E = 2^x * 5^y * a.
//
// Exponents are reduced down the Carmichael chain of the modulus. Because
// the base may share factors with the modulus, plain Euler reduction is not
// enough: once the true exponent e is known to be at least a threshold T
// (which dominates every prime exponent in the chain), b^e is evaluated as
// b^(T + ((e - T) mod lambda(m))). Each level therefore tracks a
// CappedExponent: the true value while it stays below T, else its residue.

#include "towerdigits/modmath.hpp"

#include <atomic>
#include <cstdlib>
#include <numeric>
#include <optional>

namespace towerdigits {

inline constexpr unsigned kDefaultDigitCap = 200;
inline constexpr const char* kDigitCapEnv = "TOWERDIGITS_MAX_DIGITS";

namespace detail {

inline std::atomic<unsigned>& digit_cap_slot() {
  static std::atomic<unsigned> cap = [] {
    unsigned value = kDefaultDigitCap;
    if (const char* env = std::getenv(kDigitCapEnv)) {
      char* end = nullptr;
      unsigned long parsed = std::strtoul(env, &end, 10);
      if (end != env && *end == '\0' && parsed > 0 && parsed <= 100000) value = static_cast<unsigned>(parsed);
    }
    return value;
  }();
  return cap;
}

}  // namespace detail

/// Largest digit count accepted by the tower operations. Defaults to 200,
/// overridable through TOWERDIGITS_MAX_DIGITS or set_digit_cap().
inline unsigned digit_cap() { return detail::digit_cap_slot().load(); }
inline void set_digit_cap(unsigned cap) {
  if (cap == 0) throw std::invalid_argument("digit cap must be positive");
  detail::digit_cap_slot().store(cap);
}

/// Tower of height h over the base q^(2^x * 5^y * a).
struct TowerSpec {
  std::uint64_t q = 2;
  unsigned x = 0;
  unsigned y = 0;
  std::uint64_t a = 1;
  std::uint64_t h = 1;
};

inline void validate_base(std::uint64_t q, std::uint64_t a) {
  if (q < 2) throw std::invalid_argument("base must be at least 2");
  if (q % 10 == 0) throw std::invalid_argument("base excluded by conjecture: q must not be a multiple of 10");
  if (a == 0 || std::gcd(a, std::uint64_t{10}) != 1) throw std::invalid_argument("cofactor not coprime to 10");
}

inline void validate_digits(unsigned n) {
  if (n == 0) throw std::invalid_argument("digit count must be positive");
  if (n > digit_cap())
    throw std::invalid_argument("digit count " + std::to_string(n) + " exceeds cap " + std::to_string(digit_cap()));
}

/// E = 2^x * 5^y * a.
inline BigInt tower_exponent(unsigned x, unsigned y, std::uint64_t a) {
  return detail::power_of<BigInt>(2, x) * detail::power_of<BigInt>(5, y) * a;
}

/// Exponent carried between chain levels. While `at_least_threshold` is
/// false, `reduced` is the exact value of the sub-tower.
template <ResidueInt Int>
struct CappedExponent {
  Int reduced = 0;
  bool at_least_threshold = false;
};

namespace detail {

// min(b^e, cap) for b, e >= 0 without overflow.
inline std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > cap / b) return cap;
    r *= b;
    if (r >= cap) return cap;
  }
  return r;
}

template <ResidueInt Int>
Int narrow(const BigInt& v) {
  if constexpr (std::same_as<Int, BigInt>)
    return v;
  else
    return static_cast<std::uint64_t>(v);
}

/// Evaluates towers over one base against one modulus chain.
template <ResidueInt Int>
class TowerEngine {
 public:
  TowerEngine(const ModulusChain& chain, std::uint64_t q, const BigInt& exponent)
      : threshold_(std::max<std::uint64_t>(4ull * chain.digits(), 4)) {
    for (const auto& m : chain.moduli()) {
      moduli_.push_back(narrow<Int>(m));
      bases_.push_back(narrow<Int>(pow_mod(BigInt(q) % m, exponent, m)));
    }
    // caps_[h] = min(true height-h tower, threshold); saturates within a few heights.
    std::uint64_t base_cap = exponent >= 64 ? threshold_
                                            : saturating_pow(q, exponent.convert_to<std::uint64_t>(), threshold_);
    caps_.push_back(1);
    while (caps_.back() < threshold_) caps_.push_back(saturating_pow(base_cap, caps_.back(), threshold_));
  }

  std::uint64_t threshold() const { return threshold_; }
  std::size_t levels() const { return moduli_.size(); }

  /// The tower of height h, as a CappedExponent relative to chain level `level`.
  CappedExponent<Int> capped(std::uint64_t h, std::size_t level) const {
    if (!saturated(h)) return {Int(caps_[h]), false};
    return {residue(h, level), true};
  }

  /// Height-h tower mod m_level. Recursion depth is min(h, chain length).
  Int residue(std::uint64_t h, std::size_t level = 0) const {
    const Int& m = moduli_[level];
    if (m == 1) return 0;
    if (h == 0) return 1;
    CappedExponent<Int> e = saturated(h - 1) ? CappedExponent<Int>{residue(h - 1, level + 1), true}
                                             : capped(h - 1, level + 1);
    return raise(level, e);
  }

  /// Height-h residues mod m_0 for h = 0..max_height, sharing the
  /// intermediate levels: row h holds levels 0..max_height-h.
  std::vector<Int> residues_up_to(std::uint64_t max_height) const {
    std::vector<Int> out;
    out.reserve(max_height + 1);
    std::vector<Int> prev;
    for (std::uint64_t h = 0; h <= max_height; ++h) {
      std::size_t width = std::min<std::uint64_t>(moduli_.size(), max_height - h + 1);
      std::vector<Int> row(width);
      for (std::size_t i = 0; i < width; ++i) {
        if (moduli_[i] == 1) {
          row[i] = 0;
        } else if (h == 0) {
          row[i] = 1;
        } else {
          CappedExponent<Int> e = saturated(h - 1) ? CappedExponent<Int>{prev[i + 1], true}
                                                   : CappedExponent<Int>{Int(caps_[h - 1]), false};
          row[i] = raise(i, e);
        }
      }
      out.push_back(row[0]);
      prev = std::move(row);
    }
    return out;
  }

 private:
  bool saturated(std::uint64_t h) const { return h >= caps_.size() || caps_[h] >= threshold_; }

  Int raise(std::size_t level, const CappedExponent<Int>& e) const {
    const Int& m = moduli_[level];
    if (!e.at_least_threshold) return pow_mod(bases_[level], e.reduced, m);
    // `reduced` is mod lambda(m) = m_{level+1}; lift it back above the threshold.
    const Int& lambda = moduli_[level + 1];
    Int t = Int(threshold_);
    Int shifted = (e.reduced + lambda - t % lambda) % lambda;
    return pow_mod(bases_[level], Int(t + shifted), m);
  }

  std::uint64_t threshold_;
  std::vector<Int> moduli_;
  std::vector<Int> bases_;
  std::vector<std::uint64_t> caps_;
};

// 10^18 < 2^63, so every product of two residues fits in 128 bits.
inline bool fits_fast_path(const ModulusChain& chain) { return chain.modulus() < (BigInt(1) << 63); }

template <class Fn>
decltype(auto) with_engine(const ModulusChain& chain, std::uint64_t q, const BigInt& exponent, Fn&& fn) {
  if (fits_fast_path(chain)) return fn(TowerEngine<std::uint64_t>(chain, q, exponent));
  return fn(TowerEngine<BigInt>(chain, q, exponent));
}

}  // namespace detail

/// ^h(q^E) mod chain.modulus() for an arbitrary 2^a*5^b chain root.
inline BigInt tower_residue(const ModulusChain& chain, std::uint64_t q, const BigInt& exponent, std::uint64_t h) {
  return detail::with_engine(chain, q, exponent, [&](const auto& engine) { return BigInt(engine.residue(h)); });
}

/// ^h(q^(2^x*5^y*a)) mod 10^n. Height 0 is 1 by convention.
inline BigInt tet_mod(const TowerSpec& spec, unsigned n) {
  validate_base(spec.q, spec.a);
  validate_digits(n);
  auto chain = ModulusChain::decimal(n);
  return tower_residue(*chain, spec.q, tower_exponent(spec.x, spec.y, spec.a), spec.h);
}

/// Height at which every tower over this base is known to have stabilized mod 10^n.
inline std::uint64_t stable_height(unsigned n) { return ModulusChain::decimal(n)->length() + 1; }

/// The common residue of all sufficiently tall towers mod 10^n.
inline BigInt stable_residue(std::uint64_t q, unsigned x, unsigned y, std::uint64_t a, unsigned n) {
  return tet_mod({q, x, y, a, stable_height(n)}, n);
}

struct StabilizationRecord {
  std::uint64_t q = 0;
  unsigned x = 0;
  unsigned y = 0;
  std::uint64_t a = 1;
  unsigned n = 1;
  std::uint64_t u_min = 0;
  BigInt stable_digits;

  friend bool operator==(const StabilizationRecord&, const StabilizationRecord&) = default;
};

/// Minimum stabilization heights for every n in 1..n_max from one pass of
/// towers computed mod 10^n_max. Entry k describes n = k + 1.
inline std::vector<StabilizationRecord> min_stable_heights(std::uint64_t q, unsigned x, unsigned y, std::uint64_t a,
                                                           unsigned n_max) {
  validate_base(q, a);
  validate_digits(n_max);
  auto chain = ModulusChain::decimal(n_max);
  const std::uint64_t top = stable_height(n_max);
  std::vector<BigInt> values = detail::with_engine(*chain, q, tower_exponent(x, y, a), [&](const auto& engine) {
    auto raw = engine.residues_up_to(top);
    return std::vector<BigInt>(raw.begin(), raw.end());
  });

  std::vector<StabilizationRecord> out;
  out.reserve(n_max);
  for (unsigned n = 1; n <= n_max; ++n) {
    const BigInt modulus = pow10(n);
    const std::uint64_t bound = stable_height(n);
    const BigInt stable = values[bound] % modulus;
    // Every height in [u, bound] must agree, not just a consecutive pair.
    std::uint64_t u = bound;
    while (u > 0 && values[u - 1] % modulus == stable) --u;
    out.push_back({q, x, y, a, n, u, stable});
  }
  return out;
}

/// Smallest u such that towers of every height >= u agree mod 10^n.
inline StabilizationRecord min_stable_height(std::uint64_t q, unsigned x, unsigned y, std::uint64_t a, unsigned n) {
  validate_base(q, a);
  validate_digits(n);
  auto chain = ModulusChain::decimal(n);
  const std::uint64_t bound = stable_height(n);
  return detail::with_engine(*chain, q, tower_exponent(x, y, a), [&](const auto& engine) {
    auto values = engine.residues_up_to(bound);
    const auto& stable = values[bound];
    std::uint64_t u = 0;
    for (;; ++u) {
      bool holds = true;
      for (std::uint64_t h = u; h <= bound && holds; ++h) holds = values[h] == stable;
      if (holds) break;
    }
    return StabilizationRecord{q, x, y, a, n, u, BigInt(stable)};
  });
}

}  // namespace towerdigits
