#pragma once

// Exact integer primitives for towers modulo 10^n: p-adic valuations,
// modular powers, the Carmichael function on moduli 2^a * 5^b, CRT
// recombination of the 2-part and 5-part, and the iterated-Carmichael
// modulus chain used to reduce tower exponents.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace towerdigits {

using BigInt = boost::multiprecision::cpp_int;

/// Integer types the tower engine can run on. `std::uint64_t` is the fast
/// path for moduli below 2^63; `BigInt` covers everything else.
template <class Int>
concept ResidueInt = std::same_as<Int, std::uint64_t> || std::same_as<Int, BigInt>;

/// Exponent of a prime in the factorization of some positive integer.
struct Valuation {
  unsigned value = 0;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend auto operator<=>(const Valuation&, const Valuation&) = default;
};

namespace detail {

inline bool is_small_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

template <class Int>
Int power_of(unsigned base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace detail

/// Largest k with p^k | m.
template <ResidueInt Int>
Valuation vp(Int m, unsigned p) {
  if (m == 0) throw std::invalid_argument("valuation of zero undefined");
  if (!detail::is_small_prime(p)) throw std::invalid_argument("valuation base must be prime");
  Valuation v;
  while (m % p == 0) {
    m /= p;
    ++v.value;
  }
  return v;
}

inline Valuation vp(std::uint64_t m, unsigned p) { return vp<std::uint64_t>(m, p); }
inline Valuation vp(const BigInt& m, unsigned p) { return vp<BigInt>(m, p); }

/// b^e mod m, with pow_mod(b, 0, m) == 1 mod m.
inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  if (m == 1) return 0;
  std::uint64_t result = 1;
  b %= m;
  while (e != 0) {
    if (e & 1) result = detail::mul_mod(result, b, m);
    e >>= 1;
    if (e != 0) b = detail::mul_mod(b, b, m);
  }
  return result;
}

inline BigInt pow_mod(const BigInt& b, const BigInt& e, const BigInt& m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  if (b < 0 || e < 0) throw std::invalid_argument("pow_mod takes non-negative operands");
  if (m == 1) return 0;
  return boost::multiprecision::powm(b, e, m);
}

/// A modulus of the form 2^twos * 5^fives. Every entry of a decimal
/// modulus chain has this shape.
struct SmoothModulus {
  unsigned twos = 0;
  unsigned fives = 0;

  template <ResidueInt Int = BigInt>
  Int value() const {
    return detail::power_of<Int>(2, twos) * detail::power_of<Int>(5, fives);
  }

  unsigned max_exponent() const { return std::max(twos, fives); }

  friend bool operator==(const SmoothModulus&, const SmoothModulus&) = default;
};

/// Carmichael's lambda of 2^a * 5^b, as another 2^c * 5^d.
inline SmoothModulus carmichael(SmoothModulus m) {
  // lambda(2^a) = 1, 2, 2^(a-2) for a <= 1, a == 2, a >= 3.
  unsigned two_from_two = m.twos <= 1 ? 0u : (m.twos == 2 ? 1u : m.twos - 2);
  // lambda(5^b) = 4 * 5^(b-1) for b >= 1.
  unsigned two_from_five = m.fives == 0 ? 0u : 2u;
  unsigned five_from_five = m.fives == 0 ? 0u : m.fives - 1;
  return {std::max(two_from_two, two_from_five), five_from_five};
}

/// Splits m into 2^a * 5^b; throws if any other prime divides m.
inline SmoothModulus smooth_shape(BigInt m) {
  if (m < 1) throw std::invalid_argument("modulus must be positive");
  SmoothModulus s;
  while (m % 2 == 0) {
    m /= 2;
    ++s.twos;
  }
  while (m % 5 == 0) {
    m /= 5;
    ++s.fives;
  }
  if (m != 1) throw std::invalid_argument("unsupported modulus shape: only 2^a*5^b is handled");
  return s;
}

inline BigInt carmichael(const BigInt& m) { return carmichael(smooth_shape(m)).value(); }
inline std::uint64_t carmichael(std::uint64_t m) {
  return carmichael(smooth_shape(BigInt(m))).value<std::uint64_t>();
}

/// The unique r in [0, 10^n) with r = r2 mod 2^n and r = r5 mod 5^n.
inline BigInt crt_combine(const BigInt& r2, const BigInt& r5, unsigned n) {
  if (n == 0) throw std::invalid_argument("digit count must be positive");
  const BigInt two_n = detail::power_of<BigInt>(2, n);
  const BigInt five_n = detail::power_of<BigInt>(5, n);
  if (r2 < 0 || r2 >= two_n) throw std::invalid_argument("residue mod 2^n out of range");
  if (r5 < 0 || r5 >= five_n) throw std::invalid_argument("residue mod 5^n out of range");
  // (5^n + 1) / 2 inverts 2 modulo 5^n, so its n-th power inverts 2^n.
  const BigInt inv_two_n = pow_mod(BigInt((five_n + 1) / 2), BigInt(n), five_n);
  BigInt diff = (r5 - r2 % five_n) % five_n;
  if (diff < 0) diff += five_n;
  return r2 + two_n * (diff * inv_two_n % five_n);
}

/// m_0 = root, m_{i+1} = lambda(m_i), ending at the first entry equal to 1.
class ModulusChain {
 public:
  explicit ModulusChain(SmoothModulus root)
      : root_(root),
        two_part_(detail::power_of<BigInt>(2, root.twos)),
        five_part_(detail::power_of<BigInt>(5, root.fives)) {
    SmoothModulus m = root;
    levels_.push_back(m);
    while (!(m.twos == 0 && m.fives == 0)) {
      m = carmichael(m);
      levels_.push_back(m);
    }
    moduli_.reserve(levels_.size());
    for (const auto& l : levels_) moduli_.push_back(l.value());
  }

  /// Shared chain for 10^n; built once per n.
  static std::shared_ptr<const ModulusChain> decimal(unsigned n) {
    if (n == 0) throw std::invalid_argument("digit count must be positive");
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const ModulusChain>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const ModulusChain>(SmoothModulus{n, n});
    return slot;
  }

  SmoothModulus root() const { return root_; }
  /// Largest prime exponent of the root; n for 10^n.
  unsigned digits() const { return root_.max_exponent(); }
  const BigInt& two_part() const { return two_part_; }
  const BigInt& five_part() const { return five_part_; }
  const BigInt& modulus() const { return moduli_.front(); }
  std::span<const SmoothModulus> levels() const { return levels_; }
  std::span<const BigInt> moduli() const { return moduli_; }
  std::size_t length() const { return moduli_.size(); }

 private:
  SmoothModulus root_;
  BigInt two_part_;
  BigInt five_part_;
  std::vector<SmoothModulus> levels_;
  std::vector<BigInt> moduli_;
};

inline BigInt pow10(unsigned n) { return detail::power_of<BigInt>(10, n); }

/// Renders r as exactly n decimal digits, left-padded with zeros.
inline std::string to_digits(const BigInt& r, unsigned n) {
  std::string s = r.str();
  if (s.size() < n) s.insert(0, n - s.size(), '0');
  return s;
}

}  // namespace towerdigits
