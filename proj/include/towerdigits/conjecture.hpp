#pragma once

// Conjectured minimum stabilization heights f_q(x, y, n), dispatched on the
// residue class of q, plus the small-x (x in {0, 1}) lookups.

#include "towerdigits/modmath.hpp"
#include "towerdigits/tables.hpp"

#include <optional>
#include <string_view>

namespace towerdigits {

/// Valuations of q +- 1 and q^2 +- 1 that drive the height formulas.
struct Discriminants {
  Valuation delta2;  // max[v2(q+1), v2(q-1)]
  Valuation delta5;  // max[v5(q+1), v5(q-1)]
  Valuation gamma2;  // same expression as delta2
  Valuation gamma5;  // max[v5(q^2+1), v5(q^2-1)]

  friend bool operator==(const Discriminants&, const Discriminants&) = default;
};

enum class CaseTag { Mod10_19, Mod10_37, Mod10_5, Even };

/// Two readings of the q = 5 mod 10 formula: the denominator uses x as
/// printed, or y as in the worked example for q = 255.
enum class Variant { AsWritten, ExampleConsistent };

inline constexpr Variant kDefaultVariant = Variant::AsWritten;

inline std::string_view to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Mod10_19: return "MOD10_19";
    case CaseTag::Mod10_37: return "MOD10_37";
    case CaseTag::Mod10_5: return "MOD10_5";
    case CaseTag::Even: return "EVEN";
  }
  return "?";
}

inline std::string_view to_string(Variant v) {
  return v == Variant::AsWritten ? "AS_WRITTEN" : "EXAMPLE_CONSISTENT";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "as-written" || s == "AS_WRITTEN") return Variant::AsWritten;
  if (s == "example" || s == "EXAMPLE_CONSISTENT") return Variant::ExampleConsistent;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected as-written|example)");
}

struct Prediction {
  long u = 0;        // clamped to >= 0
  long raw_u = 0;    // formula value before clamping
  CaseTag case_tag = CaseTag::Mod10_19;
  Variant variant = kDefaultVariant;
  bool applicable = true;
  bool clamped = false;
  bool convention = false;  // q = 1: reported by convention, not by formula
  std::string formula;      // closed form that produced u
};

inline CaseTag classify(std::uint64_t q) {
  if (q % 2 == 0) return CaseTag::Even;
  switch (q % 10) {
    case 5: return CaseTag::Mod10_5;
    case 1:
    case 9: return CaseTag::Mod10_19;
    default: return CaseTag::Mod10_37;
  }
}

inline Discriminants discriminants(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("base must be at least 2");
  if (q % 10 == 0) throw std::invalid_argument("base excluded by conjecture: q must not be a multiple of 10");
  const BigInt big = q;
  const BigInt square = big * big;
  auto larger = [](Valuation a, Valuation b) { return std::max(a, b); };
  Discriminants d;
  d.delta2 = larger(vp(BigInt(big + 1), 2), vp(BigInt(big - 1), 2));
  d.delta5 = larger(vp(BigInt(big + 1), 5), vp(BigInt(big - 1), 5));
  d.gamma2 = d.delta2;
  d.gamma5 = larger(vp(BigInt(square + 1), 5), vp(BigInt(square - 1), 5));
  return d;
}

namespace detail {

inline long ceil_div(long n, long d) { return (n + d - 1) / d; }

inline void finish(Prediction& p, long raw) {
  p.raw_u = raw;
  p.clamped = raw < 0;
  p.u = p.clamped ? 0 : raw;
}

inline std::string denom(std::string_view var, unsigned v, std::string_view disc, unsigned d) {
  return "ceil(n/(" + std::string(var) + "+" + std::string(disc) + "))=ceil(n/" + std::to_string(v + d) + ")";
}

}  // namespace detail

/// f_q(x, y, n) for x >= 2.
inline Prediction predict(std::uint64_t q, unsigned x, unsigned y, unsigned n, Variant variant = kDefaultVariant) {
  if (x < 2) throw std::invalid_argument("formulas hold for x >= 2; use predict_small_x for x in {0,1}");
  if (n == 0) throw std::invalid_argument("digit count must be positive");
  const Discriminants d = discriminants(q);
  const long nn = n;

  Prediction p;
  p.case_tag = classify(q);
  p.variant = variant;
  switch (p.case_tag) {
    case CaseTag::Even:
      detail::finish(p, detail::ceil_div(nn, y + d.gamma5.value) - 1);
      p.formula = detail::denom("y", y, "G5", d.gamma5.value) + "-1";
      break;
    case CaseTag::Mod10_5: {
      const unsigned s = variant == Variant::AsWritten ? x : y;
      detail::finish(p, detail::ceil_div(nn, s + d.delta2.value) - 1);
      p.formula = detail::denom(variant == Variant::AsWritten ? "x" : "y", s, "D2", d.delta2.value) + "-1";
      break;
    }
    case CaseTag::Mod10_19:
      detail::finish(p, std::max(detail::ceil_div(nn, x + d.delta2.value), detail::ceil_div(nn, y + d.delta5.value)) - 1);
      p.formula = "max[" + detail::denom("x", x, "D2", d.delta2.value) + ", " +
                  detail::denom("y", y, "D5", d.delta5.value) + "]-1";
      break;
    case CaseTag::Mod10_37:
      detail::finish(p, std::max(detail::ceil_div(nn, x + d.gamma2.value), detail::ceil_div(nn, y + d.gamma5.value)) - 1);
      p.formula = "max[" + detail::denom("x", x, "G2", d.gamma2.value) + ", " +
                  detail::denom("y", y, "G5", d.gamma5.value) + "]-1";
      break;
  }
  return p;
}

/// f_q(x, 0, n) for x in {0, 1}. Tabulated bases use their table entry;
/// q = 1, 9 mod 10 otherwise use the x = 0 piecewise rule or, at x = 1,
/// the general formula. Anything else is not applicable.
inline Prediction predict_small_x(std::uint64_t q, unsigned x, unsigned n, Variant variant = kDefaultVariant) {
  if (x > 1) throw std::invalid_argument("predict_small_x takes x in {0,1}");
  if (n == 0) throw std::invalid_argument("digit count must be positive");

  Prediction p;
  p.variant = variant;
  if (q == 1) {
    p.case_tag = CaseTag::Mod10_19;
    p.convention = true;
    p.formula = "convention";
    detail::finish(p, 1);
    return p;
  }
  if (q < 2 || q % 10 == 0) throw std::invalid_argument("base excluded by conjecture: q must not be a multiple of 10");
  p.case_tag = classify(q);

  if (const TableRow* row = find_small_x_row(q)) {
    const auto& form = x == 0 ? row->f0 : row->f1;
    if (form) {
      p.formula = form->to_string();
      detail::finish(p, form->evaluate(n));
      return p;
    }
  }

  if (p.case_tag == CaseTag::Mod10_19) {
    const Discriminants d = discriminants(q);
    const long nn = n;
    if (x == 1) {
      detail::finish(p, std::max(detail::ceil_div(nn, 1 + d.delta2.value), detail::ceil_div(nn, d.delta5.value)) - 1);
      p.formula = "max[ceil(n/(1+D2)), ceil(n/D5)]-1";
      return p;
    }
    if (q % 200 == 51) {
      detail::finish(p, std::max(nn / d.delta2.value, nn / d.delta5.value));
      p.formula = "max[floor(n/D2), floor(n/D5)]";
    } else {
      detail::finish(p, std::max(detail::ceil_div(nn, d.delta2.value), detail::ceil_div(nn, d.delta5.value)) - 1);
      p.formula = "max[ceil(n/D2), ceil(n/D5)]-1";
    }
    return p;
  }

  p.applicable = false;
  p.formula = "untabulated";
  return p;
}

}  // namespace towerdigits
