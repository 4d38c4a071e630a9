#pragma once

// Published small-x tables of minimum stabilization heights, stored as
// closed forms in n (and, for one column, x). Rows are kept verbatim,
// including entries that disagree with each other across tables.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace towerdigits {

/// n + shift, ceil(n/d) + shift, floor(n/d) + shift, or ceil(n/(x+d)) + shift.
struct ClosedForm {
  enum class Kind { Linear, Ceil, Floor, CeilXPlus };

  Kind kind = Kind::Linear;
  int divisor = 1;
  int shift = 0;

  long evaluate(unsigned n, unsigned x = 0) const {
    const long nn = static_cast<long>(n);
    switch (kind) {
      case Kind::Linear: return nn + shift;
      case Kind::Ceil: return (nn + divisor - 1) / divisor + shift;
      case Kind::Floor: return nn / divisor + shift;
      case Kind::CeilXPlus: {
        const long d = static_cast<long>(x) + divisor;
        return (nn + d - 1) / d + shift;
      }
    }
    return 0;
  }

  std::string to_string() const {
    std::string body;
    switch (kind) {
      case Kind::Linear: body = "n"; break;
      case Kind::Ceil: body = "ceil(n/" + std::to_string(divisor) + ")"; break;
      case Kind::Floor: body = "floor(n/" + std::to_string(divisor) + ")"; break;
      case Kind::CeilXPlus: body = "ceil(n/(x+" + std::to_string(divisor) + "))"; break;
    }
    if (shift > 0) body += "+" + std::to_string(shift);
    if (shift < 0) body += std::to_string(shift);
    return body;
  }

  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

namespace forms {
constexpr ClosedForm lin(int shift) { return {ClosedForm::Kind::Linear, 1, shift}; }
constexpr ClosedForm ceil(int d, int shift) { return {ClosedForm::Kind::Ceil, d, shift}; }
constexpr ClosedForm floor(int d, int shift) { return {ClosedForm::Kind::Floor, d, shift}; }
constexpr ClosedForm ceil_x(int d, int shift) { return {ClosedForm::Kind::CeilXPlus, d, shift}; }
}  // namespace forms

enum class TableId { T1, T2, T3, T4, T5, T6, T7 };

/// One tabulated base. `f0`/`f1` are f_q(0,0,n) and f_q(1,0,n); `fx` is
/// f_q(x,0,n) for x >= 2 and is only present in the prime table.
struct TableRow {
  std::uint64_t q = 0;
  std::optional<ClosedForm> f0;
  std::optional<ClosedForm> f1;
  std::optional<ClosedForm> fx;
  bool convention = false;  // q = 1: left blank in the source
  bool flagged = false;     // breaks the surrounding pattern (307, 443)
};

namespace detail {

using namespace forms;
using Row = TableRow;
inline constexpr std::nullopt_t blank = std::nullopt;

// q = 1 mod 10 | q = 9 mod 10
inline const std::array kTable1{
    Row{1, blank, blank, blank, true},   Row{9, lin(0), lin(-1)},
    Row{11, lin(-1), lin(-1)},           Row{19, lin(0), lin(-1)},
    Row{21, lin(-1), lin(-1)},           Row{29, lin(0), lin(-1)},
    Row{31, lin(-1), lin(-1)},           Row{39, lin(0), lin(-1)},
    Row{41, lin(-1), lin(-1)},           Row{49, ceil(2, 0), ceil(2, -1)},
    Row{51, floor(2, 0), ceil(2, -1)},   Row{59, lin(0), lin(-1)},
    Row{61, lin(-1), lin(-1)},           Row{69, lin(0), lin(-1)},
    Row{71, lin(-1), lin(-1)},           Row{79, lin(0), lin(-1)},
    Row{81, lin(-1), lin(-1)},           Row{89, lin(0), lin(-1)},
    Row{91, lin(-1), lin(-1)},           Row{99, ceil(2, 0), ceil(2, -1)},
    Row{101, ceil(2, -1), ceil(2, -1)},  Row{109, lin(0), lin(-1)},
};

// q = 1 mod 50 | q = 49 mod 50
inline const std::array kTable2{
    Row{1, blank, blank, blank, true},   Row{49, ceil(2, 0), ceil(2, -1)},
    Row{51, floor(2, 0), ceil(2, -1)},   Row{99, ceil(2, 0), ceil(2, -1)},
    Row{101, ceil(2, -1), ceil(2, -1)},  Row{149, ceil(2, 0), ceil(2, -1)},
    Row{151, ceil(2, -1), ceil(2, -1)},  Row{199, ceil(2, 0), ceil(2, -1)},
    Row{201, ceil(2, -1), ceil(2, -1)},  Row{249, ceil(3, 0), ceil(3, -1)},
    Row{251, floor(2, 0), ceil(2, -1)},  Row{299, ceil(2, 0), ceil(2, -1)},
};

// q = 3 mod 10 | q = 7 mod 10
inline const std::array kTable3{
    Row{3, lin(1), lin(0)},            Row{7, ceil(2, 1), ceil(2, 0)},
    Row{13, lin(0), lin(0)},           Row{17, lin(0), lin(0)},
    Row{23, lin(1), lin(0)},           Row{27, lin(1), lin(0)},
    Row{33, lin(0), lin(0)},           Row{37, lin(0), lin(0)},
    Row{43, ceil(2, 1), ceil(2, 0)},   Row{47, lin(1), lin(0)},
    Row{53, lin(0), lin(0)},           Row{57, ceil(3, 0), ceil(3, 0)},
    Row{63, lin(1), lin(0)},           Row{67, lin(1), lin(0)},
    Row{73, lin(0), lin(0)},           Row{77, lin(0), lin(0)},
    Row{83, lin(1), lin(0)},           Row{87, lin(1), lin(0)},
    Row{93, ceil(2, 0), ceil(2, 0)},   Row{97, lin(0), lin(0)},
    Row{103, lin(1), lin(0)},          Row{107, ceil(2, 1), ceil(2, 0)},
};

// q = 43 mod 50 | q = 7 mod 50
inline const std::array kTable4{
    Row{43, ceil(2, 1), ceil(2, 0)},   Row{7, ceil(2, 1), ceil(2, 0)},
    Row{93, ceil(2, 0), ceil(2, 0)},   Row{57, ceil(3, 0), ceil(3, 0)},
    Row{143, ceil(2, 1), ceil(2, 0)},  Row{107, ceil(2, 1), ceil(2, 0)},
    Row{193, ceil(3, 0), ceil(3, 0)},  Row{157, ceil(2, 0), ceil(2, 0)},
    Row{243, ceil(2, 1), ceil(2, 0)},  Row{207, ceil(2, 1), ceil(2, 0)},
    Row{293, ceil(2, 0), ceil(2, 0)},  Row{257, ceil(2, 0), ceil(2, 0)},
    Row{343, ceil(2, 1), ceil(2, 0)},  Row{307, floor(2, 0), ceil(3, 0), blank, false, true},
};

// q = 193 mod 250 | q = 57 mod 250
inline const std::array kTable5{
    Row{193, ceil(3, 0), ceil(3, 0)},                       Row{57, ceil(3, 0), ceil(3, 0)},
    Row{443, floor(2, 0), ceil(3, -1), blank, false, true}, Row{307, floor(2, 0), ceil(3, 0), blank, false, true},
};

// Primes: f_p(0,0,n), f_p(1,0,n), f_p(x,0,n) for x >= 2.
inline const std::array kTable7{
    Row{2, lin(2), lin(1), lin(-1)},
    Row{3, lin(1), lin(0), lin(-1)},
    Row{5, ceil(2, -1), ceil(3, -1), ceil_x(2, -1)},
    Row{7, ceil(2, 1), ceil(2, 0), ceil(2, -1)},
    Row{11, lin(-1), lin(-1), lin(-1)},
    Row{13, lin(0), lin(0), lin(-1)},
    Row{17, lin(0), lin(0), lin(-1)},
    Row{19, lin(0), lin(-1), lin(-1)},
    Row{23, lin(1), lin(0), lin(-1)},
    Row{29, lin(0), lin(-1), lin(-1)},
    Row{31, lin(-1), lin(-1), lin(-1)},
    Row{37, lin(0), lin(0), lin(-1)},
    Row{41, lin(-1), lin(-1), lin(-1)},
    Row{43, ceil(2, 1), ceil(2, 0), ceil(2, -1)},
    Row{47, lin(1), lin(0), lin(-1)},
    Row{53, lin(0), lin(0), lin(-1)},
    Row{59, lin(0), lin(-1), lin(-1)},
    Row{61, lin(-1), lin(-1), lin(-1)},
    Row{67, lin(1), lin(0), lin(-1)},
    Row{71, lin(-1), lin(-1), lin(-1)},
    Row{73, lin(0), lin(0), lin(-1)},
    Row{79, lin(0), lin(-1), lin(-1)},
    Row{83, lin(1), lin(0), lin(-1)},
    Row{89, lin(0), lin(-1), lin(-1)},
    Row{97, lin(0), lin(0), lin(-1)},
    Row{101, ceil(2, -1), ceil(2, -1), ceil(2, -1)},
    Row{103, lin(1), lin(0), lin(-1)},
    Row{107, ceil(2, 1), ceil(2, 0), ceil(2, -1)},
    Row{109, lin(0), lin(-1), lin(-1)},
    Row{113, lin(0), lin(0), lin(-1)},
    Row{127, lin(1), lin(0), lin(-1)},
    Row{131, lin(-1), lin(-1), lin(-1)},
    Row{137, lin(0), lin(0), lin(-1)},
    Row{139, lin(0), lin(-1), lin(-1)},
    Row{149, ceil(2, 0), ceil(2, -1), ceil(2, -1)},
    Row{151, ceil(2, -1), ceil(2, -1), ceil(2, -1)},
    Row{157, ceil(2, 0), ceil(2, 0), ceil(2, -1)},
    Row{163, lin(1), lin(0), lin(-1)},
    Row{167, lin(1), lin(0), lin(-1)},
    Row{173, lin(0), lin(0), lin(-1)},
    Row{179, lin(0), lin(-1), lin(-1)},
    Row{181, lin(-1), lin(-1), lin(-1)},
    Row{191, lin(-1), lin(-1), lin(-1)},
    Row{193, ceil(2, -1), ceil(2, -1), ceil(2, -1)},
    Row{197, lin(0), lin(0), lin(-1)},
    Row{199, ceil(2, 0), ceil(2, -1), ceil(2, -1)},
    Row{211, lin(-1), lin(-1), lin(-1)},
    Row{223, lin(1), lin(0), lin(-1)},
    Row{227, lin(1), lin(0), lin(-1)},
    Row{229, lin(0), lin(-1), lin(-1)},
    Row{233, lin(0), lin(0), lin(-1)},
    Row{239, lin(0), lin(-1), lin(-1)},
    Row{241, lin(-1), lin(-1), lin(-1)},
    Row{251, floor(2, 0), ceil(3, -1), ceil(3, -1)},
    Row{257, ceil(2, 0), ceil(2, 0), ceil(2, -1)},
    Row{263, lin(1), lin(0), lin(-1)},
    Row{269, lin(0), lin(-1), lin(-1)},
    Row{271, lin(-1), lin(-1), lin(-1)},
    Row{277, lin(0), lin(0), lin(-1)},
    Row{281, lin(-1), lin(-1), lin(-1)},
};

}  // namespace detail

/// Rows of a published table. T6 is the even-base case, for which no
/// closed form was given, so it has no rows.
inline std::span<const TableRow> table_rows(TableId id) {
  switch (id) {
    case TableId::T1: return detail::kTable1;
    case TableId::T2: return detail::kTable2;
    case TableId::T3: return detail::kTable3;
    case TableId::T4: return detail::kTable4;
    case TableId::T5: return detail::kTable5;
    case TableId::T6: return {};
    case TableId::T7: return detail::kTable7;
  }
  return {};
}

inline std::string_view table_name(TableId id) {
  static constexpr std::array names{"T1", "T2", "T3", "T4", "T5", "T6", "T7"};
  return names[static_cast<std::size_t>(id)];
}

inline TableId parse_table_id(std::string_view s) {
  for (int i = 0; i < 7; ++i) {
    auto id = static_cast<TableId>(i);
    if (s == table_name(id)) return id;
  }
  throw std::invalid_argument("unknown table '" + std::string(s) + "' (expected T1..T7)");
}

/// The small-x lookup over tables 1-5. Rows repeated across tables carry
/// identical entries, so the first hit wins.
inline const TableRow* find_small_x_row(std::uint64_t q) {
  for (auto id : {TableId::T1, TableId::T2, TableId::T3, TableId::T4, TableId::T5})
    for (const auto& row : table_rows(id))
      if (row.q == q) return &row;
  return nullptr;
}

}  // namespace towerdigits
