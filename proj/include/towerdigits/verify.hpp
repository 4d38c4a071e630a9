#pragma once

// Compares conjectured heights against the brute-force stabilization
// oracle: single cells, parameter sweeps, the worked examples, and the
// published tables.

#include "towerdigits/conjecture.hpp"
#include "towerdigits/tables.hpp"
#include "towerdigits/tower.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace towerdigits {

enum class Status { Match, Mismatch, NotApplicable, ClampedMatch };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Match: return "MATCH";
    case Status::Mismatch: return "MISMATCH";
    case Status::NotApplicable: return "NOT_APPLICABLE";
    case Status::ClampedMatch: return "CLAMPED_MATCH";
  }
  return "?";
}

struct VerificationCell {
  std::uint64_t q = 0;
  unsigned x = 0;
  unsigned y = 0;
  std::uint64_t a = 1;
  unsigned n = 1;
  std::uint64_t oracle_u = 0;
  std::optional<long> predicted_as_written;
  std::optional<long> predicted_example;
  Variant variant = kDefaultVariant;
  CaseTag case_tag = CaseTag::Mod10_19;
  Status status = Status::NotApplicable;
  bool clamped = false;
  std::string formula;
  BigInt stable_digits;

  std::optional<long> predicted_u() const {
    return variant == Variant::AsWritten ? predicted_as_written : predicted_example;
  }

  friend bool operator==(const VerificationCell&, const VerificationCell&) = default;
};

namespace detail {

inline std::optional<Prediction> prediction_for(std::uint64_t q, unsigned x, unsigned y, unsigned n, Variant v) {
  if (x >= 2) return predict(q, x, y, n, v);
  if (y != 0) return std::nullopt;
  Prediction p = predict_small_x(q, x, n, v);
  if (!p.applicable) return std::nullopt;
  return p;
}

}  // namespace detail

/// Attaches predictions and a status to an oracle record. Mismatches are
/// data, never errors.
inline VerificationCell classify_cell(const StabilizationRecord& rec, Variant variant) {
  VerificationCell cell;
  cell.q = rec.q;
  cell.x = rec.x;
  cell.y = rec.y;
  cell.a = rec.a;
  cell.n = rec.n;
  cell.oracle_u = rec.u_min;
  cell.stable_digits = rec.stable_digits;
  cell.variant = variant;
  cell.case_tag = classify(rec.q);

  auto written = detail::prediction_for(rec.q, rec.x, rec.y, rec.n, Variant::AsWritten);
  auto example = detail::prediction_for(rec.q, rec.x, rec.y, rec.n, Variant::ExampleConsistent);
  if (written) cell.predicted_as_written = written->u;
  if (example) cell.predicted_example = example->u;

  const auto& chosen = variant == Variant::AsWritten ? written : example;
  if (!chosen) {
    cell.status = Status::NotApplicable;
    cell.formula = "untabulated";
    return cell;
  }
  cell.formula = chosen->formula;
  cell.clamped = chosen->clamped;
  if (chosen->u != static_cast<long>(rec.u_min))
    cell.status = Status::Mismatch;
  else
    cell.status = chosen->clamped ? Status::ClampedMatch : Status::Match;
  return cell;
}

inline VerificationCell verify_cell(std::uint64_t q, unsigned x, unsigned y, std::uint64_t a, unsigned n,
                                    Variant variant = kDefaultVariant) {
  return classify_cell(min_stable_height(q, x, y, a, n), variant);
}

struct SweepConfig {
  std::vector<std::uint64_t> qs;
  std::vector<unsigned> xs;
  std::vector<unsigned> ys;
  std::vector<std::uint64_t> as;
  std::vector<unsigned> ns;
  Variant variant = kDefaultVariant;
  unsigned threads = 0;  // 0: hardware concurrency

  /// q <= 300 (multiples of 10 dropped), x in 2..5, y in 0..3, a in {1,3,7}, n in 1..16.
  static SweepConfig default_grid() {
    SweepConfig c;
    for (std::uint64_t q = 2; q <= 300; ++q)
      if (q % 10 != 0) c.qs.push_back(q);
    c.xs = {2, 3, 4, 5};
    c.ys = {0, 1, 2, 3};
    c.as = {1, 3, 7};
    for (unsigned n = 1; n <= 16; ++n) c.ns.push_back(n);
    return c;
  }
};

struct VariantWins {
  std::size_t cells = 0;  // MOD10_5 cells seen
  std::size_t as_written = 0;
  std::size_t example = 0;

  std::optional<Variant> winner() const {
    if (as_written == example) return std::nullopt;
    return as_written > example ? Variant::AsWritten : Variant::ExampleConsistent;
  }

  friend bool operator==(const VariantWins&, const VariantWins&) = default;
};

struct SweepReport {
  std::vector<VerificationCell> cells;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  std::size_t skip_count = 0;
  VariantWins variant_wins;
  std::string config_digest;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

namespace detail {

template <class T>
std::string join_values(const std::vector<T>& values) {
  // Collapse runs of consecutive integers into lo..hi.
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[j] + 1) ++j;
    if (i != 0) out << ',';
    out << values[i];
    if (j > i + 1)
      out << ".." << values[j];
    else if (j == i + 1)
      out << ',' << values[j];
    i = j + 1;
  }
  return out.str();
}

inline std::string digest(const SweepConfig& c) {
  return "q=" + join_values(c.qs) + ";x=" + join_values(c.xs) + ";y=" + join_values(c.ys) +
         ";a=" + join_values(c.as) + ";n=" + join_values(c.ns) + ";variant=" + std::string(to_string(c.variant));
}

}  // namespace detail

/// Runs every valid (q, x, y, a, n) cell of the grid. Cells come back in
/// input order whatever the thread count. Bases that are multiples of 10
/// and cofactors sharing a factor with 10 are dropped from the grid.
inline SweepReport sweep(const SweepConfig& config) {
  if (config.qs.empty() || config.xs.empty() || config.ys.empty() || config.as.empty() || config.ns.empty())
    throw std::invalid_argument("sweep range is empty");
  for (unsigned n : config.ns) validate_digits(n);

  struct Group {
    std::uint64_t q;
    unsigned x, y;
    std::uint64_t a;
  };
  std::vector<Group> groups;
  for (auto q : config.qs) {
    if (q < 2 || q % 10 == 0) continue;
    for (auto x : config.xs)
      for (auto y : config.ys)
        for (auto a : config.as)
          if (a != 0 && std::gcd(a, std::uint64_t{10}) == 1) groups.push_back({q, x, y, a});
  }
  if (groups.empty()) throw std::invalid_argument("sweep range has no valid cells");

  const unsigned n_max = *std::max_element(config.ns.begin(), config.ns.end());
  ModulusChain::decimal(n_max);  // warm the shared chain before fanning out

  std::vector<std::vector<VerificationCell>> results(groups.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) {
      const auto& g = groups[i];
      auto records = min_stable_heights(g.q, g.x, g.y, g.a, n_max);
      auto& out = results[i];
      out.reserve(config.ns.size());
      for (unsigned n : config.ns) out.push_back(classify_cell(records[n - 1], config.variant));
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, groups.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  SweepReport report;
  report.config_digest = detail::digest(config);
  for (auto& group : results) {
    for (auto& cell : group) {
      switch (cell.status) {
        case Status::Match:
        case Status::ClampedMatch: ++report.pass_count; break;
        case Status::Mismatch: ++report.fail_count; break;
        case Status::NotApplicable: ++report.skip_count; break;
      }
      if (cell.case_tag == CaseTag::Mod10_5) {
        auto& wins = report.variant_wins;
        ++wins.cells;
        if (cell.predicted_as_written == static_cast<long>(cell.oracle_u)) ++wins.as_written;
        if (cell.predicted_example == static_cast<long>(cell.oracle_u)) ++wins.example;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

/// One worked example: a tower whose residues were printed at given heights
/// together with its claimed minimum stabilization height.
struct GoldenExample {
  int id = 0;
  std::uint64_t q = 0;
  unsigned x = 0;
  unsigned y = 0;
  std::uint64_t a = 1;
  unsigned n = 1;
  std::uint64_t claimed_u = 0;
  std::vector<std::pair<std::uint64_t, std::string>> printed;  // height -> residue as printed
};

inline const std::vector<GoldenExample>& golden_examples() {
  static const std::vector<GoldenExample> examples{
      {1, 4599, 8, 5, 1, 40, 5,
       {{5, "574081590929428693334403581932320000001"},
        {6, "574081590929428693334403581932320000001"},
        {4, "3530881590929428693334403581932320000001"}}},
      {2, 1251, 2, 4, 1, 30, 7,
       {{7, "297934155568039465330081250001"},
        {8, "297934155568039465330081250001"},
        {6, "47934155568039465330081250001"}}},
      {3, 17, 3, 6, 1, 53, 7, {{7, "52737008157199929548933683973150858896289457010000001"}}},
      {4, 63, 5, 2, 3, 15, 4, {{4, "547909642496001"}}},
      {5, 255, 4, 3, 1, 34, 3, {{3, "6154363253735937178134918212890625"}}},
      {6, 192, 2, 3, 1, 20, 4, {{4, "14517958004101349376"}}},
  };
  return examples;
}

struct GoldenResult {
  GoldenExample example;
  bool residues_match = true;
  std::vector<std::pair<std::uint64_t, BigInt>> computed;  // height -> residue
  VerificationCell cell;

  /// The printed digits reproduce and the selected formula agrees with the oracle.
  bool passed() const { return residues_match && cell.status == Status::Match; }
  bool claimed_minimum_confirmed() const { return cell.oracle_u == example.claimed_u; }
};

inline GoldenResult check_golden(const GoldenExample& ex, Variant variant = kDefaultVariant) {
  GoldenResult r;
  r.example = ex;
  for (const auto& [h, digits] : ex.printed) {
    BigInt value = tet_mod({ex.q, ex.x, ex.y, ex.a, h}, ex.n);
    r.computed.emplace_back(h, value);
    if (value != BigInt(digits)) r.residues_match = false;
  }
  r.cell = verify_cell(ex.q, ex.x, ex.y, ex.a, ex.n, variant);
  return r;
}

inline std::vector<GoldenResult> check_golden_examples(Variant variant = kDefaultVariant) {
  std::vector<GoldenResult> out;
  for (const auto& ex : golden_examples()) out.push_back(check_golden(ex, variant));
  return out;
}

/// A single published table entry evaluated at one n.
struct TableCell {
  TableId table = TableId::T1;
  std::uint64_t q = 0;
  std::string column;  // f(0,0,n), f(1,0,n), f(x,0,n)
  unsigned x = 0;
  unsigned n = 1;
  std::string form;  // empty when the source leaves the cell blank
  std::optional<long> closed_u;
  std::optional<std::uint64_t> oracle_u;
  std::optional<bool> agree;
  bool convention = false;
  bool flagged = false;
  bool formula_backed = false;  // the general x >= 2 formula gives the same value

  friend bool operator==(const TableCell&, const TableCell&) = default;
};

struct TableReport {
  TableId table = TableId::T1;
  unsigned n_lo = 1;
  unsigned n_hi = 1;
  std::vector<TableCell> cells;
  std::size_t agree_count = 0;
  std::size_t disagree_count = 0;
  std::size_t no_claim_count = 0;

  friend bool operator==(const TableReport&, const TableReport&) = default;
};

/// Regenerates every cell of a table for n in [n_lo, n_hi], both from the
/// tabulated closed form and from the oracle. The x >= 2 column of the
/// prime table is evaluated at each x in `wide_xs`.
inline TableReport table_gen(TableId id, unsigned n_lo, unsigned n_hi, std::vector<unsigned> wide_xs = {2, 3},
                             Variant variant = kDefaultVariant) {
  if (n_lo == 0 || n_hi < n_lo) throw std::invalid_argument("invalid n range");
  validate_digits(n_hi);

  TableReport report;
  report.table = id;
  report.n_lo = n_lo;
  report.n_hi = n_hi;

  auto emit = [&](const TableRow& row, const std::optional<ClosedForm>& form, std::string column, unsigned x) {
    std::vector<StabilizationRecord> oracle;
    if (!row.convention && form) oracle = min_stable_heights(row.q, x, 0, 1, n_hi);
    for (unsigned n = n_lo; n <= n_hi; ++n) {
      TableCell cell;
      cell.table = id;
      cell.q = row.q;
      cell.column = column;
      cell.x = x;
      cell.n = n;
      cell.convention = row.convention;
      cell.flagged = row.flagged;
      if (form && !row.convention) {
        cell.form = form->to_string();
        cell.closed_u = form->evaluate(n, x);
        cell.oracle_u = oracle[n - 1].u_min;
        cell.agree = *cell.closed_u == static_cast<long>(*cell.oracle_u);
        if (x >= 2) cell.formula_backed = predict(row.q, x, 0, n, variant).u == *cell.closed_u;
      }
      if (!cell.agree)
        ++report.no_claim_count;
      else if (*cell.agree)
        ++report.agree_count;
      else
        ++report.disagree_count;
      report.cells.push_back(std::move(cell));
    }
  };

  for (const auto& row : table_rows(id)) {
    emit(row, row.f0, "f(0,0,n)", 0);
    emit(row, row.f1, "f(1,0,n)", 1);
    if (row.fx)
      for (unsigned x : wide_xs) emit(row, row.fx, "f(x,0,n)", x);
  }
  return report;
}

}  // namespace towerdigits
