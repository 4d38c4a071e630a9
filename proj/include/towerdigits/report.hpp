#pragma once

// JSON, CSV and text renderings of verification results.
//
// Cell columns (JSON keys and CSV header, in this order):
//   q,x,y,a,n,oracle_u,predicted_u_as_written,predicted_u_example,status,stable_digits
// Predictions are null (JSON) or empty (CSV) when no formula applies;
// stable_digits is always the zero-padded n-digit residue.

#include "towerdigits/verify.hpp"

#include <json.hpp>

#include <map>
#include <ostream>
#include <sstream>

namespace towerdigits {

inline constexpr const char* kSweepSchema = "towerdigits.sweep";
inline constexpr const char* kTableSchema = "towerdigits.table";
inline constexpr int kReportVersion = 1;

enum class Format { Text, Json, Csv };

inline Format parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected text|json|csv)");
}

inline constexpr std::array<const char*, 10> kCellColumns{
    "q", "x", "y", "a", "n", "oracle_u", "predicted_u_as_written", "predicted_u_example", "status", "stable_digits"};

namespace detail {

inline nlohmann::json optional_json(const std::optional<long>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::string optional_csv(const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace detail

inline nlohmann::ordered_json to_json(const VerificationCell& c) {
  nlohmann::ordered_json j;
  j["q"] = c.q;
  j["x"] = c.x;
  j["y"] = c.y;
  j["a"] = c.a;
  j["n"] = c.n;
  j["oracle_u"] = c.oracle_u;
  j["predicted_u_as_written"] = detail::optional_json(c.predicted_as_written);
  j["predicted_u_example"] = detail::optional_json(c.predicted_example);
  j["status"] = to_string(c.status);
  j["stable_digits"] = to_digits(c.stable_digits, c.n);
  return j;
}

inline std::string csv_header() {
  std::string s;
  for (std::size_t i = 0; i < kCellColumns.size(); ++i) {
    if (i) s += ',';
    s += kCellColumns[i];
  }
  return s;
}

inline std::string to_csv_row(const VerificationCell& c) {
  std::ostringstream out;
  out << c.q << ',' << c.x << ',' << c.y << ',' << c.a << ',' << c.n << ',' << c.oracle_u << ','
      << detail::optional_csv(c.predicted_as_written) << ',' << detail::optional_csv(c.predicted_example) << ','
      << to_string(c.status) << ',' << to_digits(c.stable_digits, c.n);
  return out.str();
}

inline nlohmann::ordered_json to_json(const SweepReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kSweepSchema;
  j["version"] = kReportVersion;
  j["config"] = r.config_digest;
  j["summary"] = {{"cells", r.cells.size()},
                  {"pass", r.pass_count},
                  {"fail", r.fail_count},
                  {"skip", r.skip_count}};
  auto winner = r.variant_wins.winner();
  j["variant_wins"] = {{"cells", r.variant_wins.cells},
                       {"AS_WRITTEN", r.variant_wins.as_written},
                       {"EXAMPLE_CONSISTENT", r.variant_wins.example},
                       {"winner", winner ? nlohmann::ordered_json(to_string(*winner)) : nlohmann::ordered_json()}};
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  j["cells"] = std::move(cells);
  return j;
}

inline void write_csv(std::ostream& out, const SweepReport& r) {
  out << csv_header() << '\n';
  for (const auto& c : r.cells) out << to_csv_row(c) << '\n';
}

inline void write_text(std::ostream& out, const SweepReport& r, bool list_mismatches = true) {
  out << "config: " << r.config_digest << '\n';
  out << "cells: " << r.cells.size() << "  pass: " << r.pass_count << "  fail: " << r.fail_count
      << "  skip: " << r.skip_count << '\n';
  const auto& w = r.variant_wins;
  if (w.cells) {
    auto winner = w.winner();
    out << "q=5 mod 10 cells: " << w.cells << "  AS_WRITTEN matches: " << w.as_written
        << "  EXAMPLE_CONSISTENT matches: " << w.example
        << "  winner: " << (winner ? to_string(*winner) : std::string_view("tie")) << '\n';
  }
  if (!list_mismatches) return;
  for (const auto& c : r.cells) {
    if (c.status != Status::Mismatch) continue;
    out << "MISMATCH q=" << c.q << " x=" << c.x << " y=" << c.y << " a=" << c.a << " n=" << c.n
        << " oracle_u=" << c.oracle_u << " predicted_u=" << *c.predicted_u() << " (" << c.formula
        << ") stable=" << to_digits(c.stable_digits, c.n) << '\n';
  }
}

inline void write(std::ostream& out, const SweepReport& r, Format f) {
  switch (f) {
    case Format::Json: out << to_json(r).dump(2) << '\n'; break;
    case Format::Csv: write_csv(out, r); break;
    case Format::Text: write_text(out, r); break;
  }
}

inline constexpr std::array<const char*, 12> kTableColumns{
    "table", "q", "column", "x", "n", "form", "closed_u", "oracle_u", "agree", "convention", "flagged", "formula_backed"};

inline nlohmann::ordered_json to_json(const TableCell& c) {
  nlohmann::ordered_json j;
  j["table"] = table_name(c.table);
  j["q"] = c.q;
  j["column"] = c.column;
  j["x"] = c.x;
  j["n"] = c.n;
  j["form"] = c.form.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(c.form);
  j["closed_u"] = c.closed_u ? nlohmann::ordered_json(*c.closed_u) : nlohmann::ordered_json();
  j["oracle_u"] = c.oracle_u ? nlohmann::ordered_json(*c.oracle_u) : nlohmann::ordered_json();
  j["agree"] = c.agree ? nlohmann::ordered_json(*c.agree) : nlohmann::ordered_json();
  j["convention"] = c.convention;
  j["flagged"] = c.flagged;
  j["formula_backed"] = c.formula_backed;
  return j;
}

inline nlohmann::ordered_json to_json(const TableReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kTableSchema;
  j["version"] = kReportVersion;
  j["table"] = table_name(r.table);
  j["n_range"] = {r.n_lo, r.n_hi};
  j["summary"] = {{"agree", r.agree_count}, {"disagree", r.disagree_count}, {"no_claim", r.no_claim_count}};
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  j["cells"] = std::move(cells);
  return j;
}

inline void write_csv(std::ostream& out, const TableReport& r) {
  for (std::size_t i = 0; i < kTableColumns.size(); ++i) out << (i ? "," : "") << kTableColumns[i];
  out << '\n';
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const auto& c : r.cells) {
    out << table_name(c.table) << ',' << c.q << ',' << c.column << ',' << c.x << ',' << c.n << ',' << c.form << ','
        << (c.closed_u ? std::to_string(*c.closed_u) : "") << ',' << (c.oracle_u ? std::to_string(*c.oracle_u) : "")
        << ',' << (c.agree ? flag(*c.agree) : "") << ',' << flag(c.convention) << ',' << flag(c.flagged) << ','
        << flag(c.formula_backed) << '\n';
  }
}

/// One line per (q, column, x): the closed form, the oracle values over the
/// n range, and the n at which they disagree.
inline void write_text(std::ostream& out, const TableReport& r) {
  out << "table " << table_name(r.table) << "  n=" << r.n_lo << ".." << r.n_hi << "  agree: " << r.agree_count
      << "  disagree: " << r.disagree_count << "  no claim: " << r.no_claim_count << '\n';
  if (r.cells.empty()) {
    out << "(no tabulated rows)\n";
    return;
  }
  std::size_t i = 0;
  while (i < r.cells.size()) {
    const auto& head = r.cells[i];
    std::size_t j = i;
    std::ostringstream oracle, bad;
    while (j < r.cells.size() && r.cells[j].q == head.q && r.cells[j].column == head.column &&
           r.cells[j].x == head.x) {
      const auto& c = r.cells[j];
      if (c.oracle_u) oracle << (j == i ? "" : " ") << *c.oracle_u;
      if (c.agree && !*c.agree) bad << (bad.tellp() > 0 ? "," : "") << c.n;
      ++j;
    }
    out << "q=" << head.q << ' ' << head.column;
    if (head.column == "f(x,0,n)") out << " x=" << head.x;
    if (head.convention) {
      out << "  (blank in source; convention u=1, no oracle claim)\n";
    } else if (head.form.empty()) {
      out << "  (blank)\n";
    } else {
      out << "  form=" << head.form << "  oracle=[" << oracle.str() << "]";
      out << (bad.tellp() > 0 ? "  DISAGREE at n=" + bad.str() : std::string("  agree"));
      if (head.flagged) out << "  [flagged anomaly]";
      if (head.formula_backed) out << "  [formula-backed]";
      out << '\n';
    }
    i = j;
  }
}

inline void write(std::ostream& out, const TableReport& r, Format f) {
  switch (f) {
    case Format::Json: out << to_json(r).dump(2) << '\n'; break;
    case Format::Csv: write_csv(out, r); break;
    case Format::Text: write_text(out, r); break;
  }
}

}  // namespace towerdigits
