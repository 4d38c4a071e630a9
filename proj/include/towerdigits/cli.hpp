#pragma once

// Command-line front end:
//
//   towerdigits compute|stable|minheight|predict|verify|table [flags]
//
// Residues print as zero-padded n-digit strings. `verify` always replays
// the worked examples first and exits with 2 if any of them fails; sweep
// mismatches never change the exit code.

#include "towerdigits/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace towerdigits::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitGoldenFailed = 2;

/// Parses "2..9,11,13..15" into the listed integers, in order.
template <class T>
std::vector<T> parse_range(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string part;
  auto number = [&](const std::string& s) -> T {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-') throw std::invalid_argument("bad range value '" + s + "'");
    if (v > std::numeric_limits<T>::max()) throw std::invalid_argument("range value out of bounds '" + s + "'");
    return static_cast<T>(v);
  };
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw std::invalid_argument("empty element in range '" + text + "'");
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
      continue;
    }
    T lo = number(part.substr(0, dots));
    T hi = number(part.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range '" + part + "'");
    for (T v = lo;; ++v) {
      out.push_back(v);
      if (v == hi) break;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty range");
  return out;
}

/// E split as 2^x * 5^y * a with gcd(a, 10) = 1.
struct ExponentParts {
  unsigned x = 0;
  unsigned y = 0;
  std::uint64_t a = 1;
};

inline ExponentParts split_exponent(const std::string& text) {
  BigInt e;
  try {
    e = BigInt(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("exponent must be a positive integer");
  }
  if (e <= 0) throw std::invalid_argument("exponent must be a positive integer");
  ExponentParts p;
  p.x = vp(e, 2).value;
  e >>= p.x;
  p.y = vp(e, 5).value;
  for (unsigned i = 0; i < p.y; ++i) e /= 5;
  if (e > std::numeric_limits<std::uint64_t>::max()) throw std::invalid_argument("exponent cofactor too large");
  p.a = static_cast<std::uint64_t>(e);
  return p;
}

struct Options {
  std::uint64_t q = 0;
  unsigned x = 0;
  unsigned y = 0;
  std::uint64_t a = 1;
  std::string exponent;
  std::uint64_t h = 1;
  unsigned n = 0;
  std::string variant = "as-written";
  std::string format = "text";
  std::string out_path;
  unsigned max_digits = 0;

  // verify / table
  std::string q_range, x_range, y_range, a_values, n_range;
  std::string table;
  std::string x_values = "2,3";
  unsigned threads = 0;
  bool quiet = false;
};

namespace detail {

inline void print_compute(std::ostream& out, Format f, const Options& o, const BigInt& r, std::uint64_t h) {
  const std::string digits = to_digits(r, o.n);
  switch (f) {
    case Format::Text: out << digits << '\n'; break;
    case Format::Json: {
      nlohmann::ordered_json j{{"q", o.q}, {"x", o.x}, {"y", o.y}, {"a", o.a}, {"h", h}, {"n", o.n}, {"residue", digits}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv: out << "q,x,y,a,h,n,residue\n" << o.q << ',' << o.x << ',' << o.y << ',' << o.a << ',' << h
                          << ',' << o.n << ',' << digits << '\n';
      break;
  }
}

inline void print_minheight(std::ostream& out, Format f, const StabilizationRecord& r) {
  const std::string digits = to_digits(r.stable_digits, r.n);
  switch (f) {
    case Format::Text: out << "u=" << r.u_min << '\n' << "stable=" << digits << '\n'; break;
    case Format::Json: {
      nlohmann::ordered_json j{{"q", r.q}, {"x", r.x}, {"y", r.y}, {"a", r.a}, {"n", r.n}, {"u_min", r.u_min},
                               {"stable_digits", digits}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv: out << "q,x,y,a,n,u_min,stable_digits\n" << r.q << ',' << r.x << ',' << r.y << ',' << r.a << ','
                          << r.n << ',' << r.u_min << ',' << digits << '\n';
      break;
  }
}

inline void print_prediction(std::ostream& out, Format f, const Options& o, const Prediction& p) {
  const std::string u = p.applicable ? std::to_string(p.u) : "n/a";
  switch (f) {
    case Format::Text:
      out << "u=" << u << " case_tag=" << to_string(p.case_tag) << " variant=" << to_string(p.variant)
          << " formula=" << p.formula;
      if (p.clamped) out << " clamped(raw=" << p.raw_u << ")";
      if (p.convention) out << " convention";
      out << '\n';
      break;
    case Format::Json: {
      nlohmann::ordered_json j{{"q", o.q},
                               {"x", o.x},
                               {"y", o.y},
                               {"n", o.n},
                               {"u", p.applicable ? nlohmann::ordered_json(p.u) : nlohmann::ordered_json()},
                               {"raw_u", p.applicable ? nlohmann::ordered_json(p.raw_u) : nlohmann::ordered_json()},
                               {"case_tag", to_string(p.case_tag)},
                               {"variant", to_string(p.variant)},
                               {"applicable", p.applicable},
                               {"clamped", p.clamped},
                               {"convention", p.convention},
                               {"formula", p.formula}};
      out << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      out << "q,x,y,n,u,case_tag,variant,applicable,clamped,formula\n"
          << o.q << ',' << o.x << ',' << o.y << ',' << o.n << ',' << (p.applicable ? std::to_string(p.u) : "") << ','
          << to_string(p.case_tag) << ',' << to_string(p.variant) << ',' << (p.applicable ? "true" : "false") << ','
          << (p.clamped ? "true" : "false") << ',' << p.formula << '\n';
      break;
  }
}

inline nlohmann::ordered_json golden_json(const GoldenResult& g) {
  nlohmann::ordered_json printed = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.computed.size(); ++i)
    printed.push_back({{"h", g.computed[i].first},
                       {"expected", g.example.printed[i].second},
                       {"computed", g.computed[i].second.str()}});
  return {{"example", g.example.id},
          {"cell", to_json(g.cell)},
          {"claimed_u", g.example.claimed_u},
          {"claimed_minimum_confirmed", g.claimed_minimum_confirmed()},
          {"residues_match", g.residues_match},
          {"printed", printed},
          {"passed", g.passed()}};
}

inline void print_golden_text(std::ostream& out, const std::vector<GoldenResult>& golden) {
  for (const auto& g : golden) {
    const auto& c = g.cell;
    out << "golden example " << g.example.id << ": " << (g.passed() ? "PASS" : "FAIL") << "  q=" << c.q
        << " x=" << c.x << " y=" << c.y << " a=" << c.a << " n=" << c.n << " oracle_u=" << c.oracle_u
        << " predicted_u=" << (c.predicted_u() ? std::to_string(*c.predicted_u()) : "n/a")
        << " residues=" << (g.residues_match ? "match" : "DIFFER");
    if (!g.claimed_minimum_confirmed()) out << "  (claimed minimum " << g.example.claimed_u << " not minimal)";
    out << '\n';
  }
}

}  // namespace detail

/// Runs the tool with `args` (excluding the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trailing decimal digits of power towers and their stabilization heights", "towerdigits"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;
  app.add_option("--max-digits", o.max_digits,
                 std::string("Override the digit cap (default 200, or ") + kDigitCapEnv + ")");

  auto add_base = [&](CLI::App* sub, bool with_a) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("-q,--base", o.q, "Base q (not a multiple of 10)")->required();
    auto* x = sub->add_option("-x,--exp2", o.x, "2-adic exponent of E");
    auto* y = sub->add_option("-y,--exp5", o.y, "5-adic exponent of E");
    if (with_a) {
      auto* a = sub->add_option("-a,--cofactor", o.a, "Cofactor of E, coprime to 10");
      auto* e = sub->add_option("-E,--exponent", o.exponent, "Exponent E; factored into 2^x * 5^y * a");
      e->excludes(x)->excludes(y)->excludes(a);
    }
    sub->add_option("-n,--digits", o.n, "Number of trailing digits")->required();
    sub->add_option("--format", o.format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", o.out_path, "Write output to this file");
  };

  auto* compute = app.add_subcommand("compute", "Tower of height h mod 10^n");
  add_base(compute, true);
  compute->add_option("-h,--height", o.h, "Tower height (0 gives 1)")->required();

  auto* stable = app.add_subcommand("stable", "Residue of all sufficiently tall towers mod 10^n");
  add_base(stable, true);

  auto* minheight = app.add_subcommand("minheight", "Minimum stabilization height (oracle)");
  add_base(minheight, true);

  auto* predict_cmd = app.add_subcommand("predict", "Conjectured minimum stabilization height");
  add_base(predict_cmd, false);
  predict_cmd->add_option("--variant", o.variant, "as-written|example (q = 5 mod 10)");

  auto* verify = app.add_subcommand("verify", "Check the worked examples, then sweep a grid against the oracle");
  verify->set_help_flag("--help", "Print this help message and exit");
  verify->add_option("-q,--base", o.q_range, "Bases, e.g. 2..300 (multiples of 10 are dropped)");
  verify->add_option("-x,--exp2", o.x_range, "2-adic exponents, e.g. 2..5");
  verify->add_option("-y,--exp5", o.y_range, "5-adic exponents, e.g. 0..3");
  verify->add_option("-a,--cofactor", o.a_values, "Cofactors, e.g. 1,3,7");
  verify->add_option("-n,--digits", o.n_range, "Digit counts, e.g. 1..16");
  verify->add_option("--variant", o.variant, "as-written|example (q = 5 mod 10)");
  verify->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  verify->add_flag("--quiet", o.quiet, "Text mode: omit the per-cell mismatch listing");
  verify->add_option("--format", o.format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_option("--out", o.out_path, "Write output to this file");

  auto* table = app.add_subcommand("table", "Regenerate a published table against the oracle");
  table->set_help_flag("--help", "Print this help message and exit");
  table->add_option("--table", o.table, "T1..T7")->required();
  table->add_option("-n,--digits", o.n_range, "Digit range, e.g. 1..10");
  table->add_option("-x,--exp2", o.x_values, "x values for the x >= 2 column of T7");
  table->add_option("--variant", o.variant, "as-written|example (q = 5 mod 10)");
  table->add_option("--format", o.format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
  table->add_option("--out", o.out_path, "Write output to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitError;
  }

  std::ofstream file;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << o.out_path << " for writing\n";
      return kExitError;
    }
  }
  std::ostream& sink = o.out_path.empty() ? out : file;

  try {
    if (o.max_digits) set_digit_cap(o.max_digits);
    const Format format = parse_format(o.format);
    const Variant variant = parse_variant(o.variant);
    if (!o.exponent.empty()) {
      auto parts = split_exponent(o.exponent);
      o.x = parts.x;
      o.y = parts.y;
      o.a = parts.a;
      err << "exponent " << o.exponent << " = 2^" << o.x << " * 5^" << o.y << " * " << o.a << '\n';
    }

    if (compute->parsed()) {
      detail::print_compute(sink, format, o, tet_mod({o.q, o.x, o.y, o.a, o.h}, o.n), o.h);
    } else if (stable->parsed()) {
      validate_base(o.q, o.a);
      validate_digits(o.n);
      detail::print_compute(sink, format, o, stable_residue(o.q, o.x, o.y, o.a, o.n), stable_height(o.n));
    } else if (minheight->parsed()) {
      detail::print_minheight(sink, format, min_stable_height(o.q, o.x, o.y, o.a, o.n));
    } else if (predict_cmd->parsed()) {
      if (o.x < 2 && o.y != 0) throw std::invalid_argument("x < 2 predictions are only tabulated for y = 0");
      Prediction p = o.x >= 2 ? predict(o.q, o.x, o.y, o.n, variant) : predict_small_x(o.q, o.x, o.n, variant);
      detail::print_prediction(sink, format, o, p);
    } else if (verify->parsed()) {
      SweepConfig config = SweepConfig::default_grid();
      if (!o.q_range.empty()) config.qs = parse_range<std::uint64_t>(o.q_range);
      if (!o.x_range.empty()) config.xs = parse_range<unsigned>(o.x_range);
      if (!o.y_range.empty()) config.ys = parse_range<unsigned>(o.y_range);
      if (!o.a_values.empty()) config.as = parse_range<std::uint64_t>(o.a_values);
      if (!o.n_range.empty()) config.ns = parse_range<unsigned>(o.n_range);
      config.variant = variant;
      config.threads = o.threads;

      auto golden = check_golden_examples(variant);
      auto report = sweep(config);
      bool golden_ok = std::all_of(golden.begin(), golden.end(), [](const auto& g) { return g.passed(); });

      switch (format) {
        case Format::Text:
          detail::print_golden_text(sink, golden);
          write_text(sink, report, !o.quiet);
          break;
        case Format::Json: {
          auto j = to_json(report);
          auto g = nlohmann::ordered_json::array();
          for (const auto& r : golden) g.push_back(detail::golden_json(r));
          j["golden"] = std::move(g);
          sink << j.dump(2) << '\n';
          break;
        }
        case Format::Csv: write_csv(sink, report); break;
      }
      if (!golden_ok) {
        err << "one or more worked examples failed\n";
        return kExitGoldenFailed;
      }
    } else if (table->parsed()) {
      const TableId id = parse_table_id(o.table);
      auto ns = parse_range<unsigned>(o.n_range.empty() ? (id == TableId::T7 ? "1..12" : "1..10") : o.n_range);
      auto [lo, hi] = std::minmax_element(ns.begin(), ns.end());
      auto wide_xs = parse_range<unsigned>(o.x_values);
      if (std::any_of(wide_xs.begin(), wide_xs.end(), [](unsigned x) { return x < 2; }))
        throw std::invalid_argument("x values for the x >= 2 column must be at least 2");
      write(sink, table_gen(id, *lo, *hi, wide_xs, variant), format);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace towerdigits::cli
