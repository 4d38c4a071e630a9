// Acceptance runner. Prints one PASS/FAIL line per criterion, preceded by
// indented detail lines. Usage: acceptance [--criterion N]

#include "towerdigits/report.hpp"
#include "towerdigits/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

using namespace towerdigits;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool verdict(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
  return ok;
}

bool golden_residues() {
  bool ok = true;
  for (const auto& ex : golden_examples()) {
    const auto t0 = Clock::now();
    bool match = true;
    for (const auto& [h, digits] : ex.printed) {
      const BigInt got = tet_mod({ex.q, ex.x, ex.y, ex.a, h}, ex.n);
      const bool same = got == BigInt(digits);
      match = match && same;
      std::cout << "  example " << ex.id << " q=" << ex.q << " n=" << ex.n << " h=" << h << ": "
                << (same ? "match" : "DIFFERS got " + to_digits(got, ex.n)) << '\n';
    }
    const double dt = seconds_since(t0);
    std::cout << "  example " << ex.id << " time " << dt << " s\n";
    ok = ok && match && dt < 1.0;
  }
  // Example 1 and 2 also print a differing predecessor; it must differ from the stable value.
  for (const auto& ex : golden_examples()) {
    if (ex.printed.size() < 3) continue;
    ok = ok && ex.printed[0].second == ex.printed[1].second && ex.printed[2].second != ex.printed[0].second;
  }
  return verdict(1, ok, "worked-example residues reproduce digit for digit");
}

bool golden_heights() {
  bool ok = true;
  for (const auto& ex : golden_examples()) {
    const auto rec = min_stable_height(ex.q, ex.x, ex.y, ex.a, ex.n);
    const bool same = rec.u_min == ex.claimed_u;
    ok = ok && same;
    std::cout << "  example " << ex.id << " q=" << ex.q << " n=" << ex.n << ": claimed " << ex.claimed_u
              << ", oracle " << rec.u_min << (same ? "" : "  <- differs") << '\n';
    if (!same && rec.u_min < ex.claimed_u) {
      const BigInt below = tet_mod({ex.q, ex.x, ex.y, ex.a, rec.u_min}, ex.n);
      std::cout << "    height " << rec.u_min << " already gives the stable residue " << to_digits(below, ex.n)
                << (below == rec.stable_digits ? "" : " (?)") << '\n';
      if (rec.u_min > 0)
        std::cout << "    height " << rec.u_min - 1 << " gives "
                  << to_digits(tet_mod({ex.q, ex.x, ex.y, ex.a, rec.u_min - 1}, ex.n), ex.n) << '\n';
    }
  }
  return verdict(2, ok, "oracle minimum heights equal the claimed 5, 7, 7, 4, 3, 4");
}

bool prime_table() {
  const auto t0 = Clock::now();
  const auto report = table_gen(TableId::T7, 1, 12, {2, 3});
  std::size_t wide = 0, backed = 0, backed_bad = 0, deviations = 0;
  std::map<std::string, std::string> findings;
  for (const auto& c : report.cells) {
    if (c.column != "f(x,0,n)" || !c.agree) continue;
    ++wide;
    if (c.formula_backed) ++backed;
    if (*c.agree) continue;
    ++deviations;
    if (c.formula_backed) ++backed_bad;
    auto& line = findings["p=" + std::to_string(c.q) + " x=" + std::to_string(c.x) + " form=" + c.form +
                          (c.formula_backed ? " [formula-backed]" : " [table only]")];
    line += (line.empty() ? "" : " ") + std::to_string(c.n) + ":" + std::to_string(*c.closed_u) + "/" +
            std::to_string(*c.oracle_u);
  }
  std::cout << "  x>=2 cells: " << wide << ", " << backed
            << " formula-backed, " << deviations << " deviations (" << backed_bad << " formula-backed)\n";
  for (const auto& [k, v] : findings) std::cout << "  deviation " << k << "  n:table/oracle " << v << '\n';
  std::cout << "  time " << seconds_since(t0) << " s\n";
  return verdict(3, backed_bad == 0, "prime table x>=2 column: every formula-backed cell agrees with the oracle");
}

bool small_x_tables() {
  bool ok = true;
  for (auto id : {TableId::T1, TableId::T2, TableId::T3, TableId::T4, TableId::T5}) {
    const auto r = table_gen(id, 1, 10);
    const auto again = table_gen(id, 1, 10);
    bool complete = true;
    if (r.cells.size() != table_rows(id).size() * 20) complete = false;
    std::map<std::string, std::string> bad;
    for (const auto& c : r.cells) {
      if (c.convention) continue;
      if (c.form.empty()) continue;
      if (!c.oracle_u || !c.agree) complete = false;
      if (c.agree && !*c.agree)
        bad["q=" + std::to_string(c.q) + " " + c.column + " form=" + c.form + (c.flagged ? " [flagged anomaly]" : "")] +=
            " " + std::to_string(c.n) + ":" + std::to_string(*c.closed_u) + "/" + std::to_string(*c.oracle_u);
    }
    const bool deterministic = r == again;
    std::cout << "  " << table_name(id) << ": " << r.cells.size() << " cells, agree " << r.agree_count
              << ", disagree " << r.disagree_count << ", no claim " << r.no_claim_count
              << (complete ? ", complete" : ", INCOMPLETE") << (deterministic ? ", deterministic" : ", NONDETERMINISTIC")
              << '\n';
    for (const auto& [k, v] : bad) std::cout << "    disagree " << k << "  n:table/oracle" << v << '\n';
    ok = ok && complete && deterministic;
  }
  return verdict(4, ok, "small-x tables checked for n in 1..10; report complete and deterministic");
}

bool sweep_grid() {
  const auto t0 = Clock::now();
  const auto config = SweepConfig::default_grid();
  const auto report = sweep(config);
  const double dt = seconds_since(t0);
  const auto& w = report.variant_wins;
  const auto winner = w.winner();
  std::cout << "  grid " << report.config_digest << '\n';
  std::cout << "  cells " << report.cells.size() << "  pass " << report.pass_count << "  fail " << report.fail_count
            << "  skip " << report.skip_count << "  time " << dt << " s\n";
  std::map<std::string, std::size_t> by_case;
  for (const auto& c : report.cells)
    if (c.status == Status::Mismatch) ++by_case[std::string(to_string(c.case_tag))];
  for (const auto& [k, v] : by_case) std::cout << "  mismatches " << k << ": " << v << '\n';
  std::cout << "  MOD10_5 cells " << w.cells << ": AS_WRITTEN matches " << w.as_written << ", EXAMPLE_CONSISTENT matches "
            << w.example << ", winner " << (winner ? to_string(*winner) : std::string_view("tie")) << '\n';

  const bool completed = report.cells.size() ==
                         config.qs.size() * config.xs.size() * config.ys.size() * config.as.size() * config.ns.size();
  const bool decided = winner.has_value();
  const bool default_is_winner = decided && *winner == kDefaultVariant;

  const auto& ex5 = golden_examples()[4];
  const auto chosen = verify_cell(ex5.q, ex5.x, ex5.y, ex5.a, ex5.n, kDefaultVariant);
  const auto named = verify_cell(ex5.q, ex5.x, ex5.y, ex5.a, ex5.n, Variant::ExampleConsistent);
  std::cout << "  example 5 cell: oracle " << chosen.oracle_u << ", " << to_string(kDefaultVariant) << " predicts "
            << *chosen.predicted_u() << ", EXAMPLE_CONSISTENT predicts " << *named.predicted_u() << '\n';
  auto sub = [](const char* tag, bool ok, const std::string& what) {
    std::cout << "  " << tag << ' ' << (ok ? "ok" : "NOT MET") << ": " << what << '\n';
    return ok;
  };
  bool ok = sub("5a", completed, "default grid completes");
  ok = sub("5b", decided, "variant tally picks a winner") && ok;
  ok = sub("5c", default_is_winner && chosen.status == Status::Match,
           "default variant is the tally winner and matches the oracle on example 5") && ok;
  ok = sub("5d", named.status == Status::Match, "EXAMPLE_CONSISTENT matches the oracle on example 5") && ok;
  return verdict(5, ok, "default-grid sweep, variant tally, and the example 5 cell under EXAMPLE_CONSISTENT");
}

bool property_suites() {
  bool ok = true;
  for (const char* suite : {TOWERDIGITS_TEST_MODMATH, TOWERDIGITS_TEST_TOWER, TOWERDIGITS_TEST_CONJECTURE,
                            TOWERDIGITS_TEST_VERIFY}) {
    const std::string cmd = std::string("\"") + suite + "\" --gtest_brief=1";
    const int rc = std::system(cmd.c_str());
    std::cout << "  " << suite << ": " << (rc == 0 ? "all passed" : "FAILURES") << std::endl;
    ok = ok && rc == 0;
  }
  return verdict(6, ok, "modmath, tower, conjecture and verify property suites");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion 1..6]\n";
      return 2;
    }
  }
  if (only < 0 || only > 6) {
    std::cerr << "criterion must be 1..6\n";
    return 2;
  }

  bool (*const criteria[])() = {golden_residues, golden_heights, prime_table, small_x_tables, sweep_grid,
                                property_suites};
  bool ok = true;
  for (int i = 1; i <= 6; ++i)
    if (only == 0 || only == i) ok = criteria[i - 1]() && ok;
  return ok ? 0 : 1;
}
