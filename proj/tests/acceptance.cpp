// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N[,M...]] [--skip-table]
//
// Exit status is 0 when the set of failing criteria equals the expected set.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "girp/check.hpp"
#include "girp/cut.hpp"
#include "girp/fitting.hpp"
#include "girp/io.hpp"
#include "girp/oracle.hpp"
#include "girp/simulate.hpp"
#include "girp/solver.hpp"

using namespace girp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Problem load(const std::string& name) { return load_problem(std::string(GIRP_DATA_DIR) + "/" + name); }

std::string edge_str(const DataSet& d, const Edge& e) {
  return "(" + d.labels[static_cast<std::size_t>(e.from)] + "," + d.labels[static_cast<std::size_t>(e.to)] + ")";
}

// Level-set membership, accumulated over every modified fit made below.
struct LevelSetAudit {
  long fits = 0;
  long levels = 0;
  long misses = 0;

  void add(const Eigen::VectorXd& y, const FitResult& r, const LossSpec& spec) {
    ++fits;
    std::map<double, std::vector<int>> groups;
    for (int i = 0; i < r.g_hat.size(); ++i) groups[r.g_hat[i]].push_back(i);
    for (const auto& [c, members] : groups) {
      ++levels;
      Eigen::VectorXd sub(static_cast<Eigen::Index>(members.size()));
      for (std::size_t k = 0; k < members.size(); ++k) sub[static_cast<Eigen::Index>(k)] = y[members[k]];
      auto cf = constant_fit_interval(sub, spec);
      if (!cf.attained || !cf.interval.contains(c, 1e-9)) ++misses;
    }
  }
};

LevelSetAudit audit;

struct Verdict {
  bool pass;
  std::string detail;
};

const std::vector<double> kPublishedOriginal{3.75, 3.75, 3.75, 3.75, 6.1, 4.1, 3.75, 3.75, 6.1, 3.75, 3.75,
                                             3.75, 4.1,  3.75, 3.75, 3.75, 4.0, 4.0,  4.0,  4.0, 4.0,  4.0,
                                             4.0,  4.0,  5.0,  4.0,  4.0,  4.0, 5.0,  4.0,  5.0, 4.0};

Verdict counterexample_replay() {
  auto p = load("example1.json");
  auto spec = LossSpec::huber(0.9);
  auto t0 = Clock::now();
  auto r = fit(p.data.y, p.dag, spec, {.mode = Mode::Original});
  const double secs = seconds_since(t0);

  double err = 0;
  for (int i = 0; i < 32; ++i) err = std::max(err, std::abs(r.g_hat[i] - kPublishedOriginal[static_cast<std::size_t>(i)]));

  // Independent scan of the published vector over the edge list.
  std::vector<Edge> scan;
  for (const auto& e : p.dag.edges())
    if (kPublishedOriginal[static_cast<std::size_t>(e.from)] > kPublishedOriginal[static_cast<std::size_t>(e.to)])
      scan.push_back(e);
  auto has = [&](int a, int b) {
    return std::find(r.violations.begin(), r.violations.end(), Edge{a - 1, b - 1}) != r.violations.end();
  };

  std::ostringstream os;
  os << "max |g_hat - published| = " << err << ", violations";
  for (const auto& e : r.violations) os << ' ' << edge_str(p.data, e);
  os << ", " << secs << " s";
  if (r.violations.size() != 2) os << "; the published vector itself also breaks (9,13)";
  const bool ok = err <= 1e-9 && !r.isotonic && has(6, 30) && has(9, 30) && r.violations == scan && secs < 1.0;
  return {ok, os.str()};
}

Verdict modified_fix() {
  auto p = load("example1.json");
  auto spec = LossSpec::huber(0.9);
  auto t0 = Clock::now();
  auto r = fit(p.data.y, p.dag, spec);
  const double secs = seconds_since(t0);
  auto o = fit(p.data.y, p.dag, spec, {.mode = Mode::Original});
  audit.add(p.data.y, r, spec);

  std::map<int, double> expect;
  for (int id : {1, 2, 3, 4, 7, 8, 10, 11, 12, 14, 15, 16}) expect[id] = 3.75;
  for (int id : {5, 6, 9, 13}) expect[id] = 3.9;
  for (int id : {17, 18, 19, 20, 21, 22, 23, 24, 26, 27, 28, 30, 32}) expect[id] = 4.0;
  for (int id : {25, 29, 31}) expect[id] = 5.0;
  double err = 0;
  for (auto [id, v] : expect) err = std::max(err, std::abs(r.g_hat[id - 1] - v));

  std::ostringstream os;
  os << "max error " << err << ", isotonic " << r.isotonic << ", objective " << r.objective << " vs original "
     << o.objective << ", " << secs << " s";
  return {err <= 1e-9 && r.isotonic && r.objective <= o.objective + 1e-9 && secs < 1.0, os.str()};
}

struct SigmaRow {
  std::vector<int> up, low;  // external ids
  IntervalD s_up, s_low, diff;
};

Verdict hinge_fixture() {
  auto p = load("hinge3.json");
  auto spec = LossSpec::hinge();
  using I = IntervalD;
  // Rows per subproblem (X, then {1,2}, then {2,3}); every subproblem is evaluated at b = 1.
  const std::vector<SigmaRow> rows{
      {{1, 2, 3}, {}, I(-1, 1), I(0), I(-1, 1)},   {{1, 2}, {}, I(0, 2), I(0), I(0, 2)},
      {{1, 2}, {3}, I(0, 2), I(-1), I(1, 3)},      {{1}, {}, I(0, 1), I(0), I(0, 1)},
      {{1}, {3}, I(0, 1), I(-1), I(1, 2)},         {{1}, {2, 3}, I(0, 1), I(-1, 0), I(0, 2)},
      {{}, {}, I(0), I(0), I(0)},                  {{}, {3}, I(0), I(-1), I(1)},
      {{}, {2, 3}, I(0), I(-1, 0), I(0, 1)},       {{}, {1, 2, 3}, I(0), I(-1, 1), I(-1, 1)},
      {{1, 2}, {}, I(0, 2), I(0), I(0, 2)},        {{1}, {}, I(0, 1), I(0), I(0, 1)},
      {{1}, {2}, I(0, 1), I(0, 1), I(-1, 1)},      {{}, {}, I(0), I(0), I(0)},
      {{}, {2}, I(0), I(0, 1), I(-1, 0)},          {{}, {1, 2}, I(0), I(0, 2), I(-2, 0)},
      {{2, 3}, {}, I(-1, 0), I(0), I(-1, 0)},      {{2}, {}, I(0, 1), I(0), I(0, 1)},
      {{2}, {3}, I(0, 1), I(-1), I(1, 2)},         {{}, {}, I(0), I(0), I(0)},
      {{}, {3}, I(0), I(-1), I(1)},                {{}, {2, 3}, I(0), I(-1, 0), I(0, 1)},
  };
  auto subset = [&](const std::vector<int>& ids) {
    NodeSubset s(3);
    for (int id : ids) s.insert(id - 1);
    return s;
  };
  int mismatches = 0;
  for (const auto& row : rows) {
    auto su = sigma(subset(row.up), 1.0, p.data.y, spec);
    auto sl = sigma(subset(row.low), 1.0, p.data.y, spec);
    if (su != row.s_up || sl != row.s_low || su - sl != row.diff) ++mismatches;
  }

  auto part = find_partition(p.dag, p.data.y, spec, 1.0);
  auto r = fit(p.data.y, p.dag, spec);
  audit.add(p.data.y, r, spec);
  const auto& root = r.tree.nodes.front();
  const bool pair_ok = !root.leaf() && r.tree.nodes[static_cast<std::size_t>(root.lower)].subset == std::vector<int>{2} &&
                       r.tree.nodes[static_cast<std::size_t>(root.upper)].subset == std::vector<int>{0, 1};

  std::ostringstream os;
  os << rows.size() << " table rows, " << mismatches << " mismatches; optimum " << part.objective
     << ", first split ({3},{1,2}) " << pair_ok << ", g_hat == g " << (r.g_hat == p.data.y);
  return {mismatches == 0 && std::abs(part.objective - 1) < 1e-12 && pair_ok && r.g_hat == p.data.y, os.str()};
}

Verdict oracle_equivalence() {
  auto t0 = Clock::now();
  Rng rng(4242);
  std::ostringstream os;
  bool ok = true;
  for (auto spec : {LossSpec::squared(), LossSpec::huber(0.9), LossSpec::eps_insensitive(0.5), LossSpec::hinge()}) {
    int fails = 0;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
      auto inst = random_instance(rng, 3 + t % 4, spec);
      auto c = compare_with_oracle(inst, spec);
      worst = std::max(worst, std::abs(c.gap()));
      if (!c.pass()) ++fails;
      audit.add(inst.y, fit(inst.y, inst.dag, spec), spec);
    }
    ok &= fails == 0;
    os << to_string(spec) << " " << fails << " fail (max gap " << worst << "); ";
  }
  const double secs = seconds_since(t0);
  os << secs << " s";
  return {ok && secs < 120, os.str()};
}

Verdict pava_cross_check() {
  Rng rng(77);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.next() % 100);
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    PartialOrderDag chain(n, e);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.uniform(-5, 5) + 0.05 * i;
    auto r = fit(y, chain, LossSpec::squared());
    audit.add(y, r, LossSpec::squared());
    worst = std::max(worst, (r.g_hat - pava(y, chain, LossSpec::squared())).cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << "100 chains, max |fit - pava| = " << worst;
  return {worst <= 1e-9, os.str()};
}

Verdict intermediate_isotonicity() {
  Rng rng(606);
  std::vector<LossSpec> specs{LossSpec::squared(), LossSpec::huber(0.9), LossSpec::eps_insensitive(0.5),
                              LossSpec::hinge()};
  long truncations = 0, bad = 0;
  int max_height = 0;
  for (int t = 0; t < 200; ++t) {
    const auto& spec = specs[static_cast<std::size_t>(t) % specs.size()];
    auto inst = random_instance(rng, 5 + static_cast<int>(rng.next() % 36), spec, 0.15);
    auto r = fit(inst.y, inst.dag, spec);
    audit.add(inst.y, r, spec);
    max_height = std::max(max_height, r.tree.height());
    for (int d = 0; d <= r.tree.height(); ++d, ++truncations)
      if (!truncate(r, d, inst.dag, inst.y, spec).isotonic) ++bad;
  }
  return {bad == 0, "200 trees, " + std::to_string(truncations) + " truncations, " + std::to_string(bad) +
                        " non-isotonic, tallest tree " + std::to_string(max_height)};
}

Verdict table_reproduction() {
  auto t0 = Clock::now();
  const std::vector<double> deltas{0.1, 0.5, 0.9, 3.0, 5.0};
  std::map<std::pair<int, int>, std::vector<int>> original;
  int modified_total = 0, failures = 0;
  std::ostringstream rows;
  for (int m = 1; m <= 4; ++m) {
    for (int n : {50, 100, 1000}) {
      SimConfig cfg{.model = static_cast<SimModel>(m), .n = n, .deltas = deltas};
      auto rep = simulate(cfg);
      auto& counts = original[{m, n}];
      rows << "    M" << m << " n=" << n << ":";
      for (const auto& c : rep.cells) {
        counts.push_back(c.original_violations);
        modified_total += c.modified_violations;
        failures += c.failures;
        rows << ' ' << c.original_violations << '/' << c.modified_violations;
      }
      rows << '\n';
    }
  }
  const double secs = seconds_since(t0);

  std::ostringstream os;
  bool ok = true;
  auto clause = [&](bool pass, const std::string& what) {
    ok &= pass;
    os << "  " << (pass ? "ok  " : "FAIL") << "  " << what << '\n';
  };
  clause(original[{1, 100}][0] >= 80, "M1 n=100 delta=0.1 >= 80: " + std::to_string(original[{1, 100}][0]));
  clause(original[{1, 50}][4] <= 10, "M1 n=50 delta=5 <= 10: " + std::to_string(original[{1, 50}][4]));
  clause(original[{3, 1000}][0] == 100, "M3 n=1000 delta=0.1 == 100: " + std::to_string(original[{3, 1000}][0]));
  for (const auto& [key, counts] : original) {
    bool mono = true;
    for (std::size_t i = 0; i < counts.size(); ++i)
      for (std::size_t j = i + 1; j < counts.size(); ++j) mono &= counts[j] <= counts[i] + 5;
    if (!mono)
      clause(false, "nonincreasing within 5 counts, M" + std::to_string(key.first) + " n=" + std::to_string(key.second));
  }
  clause(modified_total == 0, "modified mode violations in all cells: " + std::to_string(modified_total));
  clause(failures == 0, "fits that threw: " + std::to_string(failures));
  clause(secs < 600, "runtime " + std::to_string(secs) + " s");
  return {ok, "original/modified counts for delta 0.1 0.5 0.9 3 5\n" + rows.str() + os.str()};
}

Verdict level_set_certificate() {
  auto h = load("hinge3.json");
  audit.add(h.data.y, fit(h.data.y, h.dag, LossSpec::hinge()), LossSpec::hinge());
  Rng rng(99);
  for (auto spec : {LossSpec::logistic(), LossSpec::huber(0.2), LossSpec::squared()}) {
    for (int t = 0; t < 100; ++t) {
      auto inst = random_instance(rng, 2 + t % 30, spec);
      try {
        audit.add(inst.y, fit(inst.y, inst.dag, spec), spec);
      } catch (const NoMinimizer&) {
      }
    }
  }
  return {audit.misses == 0, std::to_string(audit.fits) + " fits, " + std::to_string(audit.levels) + " level sets, " +
                                 std::to_string(audit.misses) + " outside their constant-fit interval"};
}

Verdict logistic_nonexistence() {
  Eigen::Vector2d y(1, -1);
  PartialOrderDag order(2, {{1, 0}});
  bool threw = false;
  std::string where;
  try {
    fit(y, order, LossSpec::logistic());
  } catch (const NoMinimizer& e) {
    threw = true;
    for (int x : e.subset()) where += " " + std::to_string(x + 1);
  }
  auto h = fit(y, order, LossSpec::hinge());
  std::ostringstream os;
  os << "logistic NoMinimizer " << threw << " on {" << where << " }, hinge objective " << h.objective
     << ", isotonic " << h.isotonic;
  return {threw && h.objective == 0 && h.isotonic, os.str()};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  bool skip_table = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expected_fail = parse_list(argv[++i]);
    } else if (a == "--skip-table") {
      skip_table = true;
    } else {
      std::cerr << "usage: acceptance [--expect-fail N[,M...]] [--skip-table]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"counterexample replay", counterexample_replay},
      {"modified-mode fix", modified_fix},
      {"hinge fixture", hinge_fixture},
      {"oracle equivalence", oracle_equivalence},
      {"PAVA cross-check", pava_cross_check},
      {"intermediate isotonicity", intermediate_isotonicity},
      {"simulation table, banded counts", table_reproduction},
      {"level-set certificate", level_set_certificate},
      {"logistic nonexistence", logistic_nonexistence},
  };

  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (id == 7 && skip_table) {
      std::cout << "SKIP " << id << " " << criteria[k].first << "\n" << std::flush;
      expected_fail.erase(id);
      continue;
    }
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) failed.insert(id);
    std::cout << (v.pass ? "PASS " : "FAIL ") << id << " " << criteria[k].first;
    if (!v.pass && expected_fail.count(id)) std::cout << " (known)";
    std::cout << ": " << v.detail << "\n" << std::flush;
  }

  if (failed == expected_fail) return 0;
  for (int id : expected_fail)
    if (!failed.count(id)) std::cout << "criterion " << id << " was expected to fail but passed\n";
  return 1;
}
