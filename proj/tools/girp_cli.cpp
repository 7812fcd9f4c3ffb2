#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "girp/check.hpp"
#include "girp/io.hpp"
#include "girp/oracle.hpp"
#include "girp/solver.hpp"

namespace {

enum Exit { Ok = 0, ParseFailure = 1, SolverFailure = 2, Violation = 3, CheckFailure = 4 };

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

const std::vector<std::string> kTieNames{"auto", "positional", "positional-nonempty", "minimal", "minimal-nonempty",
                                         "maximal"};

std::optional<girp::TieBreak> parse_ties(const std::string& name) {
  if (name == "positional") return girp::TieBreak::Positional;
  if (name == "positional-nonempty") return girp::TieBreak::PositionalNonempty;
  if (name == "minimal") return girp::TieBreak::Minimal;
  if (name == "minimal-nonempty") return girp::TieBreak::MinimalNonempty;
  if (name == "maximal") return girp::TieBreak::Maximal;
  return std::nullopt;
}

struct FitArgs {
  std::string input, loss = "squared", mode = "modified", root = "mid", ties = "auto";
  std::string tree_out, dot_out;
  int max_depth = -1;
  bool json = false;
};

int run_fit(const FitArgs& a) {
  girp::Problem problem;
  girp::LossSpec spec;
  girp::FitOptions options;
  try {
    spec = girp::parse_loss(a.loss);
    problem = girp::load_problem(a.input);
    girp::validate(problem.dag);
    girp::validate_responses(spec, problem.data.y);
  } catch (const girp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  }
  options.mode = a.mode == "original" ? girp::Mode::Original : girp::Mode::Modified;
  options.root = a.root == "lo" ? girp::RootPolicy::Lo : a.root == "hi" ? girp::RootPolicy::Hi : girp::RootPolicy::Midpoint;
  options.ties = parse_ties(a.ties);
  if (a.max_depth >= 0) options.max_depth = a.max_depth;

  girp::FitResult r;
  try {
    r = girp::fit(problem.data.y, problem.dag, spec, options);
  } catch (const girp::NoMinimizer& e) {
    std::cerr << "error: " << e.what() << " on subset {";
    for (std::size_t i = 0; i < e.subset().size(); ++i)
      std::cerr << (i ? "," : "") << problem.data.labels[static_cast<std::size_t>(e.subset()[i])];
    std::cerr << "}\n";
    return SolverFailure;
  } catch (const girp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return SolverFailure;
  }

  const auto& data = problem.data;
  if (a.json) {
    nlohmann::json out;
    out["loss"] = girp::to_string(spec);
    out["mode"] = a.mode;
    out["fit"] = nlohmann::json::array();
    for (int i = 0; i < problem.dag.size(); ++i)
      out["fit"].push_back({{"id", girp::label_json(data, i)}, {"y", data.y[i]}, {"fit", r.g_hat[i]}});
    out["objective"] = r.objective;
    out["isotonic"] = r.isotonic;
    out["violations"] = nlohmann::json::array();
    for (const auto& e : r.violations)
      out["violations"].push_back({girp::label_json(data, e.from), girp::label_json(data, e.to)});
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "id\ty\tfit\n";
    for (int i = 0; i < problem.dag.size(); ++i)
      std::cout << data.labels[static_cast<std::size_t>(i)] << '\t' << fmt(data.y[i]) << '\t' << fmt(r.g_hat[i]) << '\n';
    std::cout << "objective " << fmt(r.objective) << "\n";
    std::cout << "isotonic " << (r.isotonic ? "true" : "false") << "\n";
    for (const auto& e : r.violations)
      std::cout << "violation (" << data.labels[static_cast<std::size_t>(e.from)] << ","
                << data.labels[static_cast<std::size_t>(e.to)] << ") " << fmt(r.g_hat[e.from]) << " > "
                << fmt(r.g_hat[e.to]) << "\n";
  }

  if (!a.tree_out.empty()) {
    std::ofstream f(a.tree_out);
    f << girp::tree_to_json(r.tree, data).dump(1) << "\n";
    if (!f) {
      std::cerr << "error: cannot write " << a.tree_out << "\n";
      return ParseFailure;
    }
  }
  if (!a.dot_out.empty()) {
    std::ofstream f(a.dot_out);
    f << girp::tree_to_dot(r.tree, data);
    if (!f) {
      std::cerr << "error: cannot write " << a.dot_out << "\n";
      return ParseFailure;
    }
  }
  return r.isotonic ? Ok : Violation;
}

struct SimArgs {
  int model = 1, n = 100, d = 2, reps = 100;
  std::vector<double> deltas{0.1};
  std::uint64_t seed = 20240601;
  std::string mode = "both";
  std::string ties = "auto";
  bool json = false;
};

int run_simulate(const SimArgs& a) {
  girp::SimConfig c;
  c.model = static_cast<girp::SimModel>(a.model);
  c.n = a.n;
  c.d = a.d;
  c.reps = a.reps;
  c.deltas = a.deltas;
  c.seed = a.seed;
  c.run_original = a.mode != "modified";
  c.run_modified = a.mode != "original";
  c.original_ties = parse_ties(a.ties).value_or(girp::default_ties(girp::Mode::Original));
  girp::SimReport report;
  try {
    report = girp::simulate(c);
  } catch (const girp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  }
  if (a.json) {
    nlohmann::json out{{"model", a.model}, {"n", a.n}, {"d", a.d}, {"reps", a.reps}, {"seed", a.seed},
                       {"redraws", report.redraws}, {"cells", nlohmann::json::array()}};
    for (const auto& cell : report.cells) {
      nlohmann::json j{{"delta", cell.delta}, {"failures", cell.failures}};
      if (c.run_original) j["original_violations"] = cell.original_violations;
      if (c.run_modified) j["modified_violations"] = cell.modified_violations;
      out["cells"].push_back(j);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "model\tn\tdelta\treps";
    if (c.run_original) std::cout << "\toriginal";
    if (c.run_modified) std::cout << "\tmodified";
    std::cout << "\tfailures\n";
    for (const auto& cell : report.cells) {
      std::cout << a.model << '\t' << a.n << '\t' << fmt(cell.delta) << '\t' << a.reps;
      if (c.run_original) std::cout << '\t' << cell.original_violations;
      if (c.run_modified) std::cout << '\t' << cell.modified_violations;
      std::cout << '\t' << cell.failures << '\n';
    }
    if (report.redraws) std::cerr << "note: " << report.redraws << " replicates redrawn (duplicate covariates)\n";
  }
  for (const auto& cell : report.cells)
    if (cell.failures) return SolverFailure;
  return Ok;
}

struct CheckArgs {
  int size = 5, trials = 200;
  std::string loss = "huber:0.9";
  std::uint64_t seed = 1;
  double step = 0.05;
};

int run_oracle_check(const CheckArgs& a) {
  girp::LossSpec spec;
  try {
    spec = girp::parse_loss(a.loss);
  } catch (const girp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ParseFailure;
  }
  if (a.size < 1 || a.size > girp::kOracleMaxNodes) {
    std::cerr << "error: --size must be in 1.." << girp::kOracleMaxNodes << "\n";
    return ParseFailure;
  }
  girp::Rng rng(a.seed);
  double max_gap = 0;
  int skipped = 0;
  for (int t = 0; t < a.trials; ++t) {
    auto inst = girp::random_instance(rng, a.size, spec);
    auto c = girp::compare_with_oracle(inst, spec, a.step);
    if (c.no_minimizer) {
      ++skipped;
      continue;
    }
    max_gap = std::max(max_gap, c.gap());
    if (!c.pass()) {
      girp::DataSet data;
      for (int i = 0; i < a.size; ++i) data.labels.push_back(std::to_string(i));
      data.y = inst.y;
      std::cout << "FAIL trial " << t << ": solver " << fmt(c.solver_objective) << ", oracle "
                << fmt(c.oracle_objective) << ", tolerance " << fmt(c.tolerance)
                << (c.isotonic ? "" : ", not isotonic") << "\n";
      std::cout << girp::problem_to_json(data, inst.dag).dump() << "\n";
      return CheckFailure;
    }
  }
  std::cout << "PASS " << a.trials - skipped << " trials (" << skipped << " without minimizer), max gap "
            << fmt(max_gap) << "\n";
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotonic regression on partial orders by recursive partitioning"};
  app.require_subcommand(1);

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Fit an isotonic function to a data file");
  fit->add_option("--input", fa.input, "JSON or CSV input")->required()->check(CLI::ExistingFile);
  fit->add_option("--loss", fa.loss, "squared | huber:<d> | eps:<e> | logistic | hinge");
  fit->add_option("--mode", fa.mode)->check(CLI::IsMember({"modified", "original"}));
  fit->add_option("--root", fa.root, "fit of the root within its constant-fit interval")
      ->check(CLI::IsMember({"mid", "lo", "hi"}));
  fit->add_option("--ties", fa.ties, "selection among optimal cuts")
      ->check(CLI::IsMember(kTieNames));
  fit->add_option("--max-depth", fa.max_depth, "stop splitting below this depth");
  fit->add_option("--tree-out", fa.tree_out, "write the partition tree as JSON");
  fit->add_option("--dot-out", fa.dot_out, "write the partition tree as Graphviz DOT");
  fit->add_flag("--json", fa.json, "machine-readable report");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "Count isotonicity violations over random replicates");
  sim->add_option("--model", sa.model)->check(CLI::Range(1, 4));
  sim->add_option("--n", sa.n)->check(CLI::PositiveNumber);
  sim->add_option("--d", sa.d)->check(CLI::PositiveNumber);
  sim->add_option("--delta", sa.deltas, "Huber delta; repeat or comma-separate")->delimiter(',');
  sim->add_option("--reps", sa.reps)->check(CLI::PositiveNumber);
  sim->add_option("--seed", sa.seed);
  sim->add_option("--mode", sa.mode)->check(CLI::IsMember({"original", "modified", "both"}));
  sim->add_option("--ties", sa.ties, "cut selection in original mode")
      ->check(CLI::IsMember(kTieNames));
  sim->add_flag("--json", sa.json);

  CheckArgs ca;
  auto* check = app.add_subcommand("oracle-check", "Compare the solver against brute force on random instances");
  check->add_option("--size", ca.size);
  check->add_option("--loss", ca.loss);
  check->add_option("--trials", ca.trials)->check(CLI::NonNegativeNumber);
  check->add_option("--seed", ca.seed);
  check->add_option("--step", ca.step)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : ParseFailure;
  }

  if (*fit) return run_fit(fa);
  if (*sim) return run_simulate(sa);
  return run_oracle_check(ca);
}
