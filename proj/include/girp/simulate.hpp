#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "girp/cut.hpp"

namespace girp {

// xoshiro256** seeded through splitmix64; identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // Box-Muller, standard normal
  long poisson(double mean);             // inversion below 10, PTRS rejection above

 private:
  std::array<std::uint64_t, 4> s_;
  bool has_spare_ = false;
  double spare_ = 0;
};

std::uint64_t splitmix64(std::uint64_t& state);

enum class SimModel { M1 = 1, M2, M3, M4 };

struct SimConfig {
  SimModel model = SimModel::M1;
  int n = 100;
  int d = 2;
  std::vector<double> deltas{0.1};
  int reps = 100;
  std::uint64_t seed = 20240601;
  bool run_original = true;
  bool run_modified = true;
  TieBreak original_ties = TieBreak::PositionalNonempty;
};

struct SimSample {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

// Covariates and responses of one replicate.
SimSample draw_sample(SimModel model, int n, int d, Rng& rng);

// Stream for (seed, model, n, replicate); shared by every delta of a row.
Rng replicate_rng(std::uint64_t seed, SimModel model, int n, int replicate);

struct SimCell {
  double delta = 0;
  int original_violations = 0;  // replicates with at least one violated edge
  int modified_violations = 0;
  int failures = 0;             // fits that threw
};

struct SimReport {
  SimConfig config;
  std::vector<SimCell> cells;  // one per delta, in config order
  int redraws = 0;             // replicates redrawn because of duplicate covariates
};

// Worker count from ISO_GIRP_THREADS, else hardware concurrency.
unsigned worker_count();

SimReport simulate(const SimConfig& config);

}  // namespace girp
