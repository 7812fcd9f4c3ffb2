#include "girp/simulate.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "girp/errors.hpp"
#include "girp/order.hpp"
#include "girp/solver.hpp"

namespace girp {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Rng::next() {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0;
  while (u1 == 0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

long Rng::poisson(double mean) {
  if (!(mean >= 0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and nonnegative");
  if (mean == 0) return 0;
  if (mean < 10) {
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }
  // Hormann's transformed rejection with squeeze.
  const double slam = std::sqrt(mean), loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long>(k);
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <= -mean + k * loglam - std::lgamma(k + 1))
      return static_cast<long>(k);
  }
}

SimSample draw_sample(SimModel model, int n, int d, Rng& rng) {
  if (n < 1 || d < 1) throw DomainError("sample size and dimension must be positive");
  double lo = 0, hi = 10;
  switch (model) {
    case SimModel::M1: lo = 0, hi = 10; break;
    case SimModel::M2: lo = 5, hi = 10; break;
    case SimModel::M3: lo = 0, hi = 3; break;
    case SimModel::M4: lo = 0, hi = 5; break;
  }
  SimSample s{Eigen::MatrixXd(n, d), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) s.x(i, j) = rng.uniform(lo, hi);
  for (int i = 0; i < n; ++i) {
    double prod = 1;
    switch (model) {
      case SimModel::M1:
        for (int j = 0; j < d; ++j) prod *= std::sqrt(s.x(i, j));
        s.y[i] = static_cast<double>(rng.poisson(prod));
        break;
      case SimModel::M2:
        for (int j = 0; j < d; ++j) prod *= s.x(i, j) * s.x(i, j);
        s.y[i] = static_cast<double>(rng.poisson(prod));
        break;
      case SimModel::M3:
        for (int j = 0; j < d; ++j) prod *= s.x(i, j);
        s.y[i] = prod + 2.0 * rng.normal();
        break;
      case SimModel::M4:
        for (int j = 0; j < d; ++j) prod *= s.x(i, j) * s.x(i, j);
        s.y[i] = prod + 3.0 * rng.normal();
        break;
    }
  }
  return s;
}

Rng replicate_rng(std::uint64_t seed, SimModel model, int n, int replicate) {
  std::uint64_t state = seed;
  std::uint64_t key = splitmix64(state);
  for (std::uint64_t part : {static_cast<std::uint64_t>(model), static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(replicate)}) {
    state = key ^ part;
    key = splitmix64(state);
  }
  return Rng(key);
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ISO_GIRP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, hw));
    } catch (const std::exception&) {
    }
  }
  return hw;
}

namespace {

struct ReplicateOutcome {
  std::vector<std::uint8_t> original_violated, modified_violated, failed;
  int redraws = 0;
};

ReplicateOutcome run_replicate(const SimConfig& c, int replicate) {
  const std::size_t k = c.deltas.size();
  ReplicateOutcome out{std::vector<std::uint8_t>(k), std::vector<std::uint8_t>(k), std::vector<std::uint8_t>(k), 0};
  Rng rng = replicate_rng(c.seed, c.model, c.n, replicate);
  SimSample sample;
  PartialOrderDag dag;
  for (;;) {
    sample = draw_sample(c.model, c.n, c.d, rng);
    try {
      dag = dominance_order(sample.x);
      break;
    } catch (const DuplicatePoint&) {
      ++out.redraws;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto spec = LossSpec::huber(c.deltas[i]);
    try {
      if (c.run_original) {
        FitOptions o;
        o.mode = Mode::Original;
        o.ties = c.original_ties;
        out.original_violated[i] = !fit(sample.y, dag, spec, o).isotonic;
      }
      if (c.run_modified) out.modified_violated[i] = !fit(sample.y, dag, spec).isotonic;
    } catch (const Error&) {
      out.failed[i] = 1;
    }
  }
  return out;
}

}  // namespace

SimReport simulate(const SimConfig& config) {
  if (config.n < 1 || config.reps < 1 || config.d < 1) throw DomainError("n, d and reps must be positive");
  for (double d : config.deltas)
    if (!(d > 0)) throw DomainError("Huber delta must be positive");

  std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(config.reps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r; (r = next.fetch_add(1)) < config.reps;) outcomes[static_cast<std::size_t>(r)] = run_replicate(config, r);
  };
  const unsigned threads = std::min<unsigned>(worker_count(), static_cast<unsigned>(config.reps));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SimReport report{config, {}, 0};
  for (std::size_t i = 0; i < config.deltas.size(); ++i) {
    SimCell cell{config.deltas[i], 0, 0, 0};
    for (const auto& o : outcomes) {
      cell.original_violations += o.original_violated[i];
      cell.modified_violations += o.modified_violated[i];
      cell.failures += o.failed[i];
    }
    report.cells.push_back(cell);
  }
  for (const auto& o : outcomes) report.redraws += o.redraws;
  return report;
}

}  // namespace girp
