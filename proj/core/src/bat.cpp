#include "dip/bat.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "dip/errors.hpp"

namespace dip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Portable uniform doubles from mt19937_64: identical streams on any platform.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

  double next01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double symmetric() { return 2.0 * next01() - 1.0; }                           // [-1, 1)

 private:
  std::mt19937_64 engine_;
};

double sanitize(double f) { return std::isfinite(f) ? f : kInf; }

}  // namespace

void BatConfig::validate() const {
  auto fail = [](const char* what) { throw ConfigError(std::string("invalid bat config: ") + what); };
  if (population_size < 2) fail("population_size must be at least 2");
  if (generations < 1) fail("generations must be at least 1");
  if (!(loudness > 0.0) || !(loudness <= 1.0)) fail("loudness must be in (0, 1]");
  if (!(pulse_rate >= 0.0) || !(pulse_rate <= 1.0)) fail("pulse_rate must be in [0, 1]");
  if (!(freq_min <= freq_max)) fail("freq_min must not exceed freq_max");
  if (!(loudness_decay > 0.0) || !(loudness_decay <= 1.0)) fail("loudness_decay must be in (0, 1]");
  if (!(pulse_growth >= 0.0)) fail("pulse_growth must be non-negative");
}

void SearchBounds::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size())
    throw ConfigError("invalid bounds: empty or mismatched dimensions");
  if (!lower.allFinite() || !upper.allFinite())
    throw ConfigError("invalid bounds: non-finite entry");
  for (int i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i]))
      throw ConfigError("invalid bounds: lower must be strictly below upper componentwise");
}

OptimizationResult optimize(const Objective& objective, const SearchBounds& bounds,
                            const BatConfig& config,
                            const std::vector<Eigen::VectorXd>& initial_population,
                            BatTrace* trace) {
  bounds.validate();
  config.validate();
  if (!objective) throw ConfigError("optimize: empty objective");

  const auto t_start = std::chrono::steady_clock::now();
  const int dim = bounds.dim();
  const int pop = config.population_size;
  UniformRng rng(config.seed);

  auto clamp = [&](Eigen::VectorXd& x) {
    x = x.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
  };

  std::vector<Eigen::VectorXd> position(pop), velocity(pop, Eigen::VectorXd::Zero(dim));
  std::vector<double> personal(pop), loudness(pop, config.loudness), pulse(pop, config.pulse_rate);

  for (int i = 0; i < pop; ++i) {
    if (i < static_cast<int>(initial_population.size())) {
      if (initial_population[i].size() != dim)
        throw ConfigError("optimize: initial population dimension mismatch");
      position[i] = initial_population[i];
      clamp(position[i]);
    } else {
      position[i].resize(dim);
      for (int d = 0; d < dim; ++d)
        position[i][d] = bounds.lower[d] + (bounds.upper[d] - bounds.lower[d]) * rng.next01();
    }
  }

  long evaluations = 0;
  for (int i = 0; i < pop; ++i) {
    personal[i] = sanitize(objective(position[i]));
    ++evaluations;
  }

  int best_index = 0;
  for (int i = 1; i < pop; ++i)
    if (personal[i] < personal[best_index]) best_index = i;  // ties keep the first
  Eigen::VectorXd best_x = position[best_index];
  double best_f = personal[best_index];

  OptimizationResult result;
  result.fitness_history.reserve(config.generations);

  std::vector<Eigen::VectorXd> candidate(pop);
  std::vector<double> candidate_f(pop), accept_draw(pop);

  for (int t = 1; t <= config.generations; ++t) {
    double mean_loudness = 0.0;
    for (int i = 0; i < pop; ++i) mean_loudness += loudness[i];
    mean_loudness /= pop;

    // Candidate generation uses the start-of-generation best so evaluations
    // within a generation are independent of each other.
    const Eigen::VectorXd gen_best = best_x;
    for (int i = 0; i < pop; ++i) {
      const double freq = config.freq_min + (config.freq_max - config.freq_min) * rng.next01();
      velocity[i] += (position[i] - gen_best) * freq;
      candidate[i] = position[i] + velocity[i];
      clamp(candidate[i]);
      if (rng.next01() > pulse[i]) {  // local walk with probability 1 - r
        for (int d = 0; d < dim; ++d) candidate[i][d] = gen_best[d] + rng.symmetric() * mean_loudness;
        clamp(candidate[i]);
      }
      accept_draw[i] = rng.next01();
    }

    for (int i = 0; i < pop; ++i) {
      candidate_f[i] = sanitize(objective(candidate[i]));
      ++evaluations;
    }

    // Order-fixed merge: personal acceptance, then elitist global best.
    for (int i = 0; i < pop; ++i) {
      if (candidate_f[i] < personal[i] && accept_draw[i] < loudness[i]) {
        position[i] = candidate[i];
        personal[i] = candidate_f[i];
        loudness[i] *= config.loudness_decay;
        pulse[i] = config.pulse_growth > 0.0
                       ? config.pulse_rate * (1.0 - std::exp(-config.pulse_growth * t))
                       : config.pulse_rate;
      }
      if (candidate_f[i] < best_f) {
        best_x = candidate[i];
        best_f = candidate_f[i];
      }
    }

    result.fitness_history.push_back(best_f);
    if (trace != nullptr) {
      double mean_a = 0.0, mean_r = 0.0;
      for (int i = 0; i < pop; ++i) {
        mean_a += loudness[i];
        mean_r += pulse[i];
      }
      trace->mean_loudness.push_back(mean_a / pop);
      trace->mean_pulse_rate.push_back(mean_r / pop);
    }
  }

  result.best_point = best_x;
  result.best_fitness = best_f;
  result.evaluations = evaluations;
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return result;
}

}  // namespace dip
