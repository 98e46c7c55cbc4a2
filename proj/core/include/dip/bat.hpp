#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace dip {

/// Bat-algorithm parameters. The population/generation/loudness/pulse-rate
/// values are the experiment's published settings; frequency range, loudness
/// decay and pulse growth are conventional defaults and are echoed into every
/// report so no run hides them.
struct BatConfig {
  int population_size = 20;
  int generations = 20;
  double loudness = 0.5;        // A0, in (0, 1]
  double pulse_rate = 0.5;      // r0, in [0, 1]
  double freq_min = 0.0;
  double freq_max = 2.0;
  double loudness_decay = 0.9;  // alpha; 1 keeps loudness constant
  double pulse_growth = 0.9;    // gamma; 0 keeps pulse rate constant at r0
  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigError
};

/// Box constraints on the decision vector, componentwise lower < upper.
struct SearchBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  void validate() const;  // throws ConfigError
};

struct OptimizationResult {
  Eigen::VectorXd best_point;
  double best_fitness = 0.0;
  std::vector<double> fitness_history;  // per-generation best, non-increasing
  long evaluations = 0;
  double wall_time_s = 0.0;
};

/// Optional per-generation instrumentation (mean loudness / pulse rate after
/// each generation), mainly for verifying the constant-parameter mode.
struct BatTrace {
  std::vector<double> mean_loudness;
  std::vector<double> mean_pulse_rate;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Minimizes the objective over the box with the canonical bat iteration:
/// per bat, frequency f = fmin + (fmax-fmin)*beta, velocity += (x - x*)*f,
/// position clamped to the box, local walk x* + eps*mean(A) with probability
/// (1 - r), acceptance gated on personal improvement and draw < A, elitist
/// global best. Candidates within a generation are built from the
/// start-of-generation best and merged back in bat index order, so results
/// do not depend on evaluation scheduling. Deterministic given the seed;
/// non-finite objective values are treated as +infinity.
///
/// initial_population, when non-empty, seeds the first bats (clamped to the
/// box); remaining bats are drawn uniformly.
OptimizationResult optimize(const Objective& objective, const SearchBounds& bounds,
                            const BatConfig& config,
                            const std::vector<Eigen::VectorXd>& initial_population = {},
                            BatTrace* trace = nullptr);

}  // namespace dip
