#pragma once

#include <optional>

#include <Eigen/Dense>

#include "dip/control.hpp"
#include "dip/dynamics.hpp"
#include "dip/state_space.hpp"

namespace dip {

struct SimConfig {
  double dt = 1e-3;       // s
  double horizon = 20.0;  // s
  Eigen::VectorXd initial_state;
  double reference = 0.0;  // desired cart position, m

  void validate() const;  // throws ConfigError
};

/// Uniformly sampled run: times[k] = k*dt, one state row and one applied
/// force per sample.
struct Trajectory {
  Eigen::VectorXd times;
  Eigen::MatrixXd states;  // samples x order
  Eigen::VectorXd inputs;  // N

  int samples() const { return static_cast<int>(times.size()); }
};

struct FitnessWeights {
  double cart = 1.0;
  double lower = 1.0;
  double upper = 1.0;
};

/// Classical fixed-step 4th-order integration of the autonomous loop
/// xdot = A x. When record_gain is given, inputs[k] = -K~ x_k; otherwise
/// inputs are zero. Throws DivergenceError (with the blow-up time) when a
/// non-finite state appears.
Trajectory integrate_linear(const StateSpaceModel& closed, const SimConfig& config,
                            const GainVector* record_gain = nullptr);

/// Same integrator on the full nonlinear plant with full-state feedback
/// F = -K (x - x_ref), x_ref = [reference, 0, 0, 0, 0, 0]. K must be sized
/// for the 6-state plant.
Trajectory integrate_nonlinear(const PhysicalParams& params, const GainVector& gain,
                               const SimConfig& config);

/// Weighted integral-squared error over cart-position error and both angles,
/// left-endpoint rule: sum_k dt * [w0 (x_c - ref)^2 + w1 th1^2 + w2 th2^2],
/// final sample excluded so a constant signal integrates to exactly
/// horizon * e^2.
double ise_fitness(const Trajectory& traj, double reference, const FitnessWeights& weights = {});

/// Time after which the state 2-norm stays inside
/// band * max(norm(x0), band); nullopt when the trajectory is still outside
/// at the final sample.
std::optional<double> settling_time(const Trajectory& traj, double band);

}  // namespace dip
