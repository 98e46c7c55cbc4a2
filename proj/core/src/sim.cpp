#include "dip/sim.hpp"

#include <cmath>

#include "dip/errors.hpp"

namespace dip {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("invalid sim config: dt must be positive");
  if (!(horizon >= dt)) throw ConfigError("invalid sim config: horizon must be at least dt");
  if (initial_state.size() == 0 || !initial_state.allFinite())
    throw ConfigError("invalid sim config: initial state empty or non-finite");
}

namespace {

long step_count(const SimConfig& config) {
  return std::llround(config.horizon / config.dt);
}

}  // namespace

Trajectory integrate_linear(const StateSpaceModel& closed, const SimConfig& config,
                            const GainVector* record_gain) {
  closed.validate();
  config.validate();
  const int n = closed.order();
  if (config.initial_state.size() != n)
    throw ConfigError("integrate_linear: initial state dimension mismatch");
  if (record_gain != nullptr && record_gain->size() != n)
    throw std::invalid_argument("integrate_linear: recording gain dimension mismatch");

  const long steps = step_count(config);
  const double dt = config.dt;
  const Eigen::MatrixXd& a = closed.A;

  Trajectory traj;
  traj.times.resize(steps + 1);
  traj.states.resize(steps + 1, n);
  traj.inputs.resize(steps + 1);

  Eigen::VectorXd x = config.initial_state;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n);
  for (long k = 0; k <= steps; ++k) {
    traj.times[k] = static_cast<double>(k) * dt;
    traj.states.row(k) = x;
    traj.inputs[k] = record_gain != nullptr ? -(record_gain->k * x)(0) : 0.0;
    if (!x.allFinite()) throw DivergenceError(traj.times[k]);
    if (k == steps) break;
    k1.noalias() = a * x;
    k2.noalias() = a * (x + 0.5 * dt * k1);
    k3.noalias() = a * (x + 0.5 * dt * k2);
    k4.noalias() = a * (x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return traj;
}

Trajectory integrate_nonlinear(const PhysicalParams& params, const GainVector& gain,
                               const SimConfig& config) {
  params.validate();
  config.validate();
  if (gain.size() != PlantState::kDim)
    throw std::invalid_argument("integrate_nonlinear: gain must match the 6-state plant");
  if (config.initial_state.size() != PlantState::kDim)
    throw ConfigError("integrate_nonlinear: initial state dimension mismatch");

  Eigen::VectorXd reference = Eigen::VectorXd::Zero(PlantState::kDim);
  reference[0] = config.reference;

  auto control_force = [&](const Vector6d& x) { return -(gain.k * (x - reference))(0); };
  auto f = [&](const Vector6d& x) {
    return nonlinear_derivative(params, PlantState::from_vector(x),
                                GeneralizedForce{control_force(x)});
  };

  const long steps = step_count(config);
  const double dt = config.dt;

  Trajectory traj;
  traj.times.resize(steps + 1);
  traj.states.resize(steps + 1, PlantState::kDim);
  traj.inputs.resize(steps + 1);

  // Escape to 1e9 is treated as blown up before overflow can poison the
  // trigonometric terms and the mass-matrix solve.
  constexpr double kBlowUp = 1e9;

  Vector6d x = config.initial_state;
  for (long k = 0; k <= steps; ++k) {
    traj.times[k] = static_cast<double>(k) * dt;
    traj.states.row(k) = x;
    traj.inputs[k] = control_force(x);
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kBlowUp) throw DivergenceError(traj.times[k]);
    if (k == steps) break;
    try {
      const Vector6d k1 = f(x);
      const Vector6d k2 = f(x + 0.5 * dt * k1);
      const Vector6d k3 = f(x + 0.5 * dt * k2);
      const Vector6d k4 = f(x + dt * k3);
      x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const NumericalError&) {
      // A solve failure mid-escape is divergence; at moderate amplitude it is
      // a genuine numerical problem.
      if (x.cwiseAbs().maxCoeff() > 1e6) throw DivergenceError(traj.times[k]);
      throw;
    }
  }
  return traj;
}

double ise_fitness(const Trajectory& traj, double reference, const FitnessWeights& weights) {
  const int n = traj.samples();
  if (n < 1 || traj.states.cols() < 3) throw std::invalid_argument("ise_fitness: empty trajectory");
  if (n < 2) return 0.0;
  const double dt = traj.times[1] - traj.times[0];
  double sum = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    const double ec = traj.states(k, 0) - reference;
    const double e1 = traj.states(k, 1);
    const double e2 = traj.states(k, 2);
    sum += weights.cart * ec * ec + weights.lower * e1 * e1 + weights.upper * e2 * e2;
  }
  return dt * sum;
}

std::optional<double> settling_time(const Trajectory& traj, double band) {
  if (!(band > 0.0)) throw std::invalid_argument("settling_time: band must be positive");
  const int n = traj.samples();
  if (n < 1) throw std::invalid_argument("settling_time: empty trajectory");

  const double threshold = band * std::max(traj.states.row(0).norm(), band);
  int last_outside = -1;
  for (int k = 0; k < n; ++k)
    if (traj.states.row(k).norm() > threshold) last_outside = k;

  if (last_outside < 0) return 0.0;
  if (last_outside == n - 1) return std::nullopt;  // never re-enters the band
  return traj.times[last_outside + 1];
}

}  // namespace dip
