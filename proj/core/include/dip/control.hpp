#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dip/state_space.hpp"

namespace dip {

/// A controller design point: damping factor and natural frequency of the
/// dominant second-order pole pair.
struct ControllerSpec {
  double zeta = 0.7;     // damping factor, dimensionless, > 0
  double omega_n = 1.0;  // natural frequency, rad/s, > 0
};

/// Full-state feedback row vector, u = -K x.
struct GainVector {
  Eigen::RowVectorXd k;

  int size() const { return static_cast<int>(k.cols()); }
};

struct StabilityReport {
  bool stable = false;
  double spectral_abscissa = 0.0;  // max Re(eig), 1/s
};

/// Expands (zeta, omega_n) into a conjugate-closed set of `order` poles:
/// the dominant pair -zeta*omega_n +/- j*omega_n*sqrt(1-zeta^2) (two real
/// poles for zeta >= 1), plus real poles at -(k+2)*zeta*omega_n,
/// k = 1..order-2. Throws ConfigError for non-positive zeta or omega_n.
std::vector<std::complex<double>> poles_from_spec(const ControllerSpec& spec, int order);

/// Kalman controllability matrix [B, AB, ..., A^(n-1) B].
Eigen::MatrixXd controllability_matrix(const StateSpaceModel& model);

/// Numerical rank of the controllability matrix; singular values below
/// 1e-9 x largest count as zero.
int controllability_rank(const StateSpaceModel& model);

/// Single-input pole placement (Ackermann). Requires a conjugate-closed pole
/// set of size n. Throws NumericalError if the plant is uncontrollable to
/// working precision, std::invalid_argument for a malformed pole set.
GainVector place_poles(const StateSpaceModel& model, const std::vector<std::complex<double>>& poles);

/// The gain actually wired into the loop. With delayed_measurement set the
/// controller reads x_m = x7 - x1 in place of x1, so the x1 entry flips sign
/// and folds into the x7 entry.
GainVector effective_gain(const GainVector& gain, bool delayed_measurement);

/// Autonomous closed loop A - B*K~ (K~ = effective gain). B, C, D pass
/// through unchanged. delayed_measurement requires a 7-state model.
StateSpaceModel closed_loop(const StateSpaceModel& model, const GainVector& gain,
                            bool delayed_measurement = false);

/// Max real part over the eigenvalues of A.
double spectral_abscissa(const Eigen::MatrixXd& a);

/// Hurwitz test: stable iff every eigenvalue has negative real part.
StabilityReport is_stable(const StateSpaceModel& model);

}  // namespace dip
