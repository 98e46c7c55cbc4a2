#include "dip/delay.hpp"

#include "dip/errors.hpp"

namespace dip {

std::complex<double> pade_response(double delay, double omega) {
  if (delay < 0.0) throw ConfigError("pade_response: delay must be non-negative");
  const std::complex<double> half_s_delay(0.0, omega * delay / 2.0);
  return (1.0 - half_s_delay) / (1.0 + half_s_delay);
}

StateSpaceModel pade_augment(const StateSpaceModel& plant, const DelaySpec& spec, PadeForm form) {
  plant.validate();
  if (plant.order() != 6) throw std::invalid_argument("pade_augment: expected the 6-state plant");
  if (!(spec.delay > 0.0)) throw ConfigError("pade_augment: delay must be positive");

  const double two_over = 2.0 / spec.delay;
  const double four_over = 4.0 / spec.delay;

  StateSpaceModel out;
  out.A = Eigen::MatrixXd::Zero(7, 7);
  out.A.topLeftCorner(6, 6) = plant.A;
  if (form == PadeForm::kStable) {
    // x7 = x_m + x1:  x7dot = -(2/d) x7 + (4/d) x1,  x_m = x7 - x1
    out.A(6, 0) = four_over;
    out.A(6, 6) = -two_over;
  } else {
    // published row, unstable subsystem; comparison only
    out.A(6, 0) = -four_over;
    out.A(6, 6) = two_over;
  }

  out.B = Eigen::MatrixXd::Zero(7, 1);
  out.B.topRows(6) = plant.B;

  out.C = Eigen::MatrixXd::Zero(7, 7);
  out.C.topLeftCorner(6, 6) = plant.C;
  if (form == PadeForm::kStable) {
    out.C(6, 0) = -1.0;  // output 7 is the delayed measurement x_m = x7 - x1
    out.C(6, 6) = 1.0;
  } else {
    out.C(6, 6) = 1.0;  // published output: y7 = x7
  }

  out.D = Eigen::MatrixXd::Zero(7, 1);
  out.validate();
  return out;
}

}  // namespace dip
