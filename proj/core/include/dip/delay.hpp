#pragma once

#include <complex>

#include "dip/state_space.hpp"

namespace dip {

/// Measurement time delay on the cart position channel, seconds.
/// delay == 0 means "no delay": the 6-state plant is used unmodified.
struct DelaySpec {
  double delay = 0.0;  // s
};

/// Row convention for the appended delay state.
///
/// kStable follows the rational approximation itself: with x7 = x_m + x1,
///   x7dot = -(2/delay) x7 + (4/delay) x1,   x_m = x7 - x1,
/// a stable lag whose transfer from x1 to x_m is exactly
/// (1 - s*delay/2)/(1 + s*delay/2).
///
/// kPaperLiteral keeps the published matrix row (+2/delay on the diagonal,
/// -4/delay coupling, output x7), an unstable subsystem retained only for
/// comparison runs.
enum class PadeForm { kStable, kPaperLiteral };

/// First-order Pade approximant of the delay operator evaluated at s = j*omega:
/// (1 - j*omega*delay/2)/(1 + j*omega*delay/2). All-pass: unit magnitude for
/// every frequency.
std::complex<double> pade_response(double delay, double omega);

/// Appends the delay state x7 to a 6-state plant. B gains a zero row; C is
/// extended so output 7 reports the delayed measurement x_m (outputs 1..6
/// unchanged). Throws ConfigError for delay <= 0.
StateSpaceModel pade_augment(const StateSpaceModel& plant, const DelaySpec& spec,
                             PadeForm form = PadeForm::kStable);

}  // namespace dip
