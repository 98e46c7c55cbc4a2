#pragma once

#include <Eigen/Dense>

#include "dip/dynamics.hpp"
#include "dip/state_space.hpp"

namespace dip {

/// Composite mass-length products of the closed-form small-signal model:
///   p1 = (m1 + 2 m2) L1
///   p2 = m2 L2
///   p3 = 2 m2 L1 L2
///   p4 = (m1 + 4 m2) L1 L2
///   p5 = m2 L1^2
///   den = M p4 p5 + 2 p1 p2 p3 - p2^2 p4 - M p3^2 - p1^2 p5,  M = total mass
struct PCoefficients {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
  double p5 = 0.0;
  double den = 0.0;
};

/// Throws NumericalError when den vanishes (degenerate parameters, e.g. a
/// massless upper link).
PCoefficients p_coefficients(const PhysicalParams& params);

/// The closed-form 6-state small-signal model about the upright equilibrium,
/// built entry by entry from the p-coefficient ratio formulas. C = I6, D = 0.
///
/// Note this model and the finite-difference Jacobian of the nonlinear
/// equations are distinct constructions; their agreement is measured and
/// reported, never assumed.
StateSpaceModel paper_linear_model(const PhysicalParams& params);

/// Central finite differences of nonlinear_derivative at an operating point:
/// A = df/dx, B = df/dF. Independent check on any closed-form linearization.
struct Jacobian {
  Eigen::Matrix<double, 6, 6> A;
  Eigen::Matrix<double, 6, 1> B;
};

Jacobian numeric_jacobian(const PhysicalParams& params, const PlantState& operating_state,
                          const GeneralizedForce& operating_force, double step);

/// Richardson-extrapolated numeric Jacobian at the upright equilibrium,
/// packaged as a 6-state model with C = I6, D = 0. This is the measured
/// small-signal model of the dynamics actually integrated by the nonlinear
/// simulator.
StateSpaceModel jacobian_linear_model(const PhysicalParams& params);

}  // namespace dip
