#include "dip/linearization.hpp"

#include <cmath>

#include "dip/errors.hpp"

namespace dip {

void StateSpaceModel::validate() const {
  if (A.rows() != A.cols()) throw NumericalError("state-space: A must be square");
  if (B.rows() != A.rows()) throw NumericalError("state-space: B row count mismatch");
  if (C.cols() != A.cols()) throw NumericalError("state-space: C column count mismatch");
  if (D.rows() != C.rows() || D.cols() != B.cols())
    throw NumericalError("state-space: D dimension mismatch");
  if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite())
    throw NumericalError("state-space: non-finite entry");
}

PCoefficients p_coefficients(const PhysicalParams& params) {
  params.validate();
  const double m1 = params.link1_mass, m2 = params.link2_mass;
  const double L1 = params.link1_length, L2 = params.link2_length;
  const double M = total_mass(params);

  PCoefficients p;
  p.p1 = (m1 + 2.0 * m2) * L1;
  p.p2 = m2 * L2;
  p.p3 = 2.0 * m2 * L1 * L2;
  p.p4 = (m1 + 4.0 * m2) * L1 * L2;
  p.p5 = m2 * L1 * L1;

  const double t1 = M * p.p4 * p.p5;
  const double t2 = 2.0 * p.p1 * p.p2 * p.p3;
  const double t3 = p.p2 * p.p2 * p.p4;
  const double t4 = M * p.p3 * p.p3;
  const double t5 = p.p1 * p.p1 * p.p5;
  p.den = t1 + t2 - t3 - t4 - t5;

  const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
  if (std::abs(p.den) <= 1e-12 * scale || p.den == 0.0) {
    throw NumericalError("p_coefficients: degenerate parameters (den vanishes)");
  }
  return p;
}

StateSpaceModel paper_linear_model(const PhysicalParams& params) {
  const PCoefficients c = p_coefficients(params);
  const double g = params.gravity, f = params.cart_friction;
  const double M = total_mass(params);
  const double p1 = c.p1, p2 = c.p2, p3 = c.p3, p4 = c.p4, p5 = c.p5, den = c.den;

  StateSpaceModel m;
  m.A = Eigen::MatrixXd::Zero(6, 6);
  m.A(0, 3) = 1.0;
  m.A(1, 4) = 1.0;
  m.A(2, 5) = 1.0;
  m.A(3, 1) = ((p2 * p3 - p1 * p5) * p1 * g) / den;
  m.A(3, 2) = ((p1 * p3 + p2 * p4) * p2 * g) / den;
  m.A(3, 3) = -((p4 * p5 - p3 * p3) * f) / den;
  m.A(4, 1) = ((M * p5 - p2 * p2) * p1 * g) / den;
  m.A(4, 2) = -((M * p3 - p1 * p2) * p2 * g) / den;
  m.A(4, 3) = -((p1 * p5 - p2 * p3) * f) / den;
  m.A(5, 1) = ((M * p3 - p1 * p2) * p1 * g) / den;
  m.A(5, 2) = ((M * p4 - p1 * p1) * p2 * g) / den;
  m.A(5, 3) = -((p1 * p3 + p2 * p4) * f) / den;

  m.B = Eigen::MatrixXd::Zero(6, 1);
  m.B(3, 0) = (p4 * p5 - p3 * p3) / den;
  m.B(4, 0) = (p1 * p5 - p2 * p3) / den;
  m.B(5, 0) = (p1 * p3 + p2 * p4) / den;

  m.C = Eigen::MatrixXd::Identity(6, 6);
  m.D = Eigen::MatrixXd::Zero(6, 1);
  m.validate();
  return m;
}

Jacobian numeric_jacobian(const PhysicalParams& params, const PlantState& operating_state,
                          const GeneralizedForce& operating_force, double step) {
  if (!(step > 0.0)) throw ConfigError("numeric_jacobian: step must be positive");

  const Vector6d x0 = operating_state.to_vector();
  Jacobian j;
  for (int col = 0; col < 6; ++col) {
    Vector6d xp = x0, xm = x0;
    xp[col] += step;
    xm[col] -= step;
    const Vector6d fp = nonlinear_derivative(params, PlantState::from_vector(xp), operating_force);
    const Vector6d fm = nonlinear_derivative(params, PlantState::from_vector(xm), operating_force);
    j.A.col(col) = (fp - fm) / (2.0 * step);
  }
  const Vector6d fp = nonlinear_derivative(params, operating_state,
                                           GeneralizedForce{operating_force.cart_force + step});
  const Vector6d fm = nonlinear_derivative(params, operating_state,
                                           GeneralizedForce{operating_force.cart_force - step});
  j.B = (fp - fm) / (2.0 * step);
  return j;
}

StateSpaceModel jacobian_linear_model(const PhysicalParams& params) {
  const PlantState upright{};
  const GeneralizedForce zero{};
  const Jacobian coarse = numeric_jacobian(params, upright, zero, 2e-4);
  const Jacobian fine = numeric_jacobian(params, upright, zero, 1e-4);

  StateSpaceModel m;
  m.A = (4.0 * fine.A - coarse.A) / 3.0;
  m.B = (4.0 * fine.B - coarse.B) / 3.0;
  m.C = Eigen::MatrixXd::Identity(6, 6);
  m.D = Eigen::MatrixXd::Zero(6, 1);
  m.validate();
  return m;
}

}  // namespace dip
