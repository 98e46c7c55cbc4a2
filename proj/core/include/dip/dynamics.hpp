#pragma once

#include <Eigen/Dense>

namespace dip {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Physical parameters of the cart + two-link pendulum.
///
/// Link angles are measured from the upward vertical. Centers of mass and
/// inertias are about each link's own center of mass. Defaults describe a
/// lab-scale rig with uniform thin rods (l = L/2, J = m*L^2/12).
struct PhysicalParams {
  double cart_mass = 1.0;        // kg
  double link1_mass = 0.5;       // kg
  double link2_mass = 0.5;       // kg
  double link1_length = 0.5;     // m
  double link2_length = 0.5;     // m
  double link1_com = 0.25;       // m, pivot to center of mass
  double link2_com = 0.25;       // m
  double link1_inertia = 0.5 * 0.5 * 0.5 / 12.0;  // kg m^2, about the c.o.m.
  double link2_inertia = 0.5 * 0.5 * 0.5 / 12.0;  // kg m^2
  double cart_friction = 0.1;    // N s/m, viscous
  double gravity = 9.81;         // m/s^2

  /// Throws ConfigError unless masses/lengths are positive, inertias and
  /// friction non-negative, g > 0 and 0 < l_i <= L_i.
  void validate() const;

  /// Uniform thin-rod construction: l_i = L_i/2, J_i = m_i*L_i^2/12.
  static PhysicalParams uniform_rods(double cart_mass, double link1_mass, double link2_mass,
                                     double link1_length, double link2_length,
                                     double gravity = 9.81, double cart_friction = 0.1);
};

/// Plant state, ordered [positions; velocities] =
/// [x_c, theta1, theta2, xdot_c, theta1dot, theta2dot].
struct PlantState {
  double cart_position = 0.0;  // m
  double lower_angle = 0.0;    // rad from vertical
  double upper_angle = 0.0;    // rad from vertical
  double cart_velocity = 0.0;  // m/s
  double lower_rate = 0.0;     // rad/s
  double upper_rate = 0.0;     // rad/s

  static constexpr int kDim = 6;

  Vector6d to_vector() const {
    Vector6d v;
    v << cart_position, lower_angle, upper_angle, cart_velocity, lower_rate, upper_rate;
    return v;
  }
  static PlantState from_vector(const Eigen::Ref<const Eigen::VectorXd>& v);
};

/// The single actuation channel: horizontal force on the cart.
struct GeneralizedForce {
  double cart_force = 0.0;  // N
};

/// Total translating mass M_c + m1 + m2.
double total_mass(const PhysicalParams& params);

/// Kinetic energy of cart plus both links (translational + rotational).
double kinetic_energy(const PhysicalParams& params, const PlantState& state);

/// Potential energy, datum at the cart pivot height:
/// m1*g*l1*cos(theta1) + m2*g*(L1*cos(theta1) + l2*cos(theta2)).
double potential_energy(const PhysicalParams& params, const PlantState& state);

/// Configuration-dependent 3x3 mass matrix in coordinates (x_c, theta1, theta2).
/// Symmetric positive definite for valid parameters.
Eigen::Matrix3d mass_matrix(const PhysicalParams& params, const PlantState& state);

/// Full nonlinear equations of motion. Solves the 3x3 mass-matrix system for
/// the accelerations and returns
/// [xdot_c, theta1dot, theta2dot, xddot_c, theta1ddot, theta2ddot].
/// Viscous cart friction -f*xdot_c is applied on the cart force channel.
/// Throws NumericalError if the mass matrix is numerically singular.
Vector6d nonlinear_derivative(const PhysicalParams& params, const PlantState& state,
                              const GeneralizedForce& force);

}  // namespace dip
