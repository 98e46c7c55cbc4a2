#include "dip/dynamics.hpp"

#include <cmath>

#include "dip/errors.hpp"

namespace dip {

void PhysicalParams::validate() const {
  auto fail = [](const char* what) { throw ConfigError(std::string("invalid params: ") + what); };
  if (!(cart_mass > 0.0) || !(link1_mass > 0.0) || !(link2_mass > 0.0))
    fail("masses must be strictly positive");
  if (!(link1_length > 0.0) || !(link2_length > 0.0)) fail("lengths must be strictly positive");
  if (!(link1_inertia >= 0.0) || !(link2_inertia >= 0.0)) fail("inertias must be non-negative");
  if (!(cart_friction >= 0.0)) fail("friction must be non-negative");
  if (!(gravity > 0.0)) fail("gravity must be positive");
  if (!(link1_com > 0.0) || !(link1_com <= link1_length)) fail("need 0 < link1_com <= link1_length");
  if (!(link2_com > 0.0) || !(link2_com <= link2_length)) fail("need 0 < link2_com <= link2_length");
}

PhysicalParams PhysicalParams::uniform_rods(double cart_mass, double link1_mass, double link2_mass,
                                            double link1_length, double link2_length,
                                            double gravity, double cart_friction) {
  PhysicalParams p;
  p.cart_mass = cart_mass;
  p.link1_mass = link1_mass;
  p.link2_mass = link2_mass;
  p.link1_length = link1_length;
  p.link2_length = link2_length;
  p.link1_com = link1_length / 2.0;
  p.link2_com = link2_length / 2.0;
  p.link1_inertia = link1_mass * link1_length * link1_length / 12.0;
  p.link2_inertia = link2_mass * link2_length * link2_length / 12.0;
  p.gravity = gravity;
  p.cart_friction = cart_friction;
  return p;
}

PlantState PlantState::from_vector(const Eigen::Ref<const Eigen::VectorXd>& v) {
  PlantState s;
  s.cart_position = v[0];
  s.lower_angle = v[1];
  s.upper_angle = v[2];
  s.cart_velocity = v[3];
  s.lower_rate = v[4];
  s.upper_rate = v[5];
  return s;
}

double total_mass(const PhysicalParams& p) { return p.cart_mass + p.link1_mass + p.link2_mass; }

double kinetic_energy(const PhysicalParams& p, const PlantState& s) {
  const double c1 = std::cos(s.lower_angle), s1 = std::sin(s.lower_angle);
  const double c2 = std::cos(s.upper_angle), s2 = std::sin(s.upper_angle);
  const double v = s.cart_velocity, w1 = s.lower_rate, w2 = s.upper_rate;

  const double cart = 0.5 * p.cart_mass * v * v;
  // lower link c.o.m. velocity: (v + l1 w1 c1, -l1 w1 s1)
  const double vx1 = v + p.link1_com * w1 * c1;
  const double vy1 = p.link1_com * w1 * s1;
  const double link1 = 0.5 * p.link1_mass * (vx1 * vx1 + vy1 * vy1) + 0.5 * p.link1_inertia * w1 * w1;
  // upper link c.o.m. velocity: carried by the full lower link plus its own swing
  const double vx2 = v + p.link1_length * w1 * c1 + p.link2_com * w2 * c2;
  const double vy2 = p.link1_length * w1 * s1 + p.link2_com * w2 * s2;
  const double link2 = 0.5 * p.link2_mass * (vx2 * vx2 + vy2 * vy2) + 0.5 * p.link2_inertia * w2 * w2;
  return cart + link1 + link2;
}

double potential_energy(const PhysicalParams& p, const PlantState& s) {
  return p.link1_mass * p.gravity * p.link1_com * std::cos(s.lower_angle) +
         p.link2_mass * p.gravity *
             (p.link1_length * std::cos(s.lower_angle) + p.link2_com * std::cos(s.upper_angle));
}

Eigen::Matrix3d mass_matrix(const PhysicalParams& p, const PlantState& s) {
  const double c1 = std::cos(s.lower_angle);
  const double c2 = std::cos(s.upper_angle);
  const double c12 = std::cos(s.lower_angle - s.upper_angle);
  const double a = p.link1_mass * p.link1_com + p.link2_mass * p.link1_length;
  const double b = p.link2_mass * p.link2_com;
  const double d1 = p.link1_mass * p.link1_com * p.link1_com +
                    p.link2_mass * p.link1_length * p.link1_length + p.link1_inertia;
  const double d2 = p.link2_mass * p.link2_com * p.link2_com + p.link2_inertia;
  const double cpl = p.link2_mass * p.link1_length * p.link2_com;

  Eigen::Matrix3d m;
  m << total_mass(p), a * c1, b * c2,
       a * c1, d1, cpl * c12,
       b * c2, cpl * c12, d2;
  return m;
}

Vector6d nonlinear_derivative(const PhysicalParams& p, const PlantState& s,
                              const GeneralizedForce& force) {
  const double s1 = std::sin(s.lower_angle);
  const double s2 = std::sin(s.upper_angle);
  const double s12 = std::sin(s.lower_angle - s.upper_angle);
  const double w1 = s.lower_rate, w2 = s.upper_rate;
  const double a = p.link1_mass * p.link1_com + p.link2_mass * p.link1_length;
  const double b = p.link2_mass * p.link2_com;
  const double cpl = p.link2_mass * p.link1_length * p.link2_com;

  const Eigen::Matrix3d m = mass_matrix(p, s);

  Eigen::Vector3d rhs;
  rhs << force.cart_force - p.cart_friction * s.cart_velocity + a * w1 * w1 * s1 + b * w2 * w2 * s2,
         a * p.gravity * s1 - cpl * w2 * w2 * s12,
         b * p.gravity * s2 + cpl * w1 * w1 * s12;

  const double det = m.determinant();
  const double scale = m.cwiseAbs().maxCoeff();
  if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale * scale * scale) {
    throw NumericalError("nonlinear_derivative: singular mass matrix (non-physical parameters)");
  }
  const Eigen::Vector3d acc = m.ldlt().solve(rhs);

  Vector6d out;
  out << s.cart_velocity, w1, w2, acc[0], acc[1], acc[2];
  return out;
}

}  // namespace dip
