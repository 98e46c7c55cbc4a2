#include "dip/control.hpp"

#include <algorithm>
#include <cmath>

#include "dip/errors.hpp"

namespace dip {

namespace {

// Multiplies the monic polynomial `coeffs` (descending powers) by `factor`.
std::vector<double> poly_multiply(const std::vector<double>& coeffs,
                                  const std::vector<double>& factor) {
  std::vector<double> out(coeffs.size() + factor.size() - 1, 0.0);
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (size_t j = 0; j < factor.size(); ++j) out[i + j] += coeffs[i] * factor[j];
  return out;
}

// Real characteristic polynomial from a conjugate-closed pole set: pairs
// conjugates into quadratic factors, keeps real poles as linear factors.
// Throws std::invalid_argument if the set is not closed under conjugation.
std::vector<double> real_characteristic_polynomial(std::vector<std::complex<double>> poles) {
  double scale = 1e-12;
  for (const auto& p : poles) scale = std::max(scale, std::abs(p));
  const double tol = 1e-9 * scale;

  std::vector<double> coeffs{1.0};
  std::vector<bool> used(poles.size(), false);
  for (size_t i = 0; i < poles.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (std::abs(poles[i].imag()) <= tol) {
      coeffs = poly_multiply(coeffs, {1.0, -poles[i].real()});
      continue;
    }
    bool matched = false;
    for (size_t j = i + 1; j < poles.size(); ++j) {
      if (!used[j] && std::abs(poles[j] - std::conj(poles[i])) <= tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument("place_poles: pole set not closed under conjugation");
    coeffs = poly_multiply(coeffs, {1.0, -2.0 * poles[i].real(), std::norm(poles[i])});
  }
  return coeffs;
}

}  // namespace

std::vector<std::complex<double>> poles_from_spec(const ControllerSpec& spec, int order) {
  if (!(spec.zeta > 0.0) || !(spec.omega_n > 0.0))
    throw ConfigError("poles_from_spec: zeta and omega_n must be positive");
  if (order < 2) throw std::invalid_argument("poles_from_spec: order must be at least 2");

  std::vector<std::complex<double>> poles;
  poles.reserve(order);
  const double zw = spec.zeta * spec.omega_n;
  if (spec.zeta < 1.0) {
    const double wd = spec.omega_n * std::sqrt(1.0 - spec.zeta * spec.zeta);
    poles.emplace_back(-zw, wd);
    poles.emplace_back(-zw, -wd);
  } else {
    const double r = std::sqrt(spec.zeta * spec.zeta - 1.0);
    poles.emplace_back(-spec.omega_n * (spec.zeta + r), 0.0);
    poles.emplace_back(-spec.omega_n * (spec.zeta - r), 0.0);
  }
  for (int k = 1; k <= order - 2; ++k) poles.emplace_back(-(k + 2) * zw, 0.0);
  return poles;
}

Eigen::MatrixXd controllability_matrix(const StateSpaceModel& model) {
  model.validate();
  const int n = model.order();
  Eigen::MatrixXd ctrb(n, n);
  Eigen::VectorXd col = model.B.col(0);
  for (int i = 0; i < n; ++i) {
    ctrb.col(i) = col;
    col = model.A * col;
  }
  return ctrb;
}

int controllability_rank(const StateSpaceModel& model) {
  const Eigen::MatrixXd ctrb = controllability_matrix(model);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(ctrb);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = 1e-9 * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

GainVector place_poles(const StateSpaceModel& model, const std::vector<std::complex<double>>& poles) {
  model.validate();
  const int n = model.order();
  if (model.B.cols() != 1) throw std::invalid_argument("place_poles: single-input models only");
  if (static_cast<int>(poles.size()) != n)
    throw std::invalid_argument("place_poles: pole count must equal the model order");

  const std::vector<double> coeffs = real_characteristic_polynomial(poles);

  // Ackermann: K = e_n^T inv(ctrb) phi(A). The solvability of the
  // controllability matrix is judged by the LU itself rather than the
  // reporting threshold of controllability_rank; short delays make the
  // augmented plant badly scaled yet still placeable.
  const Eigen::MatrixXd ctrb = controllability_matrix(model);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ctrb.transpose());
  if (!lu.isInvertible())
    throw NumericalError("place_poles: model is uncontrollable (singular controllability matrix)");

  Eigen::VectorXd e_n = Eigen::VectorXd::Zero(n);
  e_n[n - 1] = 1.0;
  const Eigen::VectorXd w = lu.solve(e_n);

  // Horner evaluation of the desired characteristic polynomial at A.
  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
  for (size_t k = 1; k < coeffs.size(); ++k) {
    phi = phi * model.A + coeffs[k] * Eigen::MatrixXd::Identity(n, n);
  }

  GainVector gain;
  gain.k = (w.transpose() * phi).row(0);
  if (!gain.k.allFinite()) throw NumericalError("place_poles: non-finite gain");
  return gain;
}

GainVector effective_gain(const GainVector& gain, bool delayed_measurement) {
  if (!delayed_measurement) return gain;
  const int n = gain.size();
  if (n < 2) throw std::invalid_argument("effective_gain: need at least two states");
  GainVector out = gain;
  // K1 * x1  ->  K1 * (x7 - x1)
  out.k[n - 1] = gain.k[n - 1] + gain.k[0];
  out.k[0] = -gain.k[0];
  return out;
}

StateSpaceModel closed_loop(const StateSpaceModel& model, const GainVector& gain,
                            bool delayed_measurement) {
  model.validate();
  if (gain.size() != model.order())
    throw std::invalid_argument("closed_loop: gain length must equal the model order");
  if (delayed_measurement && model.order() != 7)
    throw std::invalid_argument("closed_loop: delayed measurement needs the 7-state model");

  const GainVector wired = effective_gain(gain, delayed_measurement);
  StateSpaceModel out = model;
  out.A = model.A - model.B * wired.k;
  return out;
}

double spectral_abscissa(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("spectral_abscissa: eigenvalue iteration failed");
  return solver.eigenvalues().real().maxCoeff();
}

StabilityReport is_stable(const StateSpaceModel& model) {
  model.validate();
  StabilityReport report;
  report.spectral_abscissa = spectral_abscissa(model.A);
  report.stable = report.spectral_abscissa < 0.0;
  return report;
}

}  // namespace dip
