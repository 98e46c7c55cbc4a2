#pragma once

#include <Eigen/Dense>

namespace dip {

/// Dense continuous-time linear model xdot = A x + B u, y = C x + D u.
/// Single input throughout this project (B, D have one column).
struct StateSpaceModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;

  int order() const { return static_cast<int>(A.rows()); }
  int outputs() const { return static_cast<int>(C.rows()); }

  /// Throws NumericalError on inconsistent dimensions or non-finite entries.
  void validate() const;
};

}  // namespace dip
