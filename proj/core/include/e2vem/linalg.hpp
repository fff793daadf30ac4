#pragma once

#include <Eigen/Core>

namespace e2vem {

struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  double tolerance = 0.0;
  Eigen::VectorXd singular_values;  // descending
};

/// Singular values below size_factor * sigma_max * 2^-52 * 64 count as zero.
double rank_tolerance(double sigma_max, Eigen::Index size_factor) noexcept;

/// Numerical rank by SVD. `size_factor` defaults to max(rows, cols).
RankInfo numerical_rank(const Eigen::MatrixXd& a, Eigen::Index size_factor = 0);

/// Null space basis (columns) of `a`, consistent with numerical_rank.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, Eigen::Index size_factor = 0);

/// 2-norm condition number of a symmetric positive definite matrix.
double spd_condition_number(const Eigen::MatrixXd& a);

}  // namespace e2vem
