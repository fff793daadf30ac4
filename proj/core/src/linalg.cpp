#include "e2vem/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace e2vem {

double rank_tolerance(double sigma_max, Eigen::Index size_factor) noexcept {
  return static_cast<double>(size_factor) * sigma_max * std::ldexp(1.0, -52) * 64.0;
}

RankInfo numerical_rank(const Eigen::MatrixXd& a, Eigen::Index size_factor) {
  RankInfo info;
  if (a.size() == 0) return info;
  if (size_factor <= 0) size_factor = std::max(a.rows(), a.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  info.singular_values = svd.singularValues();
  info.sigma_max = info.singular_values.size() ? info.singular_values[0] : 0.0;
  info.tolerance = rank_tolerance(info.sigma_max, size_factor);
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i)
    if (info.singular_values[i] > info.tolerance) ++info.rank;
  return info;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, Eigen::Index size_factor) {
  if (size_factor <= 0) size_factor = std::max(a.rows(), a.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double tol = rank_tolerance(s.size() ? s[0] : 0.0, size_factor);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

double spd_condition_number(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.size() == 0) return 1.0;
  if (ev[0] <= 0.0) return std::numeric_limits<double>::infinity();
  return ev[ev.size() - 1] / ev[0];
}

}  // namespace e2vem
