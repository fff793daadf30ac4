#pragma once

#include "e2vem/geometry.hpp"
#include "e2vem/linalg.hpp"
#include "e2vem/polyspace.hpp"
#include "e2vem/quadrature.hpp"

#include <Eigen/Core>

namespace e2vem {

/// Vector-Gram condition numbers above this are flagged as ill-conditioned.
inline constexpr double kIllConditionedThreshold = 1e12;

/// Projection of vertex values onto P1 that is H1-orthogonal, with the constant
/// fixed by the boundary mean. Rows follow the degree-1 scaled basis; columns
/// are vertex DOFs. Throws Error{SingularSystem} on a degenerate polygon.
Eigen::MatrixXd compute_pinabla(const Polygon& poly);

/// L2 projection of the gradient onto [P_l]^2, computed from vertex values via
/// Gauss-Green, with the enhancement replacing interior moments by those of the
/// P1 projection.
struct GradientProjection {
  int l = 0;
  Eigen::MatrixXd pi_grad;   // dim[P_l]^2 x N_V coefficients
  Eigen::MatrixXd rhs;       // (grad phi_i, p_a)_E
  Eigen::MatrixXd gram;      // block diag(H_l, H_l)
  Eigen::MatrixXd factor;    // upper triangular R with H_l = R^T R
  double condition = 1.0;    // of `gram`
  [[nodiscard]] bool ill_conditioned() const noexcept { return condition > kIllConditionedThreshold; }
};

GradientProjection compute_pigrad(const Polygon& poly, int l, const Eigen::MatrixXd& pi_nabla);

/// Element mean of each basis function: (1/|E|) (Pi^nabla phi_i, 1)_E.
Eigen::RowVectorXd compute_pizero(const Polygon& poly, const Eigen::MatrixXd& pi_nabla);

/// L2 projection onto P1: H_1^{-1} times the P1 moments of Pi^nabla phi_i.
Eigen::MatrixXd compute_pione(const Polygon& poly, const Eigen::MatrixXd& pi_nabla,
                              const MomentTable& moments);

/// Gauss-Green evaluation of the [P_l]^2 projection of grad u from raw data:
/// the boundary trace of u (a polynomial of degree `trace_degree` on each edge)
/// and its interior moments (u, m_d)_E for every d in P_{l-1}.
Eigen::VectorXd project_gradient_from_data(const Polygon& poly, int l, const ScalarField& trace,
                                           int trace_degree, const Eigen::VectorXd& moments);

/// Everything the element needs for degree l.
struct ElementProjectors {
  int l = 0;
  MonomialBasis p1_basis;
  Eigen::MatrixXd pi_nabla;
  GradientProjection grad;
  Eigen::RowVectorXd pi_zero;
  Eigen::MatrixXd pi_one;

  [[nodiscard]] const Eigen::MatrixXd& pi_grad() const noexcept { return grad.pi_grad; }
};

ElementProjectors compute_element_projectors(const Polygon& poly, int l);

/// K_E = PiGrad^T G PiGrad, symmetrised.
Eigen::MatrixXd local_stiffness(const ElementProjectors& proj);
Eigen::MatrixXd local_stiffness(const Polygon& poly, int l);

/// Numerical rank of K_E with the size factor max(N_V, dim[P_l]^2).
RankInfo stiffness_rank(const ElementProjectors& proj, const Eigen::MatrixXd& stiffness);

/// |E| PiZero^T PiZero.
Eigen::MatrixXd local_reaction(const Polygon& poly, const Eigen::RowVectorXd& pi_zero);

enum class LoadMode { Mean, P1 };

/// Default quadrature exactness for load integrals on an element of degree l.
constexpr int default_load_degree(int l) noexcept { return 2 * (l + 1) + 2; }

/// mean: F_i = PiZero_i * integral(f); p1: F_i = integral(f * PiOne phi_i).
Eigen::VectorXd local_load(const Polygon& poly, const ElementProjectors& proj, const ScalarField& f,
                           LoadMode mode, int quad_degree = -1);

}  // namespace e2vem
