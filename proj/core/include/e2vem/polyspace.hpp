#pragma once

#include "e2vem/geometry.hpp"

#include <Eigen/Core>

namespace e2vem {

/// dim P_k in two variables; zero for k < 0.
constexpr int dim_poly(int k) noexcept { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }

struct Exponent {
  int x = 0;
  int y = 0;
  [[nodiscard]] int degree() const noexcept { return x + y; }
};

/// Scaled monomials m_a(x) = ((x - x_C) / h_E)^a of total degree <= k.
///
/// Ordering is graded, then by decreasing power of x:
///   1, x, y, x^2, xy, y^2, x^3, ...
/// Every matrix in the library uses this order.
class MonomialBasis {
 public:
  MonomialBasis(Point center, double scale, int degree);
  /// Basis centred at the star centre and scaled by the diameter.
  static MonomialBasis for_polygon(const Polygon& poly, int degree);

  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] int dim() const noexcept { return dim_poly(degree_); }
  [[nodiscard]] const Point& center() const noexcept { return center_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }

  [[nodiscard]] static Exponent exponent(int a) noexcept;
  [[nodiscard]] static int index(Exponent e) noexcept;

  /// Same centre and scale, different degree.
  [[nodiscard]] MonomialBasis with_degree(int degree) const { return {center_, scale_, degree}; }

  /// Values of all basis functions at x.
  [[nodiscard]] Eigen::VectorXd evaluate(const Point& x) const;
  /// Row a holds the gradient of m_a at x.
  [[nodiscard]] Eigen::MatrixX2d gradients(const Point& x) const;
  /// Value of sum_a coeffs[a] m_a at x.
  [[nodiscard]] double evaluate(const Eigen::VectorXd& coeffs, const Point& x) const;

 private:
  Point center_;
  double scale_;
  int degree_;
};

/// Derivatives of one monomial expressed in the degree max(k-1, 0) basis.
struct GradientCoefficients {
  Eigen::VectorXd dx;
  Eigen::VectorXd dy;
};

/// d m_a / dx_i = (a_i / h_E) m_{a - e_i}.
GradientCoefficients gradient_coefficients(const MonomialBasis& basis, int a);

/// Basis of [P_l]^2: (m_0, 0), ..., (m_n, 0), (0, m_0), ..., (0, m_n).
class VectorMonomialBasis {
 public:
  explicit VectorMonomialBasis(MonomialBasis scalar) : scalar_(std::move(scalar)) {}

  [[nodiscard]] const MonomialBasis& scalar() const noexcept { return scalar_; }
  [[nodiscard]] int dim() const noexcept { return 2 * scalar_.dim(); }
  [[nodiscard]] int component(int a) const noexcept { return a < scalar_.dim() ? 0 : 1; }
  [[nodiscard]] int scalar_index(int a) const noexcept {
    return a < scalar_.dim() ? a : a - scalar_.dim();
  }

 private:
  MonomialBasis scalar_;
};

/// div p_a in the degree max(l-1, 0) scalar basis.
Eigen::VectorXd divergence_coefficients(const VectorMonomialBasis& vbasis, int a);

/// H(a, b) = integral over E of m_a m_b, for degrees up to k.
struct MomentTable {
  MonomialBasis basis;
  Eigen::MatrixXd H;

  /// Leading block for degree j <= k.
  [[nodiscard]] Eigen::MatrixXd block(int j) const {
    return H.topLeftCorner(dim_poly(j), dim_poly(j));
  }
};

/// Moments by fan quadrature of degree 2k. Throws Error{SingularSystem} if the
/// Cholesky factorisation of H fails.
MomentTable build_moment_table(const Polygon& poly, int k);

}  // namespace e2vem
