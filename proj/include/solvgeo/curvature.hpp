#pragma once

#include <vector>

#include "solvgeo/lie_model.hpp"

namespace solvgeo {

/// Levi-Civita connection of a left-invariant metric in an orthonormal frame:
/// (i, j, l) -> <nabla_{e_i} e_j, e_l>.
class ConnectionTable {
 public:
  explicit ConnectionTable(std::size_t n) : n_(n), g_(n * n * n, 0.0) {}

  [[nodiscard]] std::size_t dim() const { return n_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t l) { return g_[(i * n_ + j) * n_ + l]; }
  double operator()(std::size_t i, std::size_t j, std::size_t l) const {
    return g_[(i * n_ + j) * n_ + l];
  }
  /// nabla_u w for frame-coordinate vectors u, w.
  [[nodiscard]] Vector derivative(const Vector& u, const Vector& w) const;
  /// max |Gamma_ijl + Gamma_ilj|.
  [[nodiscard]] double metric_defect() const;
  [[nodiscard]] double max_difference(const ConnectionTable& other) const;

 private:
  std::size_t n_;
  std::vector<double> g_;
};

/// Koszul formula in the algebra's orthonormal frame:
/// 2<nabla_U V, W> = <[U,V],W> + <[W,U],V> + <[W,V],U>.
ConnectionTable koszul_connection(const MetricLieAlgebra& g);

/// Connection of g(j, c) assembled from the closed-form rules
///   nabla_X X* = [X,X*]/2 + (c^2/2)<X,X*> A,   nabla_Z Z* = c^2 <Z,Z*> A,
///   nabla_X Z = nabla_Z X = -j(Z)X/2,          nabla_X A = -X/2,
///   nabla_Z A = -Z,                            nabla_A = 0,
/// expressed in the orthonormal frame of build_g(j, c).
ConnectionTable closed_form_connection(const JMap& j, double c);

/// Torsion defect max |nabla_i e_j - nabla_j e_i - [e_i, e_j]| for an
/// orthonormal-frame algebra.
double torsion_defect(const ConnectionTable& gamma, const MetricLieAlgebra& orthonormal);

/// Curvature of a left-invariant metric, all in the orthonormal frame.
///
/// Index convention: R_ijkl = <R(e_i, e_j) e_k, e_l> with
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z, so the
/// sectional curvature of an orthonormal pair is R(u, v, v, u).
class CurvatureData {
 public:
  CurvatureData(ConnectionTable gamma, std::vector<double> riemann, Matrix frame);

  [[nodiscard]] std::size_t dim() const { return n_; }
  [[nodiscard]] const ConnectionTable& connection() const { return gamma_; }
  [[nodiscard]] double riemann(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return r_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  [[nodiscard]] const std::vector<double>& riemann_tensor() const { return r_; }
  /// Ric(e_i, e_l) = sum_a R(e_a, e_i, e_l, e_a).
  [[nodiscard]] const Matrix& ricci() const { return ricci_; }
  [[nodiscard]] double scalar() const { return scalar_; }
  /// Orthonormal frame in the coordinates of the source algebra.
  [[nodiscard]] const Matrix& frame() const { return frame_; }

  /// <R(a,b)c,d> for frame-coordinate vectors.
  [[nodiscard]] double riemann(const Vector& a, const Vector& b, const Vector& c, const Vector& d) const;

  /// Max residual of R_ijkl = -R_jikl = -R_ijlk = R_klij and the first Bianchi identity.
  [[nodiscard]] double symmetry_residual() const;

 private:
  std::size_t n_;
  ConnectionTable gamma_;
  std::vector<double> r_;
  Matrix ricci_;
  double scalar_ = 0.0;
  Matrix frame_;
};

/// Curvature from the Koszul connection of `g`.
CurvatureData curvature(const MetricLieAlgebra& g);
/// Curvature from a given connection of an orthonormal-frame algebra.
CurvatureData curvature_from_connection(const MetricLieAlgebra& orthonormal, ConnectionTable gamma,
                                        Matrix frame);

/// <R(u,v)v,u> / (|u|^2 |v|^2 - <u,v>^2) for frame-coordinate vectors.
/// Throws ValidationError for a degenerate pair.
double sectional(const CurvatureData& curv, const Vector& u, const Vector& v);

/// Mean curvature of the torus-fibre submersion with fibre algebra w ⊆ z,
/// evaluated as sum_i (nabla_{Z_i} Z_i)^h over a gram_z-orthonormal basis of w.
struct MeanCurvatureResult {
  Vector vector;    ///< coordinates in the basis (v, z, A) of g(j, c)
  Vector expected;  ///< c^2 dim(w) A
  double residual = 0.0;
  std::size_t fibre_dim = 0;
};

/// `w_basis` columns span w (z coordinates); may be empty.
MeanCurvatureResult mean_curvature(const JMap& j, double c, const Matrix& w_basis);

}  // namespace solvgeo
