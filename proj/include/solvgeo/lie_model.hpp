#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solvgeo/linalg.hpp"

namespace solvgeo {

/// A linear map j: z -> so(v), stored as the operators J_i = j(e_i) on the
/// standard basis of z, together with the inner products on v and z.
///
/// J_i acts on coordinate vectors of v. It must be skew with respect to
/// gram_v, i.e. J_i^T gram_v + gram_v J_i = 0.
struct JMap {
  std::size_t m = 0;  ///< dim v
  std::size_t k = 0;  ///< dim z
  std::vector<Matrix> J;
  Matrix gram_v;
  Matrix gram_z;
  /// Columns are lattice generators in z coordinates (k x k), when given.
  std::optional<Matrix> lattice;

  /// j(z) = sum_i z_i J_i.
  [[nodiscard]] Matrix operator()(const Vector& z) const;
};

/// JMap with identity inner products unless given.
JMap make_jmap(std::vector<Matrix> operators, std::optional<Matrix> gram_v = std::nullopt,
               std::optional<Matrix> gram_z = std::nullopt);

/// Random valid j-map: Gaussian skew operators, and random SPD inner products
/// unless `identity_grams` is set.
JMap random_jmap(std::size_t m, std::size_t k, std::mt19937_64& rng, bool identity_grams = false);

struct InvariantCheck {
  std::string name;
  double residual = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<InvariantCheck> checks;
  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::string summary() const;
};

/// Checks shapes, finiteness, SPD inner products (failing fast), skewness of
/// every J_i with respect to gram_v and non-triviality.
ValidationReport validate(const JMap& j, double tol = 1e-10);
/// Throws ValidationError carrying the report summary when `validate` fails.
void require_valid(const JMap& j, double tol = 1e-10);

/// j rewritten in gram-orthonormal frames of v and z (identity grams).
/// Original coordinates are frame_v * (frame coordinates), likewise for z.
struct OrthonormalJMap {
  JMap j;
  Matrix frame_v;
  Matrix frame_z;
};
OrthonormalJMap orthonormalize(const JMap& j);

/// Full-rank lattice in z, generators in columns.
class Lattice {
 public:
  explicit Lattice(Matrix basis);
  static Lattice standard(std::size_t k);
  [[nodiscard]] const Matrix& basis() const { return basis_; }
  [[nodiscard]] std::size_t rank() const { return basis_.cols(); }

 private:
  Matrix basis_;
};

enum class BasisKind { V, Z, A };

/// Structure constants and inner product of a finite-dimensional metric Lie
/// algebra. bracket(i, j) is the coordinate vector of [b_i, b_j].
class MetricLieAlgebra {
 public:
  MetricLieAlgebra(std::vector<BasisKind> labels, Matrix gram, std::vector<double> structure);

  [[nodiscard]] std::size_t dim() const { return labels_.size(); }
  [[nodiscard]] const Matrix& gram() const { return gram_; }
  [[nodiscard]] const std::vector<BasisKind>& labels() const { return labels_; }
  [[nodiscard]] std::vector<std::size_t> indices(BasisKind kind) const;

  /// Coefficient of b_l in [b_i, b_j].
  [[nodiscard]] double structure(std::size_t i, std::size_t j, std::size_t l) const {
    return c_[(i * dim() + j) * dim() + l];
  }
  [[nodiscard]] Vector bracket(const Vector& x, const Vector& y) const;
  [[nodiscard]] double inner(const Vector& x, const Vector& y) const { return bilinear(gram_, x, y); }

  /// max |C_ij^l + C_ji^l|.
  [[nodiscard]] double antisymmetry_residual() const;
  /// max over basis triples of |[b_i,[b_j,b_l]] + cyclic|.
  [[nodiscard]] double jacobi_residual() const;

  /// Columns form a gram-orthonormal basis (Gram-Schmidt of the given basis).
  [[nodiscard]] const Matrix& frame() const { return frame_; }
  [[nodiscard]] const Matrix& frame_inverse() const { return frame_inv_; }
  /// Same algebra expressed in the orthonormal frame (gram = identity).
  [[nodiscard]] MetricLieAlgebra in_orthonormal_frame() const;

 private:
  std::vector<BasisKind> labels_;
  Matrix gram_;
  std::vector<double> c_;
  Matrix frame_;
  Matrix frame_inv_;
};

/// Two-step nilpotent h(j) = v + z; basis e_1..e_m, then the z basis.
MetricLieAlgebra build_h(const JMap& j);
/// g(j, c) = v + z + a with [A,X] = X/2, [A,Z] = Z and |A| = 1/c; A is last.
MetricLieAlgebra build_g(const JMap& j, double c);
/// r(c) = v + a with v abelian, [A,X] = X/2, |A| = 1/c; A is last.
MetricLieAlgebra build_r(std::size_t m, double c);

/// Quotient of (j, L) by the subtorus with Lie algebra w.
struct QuotientData {
  JMap j_k;           ///< j restricted to an orthonormal basis of z ⊖ w (identity gram_z)
  Matrix lattice_k;   ///< generators of the projected lattice, in that basis
  Matrix basis_k;     ///< orthonormal basis of z ⊖ w, columns in z coordinates
  Matrix projection;  ///< (k - dim w) x k, z coordinates -> basis_k coordinates
  bool degenerate = false;  ///< w = z, so j_k has no operators
};

/// `w_generators` columns are vectors of z (z coordinates) spanning w. The span
/// must be rational with respect to the lattice; otherwise ValidationError.
QuotientData quotient_data(const JMap& j, const Lattice& lattice, const Matrix& w_generators);

}  // namespace solvgeo
