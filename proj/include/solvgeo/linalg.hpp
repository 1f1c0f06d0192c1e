#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace solvgeo {

/// Raised when an input violates a documented precondition (asymmetric matrix,
/// rank-deficient basis, non-skew operator, ...). The message names the
/// offending entry or columns.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hybrid comparison |x - y| <= atol + rtol * max(|x|, |y|).
struct Tolerance {
  double atol = 1e-10;
  double rtol = 1e-9;

  [[nodiscard]] bool close(double x, double y) const;
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0) : data_(n, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  static Vector unit(std::size_t n, std::size_t i);

  [[nodiscard]] std::size_t size() const { return data_.size(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  [[nodiscard]] std::span<double> values() { return data_; }
  [[nodiscard]] std::span<const double> values() const { return data_; }
  [[nodiscard]] const std::vector<double>& std() const { return data_; }

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(double s);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double max_abs(const Vector& a);
Vector normalized(const Vector& a);

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  /// Nested initializer, one list per row.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const double> values() const { return data_; }
  [[nodiscard]] std::span<double> values() { return data_; }

  [[nodiscard]] Vector col(std::size_t j) const;
  [[nodiscard]] Vector row(std::size_t i) const;
  void set_col(std::size_t j, const Vector& v);
  /// Columns [first, first + count).
  [[nodiscard]] Matrix columns(std::size_t first, std::size_t count) const;
  /// Horizontal concatenation.
  [[nodiscard]] Matrix hcat(const Matrix& right) const;

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] double trace() const;
  [[nodiscard]] double frobenius() const;
  [[nodiscard]] double max_abs() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// x^T M y.
double bilinear(const Matrix& m, const Vector& x, const Vector& y);
Matrix outer(const Vector& a, const Vector& b);
/// (A + A^T) / 2 and (A - A^T) / 2.
Matrix sym_part(const Matrix& a);
Matrix skew_part(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);

/// Every entry finite.
bool all_finite(const Matrix& m);

struct SymEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< column i pairs with values[i]
};

/// Cyclic Jacobi eigensolver. Throws ValidationError if `m` is not symmetric
/// within 1e-12 relative, naming the entry with the largest asymmetry.
SymEigen sym_eigen(const Matrix& m);

struct SkewEigenvalue {
  double omega = 0.0;          ///< eigenvalues are +-i omega
  std::size_t multiplicity = 0;  ///< counts +i omega and -i omega separately
};

/// Spectrum of a skew matrix as (omega, multiplicity), omega ascending.
/// Computed from the eigenvalues of -s^2; values within `cluster_tol * scale`
/// are merged.
std::vector<SkewEigenvalue> skew_spectrum(const Matrix& s, double cluster_tol = 1e-8);

/// Thin SVD by one-sided Jacobi: a = U diag(sigma) V^T with sigma descending.
struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
};
Svd svd(const Matrix& a);

/// Orthonormal basis (columns) of ker(m). Singular values below
/// tol * max(1, sigma_max) count as zero.
Matrix nullspace(const Matrix& m, double tol = 1e-9);
std::size_t rank(const Matrix& m, double tol = 1e-9);

/// Orthonormalizes the columns of `basis` (modified Gram-Schmidt, two passes).
/// Throws ValidationError listing the columns that depend on earlier ones.
Matrix orthonormalize(const Matrix& basis, double tol = 1e-9);
/// Orthonormal basis of the column span; dependent columns are dropped.
Matrix orthonormal_span(const Matrix& generators, double tol = 1e-9);

/// dim(span A ∩ span B) = a + b - rank[A B]. Both inputs must have full
/// column rank.
std::size_t subspace_intersection_dim(const Matrix& basis_a, const Matrix& basis_b,
                                      double tol = 1e-9);

/// Upper-triangular P with P^T G P = I, obtained by Gram-Schmidt of the
/// standard basis in the G inner product. Throws ValidationError if G is not
/// symmetric positive definite.
Matrix gram_schmidt_frame(const Matrix& gram);

Matrix inverse(const Matrix& a);
Vector solve(const Matrix& a, const Vector& b);
double determinant(const Matrix& a);

/// Cayley transform (I - S/2)^{-1} (I + S/2); orthogonal for skew S.
Matrix cayley(const Matrix& skew);

/// Asymmetry max |m_ij - m_ji|.
double asymmetry(const Matrix& m);
/// max |s_ij + s_ji|.
double skew_defect(const Matrix& s);

/// Haar-distributed element of O(n) (both components).
Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng);
Matrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
Vector random_gaussian(std::size_t n, std::mt19937_64& rng);
Matrix random_skew(std::size_t n, std::mt19937_64& rng);

/// SplitMix64 finalizer; derives independent per-task seeds from one base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace solvgeo
