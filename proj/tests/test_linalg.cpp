#include "doctest.h"
#include "solvgeo/linalg.hpp"
#include "solvgeo/parallel.hpp"

#include <cmath>

using namespace solvgeo;

TEST_CASE("sym_eigen diagonalizes a known matrix") {
  const Matrix m = Matrix::from_rows({{2, 1, 0}, {1, 2, 0}, {0, 0, 5}});
  const SymEigen e = sym_eigen(m);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.values[2] == doctest::Approx(5.0).epsilon(1e-14));
  for (std::size_t i = 0; i < 3; ++i) {
    const Vector v = e.vectors.col(i);
    CHECK(max_abs(m * v - e.values[i] * v) < 1e-13);
  }
}

TEST_CASE("sym_eigen reconstructs random symmetric matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_gaussian(9, 9, rng);
    const Matrix s = sym_part(a);
    const SymEigen e = sym_eigen(s);
    const Matrix back = e.vectors * Matrix::diagonal(e.values) * e.vectors.transpose();
    CHECK((back - s).max_abs() < 1e-12);
    CHECK((e.vectors.transpose() * e.vectors - Matrix::identity(9)).max_abs() < 1e-12);
  }
}

TEST_CASE("sym_eigen rejects asymmetric input") {
  CHECK_THROWS_AS(sym_eigen(Matrix::from_rows({{1, 2}, {0, 1}})), ValidationError);
}

TEST_CASE("skew_spectrum counts both signs") {
  Matrix s(5, 5);
  s(1, 0) = 2.0;
  s(0, 1) = -2.0;
  s(3, 2) = 2.0;
  s(2, 3) = -2.0;
  const auto spec = skew_spectrum(s);
  REQUIRE(spec.size() == 2);
  CHECK(spec[0].omega == doctest::Approx(0.0));
  CHECK(spec[0].multiplicity == 1);
  CHECK(spec[1].omega == doctest::Approx(2.0));
  CHECK(spec[1].multiplicity == 4);
}

TEST_CASE("skew_spectrum is invariant under orthogonal conjugation") {
  std::mt19937_64 rng(3);
  const Matrix s = random_skew(6, rng);
  const Matrix q = random_orthogonal(6, rng);
  const auto a = skew_spectrum(s), b = skew_spectrum(q * s * q.transpose());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i].omega - b[i].omega) < 1e-12);
    CHECK(a[i].multiplicity == b[i].multiplicity);
  }
}

TEST_CASE("svd, nullspace and rank") {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const Matrix n = nullspace(m);
  REQUIRE(n.cols() == 1);
  CHECK(max_abs(m * n.col(0)) < 1e-13);
  const Svd s = svd(m);
  const Matrix back = s.u * Matrix::diagonal(s.sigma) * s.v.transpose();
  CHECK((back - m).max_abs() < 1e-12);
  CHECK(s.sigma[0] >= s.sigma[1]);
}

TEST_CASE("subspace intersection dimension") {
  const Matrix a = Matrix::from_columns({Vector::unit(4, 0), Vector::unit(4, 1)}, 4);
  const Matrix b = Matrix::from_columns({Vector::unit(4, 1), Vector::unit(4, 2)}, 4);
  const Matrix c = Matrix::from_columns({Vector::unit(4, 2), Vector::unit(4, 3)}, 4);
  CHECK(subspace_intersection_dim(a, b) == 1);
  CHECK(subspace_intersection_dim(a, c) == 0);
  CHECK(subspace_intersection_dim(a, a) == 2);
}

TEST_CASE("orthonormalize names dependent columns") {
  const Matrix m = Matrix::from_columns({Vector{1, 0, 0}, Vector{2, 0, 0}}, 3);
  CHECK_THROWS_AS(orthonormalize(m), ValidationError);
  const Matrix span = orthonormal_span(m);
  CHECK(span.cols() == 1);
}

TEST_CASE("gram_schmidt_frame is upper triangular and orthonormalizes") {
  std::mt19937_64 rng(5);
  const Matrix b = random_gaussian(5, 5, rng);
  const Matrix g = b * b.transpose() + Matrix::identity(5);
  const Matrix p = gram_schmidt_frame(g);
  CHECK((p.transpose() * g * p - Matrix::identity(5)).max_abs() < 1e-12);
  for (std::size_t r = 1; r < 5; ++r)
    for (std::size_t c = 0; c < r; ++c) CHECK(p(r, c) == 0.0);
  CHECK_THROWS_AS(gram_schmidt_frame(Matrix::from_rows({{1, 0}, {0, -1}})), ValidationError);
}

TEST_CASE("inverse, solve and determinant") {
  const Matrix a = Matrix::from_rows({{4, 1}, {2, 3}});
  CHECK(determinant(a) == doctest::Approx(10.0));
  CHECK((a * inverse(a) - Matrix::identity(2)).max_abs() < 1e-14);
  const Vector x = solve(a, Vector{1, 2});
  CHECK(max_abs(a * x - Vector{1, 2}) < 1e-14);
}

TEST_CASE("cayley of a skew matrix is orthogonal") {
  std::mt19937_64 rng(9);
  const Matrix q = cayley(random_skew(6, rng));
  CHECK((q.transpose() * q - Matrix::identity(6)).max_abs() < 1e-12);
}

TEST_CASE("derive_seed separates indices") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw ValidationError("boom");
                  }),
                  ValidationError);
}
