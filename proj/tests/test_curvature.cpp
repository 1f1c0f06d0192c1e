#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/curvature.hpp"

#include <cmath>

using namespace solvgeo;

namespace {

MetricLieAlgebra rescaled(const MetricLieAlgebra& g, double s) {
  const std::size_t n = g.dim();
  std::vector<double> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) c[(i * n + j) * n + l] = g.structure(i, j, l);
  return MetricLieAlgebra(g.labels(), (s * s) * g.gram(), c);
}

}  // namespace

TEST_CASE("closed-form connection matches the Koszul formula") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const JMap j = random_jmap(4 + rng() % 5, 1 + rng() % 3, rng);
    const double c = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
    worst = std::max(worst, closed_form_connection(j, c).max_difference(koszul_connection(build_g(j, c))));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Koszul connection is metric and torsion free") {
  std::mt19937_64 rng(12);
  const MetricLieAlgebra g = build_g(random_jmap(5, 2, rng), 1.3);
  const ConnectionTable gamma = koszul_connection(g);
  CHECK(gamma.metric_defect() < 1e-12);
  CHECK(torsion_defect(gamma, g.in_orthonormal_frame()) < 1e-12);
}

TEST_CASE("closed-form rules on unit vectors") {
  const JMap j = catalog_qab(1, 0);
  const double c = 1.5;
  const ConnectionTable gamma = closed_form_connection(j, c);
  const std::size_t n = gamma.dim();
  const Vector x = Vector::unit(n, 0), z = Vector::unit(n, 4), a = Vector::unit(n, 7);
  // a is the unit vector c A.
  CHECK(max_abs(gamma.derivative(x, a) + 0.5 * c * x) < 1e-14);
  CHECK(max_abs(gamma.derivative(z, a) + c * z) < 1e-14);
  // nabla_Z Z = c^2 A, with A = c * (unit A) in the orthonormal frame.
  CHECK(max_abs(gamma.derivative(z, z) - c * a) < 1e-14);
}

TEST_CASE("r(c) has constant sectional curvature") {
  std::mt19937_64 rng(13);
  for (double c : {0.5, 1.0, 2.0}) {
    const CurvatureData curv = curvature(build_r(3, c));
    for (int s = 0; s < 50; ++s) {
      const Vector u = random_gaussian(4, rng), v = random_gaussian(4, rng);
      CHECK(std::abs(sectional(curv, u, v) + c * c / 4) < 1e-12);
    }
  }
}

TEST_CASE("abelian algebras are flat") {
  const std::size_t n = 3;
  const MetricLieAlgebra flat({BasisKind::V, BasisKind::V, BasisKind::V}, Matrix::identity(n),
                              std::vector<double>(n * n * n, 0.0));
  const CurvatureData curv = curvature(flat);
  for (double r : curv.riemann_tensor()) CHECK(r == 0.0);
  CHECK(sectional(curv, Vector::unit(3, 0), Vector::unit(3, 1)) == 0.0);
}

TEST_CASE("sectional curvature depends only on the plane") {
  std::mt19937_64 rng(14);
  const CurvatureData curv = curvature(build_g(random_jmap(4, 2, rng), 1.0));
  const Vector u = random_gaussian(7, rng), v = random_gaussian(7, rng);
  const double k = sectional(curv, u, v);
  CHECK(std::abs(sectional(curv, u, u + v) - k) < 1e-12);
  CHECK(std::abs(sectional(curv, 3.0 * u - v, 0.5 * v + 2.0 * u) - k) < 1e-10);
  CHECK_THROWS_AS(sectional(curv, u, 2.0 * u), ValidationError);
}

TEST_CASE("curvature symmetries and Ricci structure") {
  std::mt19937_64 rng(15);
  const JMap j = random_jmap(6, 3, rng);
  const CurvatureData curv = curvature(build_g(j, 0.8));
  CHECK(curv.symmetry_residual() < 1e-10);
  CHECK(asymmetry(curv.ricci()) < 1e-10);
  // Ric(X, A) = 0 for X in v: A is the last frame vector, v the first m.
  const std::size_t n = curv.dim();
  for (std::size_t i = 0; i < j.m; ++i) CHECK(std::abs(curv.ricci()(i, n - 1)) < 1e-10);
}

TEST_CASE("scaling the metric by s^2 scales curvature by 1/s^2") {
  std::mt19937_64 rng(16);
  const MetricLieAlgebra g = build_g(random_jmap(4, 2, rng), 1.2);
  const CurvatureData a = curvature(g), b = curvature(rescaled(g, 2.0));
  for (int s = 0; s < 20; ++s) {
    const Vector u = random_gaussian(7, rng), v = random_gaussian(7, rng);
    // Frame coordinates of a plane differ by the factor s, which sectional ignores.
    const double ka = sectional(a, u, v);
    const double kb = sectional(b, u, v);
    CHECK(std::abs(kb - ka / 4.0) < 1e-10);
  }
}

TEST_CASE("mean curvature of torus fibres") {
  const JMap j = catalog_qab(1, 1);
  const MeanCurvatureResult full = mean_curvature(j, 1.5, Matrix::from_columns({Vector{1, 0, 0}, Vector{0, 1, 0}}, 3));
  CHECK(full.fibre_dim == 2);
  CHECK(std::abs(full.vector[11] - 4.5) < 1e-12);
  CHECK(full.residual < 1e-12);
  const MeanCurvatureResult none = mean_curvature(j, 1.5, Matrix(3, 0));
  CHECK(max_abs(none.vector) == 0.0);

  std::mt19937_64 rng(17);
  const JMap r = random_jmap(5, 3, rng);
  for (double c : {0.5, 1.5}) CHECK(mean_curvature(r, c, random_gaussian(3, 2, rng)).residual < 1e-12);
}
