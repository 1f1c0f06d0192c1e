#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace solvgeo;

namespace {

SubmanifoldPoint random_point(const JMap& j, double t, double r, std::mt19937_64& rng) {
  return {t, normalized(random_gaussian(j.m, rng)), r};
}

}  // namespace

TEST_CASE("shape operator agrees with the finite-difference oracle") {
  std::mt19937_64 rng(41);
  for (const JMap& j : {catalog_qab(1, 1), catalog_cross_product(), random_jmap(4, 2, rng, true)}) {
    for (const double c : {0.5, 2.0}) {
      const SubmanifoldPoint p = random_point(j, 2.0, 1.5, rng);
      const WeingartenData w = weingarten(j, p);
      CHECK((w.b - weingarten_oracle(j, c, p)).max_abs() < 1e-8);
    }
  }
}

TEST_CASE("shape operator is self-adjoint and the frame is orthonormal") {
  std::mt19937_64 rng(42);
  const JMap j = catalog_qab(2, 0);
  const SubmanifoldPoint p = random_point(j, 3.0, 0.8, rng);
  const WeingartenData w = weingarten(j, p);
  CHECK(asymmetry(w.b) < 1e-12);
  const Matrix f = tangent_frame(j, p);
  CHECK(f.cols() == j.m - 1 + j.k + 1);
  CHECK((f.transpose() * f - Matrix::identity(f.cols())).max_abs() < 1e-12);
  const Vector n = unit_normal(j, p);
  CHECK(std::abs(norm(n) - 1.0) < 1e-12);
  CHECK(max_abs(f.transpose() * n) < 1e-12);
}

TEST_CASE("invalid points are rejected") {
  const JMap j = catalog_qab(1, 0);
  CHECK_THROWS_AS(require_valid_point(j, {0.0, Vector{1, 0, 0, 0}, 1.0}), ValidationError);
  CHECK_THROWS_AS(require_valid_point(j, {1.0, Vector{1, 0, 0, 0}, -1.0}), ValidationError);
  CHECK_THROWS_AS(require_valid_point(j, {1.0, Vector{1, 1, 0, 0}, 1.0}), ValidationError);
}

TEST_CASE("scalar curvature decomposition") {
  std::mt19937_64 rng(43);
  const JMap j = catalog_quaternion_trivial();
  const SubmanifoldPoint p = random_point(j, 1.7, 1.0, rng);
  const auto s = sub_scalar(j, 1.0, p);
  CHECK(std::abs(s.value - (s.ambient_scalar - 2.0 * s.ricci_nn + s.trace_term)) < 1e-10);
  // Summing the sectional curvatures of frame planes recovers the scalar curvature.
  const Matrix f = tangent_frame(j, p);
  double sum = 0.0;
  for (std::size_t a = 0; a < f.cols(); ++a)
    for (std::size_t b = 0; b < f.cols(); ++b)
      if (a != b) sum += sub_sectional(j, 1.0, p, f.col(a), f.col(b));
  CHECK(std::abs(sum - s.value) < 1e-9 * (1.0 + std::abs(s.value)));
}

TEST_CASE("scalar profile CSV") {
  const auto rows = scalar_profile(catalog_qab(1, 1), 1.0, 1.0, {1.0, 2.0, 4.0}, 8);
  REQUIRE(rows.size() == 3);
  for (const ProfileRow& row : rows) CHECK(row.rho_min <= row.rho_mean + 1e-12);
  std::ostringstream os;
  write_profile_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.rfind("t,rho_min,rho_max,rho_mean\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
