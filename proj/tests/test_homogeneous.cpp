#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/homogeneous.hpp"

#include <cmath>
#include <stdexcept>

using namespace solvgeo;

TEST_CASE("Einstein criteria on the catalog") {
  for (const std::string& name : catalog_names()) {
    const EinsteinReport rep = einstein_check(catalog_lookup(name).jmap);
    CAPTURE(name);
    CHECK(rep.consistent());
    CHECK(rep.einstein() == (name != "ex26_quat"));
  }
}

TEST_CASE("Einstein criteria on random maps agree with the Ricci tensor") {
  std::mt19937_64 rng(31);
  for (int s = 0; s < 5; ++s) {
    const EinsteinReport rep = einstein_check(random_jmap(4 + s % 3, 2, rng));
    CHECK_FALSE(rep.einstein());
    CHECK(rep.consistent());
  }
}

TEST_CASE("scalar curvature of the sphere bundle: closed form matches the Gauss equation") {
  std::mt19937_64 rng(32);
  for (const JMap& j : {catalog_qab(1, 1), catalog_quaternion_trivial(), random_jmap(5, 2, rng, true)}) {
    for (const double r : {0.7, 1.0, 2.5}) {
      const Vector x = r * normalized(random_gaussian(j.m, rng));
      const ScalarCurvatureN s = scalar_curvature_N(j, r, x);
      CHECK(std::abs(s.closed_form - s.gauss) < 1e-9 * (1.0 + std::abs(s.gauss)));
      CHECK(std::abs(s.gauss - (s.tau - 2.0 * s.ricci_nn + s.trace_term)) < 1e-10);
    }
  }
}

TEST_CASE("scalar curvature rejects points off the sphere") {
  CHECK_THROWS_AS(scalar_curvature_N(catalog_qab(1, 0), 1.0, Vector{2, 0, 0, 0}), std::domain_error);
}

TEST_CASE("constant scalar curvature verdicts") {
  CHECK(constant_scalar_verdict(catalog_qab(1, 1)));
  CHECK(constant_scalar_verdict(catalog_cross_product()));
  CHECK_FALSE(constant_scalar_verdict(catalog_quaternion_trivial()));
  CHECK(sample_scalar_curvature_N(catalog_qab(2, 0), 1.0, 50, 7).range() < 1e-9);
  CHECK(sample_scalar_curvature_N(catalog_cross_product(), 1.0, 50, 7).range() < 1e-9);
  CHECK(sample_scalar_curvature_N(catalog_quaternion_trivial(), 1.0, 50, 7).range() > 1e-3);
}

TEST_CASE("zero-curvature plane in the mixed quaternionic space") {
  // X = (i, i), Y = (j, j) in H + H.
  Vector x(8), y(8);
  x[1] = x[5] = 1.0;
  y[2] = y[6] = 1.0;
  const DamekWitness w = damek_witness(catalog_qab(1, 1), x, y);
  REQUIRE(w.holds());
  CHECK(w.bracket_norm < 1e-14);
  CHECK(w.orbit_intersection >= 1);
  REQUIRE(w.span_sectional.has_value());
  CHECK(std::abs(*w.span_sectional + 0.25) < 1e-12);
  CHECK(w.zero_curvature());
  CHECK(std::abs(*w.plane_sectional) < 1e-12);
  // X + aZ with unit X and Z.
  CHECK(std::abs(dot(w.plane_u, w.plane_u) - (1.0 + w.mixing * w.mixing)) < 1e-12);
  CHECK(std::abs(w.mixing - std::sqrt(0.5)) < 1e-6);
}

TEST_CASE("no witness when the bracket does not vanish") {
  Vector x(8), y(8);
  x[1] = x[5] = 1.0;
  y[2] = y[6] = 1.0;
  const DamekWitness w = damek_witness(catalog_qab(2, 0), x, y);
  CHECK_FALSE(w.bracket_vanishes);
  CHECK_FALSE(w.holds());
  CHECK_FALSE(w.plane_sectional.has_value());
  CHECK_THROWS_AS(damek_witness(catalog_qab(2, 0), x, 2.0 * x), ValidationError);
}
