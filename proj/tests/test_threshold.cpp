#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/threshold.hpp"

#include <cmath>
#include <sstream>

using namespace solvgeo;

namespace {

SearchOptions quick() {
  SearchOptions o;
  o.restarts = 12;
  return o;
}

JMap scaled(const JMap& j, double s) {
  std::vector<Matrix> ops;
  for (const Matrix& op : j.J) ops.push_back(s * op);
  return make_jmap(ops, j.gram_v, j.gram_z);
}

}  // namespace

TEST_CASE("maximal sectional curvature of rank-one quaternionic space") {
  const PlaneMaximum p = max_sectional_homogeneous(catalog_qab(1, 0), 1.0, quick());
  CHECK(std::abs(p.value + 0.25) < 1e-9);
  CHECK(p.monotone);
  CHECK(std::abs(norm(p.u) - 1.0) < 1e-12);
  CHECK(std::abs(dot(p.u, p.v)) < 1e-12);
}

TEST_CASE("maximal sectional curvature of the mixed quaternionic space is zero") {
  const PlaneMaximum p = max_sectional_homogeneous(catalog_qab(1, 1), 1.0, quick());
  CHECK(std::abs(p.value) < 1e-6);
  CHECK(p.monotone);
}

TEST_CASE("plane search is deterministic for a fixed seed") {
  std::mt19937_64 rng(51);
  const JMap j = random_jmap(4, 2, rng);
  const PlaneMaximum a = max_sectional_homogeneous(j, 0.8, quick());
  const PlaneMaximum b = max_sectional_homogeneous(j, 0.8, quick());
  CHECK(a.restart_values == b.restart_values);
  CHECK(a.u == b.u);
  CHECK(a.restart_values.size() == 12);
}

TEST_CASE("seeded planes are tried first") {
  const JMap j = catalog_qab(1, 0);
  const PlaneMaximum p = max_sectional_homogeneous(j, 1.0, quick(), {{Vector::unit(8, 0), Vector::unit(8, 1)}});
  CHECK(p.restart_values.size() == 13);
  CHECK(p.restart_values.front() <= p.value + 1e-15);
}

TEST_CASE("threshold of the mixed quaternionic space") {
  const ThresholdReport rep = lambda_bisect(catalog_qab(1, 1), 0.5, 2.0, 1e-3, quick());
  CHECK(std::abs(rep.lambda_estimate - 1.0) < 2e-3);
  CHECK(rep.c_high - rep.c_low <= 1e-3 + 1e-15);
  CHECK(rep.k_max_low >= -kNegativeSlack);
  CHECK(rep.k_max_high < -kNegativeSlack);
}

TEST_CASE("threshold bracket is checked") {
  CHECK_THROWS_AS(lambda_bisect(catalog_qab(1, 1), 1.5, 2.0, 1e-3, quick()), BracketError);
  CHECK_THROWS_AS(lambda_bisect(catalog_qab(1, 1), 0.2, 0.5, 1e-3, quick()), BracketError);
}

TEST_CASE("family scan") {
  const JMap j = catalog_qab(1, 1);
  const auto rows = family_scan({{0.0, j}, {1.0, j}}, 0.5, 2.0, 1e-2, quick());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].report.lambda_estimate == rows[1].report.lambda_estimate);
  std::ostringstream os;
  write_family_csv(os, rows);
  CHECK(os.str().rfind("t,lambda,c_low,c_high,K_max_at_low,restarts\n", 0) == 0);
  CHECK_THROWS_AS(family_scan({{0.0, j}, {1.0, scaled(j, 2.0)}}, 0.5, 2.0, 1e-2, quick()), ValidationError);
}

TEST_CASE("submanifold maximum decreases with c and is reproducible") {
  const JMap j = catalog_qab(1, 1);
  const SubmanifoldMaximum low = max_sectional_submanifold(j, 1.0, 1.0, 1.0, 4.0);
  const SubmanifoldMaximum again = max_sectional_submanifold(j, 1.0, 1.0, 1.0, 4.0);
  const SubmanifoldMaximum high = max_sectional_submanifold(j, 4.0, 1.0, 1.0, 4.0);
  CHECK(low.value == again.value);
  CHECK(high.value < low.value);
  CHECK(low.point.t >= 1.0);
  CHECK(low.point.t <= 4.0);
  const double probe = sub_sectional(j, 1.0, low.point, low.u, low.v);
  CHECK(std::abs(probe - low.value) < 1e-10);
}
