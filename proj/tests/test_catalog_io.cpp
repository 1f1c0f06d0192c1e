#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/json_io.hpp"
#include "solvgeo/report.hpp"

#include <cmath>
#include <filesystem>

using namespace solvgeo;

TEST_CASE("every catalog claim holds") {
  for (const std::string& name : catalog_names()) {
    const CatalogEntry e = catalog_lookup(name);
    CHECK_FALSE(e.origin.empty());
    CHECK(validate(e.jmap).ok());
    for (const ClaimOutcome& o : check_claims(e)) {
      CAPTURE(name);
      CAPTURE(o.claim.id);
      CAPTURE(o.observed);
      CHECK(o.passed);
    }
  }
}

TEST_CASE("quaternion multiplication tables") {
  const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(quaternion_product(i, j) == k);
  CHECK(quaternion_product(j, i) == Quaternion{0, 0, 0, -1});
  CHECK(quaternion_product(i, i) == Quaternion{-1, 0, 0, 0});
  const Quaternion p{0.3, -1.2, 0.5, 2.0}, q{1.1, 0.4, -0.7, 0.2};
  const Vector qv{q[0], q[1], q[2], q[3]};
  const Quaternion pq = quaternion_product(p, q), qp = quaternion_product(q, p);
  const Vector left = quaternion_left(p) * qv, right = quaternion_right(p) * qv;
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(std::abs(left[a] - pq[a]) < 1e-14);
    CHECK(std::abs(right[a] - qp[a]) < 1e-14);
  }
}

TEST_CASE("catalog lookup") {
  CHECK(catalog_lookup("@qab:2,0").jmap.m == 8);
  CHECK(catalog_lookup("heis:6").jmap.k == 1);
  CHECK_THROWS_AS(catalog_lookup("qab:0,0"), ValidationError);
  CHECK_THROWS_AS(catalog_lookup("heis:3"), ValidationError);
  CHECK_THROWS(catalog_lookup("nosuch"));
}

TEST_CASE("JSON round trip is bitwise") {
  std::mt19937_64 rng(61);
  JMap j = random_jmap(5, 3, rng);
  j.lattice = Matrix::identity(3);
  const JMap back = jmap_from_json(Json::parse(jmap_to_json(j).dump()));
  CHECK(back.m == j.m);
  CHECK(back.k == j.k);
  for (std::size_t i = 0; i < j.k; ++i) CHECK(back.J[i] == j.J[i]);
  CHECK(back.gram_v == j.gram_v);
  CHECK(back.gram_z == j.gram_z);
  REQUIRE(back.lattice.has_value());
  CHECK(*back.lattice == *j.lattice);

  const auto path = std::filesystem::temp_directory_path() / "solvgeo_roundtrip.json";
  save_jmap(path, j);
  CHECK(load_jmap(path.string()).J[2] == j.J[2]);
  std::filesystem::remove(path);
}

TEST_CASE("flat row-major matrices are accepted") {
  const Json node = Json::parse(R"({"m": 2, "k": 1, "J": [[0, -1, 1, 0]]})");
  const JMap j = jmap_from_json(node);
  CHECK(j.J[0](0, 1) == -1.0);
  CHECK(j.J[0](1, 0) == 1.0);
  CHECK(j.gram_v == Matrix::identity(2));
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(jmap_from_json(Json::parse(R"({"m": 2, "k": 1})")), ValidationError);
  CHECK_THROWS_AS(jmap_from_json(Json::parse(R"({"m": 2, "k": 1, "J": [[0, 1, 2]]})")), ValidationError);
  CHECK_THROWS_AS(jmap_from_json(Json::parse(R"({"m": 2, "k": 2, "J": [[[0, 1], [-1, 0]]]})")),
                  ValidationError);
  CHECK_THROWS_AS(jmap_from_json(Json::parse(R"({"m": "two", "k": 1, "J": []})")), ValidationError);
  CHECK_THROWS_AS(load_jmap("/nonexistent/file.json"), ValidationError);
  // Parses but is not skew: left to validate().
  const JMap bad = jmap_from_json(Json::parse(R"({"m": 2, "k": 1, "J": [[[1, 0], [0, 0]]]})"));
  CHECK_FALSE(validate(bad).ok());
}

TEST_CASE("pair report for the quaternionic pair") {
  const PairReport r = isospectral_pair_report(catalog_qab(2, 0), catalog_qab(1, 1), 1.0, {});
  CHECK(r.isospectral.verdict);
  CHECK(r.premise_holds);
  CHECK(r.equivalence.status == EquivalenceStatus::Obstructed);
  CHECK(r.einstein_a.einstein());
  CHECK(r.einstein_b.einstein());
  const Json j = to_json(r);
  CHECK(j.contains("conclusion"));
}

TEST_CASE("pair report for a map with itself") {
  const JMap j = catalog_cross_product();
  const PairReport r = isospectral_pair_report(j, j, 1.0, {Matrix::from_rows({{1}, {0}, {0}})});
  CHECK(r.premise_holds);
  CHECK(r.equivalence.status == EquivalenceStatus::Certified);
  REQUIRE(r.subtori.size() == 1);
  CHECK(r.subtori[0].mean_agree);
}

TEST_CASE("pair report for the cross-product pair") {
  const PairReport r = isospectral_pair_report(catalog_cross_product(), catalog_quaternion_trivial(), 1.0, {});
  CHECK(r.premise_holds);
  CHECK(r.einstein_a.einstein() != r.einstein_b.einstein());
  CHECK(r.equivalence.status == EquivalenceStatus::Obstructed);
}

TEST_CASE("criterion summary line") {
  CriterionResult c;
  c.id = 3;
  c.title = "demo";
  c.checks.push_back({"a", true, 0.0, 1.0, ""});
  CHECK(c.passed());
  CHECK(c.summary_line().rfind("criterion 3 PASS", 0) == 0);
  c.checks.push_back({"b", false, 2.0, 1.0, ""});
  CHECK(c.summary_line().rfind("criterion 3 FAIL", 0) == 0);
  CHECK_THROWS_AS(run_criterion(0), std::out_of_range);
}
