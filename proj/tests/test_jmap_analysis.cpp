#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/jmap_analysis.hpp"

#include <cmath>

using namespace solvgeo;

namespace {

// alpha j(beta z) alpha^-1 for orthogonal alpha, beta.
JMap transform(const JMap& j, const Matrix& alpha, const Matrix& beta) {
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < j.k; ++i) ops.push_back(alpha * j(beta.col(i)) * alpha.transpose());
  return make_jmap(std::move(ops), j.gram_v, j.gram_z);
}

}  // namespace

TEST_CASE("quaternionic pair is isospectral") {
  const auto rep = is_isospectral(catalog_qab(2, 0), catalog_qab(1, 1));
  CHECK(rep.verdict);
  CHECK(rep.max_power_checked == 4);
  CHECK(rep.worst_residual < 1e-8);
}

TEST_CASE("isospectrality fails for a rescaled map with a witness") {
  const JMap j = catalog_qab(1, 0);
  std::vector<Matrix> ops;
  for (const Matrix& op : j.J) ops.push_back(2.0 * op);
  const auto rep = is_isospectral(j, make_jmap(ops));
  CHECK_FALSE(rep.verdict);
  CHECK(rep.witness_z.has_value());
  CHECK_THROWS_AS(is_isospectral(catalog_qab(1, 0), catalog_qab(1, 1)), ValidationError);
}

TEST_CASE("cross-product pair is isospectral") {
  CHECK(is_isospectral(catalog_cross_product(), catalog_quaternion_trivial()).verdict);
}

TEST_CASE("spectrum of the cross-product map") {
  const auto s = spectrum_at(catalog_cross_product(), Vector{1, 0, 0});
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0].omega) < 1e-12);
  CHECK(s[0].multiplicity == 2);
  CHECK(std::abs(s[1].omega - 1.0) < 1e-12);
  CHECK(s[1].multiplicity == 4);
}

TEST_CASE("Heisenberg type") {
  for (const char* name : {"qab:1,0", "qab:2,0", "qab:1,1", "heis:2", "heis:4"})
    CHECK(is_heisenberg_type(catalog_lookup(name).jmap).passed);
  CHECK_FALSE(is_heisenberg_type(catalog_cross_product()).passed);
  CHECK_FALSE(is_heisenberg_type(catalog_quaternion_trivial()).passed);
}

TEST_CASE("skew-commutant dimensions") {
  CHECK(skew_commutant_dim(catalog_qab(1, 0)) == 3);
  CHECK(skew_commutant_dim(catalog_qab(2, 0)) == 10);
  CHECK(skew_commutant_dim(catalog_qab(1, 1)) == 6);
  CHECK(skew_commutant_dim(catalog_heis(4)) == 4);
  std::mt19937_64 rng(21);
  CHECK(skew_commutant_dim(random_jmap(6, 3, rng, true)) == 0);
}

TEST_CASE("left and right quaternion actions are equivalent") {
  const JMap a = catalog_qab(1, 0), b = catalog_qab(0, 1);
  const auto cert = find_equivalence(a, b);
  REQUIRE(cert.status == EquivalenceStatus::Certified);
  CHECK(cert.residual < 1e-8);
  CHECK(equivalence_residual(a, b, cert.alpha, cert.beta) < 1e-8);
  CHECK((cert.alpha.transpose() * cert.alpha - Matrix::identity(4)).max_abs() < 1e-9);
  const EquivalenceIsometry iso = build_equivalence_isometry(a, b, cert, 1.3);
  CHECK(iso.valid);
  CHECK(iso.gram_residual < 1e-9);
  CHECK(iso.bracket_residual < 1e-9);
}

TEST_CASE("quaternionic pair is obstructed") {
  const auto cert = find_equivalence(catalog_qab(2, 0), catalog_qab(1, 1));
  CHECK(cert.status == EquivalenceStatus::Obstructed);
  CHECK_FALSE(cert.obstruction.empty());
}

TEST_CASE("planted equivalences are recovered") {
  std::mt19937_64 rng(22);
  for (int s = 0; s < 3; ++s) {
    const JMap j = random_jmap(5, 2 + s % 2, rng, true);
    const JMap planted = transform(j, random_orthogonal(5, rng), random_orthogonal(j.k, rng));
    const auto cert = find_equivalence(j, planted);
    CHECK(cert.status == EquivalenceStatus::Certified);
    CHECK(equivalence_residual(j, planted, cert.alpha, cert.beta) < 1e-8);
  }
}

TEST_CASE("equivalence with non-identity inner products") {
  std::mt19937_64 rng(23);
  const JMap j = random_jmap(4, 2, rng);
  // Change of basis on v: j' = g j g^-1 with gram_v' = g^-T gram_v g^-1.
  const Matrix g = random_gaussian(4, 4, rng) + 3.0 * Matrix::identity(4);
  const Matrix gi = inverse(g);
  std::vector<Matrix> ops;
  for (const Matrix& op : j.J) ops.push_back(g * op * gi);
  const JMap b = make_jmap(ops, gi.transpose() * j.gram_v * gi, j.gram_z);
  REQUIRE(validate(b).ok());
  const auto cert = find_equivalence(j, b);
  CHECK(cert.status == EquivalenceStatus::Certified);
  CHECK(build_equivalence_isometry(j, b, cert, 0.7).valid);
}

TEST_CASE("equivalence search is deterministic for a fixed seed") {
  std::mt19937_64 rng(24);
  const JMap j = random_jmap(6, 2, rng, true);
  const JMap planted = transform(j, random_orthogonal(6, rng), random_orthogonal(2, rng));
  const auto a = find_equivalence(j, planted), b = find_equivalence(j, planted);
  CHECK(a.alpha == b.alpha);
  CHECK(a.beta == b.beta);
  CHECK(a.residual == b.residual);
}

TEST_CASE("lattice isometries of the square lattice") {
  const auto isos = lattice_isometries(Matrix::identity(2), Matrix::identity(2), Matrix::identity(2), Matrix::identity(2));
  CHECK(isos.size() == 8);
  const auto none = lattice_isometries(2.0 * Matrix::identity(2), Matrix::identity(2), Matrix::identity(2),
                                       Matrix::identity(2));
  CHECK(none.empty());
}

TEST_CASE("lattice equivalence") {
  JMap a = catalog_qab(1, 0), b = catalog_qab(0, 1);
  a.lattice = Matrix::identity(3);
  b.lattice = Matrix::identity(3);
  CHECK(find_lattice_equivalence(a, b).status == EquivalenceStatus::Certified);
  b.lattice = 2.0 * Matrix::identity(3);
  CHECK(find_lattice_equivalence(a, b).status != EquivalenceStatus::Certified);
}

TEST_CASE("lattice equivalence through a quarter turn of the square lattice") {
  std::mt19937_64 rng(25);
  JMap a = random_jmap(4, 2, rng, true);
  const Matrix quarter = Matrix::from_rows({{0, -1}, {1, 0}});
  JMap b = transform(a, Matrix::identity(4), quarter);
  a.lattice = b.lattice = Matrix::identity(2);
  const auto cert = find_lattice_equivalence(a, b);
  REQUIRE(cert.status == EquivalenceStatus::Certified);
  CHECK(equivalence_residual(a, b, cert.alpha, cert.beta) < 1e-8);

  JMap hex = a;
  hex.lattice = Matrix::from_rows({{1, 0.5}, {0, std::sqrt(3.0) / 2}});
  CHECK(find_lattice_equivalence(a, hex).status == EquivalenceStatus::Obstructed);
}

TEST_CASE("spectrum is homogeneous in z") {
  std::mt19937_64 rng(26);
  const JMap j = random_jmap(5, 3, rng);
  const Vector z = random_gaussian(3, rng);
  const auto s1 = spectrum_at(j, z), s3 = spectrum_at(j, -3.0 * z);
  REQUIRE(s1.size() == s3.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(std::abs(3.0 * s1[i].omega - s3[i].omega) < 1e-10);
    CHECK(s1[i].multiplicity == s3[i].multiplicity);
  }
}

TEST_CASE("commutant of a map with a kernel block") {
  Matrix j1(4, 4);
  j1(0, 1) = -1.0;
  j1(1, 0) = 1.0;
  CHECK(skew_commutant_dim(make_jmap({j1, Matrix(4, 4)})) >= 1);
}
