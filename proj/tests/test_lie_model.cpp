#include "doctest.h"
#include "solvgeo/catalog.hpp"
#include "solvgeo/lie_model.hpp"

#include <cmath>

using namespace solvgeo;

namespace {

JMap heisenberg3() { return make_jmap({Matrix::from_rows({{0, -1}, {1, 0}})}); }

Vector embed(const Vector& x, std::size_t offset, std::size_t n) {
  Vector out(n);
  for (std::size_t i = 0; i < x.size(); ++i) out[offset + i] = x[i];
  return out;
}

}  // namespace

TEST_CASE("build_h of the 2x2 rotation is the Heisenberg algebra") {
  const MetricLieAlgebra h = build_h(heisenberg3());
  REQUIRE(h.dim() == 3);
  const Vector br = h.bracket(Vector::unit(3, 0), Vector::unit(3, 1));
  CHECK(max_abs(br - Vector::unit(3, 2)) < 1e-15);
  CHECK(max_abs(h.bracket(Vector::unit(3, 2), Vector::unit(3, 0))) == 0.0);
}

TEST_CASE("build_h solves the gram_z system for the cross-product map") {
  const JMap j = catalog_cross_product();
  const MetricLieAlgebra h = build_h(j);
  std::mt19937_64 rng(1);
  const Vector u = random_gaussian(6, rng), w = random_gaussian(6, rng);
  const Vector br = h.bracket(embed(u, 0, 9), embed(w, 0, 9));
  for (std::size_t i = 0; i < 3; ++i) {
    const double expected = 1.5 * bilinear(Matrix::identity(6), j.J[i] * u, w);
    CHECK(std::abs(br[6 + i] - expected) < 1e-12);
  }
}

TEST_CASE("defining identity <[X,Y],Z> = <j(Z)X,Y> on random triples") {
  std::mt19937_64 rng(2);
  const JMap j = random_jmap(6, 3, rng);
  const MetricLieAlgebra h = build_h(j);
  const MetricLieAlgebra g = build_g(j, 1.7);
  double worst_h = 0.0, worst_g = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Vector x = random_gaussian(6, rng), y = random_gaussian(6, rng), z = random_gaussian(3, rng);
    const double rhs = bilinear(j.gram_v, j(z) * x, y);
    worst_h = std::max(worst_h, std::abs(h.inner(h.bracket(embed(x, 0, 9), embed(y, 0, 9)), embed(z, 6, 9)) - rhs));
    worst_g = std::max(worst_g, std::abs(g.inner(g.bracket(embed(x, 0, 10), embed(y, 0, 10)), embed(z, 6, 10)) - rhs));
  }
  CHECK(worst_h < 1e-10);
  CHECK(worst_g < 1e-10);
}

TEST_CASE("h(j) is two-step nilpotent and satisfies Jacobi") {
  std::mt19937_64 rng(3);
  const JMap j = random_jmap(5, 2, rng);
  const MetricLieAlgebra h = build_h(j);
  const std::size_t n = h.dim();
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        worst = std::max(worst, max_abs(h.bracket(h.bracket(Vector::unit(n, a), Vector::unit(n, b)), Vector::unit(n, c))));
  CHECK(worst <= 1e-14);
  CHECK(h.jacobi_residual() < 1e-12);
  CHECK(h.antisymmetry_residual() == 0.0);
}

TEST_CASE("build_g brackets and metric") {
  const MetricLieAlgebra g = build_g(heisenberg3(), 2.0);
  REQUIRE(g.dim() == 4);
  const Vector a = Vector::unit(4, 3);
  CHECK(max_abs(g.bracket(a, Vector::unit(4, 0)) - 0.5 * Vector::unit(4, 0)) < 1e-15);
  CHECK(max_abs(g.bracket(a, Vector::unit(4, 2)) - Vector::unit(4, 2)) < 1e-15);
  CHECK(g.gram()(3, 3) == doctest::Approx(0.25));
  CHECK(build_g(heisenberg3(), 1.0).gram()(3, 3) == doctest::Approx(1.0));
  CHECK_THROWS(build_g(heisenberg3(), 0.0));
  CHECK_THROWS(build_g(heisenberg3(), -1.0));
}

TEST_CASE("build_g satisfies Jacobi for random maps") {
  std::mt19937_64 rng(4);
  for (int s = 0; s < 20; ++s) {
    const JMap j = random_jmap(4 + rng() % 4, 1 + rng() % 3, rng);
    CHECK(build_g(j, 0.5 + s * 0.1).jacobi_residual() < 1e-12);
  }
}

TEST_CASE("build_r has abelian v") {
  const MetricLieAlgebra r = build_r(2, 1.0);
  REQUIRE(r.dim() == 3);
  CHECK(max_abs(r.bracket(Vector::unit(3, 0), Vector::unit(3, 1))) == 0.0);
  CHECK(max_abs(r.bracket(Vector::unit(3, 2), Vector::unit(3, 1)) - 0.5 * Vector::unit(3, 1)) < 1e-15);
  CHECK(r.antisymmetry_residual() == 0.0);
}

TEST_CASE("validate reports skewness and SPD failures") {
  const JMap good = heisenberg3();
  CHECK(validate(good).ok());

  const Matrix sym = Matrix::from_rows({{1, 2}, {2, 0}});
  const ValidationReport bad = validate(make_jmap({sym}));
  CHECK_FALSE(bad.ok());
  bool found = false;
  for (const auto& c : bad.checks)
    if (c.name.find("skew") != std::string::npos) {
      found = true;
      CHECK_FALSE(c.passed);
      CHECK(c.residual == doctest::Approx(2.0 * sym.frobenius()));
    }
  CHECK(found);

  JMap neg = good;
  neg.gram_z = Matrix::from_rows({{-1.0}});
  const ValidationReport spd = validate(neg);
  CHECK_FALSE(spd.ok());
  CHECK(spd.summary().find("-1") != std::string::npos);

  CHECK_FALSE(validate(make_jmap({Matrix(2, 2)})).ok());
  CHECK_THROWS_AS(require_valid(make_jmap({sym})), ValidationError);
}

TEST_CASE("quotient_data along a coordinate axis") {
  std::mt19937_64 rng(5);
  const JMap j = random_jmap(4, 2, rng, true);
  const QuotientData q = quotient_data(j, Lattice::standard(2), Matrix::from_columns({Vector{1, 0}}, 2));
  REQUIRE(q.j_k.k == 1);
  CHECK(((q.j_k.J[0] - j.J[1]).max_abs() < 1e-14 || (q.j_k.J[0] + j.J[1]).max_abs() < 1e-14));
  CHECK(std::abs(std::abs(q.lattice_k(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("quotient_data along the diagonal") {
  std::mt19937_64 rng(6);
  const JMap j = random_jmap(4, 2, rng, true);
  const QuotientData q = quotient_data(j, Lattice::standard(2), Matrix::from_columns({Vector{1, 1}}, 2));
  REQUIRE(q.basis_k.cols() == 1);
  const Vector b = q.basis_k.col(0);
  CHECK(std::abs(std::abs(b[0]) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(b[0] + b[1]) < 1e-14);
  // The projected lattice is generated by the projection of e_1, of length 1/sqrt(2).
  CHECK(std::abs(std::abs(q.lattice_k(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("quotient_data by nothing and by everything") {
  std::mt19937_64 rng(7);
  const JMap j = random_jmap(4, 2, rng, true);
  const QuotientData none = quotient_data(j, Lattice::standard(2), Matrix(2, 0));
  CHECK(none.j_k.k == 2);
  CHECK_FALSE(none.degenerate);
  const QuotientData all = quotient_data(j, Lattice::standard(2), Matrix::identity(2));
  CHECK(all.degenerate);
  CHECK(all.j_k.k == 0);
}

TEST_CASE("quotient_data rejects irrational subspaces") {
  std::mt19937_64 rng(8);
  const JMap j = random_jmap(4, 2, rng, true);
  CHECK_THROWS_AS(quotient_data(j, Lattice::standard(2), Matrix::from_columns({Vector{1, std::sqrt(2.0)}}, 2)),
                  ValidationError);
}

TEST_CASE("quotients in two steps match one step up to rotation") {
  std::mt19937_64 rng(9);
  const JMap j = random_jmap(6, 3, rng, true);
  const Lattice l = Lattice::standard(3);
  const QuotientData once = quotient_data(j, l, Matrix::from_columns({Vector{1, 0, 0}, Vector{0, 1, 1}}, 3));
  const QuotientData first = quotient_data(j, l, Matrix::from_columns({Vector{1, 0, 0}}, 3));
  // Image of (0, 1, 1) in the first quotient's coordinates.
  const Vector w2 = first.projection * Vector{0, 1, 1};
  const QuotientData twice = quotient_data(first.j_k, Lattice(first.lattice_k), Matrix::from_columns({w2}, 2));
  REQUIRE(once.j_k.k == 1);
  REQUIRE(twice.j_k.k == 1);
  const auto a = skew_spectrum(once.j_k.J[0]), b = skew_spectrum(twice.j_k.J[0]);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].omega - b[i].omega) < 1e-10);
}

TEST_CASE("orthonormalize gives identity grams and preserves skewness") {
  std::mt19937_64 rng(10);
  const JMap j = random_jmap(5, 2, rng);
  const OrthonormalJMap o = orthonormalize(j);
  CHECK((o.j.gram_v - Matrix::identity(5)).max_abs() == 0.0);
  for (const Matrix& op : o.j.J) CHECK(skew_defect(op) < 1e-12);
}
