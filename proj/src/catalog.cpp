#include "solvgeo/catalog.hpp"

#include <cmath>
#include <sstream>

#include "solvgeo/homogeneous.hpp"
#include "solvgeo/jmap_analysis.hpp"

namespace solvgeo {

Quaternion quaternion_product(const Quaternion& p, const Quaternion& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

namespace {

Quaternion unit_quaternion(std::size_t i) {
  Quaternion q{0, 0, 0, 0};
  q[i] = 1.0;
  return q;
}

Matrix multiplication_matrix(const Quaternion& p, bool left) {
  Matrix out(4, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    const Quaternion e = unit_quaternion(c);
    const Quaternion img = left ? quaternion_product(p, e) : quaternion_product(e, p);
    for (std::size_t r = 0; r < 4; ++r) out(r, c) = img[r];
  }
  return out;
}

Matrix cross_matrix(std::size_t axis) {
  // Z x U for Z = e_axis.
  Matrix out(3, 3);
  const std::size_t a = (axis + 1) % 3, b = (axis + 2) % 3;
  out(b, a) = 1.0;
  out(a, b) = -1.0;
  return out;
}

void place_block(Matrix& dst, const Matrix& block, std::size_t offset) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) dst(offset + r, offset + c) = block(r, c);
}

std::string format_spectrum(const std::vector<SkewEigenvalue>& s) {
  std::ostringstream os;
  os.precision(12);
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i)
    os << (i ? ", " : "") << '(' << s[i].omega << " x" << s[i].multiplicity << ')';
  os << '}';
  return os.str();
}

}  // namespace

Matrix quaternion_left(const Quaternion& p) { return multiplication_matrix(p, true); }
Matrix quaternion_right(const Quaternion& p) { return multiplication_matrix(p, false); }

JMap catalog_qab(std::size_t a, std::size_t b) {
  if (a + b == 0) throw ValidationError("qab: need a + b >= 1");
  const std::size_t m = 4 * (a + b);
  std::vector<Matrix> ops;
  for (std::size_t u = 1; u <= 3; ++u) {
    Matrix op(m, m);
    const Matrix l = quaternion_left(unit_quaternion(u)), r = quaternion_right(unit_quaternion(u));
    for (std::size_t f = 0; f < a; ++f) place_block(op, l, 4 * f);
    for (std::size_t f = 0; f < b; ++f) place_block(op, r, 4 * (a + f));
    ops.push_back(op);
  }
  return make_jmap(std::move(ops));
}

JMap catalog_cross_product() {
  std::vector<Matrix> ops;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    Matrix op(6, 6);
    place_block(op, cross_matrix(axis), 0);
    place_block(op, cross_matrix(axis), 3);
    ops.push_back(op);
  }
  return make_jmap(std::move(ops), std::nullopt, (2.0 / 3.0) * Matrix::identity(3));
}

JMap catalog_quaternion_trivial() {
  std::vector<Matrix> ops;
  for (std::size_t u = 1; u <= 3; ++u) {
    Matrix op(6, 6);
    place_block(op, quaternion_left(unit_quaternion(u)), 0);
    ops.push_back(op);
  }
  return make_jmap(std::move(ops), std::nullopt, (2.0 / 3.0) * Matrix::identity(3));
}

JMap catalog_heis(std::size_t m) {
  if (m == 0 || m % 2 != 0) throw ValidationError("heis: m must be positive and even");
  Matrix op(m, m);
  for (std::size_t i = 0; i < m; i += 2) {
    op(i + 1, i) = 1.0;
    op(i, i + 1) = -1.0;
  }
  return make_jmap({op});
}

CatalogEntry catalog_build(const std::string& name, const std::vector<long>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      std::ostringstream os;
      os << "catalog entry '" << name << "' takes " << count << " parameter(s), got " << params.size();
      throw ValidationError(os.str());
    }
    for (long p : params)
      if (p < 0) throw ValidationError("catalog parameters must be non-negative");
  };
  CatalogEntry e;
  if (name == "qab") {
    need(2);
    const auto a = static_cast<std::size_t>(params[0]), b = static_cast<std::size_t>(params[1]);
    e.name = "qab:" + std::to_string(a) + "," + std::to_string(b);
    e.jmap = catalog_qab(a, b);
    e.origin = "quaternion multiplication: a left factors, b right factors";
    const std::size_t comm = a * (2 * a + 1) + b * (2 * b + 1);
    e.expected_claims = {{"heisenberg_type", "pass", 1e-10},
                         {"skew_commutant_dim", std::to_string(comm), 0.0},
                         {"einstein", "both conditions pass", 1e-9},
                         {"constant_scalar", "true", 1e-9}};
    if (a != b) e.expected_claims.push_back({"equivalent_to_swap", "certified", 1e-8});
  } else if (name == "ex26_cross") {
    need(0);
    e.name = name;
    e.jmap = catalog_cross_product();
    e.origin = "cross product on two copies of R^3, <Z,W> = (2/3) Z.W";
    e.expected_claims = {{"spectrum_e1", "{(0 x2), (1 x4)}", 1e-10},
                         {"heisenberg_type", "fail", 1e-10},
                         {"einstein", "both conditions pass", 1e-9},
                         {"casimir_scalar", "-3", 1e-10},
                         {"constant_scalar", "true", 1e-9}};
  } else if (name == "ex26_quat") {
    need(0);
    e.name = name;
    e.jmap = catalog_quaternion_trivial();
    e.origin = "left quaternion multiplication on H plus a trivial R^2, <Z,W> = (2/3) Z.W";
    e.expected_claims = {{"spectrum_e1", "{(0 x2), (1 x4)}", 1e-10},
                         {"heisenberg_type", "fail", 1e-10},
                         {"einstein", "condition i passes, condition ii fails", 1e-9},
                         {"constant_scalar", "false", 1e-9}};
  } else if (name == "heis") {
    need(1);
    const auto m = static_cast<std::size_t>(params[0]);
    e.name = "heis:" + std::to_string(m);
    e.jmap = catalog_heis(m);
    e.origin = "Heisenberg algebra, standard complex structure";
    e.expected_claims = {{"heisenberg_type", "pass", 1e-10},
                         {"skew_commutant_dim", std::to_string((m / 2) * (m / 2)), 0.0},
                         {"einstein", "both conditions pass", 1e-9},
                         {"constant_scalar", "true", 1e-9}};
  } else {
    throw ValidationError("unknown catalog entry '" + name + "' (known: qab, ex26_cross, ex26_quat, heis)");
  }
  return e;
}

CatalogEntry catalog_lookup(const std::string& spec) {
  std::string s = spec;
  if (!s.empty() && s.front() == '@') s.erase(0, 1);
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  std::vector<long> params;
  if (colon != std::string::npos) {
    std::stringstream ss(s.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw ValidationError("bad catalog parameter '" + item + "'");
      params.push_back(v);
    }
  }
  return catalog_build(name, params);
}

std::vector<std::string> catalog_names() {
  return {"qab:1,0", "qab:0,1", "qab:2,0", "qab:1,1", "ex26_cross", "ex26_quat", "heis:2", "heis:4"};
}

std::vector<ClaimOutcome> check_claims(const CatalogEntry& entry) {
  const JMap& j = entry.jmap;
  std::vector<ClaimOutcome> out;
  for (const Claim& c : entry.expected_claims) {
    ClaimOutcome o{c, false, {}};
    std::ostringstream os;
    os.precision(12);
    if (c.id == "heisenberg_type") {
      const auto h = is_heisenberg_type(j, c.tolerance);
      os << (h.passed ? "pass" : "fail") << " (residual " << h.residual << ")";
      o.passed = (h.passed ? "pass" : "fail") == c.expected;
    } else if (c.id == "skew_commutant_dim") {
      const std::size_t d = skew_commutant_dim(j);
      os << d;
      o.passed = std::to_string(d) == c.expected;
    } else if (c.id == "einstein") {
      const auto e = einstein_check(j, c.tolerance);
      const std::string verdict = e.einstein() ? "both conditions pass"
                                  : e.condition_i ? "condition i passes, condition ii fails"
                                  : e.condition_ii ? "condition i fails, condition ii passes"
                                                   : "both conditions fail";
      os << verdict << " (residuals " << e.condition_i_residual << ", " << e.condition_ii_residual
         << "; Ricci spread " << e.ricci_eigen_spread << ")";
      o.passed = verdict == c.expected && e.consistent();
    } else if (c.id == "casimir_scalar") {
      const auto e = einstein_check(j);
      os << e.casimir_scalar;
      o.passed = e.condition_ii && std::abs(e.casimir_scalar - std::stod(c.expected)) <= c.tolerance;
    } else if (c.id == "constant_scalar") {
      const bool v = constant_scalar_verdict(j, c.tolerance);
      os << (v ? "true" : "false");
      o.passed = (v ? "true" : "false") == c.expected;
    } else if (c.id == "spectrum_e1") {
      const auto s = spectrum_at(j, Vector::unit(j.k, 0));
      os << format_spectrum(s);
      o.passed = s.size() == 2 && s[0].multiplicity == 2 && s[1].multiplicity == 4 &&
                 std::abs(s[0].omega) <= c.tolerance && std::abs(s[1].omega - 1.0) <= c.tolerance;
    } else if (c.id == "equivalent_to_swap") {
      const auto comma = entry.name.find(',');
      const std::string swapped = "qab:" + entry.name.substr(comma + 1) + "," +
                                  entry.name.substr(4, comma - 4);
      const auto cert = find_equivalence(j, catalog_lookup(swapped).jmap);
      os << to_string(cert.status) << " (residual " << cert.residual << ")";
      o.passed = to_string(cert.status) == c.expected;
    } else {
      os << "unknown claim";
    }
    o.observed = os.str();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace solvgeo
