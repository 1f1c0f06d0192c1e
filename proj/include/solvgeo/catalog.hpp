#pragma once

#include <array>
#include <string>
#include <vector>

#include "solvgeo/lie_model.hpp"

namespace solvgeo {

/// Quaternions in the basis (1, i, j, k).
///
/// Left multiplication q -> p q and right multiplication q -> q p as 4x4
/// matrices acting on coefficient columns. For the imaginary units:
///
///   L(i) = [0 -1  0  0]   L(j) = [0  0 -1  0]   L(k) = [0  0  0 -1]
///          [1  0  0  0]          [0  0  0  1]          [0  0 -1  0]
///          [0  0  0 -1]          [1  0  0  0]          [0  1  0  0]
///          [0  0  1  0]          [0 -1  0  0]          [1  0  0  0]
///
///   R(i) = [0 -1  0  0]   R(j) = [0  0 -1  0]   R(k) = [0  0  0 -1]
///          [1  0  0  0]          [0  0  0 -1]          [0  0  1  0]
///          [0  0  0  1]          [1  0  0  0]          [0 -1  0  0]
///          [0  0 -1  0]          [0  1  0  0]          [1  0  0  0]
using Quaternion = std::array<double, 4>;
Quaternion quaternion_product(const Quaternion& p, const Quaternion& q);
Matrix quaternion_left(const Quaternion& p);
Matrix quaternion_right(const Quaternion& p);

/// z = Im H, j(p)(q_1..q_a, q'_1..q'_b) = (p q_1, .., p q_a, q'_1 p, .., q'_b p).
JMap catalog_qab(std::size_t a, std::size_t b);
/// v = R^3 + R^3, z = R^3 with <Z,W> = (2/3) Z.W, j(Z)(U,V) = (Z x U, Z x V).
JMap catalog_cross_product();
/// v = H + R^2, z = Im H with <Z,W> = (2/3) Z.W, j(Z)(U,V) = (Z U, 0).
JMap catalog_quaternion_trivial();
/// k = 1, J_1 the standard complex structure on R^m (m even).
JMap catalog_heis(std::size_t m);

struct Claim {
  std::string id;
  std::string expected;  ///< human-readable expected verdict or value
  double tolerance = 0.0;
};

struct CatalogEntry {
  std::string name;
  JMap jmap;
  std::string origin;
  std::vector<Claim> expected_claims;
};

/// name is one of qab, ex26_cross, ex26_quat, heis; params as documented above.
CatalogEntry catalog_build(const std::string& name, const std::vector<long>& params = {});
/// Parses "qab:2,0", "ex26_cross", "heis:4" (an optional leading '@' is ignored).
CatalogEntry catalog_lookup(const std::string& spec);
/// The entries exercised by the regression suite.
std::vector<std::string> catalog_names();

struct ClaimOutcome {
  Claim claim;
  bool passed = false;
  std::string observed;
};
/// Evaluates every expected claim of an entry.
std::vector<ClaimOutcome> check_claims(const CatalogEntry& entry);

}  // namespace solvgeo
