#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvgeo/lie_model.hpp"

namespace solvgeo {

struct IsospectralityReport {
  bool verdict = false;
  std::size_t max_power_checked = 0;  ///< floor(m / 2)
  double worst_residual = 0.0;        ///< max |tr j(z)^2p - tr j'(z)^2p| over the grids
  double tolerance = 0.0;             ///< relative tolerance used per grid point
  std::optional<Vector> witness_z;    ///< grid point with a mismatch, when verdict is false
  std::size_t witness_power = 0;
};

/// Compares z -> tr(j(z)^2p) for p = 1..floor(m/2) on the grids {0..2p}^k.
/// Both maps need the same m, k and gram_z. Relative tolerance per point.
IsospectralityReport is_isospectral(const JMap& a, const JMap& b, double rtol = 1e-8);

/// Spectrum of j(z) (z in z coordinates), computed in a gram_v-orthonormal frame.
std::vector<SkewEigenvalue> spectrum_at(const JMap& j, const Vector& z);

struct HeisenbergTypeReport {
  bool passed = false;
  double residual = 0.0;  ///< max entry of J_i J_l + J_l J_i + 2 delta_il Id, orthonormal frames
};
HeisenbergTypeReport is_heisenberg_type(const JMap& j, double tol = 1e-10);

/// dim { S in so(v) : S J_i = J_i S for all i }, in orthonormal frames.
std::size_t skew_commutant_dim(const JMap& j, double tol = 1e-9);

enum class EquivalenceStatus { Certified, Inconclusive, Obstructed };
std::string to_string(EquivalenceStatus s);

/// Certificate for alpha j(beta z) alpha^-1 = j'(z).
///
/// alpha maps (v, gram_v) isometrically onto (v, gram_v'), beta maps
/// (z, gram_z') isometrically onto (z, gram_z). Both are in the original
/// coordinates of the inputs.
struct EquivalenceCertificate {
  EquivalenceStatus status = EquivalenceStatus::Inconclusive;
  Matrix alpha;
  Matrix beta;
  double residual = 0.0;  ///< sum_i |alpha j(beta e_i) alpha^-1 - j'(e_i)|_F^2
  std::string obstruction;
  std::string obstruction_values;
  std::size_t restarts_used = 0;
};

struct EquivalenceOptions {
  std::size_t restarts = 200;
  std::uint64_t seed = 0x5eed;
  std::size_t max_iterations = 3000;
  double certify_below = 1e-8;
};

/// Looks for (alpha, beta). Invariant mismatches give Obstructed; a failed
/// search gives Inconclusive. Inequivalence is never inferred from the search alone.
EquivalenceCertificate find_equivalence(const JMap& a, const JMap& b, const EquivalenceOptions& opt = {});

/// As find_equivalence, with beta restricted to isometries carrying the
/// lattice of `b` onto the lattice of `a` (both must be set). k <= 3.
EquivalenceCertificate find_lattice_equivalence(const JMap& a, const JMap& b,
                                                const EquivalenceOptions& opt = {});

/// Isometries of (z, gram_z') onto (z, gram_z) carrying lattice `from` onto
/// lattice `to`, as matrices in z coordinates. k <= 3.
std::vector<Matrix> lattice_isometries(const Matrix& from, const Matrix& gram_from, const Matrix& to,
                                       const Matrix& gram_to);

struct EquivalenceIsometry {
  Matrix tau;  ///< g(j,c) -> g(j',c) in the (v, z, A) coordinates of build_g
  double gram_residual = 0.0;
  double bracket_residual = 0.0;
  bool valid = false;
};

/// tau(sA + X + Z) = sA + alpha X + beta^-1 Z, checked to preserve metric and brackets.
EquivalenceIsometry build_equivalence_isometry(const JMap& a, const JMap& b,
                                               const EquivalenceCertificate& cert, double c,
                                               double tol = 1e-9);

/// Sum of squared residuals alpha j(beta e_i) alpha^-1 - j'(e_i) in original coordinates.
double equivalence_residual(const JMap& a, const JMap& b, const Matrix& alpha, const Matrix& beta);

}  // namespace solvgeo
