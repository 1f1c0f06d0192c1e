#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "solvgeo/catalog.hpp"
#include "solvgeo/homogeneous.hpp"
#include "solvgeo/jmap_analysis.hpp"
#include "solvgeo/json_io.hpp"
#include "solvgeo/threshold.hpp"

namespace solvgeo {

Json to_json(const ValidationReport& r);
Json to_json(const std::vector<SkewEigenvalue>& s);
Json to_json(const IsospectralityReport& r);
Json to_json(const EquivalenceCertificate& c);
Json to_json(const EinsteinReport& r);
Json to_json(const ScalarCurvatureN& s);
Json to_json(const PlaneMaximum& p);
Json to_json(const SubmanifoldMaximum& s);
Json to_json(const ThresholdReport& r);
Json to_json(const DamekWitness& w);

/// Premise check for a pair of j-maps sharing a lattice: isospectrality
/// implies isospectral compact quotients, so it is the verdict reported.
/// Each subtorus w (columns in z coordinates) gets the mean curvature of both
/// fibrations and a lattice-equivalence search on the two quotients.
struct PairReport {
  IsospectralityReport isospectral;
  bool premise_holds = false;
  std::string conclusion;
  EquivalenceCertificate equivalence;
  EinsteinReport einstein_a, einstein_b;
  struct Subtorus {
    Matrix w;
    MeanCurvatureResult mean_a, mean_b;
    bool mean_agree = false;
    bool degenerate = false;
    EquivalenceCertificate quotient;
  };
  std::vector<Subtorus> subtori;
};

/// Uses a.lattice (or the standard lattice) for both maps. Throws
/// ValidationError on dimension mismatch.
PairReport isospectral_pair_report(const JMap& a, const JMap& b, double c, const std::vector<Matrix>& subtori,
                                   const EquivalenceOptions& opt = {});
Json to_json(const PairReport& r);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;  ///< observed residual or quantity
  double bound = 0.0;  ///< threshold it is compared against
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double budget_seconds = 0.0;  ///< 0 when no runtime bound applies
  [[nodiscard]] bool passed() const;
  /// "criterion 4 FAIL ..." on one line.
  [[nodiscard]] std::string summary_line() const;
};

struct ReportOptions {
  std::size_t restarts = 64;
  std::uint64_t seed = 0x5eed;
  /// Extra j-maps validated before the criteria run (named by their source).
  std::vector<std::pair<std::string, JMap>> inputs;
};

constexpr int kCriterionCount = 9;
std::string criterion_title(int id);
/// Throws std::out_of_range for ids outside 1..kCriterionCount.
CriterionResult run_criterion(int id, const ReportOptions& opt = {});

struct InputResult {
  std::string source;
  ValidationReport validation;
};

struct SuiteReport {
  std::vector<InputResult> inputs;
  std::vector<CriterionResult> criteria;
  std::vector<std::pair<std::string, std::vector<ClaimOutcome>>> catalog;
  double seconds = 0.0;
  [[nodiscard]] bool passed() const;
};

/// Runs the selected criteria (all when empty) after validating the inputs
/// and checking every catalog claim.
SuiteReport suite_report(const ReportOptions& opt = {}, const std::vector<int>& ids = {});
Json to_json(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

}  // namespace solvgeo
