// Command-line front end. Exit codes: 0 success or verdict true, 1 verdict
// false, 2 input error, 3 inconclusive equivalence search.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "solvgeo/report.hpp"

using namespace solvgeo;

namespace {

constexpr int kTrue = 0, kFalse = 1, kInputError = 2, kInconclusive = 3;

struct Common {
  bool json = false;
  std::size_t restarts = 64;
  std::uint64_t seed = 0x5eed;
  double c = 1.0, r = 1.0, t1 = 1.0, t2 = 4.0, tol = 1e-4;
  std::string csv_out;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SOLVGEO_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw ValidationError(std::string("SOLVGEO_SEED is not an integer: '") + env + "'");
    }
  }
  return 0x5eed;
}

Vector parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad number '" + item + "' in '" + text + "'");
    }
  }
  return Vector(std::move(out));
}

// "1,0,0;0,1,0" -> columns spanning a subspace of z.
Matrix parse_subspace(const std::string& text, std::size_t k) {
  std::vector<Vector> cols;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    Vector v = parse_vector(item);
    if (v.size() != k) throw ValidationError("subtorus vector '" + item + "' must have k = " + std::to_string(k) + " entries");
    cols.push_back(std::move(v));
  }
  return Matrix::from_columns(cols, k);
}

JMap load_valid(const std::string& source) {
  JMap j = load_jmap(source);
  require_valid(j);
  return j;
}

void emit(const Common& o, const Json& json, const std::string& text) {
  if (o.json)
    std::cout << json.dump(2) << '\n';
  else
    std::cout << text;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and isospectrality tools for solvable extensions of two-step nilpotent Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Common o;
  std::optional<std::uint64_t> seed_flag;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--restarts", o.restarts, "Random restarts for curvature maximization")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed_flag, "Random seed (default: SOLVGEO_SEED or 0x5eed)");
  app.add_option("--c", o.c, "Length parameter c, |A| = 1/c")->check(CLI::PositiveNumber);
  app.add_option("--r", o.r, "Sphere radius in v")->check(CLI::PositiveNumber);
  app.add_option("--t1", o.t1, "Lower end of the t range")->check(CLI::PositiveNumber);
  app.add_option("--t2", o.t2, "Upper end of the t range")->check(CLI::PositiveNumber);
  app.add_option("--tol", o.tol, "Bisection bracket width")->check(CLI::PositiveNumber);
  app.add_option("--csv-out", o.csv_out, "Write a CSV table to this path");

  const std::string source_help = "j-map JSON file or catalog entry such as @qab:2,0";
  std::string src_a, src_b;

  auto* validate_cmd = app.add_subcommand("validate", "Check the j-map invariants");
  validate_cmd->add_option("jmap", src_a, source_help)->required();

  auto* curvature_cmd = app.add_subcommand("curvature", "Curvature of g(j, c) and its maximal sectional curvature");
  curvature_cmd->add_option("jmap", src_a, source_help)->required();

  auto* iso_cmd = app.add_subcommand("isospectral", "Isospectrality premise report for a pair of j-maps");
  iso_cmd->add_option("a", src_a, source_help)->required();
  iso_cmd->add_option("b", src_b, source_help)->required();
  std::vector<std::string> subtori;
  iso_cmd->add_option("--subtorus", subtori, "Subtorus w as z vectors, e.g. '1,0,0;0,1,0' (repeatable)");

  auto* eq_cmd = app.add_subcommand("equivalent", "Search for an equivalence alpha j(beta z) alpha^-1 = j'(z)");
  eq_cmd->add_option("a", src_a, source_help)->required();
  eq_cmd->add_option("b", src_b, source_help)->required();
  bool use_lattice = false;
  eq_cmd->add_flag("--lattice", use_lattice, "Require beta to match the lattices of both inputs");

  auto* einstein_cmd = app.add_subcommand("einstein", "Einstein conditions for g(j, 1)");
  einstein_cmd->add_option("jmap", src_a, source_help)->required();

  auto* scalar_cmd = app.add_subcommand("scalar-n", "Scalar curvature of the distance sphere N_r(j)");
  scalar_cmd->add_option("jmap", src_a, source_help)->required();
  std::string point;
  std::size_t samples = 100;
  scalar_cmd->add_option("--x", point, "Point of v with |x| = r (comma separated); sampled when omitted");
  scalar_cmd->add_option("--samples", samples, "Random points when --x is omitted")->check(CLI::PositiveNumber);

  auto* sub_cmd = app.add_subcommand("submanifold", "Curvature of the hypersurface |X| = r in G(j, c) over t in [t1, t2]");
  sub_cmd->add_option("jmap", src_a, source_help)->required();
  std::size_t grid_points = 7, profile_samples = 64;
  sub_cmd->add_option("--samples", profile_samples, "Directions sampled per t for the scalar profile");
  sub_cmd->add_option("--grid", grid_points, "Number of t values in the profile")->check(CLI::Range(2, 10000));

  auto* lambda_cmd = app.add_subcommand("lambda", "Bisect the threshold c above which the curvature is negative");
  lambda_cmd->add_option("jmap", src_a, source_help)->required();
  double c_lo = 0.5, c_hi = 2.0;
  bool hypersurface = false;
  lambda_cmd->add_option("--c-lo", c_lo, "Lower end of the c bracket")->check(CLI::PositiveNumber);
  lambda_cmd->add_option("--c-hi", c_hi, "Upper end of the c bracket")->check(CLI::PositiveNumber);
  lambda_cmd->add_flag("--hypersurface", hypersurface, "Threshold for the hypersurface |X| = r, t in [t1, t2]");

  auto* family_cmd = app.add_subcommand("family-scan", "Threshold for each member of a family T=SOURCE ...");
  std::vector<std::string> members;
  bool force = false;
  family_cmd->add_option("members", members, "Members as t=source")->required();
  family_cmd->add_option("--c-lo", c_lo, "Lower end of the c bracket")->check(CLI::PositiveNumber);
  family_cmd->add_option("--c-hi", c_hi, "Upper end of the c bracket")->check(CLI::PositiveNumber);
  family_cmd->add_flag("--force", force, "Scan even if members are not isospectral");

  auto* catalog_cmd = app.add_subcommand("catalog", "List catalog entries, or print and check one");
  std::string entry, out_path;
  catalog_cmd->add_option("entry", entry, "Entry such as qab:2,0");
  catalog_cmd->add_option("--out", out_path, "Write the entry's j-map JSON here");

  auto* report_cmd = app.add_subcommand("report", "Run the verification suite");
  std::vector<int> criteria;
  std::vector<std::string> inputs;
  report_cmd->add_option("--criterion", criteria, "Run only these criteria (repeatable)")
      ->check(CLI::Range(1, kCriterionCount));
  report_cmd->add_option("--input", inputs, "Extra j-map files validated before the suite (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    o.seed = seed_flag ? *seed_flag : default_seed();
    SearchOptions search;
    search.restarts = o.restarts;
    search.seed = o.seed;
    EquivalenceOptions eq;
    eq.seed = o.seed;
    SubmanifoldSearchOptions sub_opt;
    sub_opt.inner.seed = o.seed;

    if (*validate_cmd) {
      const JMap j = load_jmap(src_a);
      const ValidationReport rep = validate(j);
      emit(o, to_json(rep), rep.summary());
      return rep.ok() ? kTrue : kFalse;
    }

    if (*curvature_cmd) {
      const JMap j = load_valid(src_a);
      const MetricLieAlgebra g = build_g(j, o.c);
      const CurvatureData curv = curvature(g);
      const double connection_gap = closed_form_connection(j, o.c).max_difference(curv.connection());
      const PlaneMaximum best = max_sectional_homogeneous(j, o.c, search);
      const SymEigen ric = sym_eigen(curv.ricci());
      Json out{{"dim", curv.dim()},
               {"c", o.c},
               {"scalar", curv.scalar()},
               {"ricci_eigenvalues", vector_to_json(ric.values)},
               {"symmetry_residual", curv.symmetry_residual()},
               {"closed_form_connection_gap", connection_gap},
               {"max_sectional", to_json(best)}};
      std::ostringstream os;
      os << "dim " << curv.dim() << ", c = " << o.c << "\nscalar curvature " << fmt(curv.scalar())
         << "\nRicci eigenvalues";
      for (double v : ric.values.values()) os << ' ' << fmt(v);
      os << "\ncurvature symmetry residual " << curv.symmetry_residual() << "\nclosed-form connection gap "
         << connection_gap << "\nmax sectional curvature " << fmt(best.value) << " (" << best.saturated << " of "
         << best.restart_values.size() << " restarts within 1e-9)\n";
      emit(o, out, os.str());
      return kTrue;
    }

    if (*iso_cmd) {
      const JMap a = load_valid(src_a), b = load_valid(src_b);
      std::vector<Matrix> ws;
      for (const std::string& s : subtori) ws.push_back(parse_subspace(s, a.k));
      const PairReport rep = isospectral_pair_report(a, b, o.c, ws, eq);
      std::ostringstream os;
      os << "isospectral: " << (rep.premise_holds ? "yes" : "no") << " (worst trace residual "
         << rep.isospectral.worst_residual << ", powers up to " << rep.isospectral.max_power_checked << ")\n"
         << rep.conclusion << "\nequivalence: " << to_string(rep.equivalence.status);
      if (!rep.equivalence.obstruction.empty())
        os << " (" << rep.equivalence.obstruction << ": " << rep.equivalence.obstruction_values << ")";
      os << "\nEinstein: " << (rep.einstein_a.einstein() ? "yes" : "no") << " / "
         << (rep.einstein_b.einstein() ? "yes" : "no") << '\n';
      for (const auto& s : rep.subtori) {
        os << "subtorus dim " << s.w.cols() << ": mean curvature " << (s.mean_agree ? "agrees" : "DIFFERS");
        if (!s.degenerate) os << ", quotient equivalence " << to_string(s.quotient.status);
        os << '\n';
      }
      emit(o, to_json(rep), os.str());
      return rep.premise_holds ? kTrue : kFalse;
    }

    if (*eq_cmd) {
      const JMap a = load_valid(src_a), b = load_valid(src_b);
      const EquivalenceCertificate cert = use_lattice ? find_lattice_equivalence(a, b, eq) : find_equivalence(a, b, eq);
      Json out = to_json(cert);
      std::ostringstream os;
      os << to_string(cert.status) << " (residual " << cert.residual << ", restarts " << cert.restarts_used << ")\n";
      if (!cert.obstruction.empty()) os << cert.obstruction << ": " << cert.obstruction_values << '\n';
      if (cert.status == EquivalenceStatus::Certified) {
        const EquivalenceIsometry iso = build_equivalence_isometry(a, b, cert, o.c);
        out["isometry"] = {{"valid", iso.valid},
                           {"gram_residual", iso.gram_residual},
                           {"bracket_residual", iso.bracket_residual},
                           {"tau", matrix_to_json(iso.tau)}};
        os << "isometry of g(j, " << o.c << "): " << (iso.valid ? "valid" : "INVALID") << " (metric residual "
           << iso.gram_residual << ", bracket residual " << iso.bracket_residual << ")\n";
      }
      emit(o, out, os.str());
      switch (cert.status) {
        case EquivalenceStatus::Certified: return kTrue;
        case EquivalenceStatus::Obstructed: return kFalse;
        default: return kInconclusive;
      }
    }

    if (*einstein_cmd) {
      const JMap j = load_valid(src_a);
      const EinsteinReport rep = einstein_check(j);
      std::ostringstream os;
      os << "condition i: " << (rep.condition_i ? "pass" : "fail") << " (residual " << rep.condition_i_residual
         << ")\ncondition ii: " << (rep.condition_ii ? "pass" : "fail") << " (residual " << rep.condition_ii_residual
         << ", scalar " << fmt(rep.casimir_scalar) << ")\nRicci eigenvalue spread " << rep.ricci_eigen_spread
         << (rep.consistent() ? " (consistent)" : " (INCONSISTENT with the conditions)") << "\nEinstein: "
         << (rep.einstein() ? "yes" : "no") << '\n';
      emit(o, to_json(rep), os.str());
      return rep.einstein() ? kTrue : kFalse;
    }

    if (*scalar_cmd) {
      const JMap j = load_valid(src_a);
      if (!point.empty()) {
        const Vector x = parse_vector(point);
        if (x.size() != j.m) throw ValidationError("--x must have m = " + std::to_string(j.m) + " entries");
        const ScalarCurvatureN s = scalar_curvature_N(j, o.r, x);
        std::ostringstream os;
        os << "closed form " << fmt(s.closed_form) << "\nGauss equation " << fmt(s.gauss) << "\ndifference "
           << s.closed_form - s.gauss << '\n';
        emit(o, to_json(s), os.str());
        return kTrue;
      }
      const ScalarSampleStats st = sample_scalar_curvature_N(j, o.r, samples, o.seed);
      const bool constant = constant_scalar_verdict(j);
      Json out{{"samples", st.samples}, {"mean", st.mean},   {"stddev", st.stddev},
               {"min", st.min},         {"max", st.max},     {"constant_scalar", constant}};
      std::ostringstream os;
      os << st.samples << " points: mean " << fmt(st.mean) << ", std " << st.stddev << ", range [" << fmt(st.min)
         << ", " << fmt(st.max) << "]\nconstant scalar curvature: " << (constant ? "yes" : "no") << '\n';
      emit(o, out, os.str());
      return constant ? kTrue : kFalse;
    }

    if (*sub_cmd) {
      const JMap j = load_valid(src_a);
      if (!(o.t2 > o.t1)) throw ValidationError("need t1 < t2");
      std::vector<double> grid;
      for (std::size_t i = 0; i < grid_points; ++i)
        grid.push_back(o.t1 + (o.t2 - o.t1) * static_cast<double>(i) / static_cast<double>(grid_points - 1));
      const auto profile = scalar_profile(j, o.c, o.r, grid, profile_samples, o.seed);
      sub_opt.inner.restarts = std::min<std::size_t>(o.restarts, sub_opt.inner.restarts);
      const SubmanifoldMaximum best = max_sectional_submanifold(j, o.c, o.r, o.t1, o.t2, sub_opt);
      if (!o.csv_out.empty()) {
        auto csv = open_csv(o.csv_out);
        write_profile_csv(csv, profile);
      }
      Json rows = Json::array();
      std::ostringstream os;
      os << "t, min / max / mean scalar curvature\n";
      for (const auto& row : profile) {
        rows.push_back({{"t", row.t}, {"rho_min", row.rho_min}, {"rho_max", row.rho_max}, {"rho_mean", row.rho_mean}});
        os << fmt(row.t) << "  " << fmt(row.rho_min) << " / " << fmt(row.rho_max) << " / " << fmt(row.rho_mean) << '\n';
      }
      os << "max sectional curvature " << fmt(best.value) << " at t = " << fmt(best.point.t) << '\n';
      emit(o, Json{{"profile", rows}, {"max_sectional", to_json(best)}}, os.str());
      return kTrue;
    }

    if (*lambda_cmd) {
      const JMap j = load_valid(src_a);
      const ThresholdReport rep = hypersurface ? lambda_submanifold(j, o.r, o.t1, o.t2, c_lo, c_hi, o.tol, sub_opt)
                                               : lambda_bisect(j, c_lo, c_hi, o.tol, search);
      std::ostringstream os;
      os << "lambda " << fmt(rep.lambda_estimate) << " in [" << fmt(rep.c_low) << ", " << fmt(rep.c_high)
         << "]\nK_max(c_low) " << rep.k_max_low << ", K_max(c_high) " << rep.k_max_high << "\n"
         << rep.evaluations << " evaluations, seed " << rep.seed << '\n';
      emit(o, to_json(rep), os.str());
      return kTrue;
    }

    if (*family_cmd) {
      std::vector<FamilyMember> family;
      for (const std::string& m : members) {
        const auto eq_pos = m.find('=');
        if (eq_pos == std::string::npos) throw ValidationError("family member '" + m + "' must look like t=source");
        double t = 0.0;
        try {
          t = std::stod(m.substr(0, eq_pos));
        } catch (const std::exception&) {
          throw ValidationError("bad t in family member '" + m + "'");
        }
        family.push_back({t, load_valid(m.substr(eq_pos + 1))});
      }
      const auto rows = family_scan(family, c_lo, c_hi, o.tol, search, force);
      if (!o.csv_out.empty()) {
        auto csv = open_csv(o.csv_out);
        write_family_csv(csv, rows);
      }
      Json out = Json::array();
      for (const auto& row : rows) out.push_back({{"t", row.t}, {"report", to_json(row.report)}});
      std::ostringstream os;
      write_family_csv(os, rows);
      emit(o, out, os.str());
      return kTrue;
    }

    if (*catalog_cmd) {
      if (entry.empty()) {
        Json out = Json::array();
        std::ostringstream os;
        for (const std::string& name : catalog_names()) {
          const CatalogEntry e = catalog_lookup(name);
          out.push_back({{"name", e.name}, {"origin", e.origin}, {"m", e.jmap.m}, {"k", e.jmap.k}});
          os << e.name << "  (m = " << e.jmap.m << ", k = " << e.jmap.k << ")  " << e.origin << '\n';
        }
        emit(o, out, os.str());
        return kTrue;
      }
      const CatalogEntry e = catalog_lookup(entry);
      if (!out_path.empty()) save_jmap(out_path, e.jmap);
      const auto outcomes = check_claims(e);
      bool all = true;
      Json claims = Json::array();
      std::ostringstream os;
      os << e.name << ": " << e.origin << '\n';
      for (const auto& c : outcomes) {
        all = all && c.passed;
        claims.push_back({{"id", c.claim.id}, {"expected", c.claim.expected}, {"observed", c.observed}, {"passed", c.passed}});
        os << (c.passed ? "PASS " : "FAIL ") << c.claim.id << ": expected " << c.claim.expected << ", observed "
           << c.observed << '\n';
      }
      emit(o, Json{{"name", e.name}, {"origin", e.origin}, {"jmap", jmap_to_json(e.jmap)}, {"claims", claims}},
           os.str());
      return all ? kTrue : kFalse;
    }

    if (*report_cmd) {
      ReportOptions ropt;
      ropt.restarts = o.restarts;
      ropt.seed = o.seed;
      for (const std::string& path : inputs) ropt.inputs.emplace_back(path, load_jmap(path));
      const SuiteReport rep = suite_report(ropt, criteria);
      emit(o, to_json(rep), to_text(rep));
      return rep.passed() ? kTrue : kFalse;
    }
  } catch (const BracketError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
