// finslergeo — geodesic-vector toolkit for homogeneous Finsler spaces
// with exponential and infinite-series (alpha,beta)-metrics.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fg/spec_io.hpp"

using namespace fg;

namespace {

struct CommonArgs {
  std::string spec_path;
  std::string out_path;
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("spec", args.spec_path, "problem document (JSON)")->required();
  cmd->add_option("--out", args.out_path, "write the JSON run report here");
}

double elapsedMs(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void writeReport(const std::string& command, const ProblemSpec& spec, Json results,
                 const std::string& out_path, double wall_ms) {
  if (out_path.empty()) return;
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write report to " + out_path);
  out << makeRunReport(command, spec, std::move(results), wall_ms).dump(2) << "\n";
}

Vector parseVectorArg(const std::string& csv, int dim) {
  Vector v(dim);
  std::stringstream ss(csv);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= dim) throw InputError("--y has more than " + std::to_string(dim) + " entries");
    v(i++) = std::stod(tok);
  }
  if (i != dim) throw InputError("--y needs " + std::to_string(dim) + " entries");
  return v;
}

Source parseSource(const std::string& name, const Metric& metric) {
  if (name == "auto") return defaultSource(metric);
  if (name == "closed") return Source::ClosedForm;
  if (name == "oracle") return Source::Oracle;
  if (name == "riemannian") return Source::Riemannian;
  throw InputError("unknown source \"" + name + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic vectors of homogeneous Finsler spaces with "
               "exponential and infinite-series (alpha,beta)-metrics"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* c_validate = app.add_subcommand("validate", "check algebra and split invariants");
  addCommon(c_validate, args);

  auto* c_shen = app.add_subcommand("shen", "scan Shen's validity condition");
  addCommon(c_shen, args);
  double shen_b = -1.0;
  int shen_grid = 1001;
  c_shen->add_option("--b", shen_b, "length of the 1-form (default: |X| of the metric)");
  c_shen->add_option("--grid", shen_grid, "grid points");

  auto* c_audit = app.add_subcommand("audit", "closed forms vs the Hessian oracle");
  addCommon(c_audit, args);
  int audit_samples = 200;
  std::string audit_scheme = "dual";
  c_audit->add_option("--samples", audit_samples, "sample count");
  c_audit->add_option("--scheme", audit_scheme, "dual | central");
  std::uint64_t cli_seed = 0;
  bool seed_given = false;
  c_audit->add_option("--seed", cli_seed, "sampling seed")->each([&](const std::string&) {
    seed_given = true;
  });

  auto* c_check = app.add_subcommand("check-vector", "geodesic-vector criterion for one y");
  addCommon(c_check, args);
  std::string y_csv, source_name = "auto";
  double check_tol = -1.0;
  c_check->add_option("--y", y_csv, "comma-separated coordinates of y")->required();
  c_check->add_option("--source", source_name, "auto | closed | oracle | riemannian");
  c_check->add_option("--tol", check_tol, "decision tolerance");

  auto* c_search = app.add_subcommand("search", "hunt for geodesic vectors");
  addCommon(c_search, args);
  int n_seeds = 20;
  double search_tol = -1.0;
  c_search->add_option("--seeds", n_seeds, "number of search seeds");
  c_search->add_option("--seed", cli_seed, "RNG seed")->each([&](const std::string&) {
    seed_given = true;
  });
  c_search->add_option("--tol", search_tol, "convergence tolerance");

  auto* c_go = app.add_subcommand("go-check", "sample geodesic-orbit coverage");
  addCommon(c_go, args);
  int n_directions = 100;
  double go_tol = -1.0;
  c_go->add_option("--directions", n_directions, "directions to sample");
  c_go->add_option("--seed", cli_seed, "RNG seed")->each([&](const std::string&) {
    seed_given = true;
  });
  c_go->add_option("--tol", go_tol, "coverage tolerance");

  auto* c_equiv = app.add_subcommand("equivalence",
                                     "corollary and X-theorem Riemannian/Finsler checks");
  addCommon(c_equiv, args);
  std::string equiv_y;
  c_equiv->add_option("--y", equiv_y, "vector for the corollary check (default: X)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    ProblemSpec spec = parseSpecFile(args.spec_path, !c_validate->parsed());
    const Source source = defaultSource(spec.space.metric);
    const std::uint64_t seed = seed_given ? cli_seed : spec.options.seed;
    const OracleScheme scheme =
        audit_scheme == "central"
            ? OracleScheme::centralDifference(spec.options.oracle_step)
            : OracleScheme::dualNumber();

    if (c_validate->parsed()) {
      const StructureReport rep =
          checkStructure(spec.space.algebra, spec.space.split, spec.options.jacobi_tol);
      std::cout << "antisymmetry residual " << rep.antisymmetry.residual
                << (rep.antisymmetry.pass ? " (pass)" : " (FAIL)") << "\n"
                << "jacobi residual       " << rep.jacobi.residual
                << (rep.jacobi.pass ? " (pass)" : " (FAIL)") << "\n"
                << "[h,h] in h residual   " << rep.h_subalgebra.residual
                << (rep.h_subalgebra.pass ? " (pass)" : " (FAIL)") << "\n"
                << "[h,m] in m residual   " << rep.h_m_invariance.residual
                << (rep.h_m_invariance.pass ? " (pass)" : " (FAIL)") << "\n";
      writeReport("validate", spec, toJson(rep), args.out_path, elapsedMs(t0));
      return rep.pass() ? 0 : 1;
    }

    if (c_shen->parsed()) {
      const double b = shen_b >= 0.0 ? shen_b : spec.space.metric.b();
      const ShenReport rep = spec.space.metric.shenCheck(b, shen_grid);
      std::cout << "Shen condition at b = " << b << ": min E = " << rep.min_value
                << " at s = " << rep.argmin << (rep.pass ? " (pass)" : " (FAIL)") << "\n";
      writeReport("shen", spec, toJson(rep), args.out_path, elapsedMs(t0));
      return rep.pass ? 0 : 1;
    }

    if (c_audit->parsed()) {
      if (audit_scheme != "dual" && audit_scheme != "central")
        throw InputError("--scheme must be dual or central");
      const AuditReport rep =
          auditClosedForms(spec.space.metric, audit_samples, seed, scheme);
      std::cout << "audited " << rep.samples << " samples: max |closed - oracle| = "
                << rep.max_abs_discrepancy << ", max relative = " << rep.max_rel_discrepancy
                << "\n"
                << "decision source for this metric: " << toString(source) << "\n";
      Json results = toJson(rep);
      results["decision_source"] = toString(source);
      results["seed"] = seed;
      writeReport("audit", spec, std::move(results), args.out_path, elapsedMs(t0));
      return 0;
    }

    if (c_check->parsed()) {
      const Vector y = parseVectorArg(y_csv, spec.space.dim());
      const Source src = parseSource(source_name, spec.space.metric);
      const double tol = check_tol > 0.0 ? check_tol : spec.options.criterionTol(src);
      const CriterionResidual res = criterionResidual(spec.space, y, src);
      const bool geo = res.norm <= tol * decisionScale(spec.space, y, src);
      std::cout << "criterion residual norm " << res.norm << " (source " << toString(src)
                << "): y is " << (geo ? "a geodesic vector" : "not a geodesic vector")
                << "\n";
      Json results = toJson(res);
      results["geodesic"] = geo;
      results["tolerance"] = tol;
      writeReport("check-vector", spec, std::move(results), args.out_path, elapsedMs(t0));
      return 0;
    }

    if (c_search->parsed()) {
      const double tol = search_tol > 0.0 ? search_tol : spec.options.criterionTol(source);
      const GeodesicSearchResult res = findGeodesicVectors(spec.space, n_seeds, seed, tol);
      std::cout << res.distinct.size() << " distinct geodesic direction(s) from " << n_seeds
                << " seeds (source " << toString(source) << ")\n";
      Json results = toJson(res);
      results["source"] = toString(source);
      results["seed"] = seed;
      writeReport("search", spec, std::move(results), args.out_path, elapsedMs(t0));
      return 0;
    }

    if (c_go->parsed()) {
      const double tol = go_tol > 0.0 ? go_tol : spec.options.criterionTol(source);
      const GoCoverageReport rep = goCoverage(spec.space, n_directions, seed, tol);
      std::cout << "coverage " << rep.directions_covered << "/" << rep.directions_sampled
                << " = " << rep.coverage_ratio << "\n";
      Json results = toJson(rep);
      results["source"] = toString(source);
      results["seed"] = seed;
      writeReport("go-check", spec, std::move(results), args.out_path, elapsedMs(t0));
      return 0;
    }

    if (c_equiv->parsed()) {
      Json results;
      bool ok = true;
      if (!equiv_y.empty()) {
        const Vector y = parseVectorArg(equiv_y, spec.space.dim());
        const EquivalenceReport rep = corollaryEquivalenceCheck(spec.space, y, 1e-12);
        std::cout << "corollary: hypothesis "
                  << (rep.hypothesis_holds ? "holds" : "fails (not applicable)")
                  << ", riemannian " << rep.riemannian_geodesic << ", finsler "
                  << rep.finsler_geodesic << "\n";
        results["corollary"] = toJson(rep);
        ok = ok && rep.equivalence_respected;
      }
      if (!spec.space.metric.isRiemannian()) {
        const EquivalenceReport rep = theoremXCheck(spec.space, 1e-12);
        std::cout << "X-theorem: riemannian " << rep.riemannian_geodesic << ", finsler "
                  << rep.finsler_geodesic
                  << (rep.equivalence_respected ? " (match)" : " (MISMATCH)") << "\n";
        results["x_theorem"] = toJson(rep);
        ok = ok && rep.equivalence_respected;
      }
      writeReport("equivalence", spec, std::move(results), args.out_path, elapsedMs(t0));
      return ok ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
