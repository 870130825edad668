#include "fg/spec_io.hpp"

#include <cstdlib>
#include <fstream>

namespace fg {

namespace {

void rejectUnknownKeys(const Json& obj, const char* where,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok)
      throw InputError(std::string("unknown key \"") + key + "\" in " + where);
  }
}

const Json& require(const Json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw InputError(std::string("missing key \"") + key + "\" in " + where);
  return *it;
}

double envOverride(const char* name, double fallback) {
  if (const char* v = std::getenv(name)) return std::strtod(v, nullptr);
  return fallback;
}

LieAlgebra parseAlgebra(const Json& doc) {
  rejectUnknownKeys(doc, "algebra", {"dim", "basis_labels", "structure_constants"});
  const int dim = require(doc, "dim", "algebra").get<int>();
  if (dim <= 0) throw InputError("algebra.dim must be positive");

  std::vector<std::string> labels;
  if (doc.contains("basis_labels")) labels = doc["basis_labels"].get<std::vector<std::string>>();

  std::vector<Matrix> c(dim, Matrix::Zero(dim, dim));
  std::vector<Matrix> given(dim, Matrix::Zero(dim, dim));
  for (const Json& entry : require(doc, "structure_constants", "algebra")) {
    if (!entry.is_array() || entry.size() != 4)
      throw InputError("structure_constants entries must be [i, j, k, value]");
    const int i = entry[0].get<int>(), j = entry[1].get<int>(), k = entry[2].get<int>();
    const double v = entry[3].get<double>();
    if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
      throw InputError("structure constant index out of range in entry [" +
                       std::to_string(i) + ", " + std::to_string(j) + ", " +
                       std::to_string(k) + "]");
    if (given[k - 1](i - 1, j - 1) != 0.0)
      throw InputError("duplicate structure constant entry [" + std::to_string(i) + ", " +
                       std::to_string(j) + ", " + std::to_string(k) + "]");
    c[k - 1](i - 1, j - 1) = v;
    given[k - 1](i - 1, j - 1) = 1.0;
  }
  // antisymmetric completion for entries only given one way around
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (given[k](i, j) != 0.0 && given[k](j, i) == 0.0) c[k](j, i) = -c[k](i, j);

  return LieAlgebra::fromStructureConstants(dim, std::move(c), std::move(labels));
}

std::vector<int> parseIndices(const Json& arr, int dim, const char* name) {
  std::vector<int> out;
  for (const Json& e : arr) {
    const int i = e.get<int>();
    if (i < 1 || i > dim)
      throw InputError(std::string(name) + " contains out-of-range index " +
                       std::to_string(i));
    out.push_back(i - 1);
  }
  return out;
}

ReductiveSplit parseSplit(const Json& doc, int dim) {
  rejectUnknownKeys(doc, "split", {"h_indices", "m_indices"});
  ReductiveSplit s;
  if (doc.contains("h_indices")) s.h_indices = parseIndices(doc["h_indices"], dim, "h_indices");
  s.m_indices = parseIndices(require(doc, "m_indices", "split"), dim, "m_indices");
  s.validateAgainst(dim);
  return s;
}

Options parseOptions(const Json& doc) {
  Options opt;
  opt.jacobi_tol = envOverride("FG_TOL_JACOBI", opt.jacobi_tol);
  if (const char* v = std::getenv("FG_TOL_CRITERION"))
    opt.criterion_tol = std::strtod(v, nullptr);
  if (doc.is_null()) return opt;
  rejectUnknownKeys(doc, "options", {"jacobi_tol", "criterion_tol", "seed", "oracle_step"});
  if (doc.contains("jacobi_tol")) opt.jacobi_tol = doc["jacobi_tol"].get<double>();
  if (doc.contains("criterion_tol")) opt.criterion_tol = doc["criterion_tol"].get<double>();
  if (doc.contains("seed")) opt.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("oracle_step")) opt.oracle_step = doc["oracle_step"].get<double>();
  return opt;
}

Matrix parseMatrix(const Json& arr, int n, const char* name) {
  Matrix m(n, n);
  if (static_cast<int>(arr.size()) != n)
    throw InputError(std::string(name) + " must be " + std::to_string(n) + "x" +
                     std::to_string(n));
  for (int i = 0; i < n; ++i) {
    const Json& row = arr[i];
    if (static_cast<int>(row.size()) != n)
      throw InputError(std::string(name) + " row " + std::to_string(i + 1) +
                       " has wrong length");
    for (int j = 0; j < n; ++j) m(i, j) = row[j].get<double>();
  }
  return m;
}

}  // namespace

ProblemSpec parseSpec(const Json& doc, bool strict_structure) {
  rejectUnknownKeys(doc, "document root", {"algebra", "split", "metric", "options"});
  LieAlgebra algebra = parseAlgebra(require(doc, "algebra", "document root"));
  ReductiveSplit split = parseSplit(require(doc, "split", "document root"), algebra.dim());
  Options options = parseOptions(doc.contains("options") ? doc["options"] : Json());

  const Json& mdoc = require(doc, "metric", "document root");
  rejectUnknownKeys(mdoc, "metric", {"kind", "inner_product", "x", "b0"});
  const std::string kind = require(mdoc, "kind", "metric").get<std::string>();
  const int nm = static_cast<int>(split.m_indices.size());
  Matrix ip = parseMatrix(require(mdoc, "inner_product", "metric"), nm, "inner_product");

  Vector x_full = Vector::Zero(algebra.dim());
  if (mdoc.contains("x")) {
    const Json& xa = mdoc["x"];
    if (static_cast<int>(xa.size()) != algebra.dim())
      throw InputError("metric.x must have length dim = " + std::to_string(algebra.dim()));
    for (int i = 0; i < algebra.dim(); ++i) x_full(i) = xa[i].get<double>();
    for (int i : split.h_indices)
      if (std::abs(x_full(i)) > 1e-12)
        throw InputError("metric.x must lie in m: nonzero h-component at index " +
                         std::to_string(i + 1));
  }
  Vector x_m(nm);
  for (int i = 0; i < nm; ++i) x_m(i) = x_full(split.m_indices[i]);

  std::optional<Metric> metric;
  if (kind == "exponential") {
    const double b0 = mdoc.contains("b0") ? mdoc["b0"].get<double>() : 2.0;
    metric.emplace(MetricKind::Exponential, std::move(ip), std::move(x_m), b0);
  } else if (kind == "infinite_series") {
    const double b0 = mdoc.contains("b0") ? mdoc["b0"].get<double>() : 1e6;
    metric.emplace(MetricKind::InfiniteSeries, std::move(ip), std::move(x_m), b0);
  } else if (kind == "riemannian") {
    if (x_m.cwiseAbs().maxCoeff() > 1e-12)
      throw InputError("riemannian metric takes no x vector");
    metric.emplace(Metric::riemannian(std::move(ip)));
  } else {
    throw InputError("metric.kind must be one of exponential, infinite_series, riemannian; got \"" +
                     kind + "\"");
  }

  if (strict_structure) {
    const StructureReport rep = checkStructure(algebra, split, options.jacobi_tol);
    if (!rep.jacobi.pass)
      throw InputError("Jacobi identity violated: max residual " +
                       std::to_string(rep.jacobi.residual));
    if (!rep.h_subalgebra.pass)
      throw InputError("[h,h] is not contained in h: residual " +
                       std::to_string(rep.h_subalgebra.residual));
    if (!rep.h_m_invariance.pass)
      throw InputError("[h,m] is not contained in m: residual " +
                       std::to_string(rep.h_m_invariance.residual));
  }

  ProblemSpec spec{HomogeneousSpace(std::move(algebra), std::move(split), std::move(*metric)),
                   std::move(x_full), options};
  return spec;
}

ProblemSpec parseSpecFile(const std::string& path, bool strict_structure) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return parseSpec(doc, strict_structure);
}

Json emitSpec(const ProblemSpec& spec) {
  const LieAlgebra& alg = spec.space.algebra;
  const int n = alg.dim();

  Json sc = Json::array();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (alg.structureConstant(i, j, k) != 0.0)
          sc.push_back({i + 1, j + 1, k + 1, alg.structureConstant(i, j, k)});

  auto oneBased = [](const std::vector<int>& idx) {
    Json a = Json::array();
    for (int i : idx) a.push_back(i + 1);
    return a;
  };

  const Metric& met = spec.space.metric;
  Json ip = Json::array();
  for (int i = 0; i < met.dimM(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < met.dimM(); ++j) row.push_back(met.innerProduct()(i, j));
    ip.push_back(row);
  }

  Json mdoc{{"kind", met.isRiemannian() ? "riemannian" : toString(met.kind())},
            {"inner_product", ip}};
  if (!met.isRiemannian()) {
    Json x = Json::array();
    for (int i = 0; i < n; ++i) x.push_back(spec.x_full(i));
    mdoc["x"] = x;
    mdoc["b0"] = met.b0();
  }

  Json opts{{"jacobi_tol", spec.options.jacobi_tol},
            {"seed", spec.options.seed},
            {"oracle_step", spec.options.oracle_step}};
  if (spec.options.criterion_tol) opts["criterion_tol"] = *spec.options.criterion_tol;

  return Json{{"algebra",
               {{"dim", n}, {"basis_labels", alg.labels()}, {"structure_constants", sc}}},
              {"split",
               {{"h_indices", oneBased(spec.space.split.h_indices)},
                {"m_indices", oneBased(spec.space.split.m_indices)}}},
              {"metric", mdoc},
              {"options", opts}};
}

std::string specDigest(const ProblemSpec& spec) {
  const std::string s = emitSpec(spec).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json toJson(const CheckResult& r) {
  return {{"residual", r.residual}, {"pass", r.pass}};
}

Json toJson(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json toJson(const AuditSample& s) {
  return {{"y", toJson(s.y)},
          {"u", toJson(s.u)},
          {"v", toJson(s.v)},
          {"closed_value", s.closed_value},
          {"oracle_value", s.oracle_value}};
}

}  // namespace

Json toJson(const StructureReport& r) {
  return {{"antisymmetry", toJson(r.antisymmetry)},
          {"jacobi", toJson(r.jacobi)},
          {"h_subalgebra", toJson(r.h_subalgebra)},
          {"h_m_invariance", toJson(r.h_m_invariance)},
          {"pass", r.pass()}};
}

Json toJson(const ShenReport& r) {
  return {{"b", r.b},
          {"grid", r.grid},
          {"min_value", r.min_value},
          {"argmin", r.argmin},
          {"pass", r.pass}};
}

Json toJson(const AuditReport& r) {
  Json per = Json::array();
  for (const AuditSample& s : r.per_sample) per.push_back(toJson(s));
  return {{"samples", r.samples},
          {"max_abs_discrepancy", r.max_abs_discrepancy},
          {"max_rel_discrepancy", r.max_rel_discrepancy},
          {"worst_case", toJson(r.worst_case)},
          {"per_sample", per}};
}

Json toJson(const CriterionResidual& r) {
  return {{"values", toJson(r.values)}, {"norm", r.norm}, {"source", toString(r.source)}};
}

Json toJson(const EquivalenceReport& r) {
  return {{"hypothesis_holds", r.hypothesis_holds},
          {"hypothesis_residual", r.hypothesis_residual},
          {"riemannian_geodesic", r.riemannian_geodesic},
          {"finsler_geodesic", r.finsler_geodesic},
          {"applicable", r.applicable},
          {"equivalence_respected", r.equivalence_respected},
          {"proportionality", r.proportionality}};
}

Json toJson(const GeodesicSearchResult& r) {
  Json cands = Json::array();
  for (const SearchCandidate& c : r.candidates)
    cands.push_back({{"y", toJson(c.y)},
                     {"residual_norm", c.residual_norm},
                     {"converged", c.converged},
                     {"seed_index", c.seed_index}});
  Json distinct = Json::array();
  for (const Vector& d : r.distinct) distinct.push_back(toJson(d));
  return {{"tolerance", r.tol},
          {"candidates", cands},
          {"distinct_count", static_cast<int>(r.distinct.size())},
          {"distinct", distinct}};
}

Json toJson(const GoCoverageReport& r) {
  Json unc = Json::array();
  for (const Vector& u : r.uncovered_examples) unc.push_back(toJson(u));
  return {{"directions_sampled", r.directions_sampled},
          {"directions_covered", r.directions_covered},
          {"coverage_ratio", r.coverage_ratio},
          {"uncovered_examples", unc}};
}

Json makeRunReport(const std::string& command, const ProblemSpec& spec, Json results,
                   double wall_time_ms) {
  return {{"command", command},
          {"inputs_digest", specDigest(spec)},
          {"results", std::move(results)},
          {"toolkit_version", FG_VERSION},
          {"wall_time_ms", wall_time_ms}};
}

}  // namespace fg
