#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fg/geodesic.hpp"

namespace fg {

using Json = nlohmann::ordered_json;

struct Options {
  double jacobi_tol = 1e-9;
  std::optional<double> criterion_tol;  // falls back to the per-source default
  std::uint64_t seed = 7;
  double oracle_step = 2e-4;

  double criterionTol(Source source) const {
    return criterion_tol.value_or(defaultCriterionTol(source));
  }
};

struct ProblemSpec {
  HomogeneousSpace space;
  Vector x_full;  // X embedded in the full basis (zero on h)
  Options options;
};

/// Parse and validate a problem document. With strict_structure the
/// Jacobi and reductive-split residual checks run at load and a failure
/// is an InputError; the validate subcommand parses leniently so it can
/// report the failing check instead.
ProblemSpec parseSpec(const Json& doc, bool strict_structure = true);
ProblemSpec parseSpecFile(const std::string& path, bool strict_structure = true);

/// Canonical document emission; emit-then-parse is the identity.
Json emitSpec(const ProblemSpec& spec);

/// FNV-1a 64 over the canonical document, hex-encoded.
std::string specDigest(const ProblemSpec& spec);

Json toJson(const StructureReport& r);
Json toJson(const ShenReport& r);
Json toJson(const AuditReport& r);
Json toJson(const CriterionResidual& r);
Json toJson(const EquivalenceReport& r);
Json toJson(const GeodesicSearchResult& r);
Json toJson(const GoCoverageReport& r);

/// Report envelope shared by every subcommand.
Json makeRunReport(const std::string& command, const ProblemSpec& spec, Json results,
                   double wall_time_ms);

}  // namespace fg
