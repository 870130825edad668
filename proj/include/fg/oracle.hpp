#pragma once

#include <cstdint>
#include <vector>

#include "fg/metric.hpp"

namespace fg {

/// How the defining mixed partial of F^2 is realized.
struct OracleScheme {
  enum class Method { CentralDifference, DualNumber };
  Method method = Method::DualNumber;
  double step = 2e-4;  // base step for CentralDifference, scaled by (1 + |y|)

  static OracleScheme dualNumber() { return {Method::DualNumber, 0.0}; }
  static OracleScheme centralDifference(double step = 2e-4) {
    return {Method::CentralDifference, step};
  }
};

/// g_Y(U,V) = 1/2 d^2/ds dt F^2(Y + sU + tV) at s = t = 0, straight from
/// the definition. DualNumber propagates two nilpotent perturbations
/// through the scalar pipeline of F and is exact to rounding;
/// CentralDifference uses the 4-point stencil on F^2.
double gOracle(const Metric& metric, const Vector& y, const Vector& u, const Vector& v,
               const OracleScheme& scheme = {});

struct AuditSample {
  Vector y, u, v;
  double closed_value = 0.0;
  double oracle_value = 0.0;
};

struct AuditReport {
  int samples = 0;
  double max_abs_discrepancy = 0.0;
  double max_rel_discrepancy = 0.0;
  AuditSample worst_case;
  std::vector<AuditSample> per_sample;
};

/// Deterministically samples admissible (y,u,v) triples from the seed and
/// compares the printed closed form against the oracle. Discrepancy is
/// data, not failure: the report never throws on mismatch.
AuditReport auditClosedForms(const Metric& metric, int n_samples, std::uint64_t seed,
                             const OracleScheme& scheme = {});

/// Draw one admissible (y,u,v): y uniform on the unit sphere of m with
/// rejection, u and v standard normal. Shared by the audit and tests.
class AdmissibleSampler {
 public:
  AdmissibleSampler(const Metric& metric, std::uint64_t seed);
  AuditSample draw(int max_rejects = 1000);

 private:
  const Metric& metric_;
  std::uint64_t state_;
  double normal();
  Vector normalVector(int n);
};

}  // namespace fg
