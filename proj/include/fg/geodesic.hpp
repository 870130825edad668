#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fg/lie_algebra.hpp"
#include "fg/metric.hpp"
#include "fg/oracle.hpp"

namespace fg {

/// Algebra, reductive split, and metric on m bundled together, with the
/// coordinate maps between full algebra vectors and m-coordinates.
/// metric.dimM() must equal split.m_indices.size(); the metric's inner
/// product and X are expressed in the m-index order of the split.
struct HomogeneousSpace {
  LieAlgebra algebra;
  ReductiveSplit split;
  Metric metric;

  HomogeneousSpace(LieAlgebra alg, ReductiveSplit sp, Metric met);

  int dim() const { return algebra.dim(); }
  int dimM() const { return metric.dimM(); }
  int dimH() const { return static_cast<int>(split.h_indices.size()); }

  /// Extract the m-coordinates of a full vector (in split.m_indices order).
  Vector mCoords(const Vector& full) const;
  /// Embed m-coordinates back into a full vector with zero h-part.
  Vector embedM(const Vector& m_coords) const;
  /// m-coordinates of [y, z]_m.
  Vector bracketM(const Vector& y_full, const Vector& z_full) const;
};

enum class Source { ClosedForm, Oracle, Riemannian };

std::string toString(Source s);

/// The default decision path per metric: the exponential closed form is
/// Hessian-exact, the infinite series one is not, so the latter runs on
/// the oracle; a Riemannian metric uses the plain inner product.
Source defaultSource(const Metric& metric);

struct CriterionResidual {
  Vector values;  // entry i = g_{Y_m}(Y_m, [Y, e_i]_m), basis sweep over all of g
  double norm = 0.0;
  Source source = Source::Oracle;
};

constexpr double kDefaultClosedTol = 1e-8;
constexpr double kDefaultOracleTol = 1e-6;

double defaultCriterionTol(Source source);

CriterionResidual criterionResidual(const HomogeneousSpace& space, const Vector& y,
                                    Source source);

/// Printed criterion forms for one probe direction z. Both vanish across a
/// basis exactly when the corresponding printed theorem condition holds.
double closedCriterionExponential(const HomogeneousSpace& space, const Vector& y,
                                  const Vector& z);
double closedCriterionInfinite(const HomogeneousSpace& space, const Vector& y,
                               const Vector& z);

CriterionResidual riemannianCriterion(const HomogeneousSpace& space, const Vector& y);

/// Scale used by the geodesic decision: 1 + F(y_m)^2 (with F = alpha for
/// the Riemannian source), so decisions survive y -> lambda y.
double decisionScale(const HomogeneousSpace& space, const Vector& y, Source source);

bool isGeodesicVector(const HomogeneousSpace& space, const Vector& y, double tol,
                      Source source);
bool isGeodesicVector(const HomogeneousSpace& space, const Vector& y, double tol);

struct EquivalenceReport {
  bool hypothesis_holds = false;   // max_i |<X,[y,e_i]_m>| <= tol
  double hypothesis_residual = 0.0;
  bool riemannian_geodesic = false;
  bool finsler_geodesic = false;
  bool applicable = false;         // equivalence only asserted when hypothesis holds
  bool equivalence_respected = true;
  double proportionality = 0.0;    // least-squares ratio finsler/riemannian residual
};

EquivalenceReport corollaryEquivalenceCheck(const HomogeneousSpace& space, const Vector& y,
                                            double tol);

/// Riemannian vs Finsler geodesic status of y = X itself.
EquivalenceReport theoremXCheck(const HomogeneousSpace& space, double tol);

struct SearchCandidate {
  Vector y;
  double residual_norm = 0.0;
  bool converged = false;
  int seed_index = 0;
};

struct GeodesicSearchResult {
  std::vector<SearchCandidate> candidates;
  std::vector<Vector> distinct;  // converged, deduplicated by angular distance
  double tol = 0.0;
};

/// Damped Gauss-Newton on the criterion residual restricted to the unit
/// sphere of g (the residual is scale-covariant, so the sphere suffices).
GeodesicSearchResult findGeodesicVectors(const HomogeneousSpace& space, int n_seeds,
                                         std::uint64_t seed, double tol);

struct GoCoverageReport {
  int directions_sampled = 0;
  int directions_covered = 0;
  double coverage_ratio = 0.0;
  std::vector<Vector> uncovered_examples;  // unit vectors in m-coordinates
};

/// Samples unit directions u in m and searches for a geodesic vector whose
/// m-projection is u, optimizing only over the h-components.
GoCoverageReport goCoverage(const HomogeneousSpace& space, int n_directions,
                            std::uint64_t seed, double tol);

}  // namespace fg
