#include "fg/geodesic.hpp"

#include <cmath>
#include <limits>

namespace fg {

HomogeneousSpace::HomogeneousSpace(LieAlgebra alg, ReductiveSplit sp, Metric met)
    : algebra(std::move(alg)), split(std::move(sp)), metric(std::move(met)) {
  split.validateAgainst(algebra.dim());
  if (metric.dimM() != static_cast<int>(split.m_indices.size()))
    throw InputError("metric dimension does not match the size of m in the split");
}

Vector HomogeneousSpace::mCoords(const Vector& full) const {
  if (full.size() != algebra.dim())
    throw InputError("vector length does not match algebra dimension");
  Vector out(dimM());
  for (int i = 0; i < dimM(); ++i) out(i) = full(split.m_indices[i]);
  return out;
}

Vector HomogeneousSpace::embedM(const Vector& m_coords) const {
  if (m_coords.size() != dimM())
    throw InputError("m-coordinate length does not match the split");
  Vector out = Vector::Zero(algebra.dim());
  for (int i = 0; i < dimM(); ++i) out(split.m_indices[i]) = m_coords(i);
  return out;
}

Vector HomogeneousSpace::bracketM(const Vector& y_full, const Vector& z_full) const {
  return mCoords(projectM(algebra.bracket(y_full, z_full), split));
}

std::string toString(Source s) {
  switch (s) {
    case Source::ClosedForm: return "ClosedForm";
    case Source::Oracle: return "Oracle";
    case Source::Riemannian: return "Riemannian";
  }
  return "?";
}

Source defaultSource(const Metric& metric) {
  if (metric.isRiemannian()) return Source::Riemannian;
  switch (metric.kind()) {
    case MetricKind::Exponential: return Source::ClosedForm;
    case MetricKind::InfiniteSeries: return Source::Oracle;  // printed form fails the audit
    case MetricKind::CustomPhi: return Source::Oracle;
  }
  return Source::Oracle;
}

double defaultCriterionTol(Source source) {
  return source == Source::Oracle ? kDefaultOracleTol : kDefaultClosedTol;
}

CriterionResidual criterionResidual(const HomogeneousSpace& space, const Vector& y,
                                    Source source) {
  const Vector ym = space.mCoords(projectM(y, space.split));
  if (source == Source::Riemannian) {
    if (!(ym.norm() > 0.0)) throw DomainError("criterion: y has zero m-projection");
  } else {
    space.metric.requireAdmissible(ym);
  }

  CriterionResidual res;
  res.source = source;
  res.values.resize(space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    const Vector w = space.bracketM(y, space.algebra.basisVector(i));
    switch (source) {
      case Source::ClosedForm:
        res.values(i) = space.metric.gClosed(ym, ym, w);
        break;
      case Source::Oracle:
        res.values(i) = gOracle(space.metric, ym, ym, w);
        break;
      case Source::Riemannian:
        res.values(i) = space.metric.inner(ym, w);
        break;
    }
  }
  res.norm = res.values.cwiseAbs().maxCoeff();
  return res;
}

double closedCriterionExponential(const HomogeneousSpace& space, const Vector& y,
                                  const Vector& z) {
  const Vector ym = space.mCoords(projectM(y, space.split));
  const double a2 = space.metric.inner(ym, ym);
  if (!(a2 > 0.0)) throw DomainError("exponential criterion: y_m = 0");
  const double a = std::sqrt(a2);
  const double b = space.metric.beta(ym);
  const Vector w = space.bracketM(y, z);
  return space.metric.beta(w) + ((a - b) / a2) * space.metric.inner(ym, w);
}

double closedCriterionInfinite(const HomogeneousSpace& space, const Vector& y,
                               const Vector& z) {
  const Vector ym = space.mCoords(projectM(y, space.split));
  space.metric.requireAdmissible(ym);
  const double a2 = space.metric.inner(ym, ym);
  const double a = std::sqrt(a2);
  const double b = space.metric.beta(ym);
  const double den = b - a;
  if (std::abs(den) < space.metric.singularTol(a))
    throw SingularityError("infinite series criterion: <X,y> - |y| is singular");
  const Vector w = space.bracketM(y, z);
  const double den2 = den * den;
  return (b * b * b / (den2 * den2)) *
         (space.metric.beta(w) * (b * b - 4.0 * a2 * a + b * a + 2.0 * a2) +
          space.metric.inner(ym, w) * (b * b / a - b));
}

CriterionResidual riemannianCriterion(const HomogeneousSpace& space, const Vector& y) {
  return criterionResidual(space, y, Source::Riemannian);
}

double decisionScale(const HomogeneousSpace& space, const Vector& y, Source source) {
  const Vector ym = space.mCoords(projectM(y, space.split));
  if (source == Source::Riemannian) return 1.0 + space.metric.inner(ym, ym);
  const double f = space.metric.norm(ym);
  return 1.0 + f * f;
}

bool isGeodesicVector(const HomogeneousSpace& space, const Vector& y, double tol,
                      Source source) {
  const CriterionResidual r = criterionResidual(space, y, source);
  return r.norm <= tol * decisionScale(space, y, source);
}

bool isGeodesicVector(const HomogeneousSpace& space, const Vector& y, double tol) {
  return isGeodesicVector(space, y, tol, defaultSource(space.metric));
}

namespace {

double leastSquaresRatio(const Vector& num, const Vector& den) {
  const double d2 = den.squaredNorm();
  return d2 > 0.0 ? num.dot(den) / d2 : 0.0;
}

EquivalenceReport compareRiemannianFinsler(const HomogeneousSpace& space, const Vector& y,
                                           double hypothesis_tol) {
  EquivalenceReport rep;
  for (int i = 0; i < space.dim(); ++i) {
    const Vector w = space.bracketM(y, space.algebra.basisVector(i));
    rep.hypothesis_residual =
        std::max(rep.hypothesis_residual, std::abs(space.metric.beta(w)));
  }
  rep.hypothesis_holds = rep.hypothesis_residual <= hypothesis_tol;

  const CriterionResidual rr = criterionResidual(space, y, Source::Riemannian);
  const Source fsource =
      space.metric.isRiemannian() ? Source::Riemannian : Source::Oracle;
  const CriterionResidual rf = criterionResidual(space, y, fsource);
  rep.riemannian_geodesic =
      rr.norm <= kDefaultClosedTol * decisionScale(space, y, Source::Riemannian);
  rep.finsler_geodesic =
      rf.norm <= defaultCriterionTol(fsource) * decisionScale(space, y, fsource);
  rep.proportionality = leastSquaresRatio(rf.values, rr.values);
  return rep;
}

}  // namespace

EquivalenceReport corollaryEquivalenceCheck(const HomogeneousSpace& space, const Vector& y,
                                            double tol) {
  EquivalenceReport rep = compareRiemannianFinsler(space, y, tol);
  rep.applicable = rep.hypothesis_holds;
  rep.equivalence_respected =
      !rep.applicable || (rep.riemannian_geodesic == rep.finsler_geodesic);
  return rep;
}

EquivalenceReport theoremXCheck(const HomogeneousSpace& space, double tol) {
  space.metric.requireAdmissible(space.metric.x());
  const Vector y = space.embedM(space.metric.x());
  EquivalenceReport rep = compareRiemannianFinsler(space, y, tol);
  rep.applicable = true;  // the theorem needs no hypothesis beyond admissibility
  rep.equivalence_respected = rep.riemannian_geodesic == rep.finsler_geodesic;
  return rep;
}

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double normalDraw(std::uint64_t& s) {
  const double u1 = (splitmix(s) >> 11) * 0x1.0p-53 + 0x1.0p-54;
  const double u2 = (splitmix(s) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vector normalVec(std::uint64_t& s, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normalDraw(s);
  return v;
}

bool mAdmissible(const HomogeneousSpace& space, const Vector& y_full) {
  return space.metric.admissible(space.mCoords(projectM(y_full, space.split)));
}

/// Residual vector, or nullopt if y is outside the evaluable domain.
std::optional<Vector> tryResidual(const HomogeneousSpace& space, const Vector& y,
                                  Source source) {
  try {
    return criterionResidual(space, y, source).values;
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

constexpr double kJacobianStep = 1e-6;
constexpr int kMaxIterations = 100;
constexpr int kMaxDampings = 30;

/// Pull an infinite-series seed into the admissible cone by mixing the
/// m-part toward X.
Vector nudgeAdmissible(const HomogeneousSpace& space, Vector y) {
  if (mAdmissible(space, y)) return y;
  const Vector x_full = space.embedM(space.metric.x());
  for (double c : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    Vector cand = y + c * y.norm() * x_full / std::max(space.metric.b(), 1e-12);
    cand.normalize();
    if (mAdmissible(space, cand)) return cand;
  }
  return y;  // caller detects the failure
}

}  // namespace

GeodesicSearchResult findGeodesicVectors(const HomogeneousSpace& space, int n_seeds,
                                         std::uint64_t seed, double tol) {
  if (n_seeds < 1) throw InputError("find_geodesic_vectors requires n_seeds >= 1");
  const Source source = defaultSource(space.metric);
  const int n = space.dim();

  GeodesicSearchResult result;
  result.tol = tol;
  std::uint64_t state = seed;

  for (int si = 0; si < n_seeds; ++si) {
    Vector y = normalVec(state, n);
    y.normalize();
    y = nudgeAdmissible(space, y);

    SearchCandidate cand;
    cand.seed_index = si;
    auto r0 = tryResidual(space, y, source);
    if (!r0) {
      cand.y = y;
      cand.residual_norm = std::numeric_limits<double>::infinity();
      result.candidates.push_back(std::move(cand));
      continue;
    }
    Vector r = *r0;

    for (int it = 0; it < kMaxIterations; ++it) {
      const double norm = r.cwiseAbs().maxCoeff();
      if (norm <= tol * decisionScale(space, y, source)) break;

      Matrix J(n, n);
      for (int d = 0; d < n; ++d) {
        Vector yp = y, ym_ = y;
        yp(d) += kJacobianStep;
        ym_(d) -= kJacobianStep;
        auto rp = tryResidual(space, yp, source);
        auto rm = tryResidual(space, ym_, source);
        if (!rp || !rm) {
          J.col(d).setZero();
          continue;
        }
        J.col(d) = (*rp - *rm) / (2.0 * kJacobianStep);
      }
      const Vector delta = J.completeOrthogonalDecomposition().solve(-r);
      if (!(delta.norm() > 0.0)) break;

      bool improved = false;
      double lambda = 1.0;
      for (int damp = 0; damp < kMaxDampings; ++damp, lambda *= 0.5) {
        Vector y_next = y + lambda * delta;
        const double len = y_next.norm();
        if (!(len > 0.0)) continue;
        y_next /= len;
        auto r_next = tryResidual(space, y_next, source);
        if (!r_next) continue;
        if (r_next->cwiseAbs().maxCoeff() < r.cwiseAbs().maxCoeff()) {
          y = y_next;
          r = *r_next;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }

    cand.y = y;
    cand.residual_norm = r.cwiseAbs().maxCoeff();
    cand.converged = cand.residual_norm <= tol * decisionScale(space, y, source);
    result.candidates.push_back(std::move(cand));
  }

  for (const SearchCandidate& c : result.candidates) {
    if (!c.converged) continue;
    bool dup = false;
    for (const Vector& d : result.distinct) {
      const double cosang = std::clamp(c.y.dot(d), -1.0, 1.0);
      if (std::acos(cosang) < 1e-4) {
        dup = true;
        break;
      }
    }
    if (!dup) result.distinct.push_back(c.y);
  }
  return result;
}

GoCoverageReport goCoverage(const HomogeneousSpace& space, int n_directions,
                            std::uint64_t seed, double tol) {
  if (n_directions < 1) throw InputError("go_coverage requires n_directions >= 1");
  const Source source = defaultSource(space.metric);
  const int nm = space.dimM();
  const int nh = space.dimH();

  GoCoverageReport rep;
  std::uint64_t state = seed;
  int attempts = 0;
  const int max_attempts = 1000 * n_directions;

  while (rep.directions_sampled < n_directions && attempts++ < max_attempts) {
    Vector u = normalVec(state, nm);
    const double len = u.norm();
    if (!(len > 0.0)) continue;
    u /= len;
    // directions outside the admissible cone carry no Finsler norm; skip
    if (!space.metric.admissible(u)) continue;
    ++rep.directions_sampled;

    Vector h = Vector::Zero(nh);
    auto assemble = [&](const Vector& hc) {
      Vector y = space.embedM(u);
      for (int j = 0; j < nh; ++j) y(space.split.h_indices[j]) = hc(j);
      return y;
    };

    Vector y = assemble(h);
    Vector r = criterionResidual(space, y, source).values;

    if (nh > 0) {
      for (int it = 0; it < kMaxIterations; ++it) {
        const double norm = r.cwiseAbs().maxCoeff();
        if (norm <= tol * decisionScale(space, y, source)) break;

        Matrix J(space.dim(), nh);
        for (int d = 0; d < nh; ++d) {
          Vector hp = h, hm = h;
          hp(d) += kJacobianStep;
          hm(d) -= kJacobianStep;
          J.col(d) = (criterionResidual(space, assemble(hp), source).values -
                      criterionResidual(space, assemble(hm), source).values) /
                     (2.0 * kJacobianStep);
        }
        const Vector delta = J.completeOrthogonalDecomposition().solve(-r);
        if (!(delta.norm() > 0.0)) break;

        bool improved = false;
        double lambda = 1.0;
        for (int damp = 0; damp < kMaxDampings; ++damp, lambda *= 0.5) {
          const Vector h_next = h + lambda * delta;
          const Vector r_next = criterionResidual(space, assemble(h_next), source).values;
          if (r_next.cwiseAbs().maxCoeff() < r.cwiseAbs().maxCoeff()) {
            h = h_next;
            r = r_next;
            improved = true;
            break;
          }
        }
        if (!improved) break;
        y = assemble(h);
      }
      y = assemble(h);
    }

    if (r.cwiseAbs().maxCoeff() <= tol * decisionScale(space, y, source)) {
      ++rep.directions_covered;
    } else {
      rep.uncovered_examples.push_back(u);
    }
  }
  if (rep.directions_sampled == 0)
    throw DomainError("go_coverage: no admissible directions found");
  rep.coverage_ratio =
      static_cast<double>(rep.directions_covered) / rep.directions_sampled;
  return rep;
}

}  // namespace fg
