#include <doctest.h>

#include <cmath>

#include "fg/oracle.hpp"
#include "test_util.hpp"

using namespace fg;
using fgtest::Rng;

namespace {

Vector e(int i, int n = 3) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

Metric expMetric(Vector x) {
  return Metric(MetricKind::Exponential, Matrix::Identity(3, 3), std::move(x), 2.0);
}

Metric infMetric(Vector x) {
  return Metric(MetricKind::InfiniteSeries, Matrix::Identity(3, 3), std::move(x), 10.0);
}

double relDiff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

}  // namespace

TEST_CASE("oracle on the riemannian metric recovers the inner product") {
  const Metric m = Metric::riemannian(Matrix::Identity(3, 3));
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const Vector y = rng.vec(3), u = rng.vec(3), v = rng.vec(3);
    if (!(y.norm() > 1e-3)) continue;
    CHECK(relDiff(gOracle(m, y, u, v, OracleScheme::dualNumber()), u.dot(v)) < 1e-12);
    CHECK(relDiff(gOracle(m, y, u, v, OracleScheme::centralDifference()), u.dot(v)) < 1e-8);
  }
}

TEST_CASE("oracle anchor: exponential u = v = y gives F^2") {
  const Metric m = expMetric(0.5 * e(2));
  const Vector y = e(2);  // <y,y> = 1, <X,y> = 0.5, F^2 = e
  CHECK(relDiff(gOracle(m, y, y, y, OracleScheme::dualNumber()), std::exp(1.0)) < 1e-12);
  CHECK(relDiff(gOracle(m, y, y, y, OracleScheme::centralDifference()), std::exp(1.0)) < 1e-7);
}

TEST_CASE("oracle with X = 0 degenerates to the inner product") {
  const Metric m = expMetric(Vector::Zero(3));
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const Vector y = rng.vec(3), u = rng.vec(3), v = rng.vec(3);
    if (!(y.norm() > 1e-3)) continue;
    CHECK(relDiff(gOracle(m, y, u, v), u.dot(v)) < 1e-8);
  }
}

TEST_CASE("oracle symmetry in u and v") {
  const Metric m = expMetric(0.5 * e(2));
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const Vector y = rng.vec(3), u = rng.vec(3), v = rng.vec(3);
    if (!(y.norm() > 1e-3)) continue;
    for (auto scheme : {OracleScheme::dualNumber(), OracleScheme::centralDifference()}) {
      const double a = gOracle(m, y, u, v, scheme);
      const double b = gOracle(m, y, v, u, scheme);
      CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("dual-number and central-difference schemes agree") {
  for (const Metric& m : {expMetric(0.5 * e(2)), infMetric(2.0 * e(2))}) {
    AdmissibleSampler sampler(m, 99);
    for (int t = 0; t < 30; ++t) {
      const AuditSample s = sampler.draw();
      const double dual = gOracle(m, s.y, s.u, s.v, OracleScheme::dualNumber());
      const double cd = gOracle(m, s.y, s.u, s.v, OracleScheme::centralDifference());
      CHECK(relDiff(dual, cd) < 1e-5);
    }
  }
}

TEST_CASE("central-difference step robustness") {
  const Metric m = expMetric(0.5 * e(2));
  AdmissibleSampler sampler(m, 5);
  for (int t = 0; t < 10; ++t) {
    const AuditSample s = sampler.draw();
    const double coarse = gOracle(m, s.y, s.u, s.v, OracleScheme::centralDifference(1e-4));
    const double fine = gOracle(m, s.y, s.u, s.v, OracleScheme::centralDifference(5e-5));
    CHECK(relDiff(coarse, fine) < 1e-5);
  }
}

TEST_CASE("oracle 0-homogeneity in y") {
  const Metric m = expMetric(0.5 * e(2));
  AdmissibleSampler sampler(m, 6);
  for (int t = 0; t < 10; ++t) {
    const AuditSample s = sampler.draw();
    const double base = gOracle(m, s.y, s.u, s.v);
    for (double lam : {2.0, 10.0})
      CHECK(relDiff(gOracle(m, lam * s.y, s.u, s.v), base) < 1e-6);
  }
}

TEST_CASE("step outside the allowed window is rejected") {
  const Metric m = expMetric(0.5 * e(2));
  CHECK_THROWS_AS(gOracle(m, e(0), e(1), e(2), OracleScheme::centralDifference(1e-2)),
                  InputError);
  CHECK_THROWS_AS(gOracle(m, e(0), e(1), e(2), OracleScheme::centralDifference(1e-8)),
                  InputError);
}

TEST_CASE("audit of the exponential closed form is clean") {
  const AuditReport rep = auditClosedForms(expMetric(0.5 * e(2)), 100, 7);
  CHECK(rep.samples == 100);
  CHECK(static_cast<int>(rep.per_sample.size()) == 100);
  CHECK(rep.max_rel_discrepancy <= 1e-6);
}

TEST_CASE("exponential closed form with X = 0 matches the oracle tightly") {
  const Metric m = expMetric(Vector::Zero(3));
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const Vector y = rng.vec(3), u = rng.vec(3), v = rng.vec(3);
    if (!(y.norm() > 1e-3)) continue;
    CHECK(std::abs(m.gClosedExponential(y, u, v) - gOracle(m, y, u, v)) < 1e-8);
  }
}

TEST_CASE("audit of the infinite-series closed form records the mismatch") {
  const AuditReport a = auditClosedForms(infMetric(2.0 * e(2)), 100, 7);
  const AuditReport b = auditClosedForms(infMetric(2.0 * e(2)), 100, 7);
  CHECK(a.samples == 100);
  // the printed form is not the Hessian of F^2; the audit records that
  CHECK(a.max_rel_discrepancy > 1e-4);
  // deterministic from the seed
  CHECK(a.worst_case.y.isApprox(b.worst_case.y));
  CHECK(a.max_rel_discrepancy == b.max_rel_discrepancy);
}

TEST_CASE("audit rejects metrics without a closed form") {
  CHECK_THROWS_AS(auditClosedForms(Metric::riemannian(Matrix::Identity(3, 3)), 10, 1),
                  InputError);
}

TEST_CASE("a hair-thin cone exhausts the sampler") {
  const Metric m = infMetric(1.000002 * e(2));
  AdmissibleSampler sampler(m, 1);
  CHECK_THROWS_AS(sampler.draw(1000), DomainError);
}
