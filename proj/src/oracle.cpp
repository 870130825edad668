#include "fg/oracle.hpp"

#include <cmath>

#include "fg/dual2.hpp"

namespace fg {

namespace {

double gDual(const Metric& metric, const Vector& y, const Vector& u, const Vector& v) {
  // Only inner products enter F, so the whole perturbed evaluation
  // collapses to two Dual2 scalars.
  const Dual2 A(metric.inner(y, y), 2.0 * metric.inner(y, u), 2.0 * metric.inner(y, v),
                2.0 * metric.inner(u, v));
  const Dual2 B(metric.beta(y), metric.beta(u), metric.beta(v), 0.0);
  const Dual2 a = sqrt(A);
  const Dual2 s = B / a;
  const PhiJet p = metric.phi(s.v);
  const Dual2 F = a * applyScalar(p.value, p.d1, p.d2, s);
  const Dual2 F2 = F * F;
  return 0.5 * F2.d12;
}

double gCentral(const Metric& metric, const Vector& y, const Vector& u, const Vector& v,
                double base_step) {
  if (base_step < 1e-7 || base_step > 1e-3)
    throw InputError("central-difference step must lie in [1e-7, 1e-3]");
  double h = base_step * (1.0 + metric.alpha(y));
  if (metric.kind() == MetricKind::InfiniteSeries) {
    // phi has a pole at the cone boundary, so the step must shrink with the
    // linearized distance to it along the perturbation directions. Roundoff
    // in F^2 grows like eps/(s-1) near the pole, so the relative depth is
    // widened there to stay above the noise floor.
    const double a = metric.alpha(y);
    const double margin = metric.beta(y) - (1.0 + Metric::kConeEps) * a;
    auto shrink = [&](const Vector& w) {
      return std::abs(metric.beta(w)) + (1.0 + Metric::kConeEps) * metric.alpha(w);
    };
    const double growth = std::max(shrink(u + v), shrink(u - v));
    const double kappa =
        std::max(1.0, a / std::max(metric.beta(y) - a, 1e-300));
    const double depth = std::cbrt(std::sqrt(2.2e-16 * kappa));
    if (growth > 0.0 && margin > 0.0) h = std::min(h, depth * margin / growth);
  }
  auto cross = [&](double hh) {
    const Vector pts[4] = {y + hh * u + hh * v, y + hh * u - hh * v,
                           y - hh * u + hh * v, y - hh * u - hh * v};
    for (const Vector& p : pts)
      if (!metric.admissible(p))
        throw DomainError("central-difference stencil leaves the admissible cone; "
                          "use a smaller step");
    auto f2 = [&](const Vector& p) {
      const double F = metric.norm(p);
      return F * F;
    };
    return 0.5 * (f2(pts[0]) - f2(pts[1]) - f2(pts[2]) + f2(pts[3])) / (4.0 * hh * hh);
  };
  // Richardson extrapolation of the 4-point cross stencil: cancels the h^2
  // truncation term, which lets the step stay large enough to dominate
  // cancellation noise even near the infinite-series pole.
  return (4.0 * cross(0.5 * h) - cross(h)) / 3.0;
}

}  // namespace

double gOracle(const Metric& metric, const Vector& y, const Vector& u, const Vector& v,
               const OracleScheme& scheme) {
  metric.requireAdmissible(y);
  if (scheme.method == OracleScheme::Method::DualNumber) return gDual(metric, y, u, v);
  return gCentral(metric, y, u, v, scheme.step);
}

AdmissibleSampler::AdmissibleSampler(const Metric& metric, std::uint64_t seed)
    : metric_(metric), state_(seed) {}

// splitmix64; fixed here rather than <random> so reports are reproducible
// independent of the standard library.
static std::uint64_t nextU64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double AdmissibleSampler::normal() {
  // Box-Muller, one value per pair of uniforms
  const double u1 = (nextU64(state_) >> 11) * 0x1.0p-53 + 0x1.0p-54;
  const double u2 = (nextU64(state_) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vector AdmissibleSampler::normalVector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal();
  return v;
}

AuditSample AdmissibleSampler::draw(int max_rejects) {
  const int n = metric_.dimM();
  AuditSample s;
  for (int attempt = 0; attempt < max_rejects; ++attempt) {
    Vector y = normalVector(n);
    const double len = y.norm();
    if (!(len > 0.0)) continue;
    y /= len;
    if (!metric_.admissible(y)) continue;
    s.y = y;
    s.u = normalVector(n);
    s.v = normalVector(n);
    return s;
  }
  throw DomainError("no admissible sample found after " + std::to_string(max_rejects) +
                    " draws; the admissible cone is too thin");
}

AuditReport auditClosedForms(const Metric& metric, int n_samples, std::uint64_t seed,
                             const OracleScheme& scheme) {
  if (metric.kind() != MetricKind::Exponential && metric.kind() != MetricKind::InfiniteSeries)
    throw InputError("audit_closed_forms applies to the exponential and infinite series metrics");
  if (n_samples < 1) throw InputError("audit_closed_forms requires n_samples >= 1");

  AdmissibleSampler sampler(metric, seed);
  AuditReport rep;
  rep.samples = n_samples;
  rep.per_sample.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    AuditSample s = sampler.draw(1000 * n_samples);
    s.closed_value = metric.gClosed(s.y, s.u, s.v);
    s.oracle_value = gOracle(metric, s.y, s.u, s.v, scheme);
    const double abs_d = std::abs(s.closed_value - s.oracle_value);
    const double rel_d = abs_d / (1.0 + std::abs(s.oracle_value));
    if (rel_d >= rep.max_rel_discrepancy) {
      rep.max_rel_discrepancy = rel_d;
      rep.worst_case = s;
    }
    rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, abs_d);
    rep.per_sample.push_back(std::move(s));
  }
  return rep;
}

}  // namespace fg
