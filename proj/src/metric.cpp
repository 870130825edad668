#include "fg/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace fg {

std::string toString(MetricKind kind) {
  switch (kind) {
    case MetricKind::Exponential: return "exponential";
    case MetricKind::InfiniteSeries: return "infinite_series";
    case MetricKind::CustomPhi: return "custom_phi";
  }
  return "?";
}

Metric::Metric(MetricKind kind, Matrix inner_product, Vector x, double b0,
               PhiFunction custom_phi)
    : kind_(kind), ip_(std::move(inner_product)), x_(std::move(x)), b0_(b0),
      custom_phi_(std::move(custom_phi)) {
  if (ip_.rows() == 0 || ip_.rows() != ip_.cols())
    throw InputError("inner product matrix must be square and non-empty");
  const double asym = (ip_ - ip_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw InputError("inner product matrix is not symmetric (max deviation " +
                     std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> es(ip_);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig <= 0.0)
    throw InputError("inner product matrix is not positive definite (eigenvalue " +
                     std::to_string(min_eig) + ")");
  if (x_.size() != ip_.rows())
    throw InputError("x vector length does not match inner product dimension");
  if (!x_.allFinite()) throw InputError("x vector has non-finite entries");
  if (!(b0_ > 0.0)) throw InputError("b0 must be positive");

  b_ = std::sqrt(x_.dot(ip_ * x_));
  if (kind_ == MetricKind::CustomPhi && !custom_phi_)
    throw InputError("custom_phi metric requires a phi function");
  if (b_ >= b0_)
    throw InputError("|X| = " + std::to_string(b_) + " must stay below b0 = " +
                     std::to_string(b0_));
  if (kind_ == MetricKind::Exponential && b_ >= 1.0)
    throw InputError("exponential metric requires |X| < 1, got " + std::to_string(b_));
  if (kind_ == MetricKind::InfiniteSeries && b_ <= 1.0 + kConeEps)
    throw InputError("infinite series metric has an empty admissible cone unless |X| > 1, got " +
                     std::to_string(b_));
}

Metric Metric::riemannian(Matrix inner_product) {
  const int n = static_cast<int>(inner_product.rows());
  Metric m(MetricKind::CustomPhi, std::move(inner_product), Vector::Zero(n), 1.0,
           [](double) { return PhiJet{1.0, 0.0, 0.0}; });
  m.riemannian_ = true;
  return m;
}

double Metric::inner(const Vector& u, const Vector& v) const {
  if (u.size() != ip_.rows() || v.size() != ip_.rows())
    throw InputError("inner: vector length does not match metric dimension");
  return u.dot(ip_ * v);
}

double Metric::alpha(const Vector& y) const { return std::sqrt(inner(y, y)); }
double Metric::beta(const Vector& y) const { return inner(x_, y); }

PhiJet Metric::phi(double s) const {
  switch (kind_) {
    case MetricKind::Exponential: {
      const double e = std::exp(s);
      return {e, e, e};
    }
    case MetricKind::InfiniteSeries: {
      const double d = s - 1.0;
      if (std::abs(d) < 1e-12)
        throw DomainError("infinite series phi undefined at s = " + std::to_string(s));
      return {s * s / d, s * (s - 2.0) / (d * d), 2.0 / (d * d * d)};
    }
    case MetricKind::CustomPhi:
      return custom_phi_(s);
  }
  throw InputError("unknown metric kind");
}

bool Metric::admissible(const Vector& y) const {
  if (y.size() != ip_.rows()) return false;
  const double a = alpha(y);
  if (!(a > 0.0)) return false;
  if (kind_ == MetricKind::InfiniteSeries) return beta(y) > (1.0 + kConeEps) * a;
  return true;
}

void Metric::requireAdmissible(const Vector& y) const {
  if (y.size() != ip_.rows())
    throw InputError("vector length does not match metric dimension");
  if (!(alpha(y) > 0.0)) throw DomainError("y = 0 is outside the metric domain");
  if (!admissible(y))
    throw DomainError("y is outside the " + toString(kind_) +
                      " admissible cone (<X,y> must exceed |y|)");
}

double Metric::norm(const Vector& y) const {
  requireAdmissible(y);
  const double a = alpha(y);
  return a * phi(beta(y) / a).value;
}

double Metric::gClosedExponential(const Vector& y, const Vector& u, const Vector& v) const {
  const double yy = inner(y, y);
  if (!(yy > 0.0)) throw DomainError("g_exponential: y = 0");
  const double ay = std::sqrt(yy);
  const double by = beta(y);

  auto half = [&](const Vector& U, const Vector& V) {
    const double xu = beta(U), xv = beta(V);
    const double yu = inner(y, U), yv = inner(y, V);
    const double uv = inner(U, V);
    return uv + 2.0 * xu * xv - by * yu * yv / (yy * ay) +
           (xu * yv + xv * yu - by * uv) / ay +
           (2.0 * by / yy) * (by * yu * yv / yy - yu * xv - xu * yv);
  };
  // prefactor applied last to limit cancellation
  return std::exp(2.0 * by / ay) * 0.5 * (half(u, v) + half(v, u));
}

double Metric::gClosedInfinite(const Vector& y, const Vector& u, const Vector& v) const {
  requireAdmissible(y);
  const double yy = inner(y, y);
  const double ay = std::sqrt(yy);
  const double by = beta(y);
  const double den = by - ay;
  if (std::abs(den) < singularTol(ay))
    throw SingularityError("g_infinite: <X,y> - |y| is singular (" + std::to_string(den) + ")");

  auto half = [&](const Vector& U, const Vector& V) {
    const double xu = beta(U), xv = beta(V);
    const double yu = inner(y, U), yv = inner(y, V);
    const double uv = inner(U, V);
    return by * by * xv * xu - 4.0 * yy * ay * xv * xu + 6.0 * yy * xv * xu +
           by * by * xv * yu / ay - 4.0 * by * xv * yu -
           by * by * by * yu * yv / (yy * ay) + by * by * by * uv / ay +
           4.0 * by * by * yu * yv / yy - by * by * uv +
           by * by * xu * yv / ay - 4.0 * by * xu * yv;
  };
  const double den2 = den * den;
  return (by * by / (den2 * den2)) * 0.5 * (half(u, v) + half(v, u));
}

double Metric::gClosed(const Vector& y, const Vector& u, const Vector& v) const {
  switch (kind_) {
    case MetricKind::Exponential: return gClosedExponential(y, u, v);
    case MetricKind::InfiniteSeries: return gClosedInfinite(y, u, v);
    case MetricKind::CustomPhi:
      if (riemannian_) return inner(u, v);
      throw InputError("no closed-form fundamental tensor for a general custom phi");
  }
  throw InputError("unknown metric kind");
}

ShenReport Metric::shenCheck(double b, int n_grid) const {
  if (!(b >= 0.0 && b < b0_))
    throw InputError("shen_check requires 0 <= b < b0, got b = " + std::to_string(b));
  if (n_grid < 3) throw InputError("shen_check requires n_grid >= 3");

  double lo, hi;
  if (kind_ == MetricKind::InfiniteSeries) {
    lo = 1.0 + kConeEps;
    hi = b;
    if (hi <= lo)
      throw DomainError("shen_check: empty admissible interval for infinite series (b = " +
                        std::to_string(b) + " <= 1)");
  } else {
    lo = -b;
    hi = b;
  }

  ShenReport rep;
  rep.b = b;
  rep.grid = n_grid;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_grid; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / (n_grid - 1);
    const PhiJet p = phi(s);
    const double e = p.value - s * p.d1 + (b * b - s * s) * p.d2;
    if (e < rep.min_value) {
      rep.min_value = e;
      rep.argmin = s;
    }
  }
  rep.pass = rep.min_value > 0.0;
  return rep;
}

}  // namespace fg
