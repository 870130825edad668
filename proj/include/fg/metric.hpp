#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "fg/errors.hpp"
#include "fg/lie_algebra.hpp"

namespace fg {

enum class MetricKind { Exponential, InfiniteSeries, CustomPhi };

std::string toString(MetricKind kind);

/// Value and first two derivatives of the generating function phi at one s.
struct PhiJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

using PhiFunction = std::function<PhiJet(double)>;

struct ShenReport {
  double min_value = 0.0;
  double argmin = 0.0;
  double b = 0.0;
  int grid = 0;
  bool pass = false;
};

/// An (alpha,beta)-metric F = alpha * phi(beta/alpha) on the tangent
/// part m, with alpha(y) = sqrt(<y,y>) from an explicit inner product
/// and beta(y) = <X,y> from an invariant vector X. All vectors passed
/// to this class live in m-coordinates (length dimM()).
///
/// Admissibility conventions (the family radius b0 is supplied by
/// the user; it does not pin these down):
///   Exponential    : b = |X| < 1, every y != 0 admissible.
///   InfiniteSeries : phi(s) = s^2/(s-1) is positive only past s = 1, so
///                    the cone is {y : <X,y> > (1+eps) * |y|}, eps = 1e-6.
///   CustomPhi      : every y != 0 admissible; validity is the caller's
///                    concern via shenCheck.
class Metric {
 public:
  static constexpr double kConeEps = 1e-6;

  Metric(MetricKind kind, Matrix inner_product, Vector x, double b0,
         PhiFunction custom_phi = {});

  /// CustomPhi with phi identically 1, i.e. F = alpha.
  static Metric riemannian(Matrix inner_product);

  MetricKind kind() const { return kind_; }
  bool isRiemannian() const { return riemannian_; }
  const Matrix& innerProduct() const { return ip_; }
  const Vector& x() const { return x_; }
  double b0() const { return b0_; }
  double b() const { return b_; }
  int dimM() const { return static_cast<int>(ip_.rows()); }

  double inner(const Vector& u, const Vector& v) const;
  double alpha(const Vector& y) const;
  double beta(const Vector& y) const;

  PhiJet phi(double s) const;

  bool admissible(const Vector& y) const;
  void requireAdmissible(const Vector& y) const;

  /// F(y) = alpha(y) * phi(beta/alpha).
  double norm(const Vector& y) const;

  /// Fundamental tensor from the published closed-form expressions,
  /// symmetrized over u <-> v. The exponential form agrees with the
  /// Hessian definition; the infinite-series one is evaluated exactly as
  /// typeset and adjudicated by the oracle audit.
  double gClosedExponential(const Vector& y, const Vector& u, const Vector& v) const;
  double gClosedInfinite(const Vector& y, const Vector& u, const Vector& v) const;
  double gClosed(const Vector& y, const Vector& u, const Vector& v) const;

  /// Shen validity scan: E(s) = phi - s phi' + (b^2 - s^2) phi'' on the
  /// admissible s-interval ([-b,b], or [1+eps,b] for InfiniteSeries).
  ShenReport shenCheck(double b, int n_grid) const;

  double singularTol(double alpha_y) const { return 1e-9 * (1.0 + alpha_y); }

 private:
  MetricKind kind_;
  Matrix ip_;
  Vector x_;
  double b0_;
  double b_;
  PhiFunction custom_phi_;
  bool riemannian_ = false;
};

}  // namespace fg
