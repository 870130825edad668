#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fg/errors.hpp"

namespace fg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Real Lie algebra given by structure constants in a fixed basis:
/// [e_i, e_j] = sum_k c[i][j][k] e_k. Constants are antisymmetrized on
/// construction and the input is rejected if that changes any entry by
/// more than 1e-12.
class LieAlgebra {
 public:
  static constexpr double kAntisymmetryTol = 1e-12;

  /// c[k](i,j) holds the e_k coefficient of [e_i, e_j].
  static LieAlgebra fromStructureConstants(int dim, std::vector<Matrix> c,
                                           std::vector<std::string> labels = {});

  static LieAlgebra abelian(int dim);

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double structureConstant(int i, int j, int k) const { return c_[k](i, j); }
  const Matrix& adjointComponent(int k) const { return c_[k]; }

  Vector basisVector(int i) const;
  Vector bracket(const Vector& a, const Vector& b) const;

  /// max |c(i,j,k) + c(j,i,k)| seen before antisymmetrization.
  double antisymmetryDefect() const { return antisymmetry_defect_; }
  /// max over triples of || [[a,b],c] + [[b,c],a] + [[c,a],b] ||_inf on basis vectors.
  double maxJacobiResidual() const;

 private:
  int dim_ = 0;
  std::vector<Matrix> c_;
  std::vector<std::string> labels_;
  double antisymmetry_defect_ = 0.0;
};

/// Index partition of the basis into the isotropy part h and the
/// tangent part m. Indices are 0-based.
struct ReductiveSplit {
  std::vector<int> h_indices;
  std::vector<int> m_indices;

  static ReductiveSplit trivialIsotropy(int dim);
  void validateAgainst(int dim) const;  // disjoint, in range, union = all
};

/// Zero the h-coordinates, keep the m-coordinates. Idempotent.
Vector projectM(const Vector& v, const ReductiveSplit& split);

struct CheckResult {
  double residual = 0.0;
  bool pass = false;
};

struct StructureReport {
  CheckResult antisymmetry;
  CheckResult jacobi;
  CheckResult h_subalgebra;     // [h,h] subset h
  CheckResult h_m_invariance;   // [h,m] subset m
  bool pass() const {
    return antisymmetry.pass && jacobi.pass && h_subalgebra.pass && h_m_invariance.pass;
  }
};

StructureReport checkStructure(const LieAlgebra& algebra, const ReductiveSplit& split,
                               double tol);

}  // namespace fg
