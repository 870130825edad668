#include "fg/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace fg {

LieAlgebra LieAlgebra::fromStructureConstants(int dim, std::vector<Matrix> c,
                                              std::vector<std::string> labels) {
  if (dim <= 0) throw InputError("algebra dimension must be positive");
  if (static_cast<int>(c.size()) != dim)
    throw InputError("expected " + std::to_string(dim) + " structure-constant slices, got " +
                     std::to_string(c.size()));
  LieAlgebra a;
  a.dim_ = dim;
  for (int k = 0; k < dim; ++k) {
    if (c[k].rows() != dim || c[k].cols() != dim)
      throw InputError("structure-constant slice " + std::to_string(k + 1) +
                       " has wrong shape");
    const Matrix sym = 0.5 * (c[k] + c[k].transpose());
    const double defect = sym.cwiseAbs().maxCoeff();
    a.antisymmetry_defect_ = std::max(a.antisymmetry_defect_, 2.0 * defect);
    if (2.0 * defect > kAntisymmetryTol)
      throw InputError("structure constants are not antisymmetric: slice k=" +
                       std::to_string(k + 1) + " deviates by " + std::to_string(2.0 * defect));
    c[k] = 0.5 * (c[k] - c[k].transpose());
  }
  a.c_ = std::move(c);
  if (labels.empty()) {
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
  } else if (static_cast<int>(labels.size()) != dim) {
    throw InputError("basis_labels length does not match dimension");
  }
  a.labels_ = std::move(labels);
  return a;
}

LieAlgebra LieAlgebra::abelian(int dim) {
  std::vector<Matrix> c(dim, Matrix::Zero(dim, dim));
  return fromStructureConstants(dim, std::move(c));
}

Vector LieAlgebra::basisVector(int i) const {
  Vector v = Vector::Zero(dim_);
  v(i) = 1.0;
  return v;
}

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const {
  if (a.size() != dim_ || b.size() != dim_)
    throw InputError("bracket: vector length does not match algebra dimension");
  Vector out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = a.dot(c_[k] * b);
  return out;
}

double LieAlgebra::maxJacobiResidual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const Vector ei = basisVector(i);
    for (int j = i + 1; j < dim_; ++j) {
      const Vector ej = basisVector(j);
      const Vector bij = bracket(ei, ej);
      for (int k = j + 1; k < dim_; ++k) {
        const Vector ek = basisVector(k);
        const Vector r = bracket(bij, ek) + bracket(bracket(ej, ek), ei) +
                         bracket(bracket(ek, ei), ej);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

ReductiveSplit ReductiveSplit::trivialIsotropy(int dim) {
  ReductiveSplit s;
  for (int i = 0; i < dim; ++i) s.m_indices.push_back(i);
  return s;
}

void ReductiveSplit::validateAgainst(int dim) const {
  std::vector<int> seen(dim, 0);
  auto mark = [&](const std::vector<int>& idx, const char* name) {
    for (int i : idx) {
      if (i < 0 || i >= dim)
        throw InputError(std::string(name) + " index " + std::to_string(i + 1) +
                         " out of range");
      if (seen[i]++)
        throw InputError("basis index " + std::to_string(i + 1) +
                         " appears more than once in the split");
    }
  };
  mark(h_indices, "h");
  mark(m_indices, "m");
  for (int i = 0; i < dim; ++i)
    if (!seen[i])
      throw InputError("basis index " + std::to_string(i + 1) +
                       " missing from the split");
}

Vector projectM(const Vector& v, const ReductiveSplit& split) {
  Vector out = Vector::Zero(v.size());
  for (int i : split.m_indices) out(i) = v(i);
  return out;
}

namespace {

double maxAbsOn(const Vector& v, const std::vector<int>& idx) {
  double m = 0.0;
  for (int i : idx) m = std::max(m, std::abs(v(i)));
  return m;
}

}  // namespace

StructureReport checkStructure(const LieAlgebra& algebra, const ReductiveSplit& split,
                               double tol) {
  if (tol <= 0) throw InputError("check_structure: tol must be positive");
  split.validateAgainst(algebra.dim());

  StructureReport rep;
  rep.antisymmetry.residual = algebra.antisymmetryDefect();
  rep.antisymmetry.pass = rep.antisymmetry.residual <= LieAlgebra::kAntisymmetryTol;
  rep.jacobi.residual = algebra.maxJacobiResidual();
  rep.jacobi.pass = rep.jacobi.residual <= tol;

  for (int i : split.h_indices) {
    const Vector ei = algebra.basisVector(i);
    for (int j : split.h_indices) {
      const Vector b = algebra.bracket(ei, algebra.basisVector(j));
      rep.h_subalgebra.residual =
          std::max(rep.h_subalgebra.residual, maxAbsOn(b, split.m_indices));
    }
    for (int j : split.m_indices) {
      const Vector b = algebra.bracket(ei, algebra.basisVector(j));
      rep.h_m_invariance.residual =
          std::max(rep.h_m_invariance.residual, maxAbsOn(b, split.h_indices));
    }
  }
  rep.h_subalgebra.pass = rep.h_subalgebra.residual <= tol;
  rep.h_m_invariance.pass = rep.h_m_invariance.residual <= tol;
  return rep;
}

}  // namespace fg
