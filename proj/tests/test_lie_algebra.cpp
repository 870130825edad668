#include <doctest.h>

#include "fg/lie_algebra.hpp"
#include "test_util.hpp"

using namespace fg;
using fgtest::Rng;

TEST_CASE("bracket on the abelian algebra vanishes") {
  const LieAlgebra a = LieAlgebra::abelian(4);
  Rng rng(1);
  for (int t = 0; t < 10; ++t)
    CHECK(a.bracket(rng.vec(4), rng.vec(4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bracket(a, a) is exactly zero") {
  const LieAlgebra so3 = fgtest::makeSo3();
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Vector v = rng.vec(3);
    CHECK(so3.bracket(v, v).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Heisenberg bracket table") {
  const LieAlgebra h = fgtest::makeHeisenberg();
  const Vector e1 = h.basisVector(0), e2 = h.basisVector(1), e3 = h.basisVector(2);
  CHECK(h.bracket(e1, e2).isApprox(e3));
  CHECK(h.bracket(e2, e1).isApprox(-e3));
  CHECK(h.bracket(e1, e3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bracket is bilinear") {
  const LieAlgebra so3 = fgtest::makeSo3();
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Vector a = rng.vec(3), b = rng.vec(3), c = rng.vec(3);
    const double lam = rng.normal(), mu = rng.normal();
    const Vector lhs = so3.bracket(lam * a + mu * b, c);
    const Vector rhs = lam * so3.bracket(a, c) + mu * so3.bracket(b, c);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("bracket antisymmetry is exact after antisymmetrized storage") {
  const LieAlgebra so3 = fgtest::makeSo3();
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const Vector a = rng.vec(3), b = rng.vec(3);
    CHECK((so3.bracket(a, b) + so3.bracket(b, a)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("non-antisymmetric structure constants are rejected") {
  std::vector<Matrix> c(3, Matrix::Zero(3, 3));
  c[2](0, 1) = 1.0;
  c[2](1, 0) = 1.0;  // same sign both ways round
  CHECK_THROWS_AS(LieAlgebra::fromStructureConstants(3, std::move(c)), InputError);
}

TEST_CASE("project_m behavior") {
  const ReductiveSplit split{{2}, {0, 1}};
  Vector v(3);
  v << 1.0, 2.0, 3.0;

  SUBCASE("zeroes h, keeps m, idempotent") {
    const Vector p = projectM(v, split);
    CHECK(p(0) == 1.0);
    CHECK(p(1) == 2.0);
    CHECK(p(2) == 0.0);
    CHECK(projectM(p, split).isApprox(p));
  }
  SUBCASE("vector entirely in h maps to zero") {
    Vector h = Vector::Zero(3);
    h(2) = 5.0;
    CHECK(projectM(h, split).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("trivial isotropy is the identity") {
    CHECK(projectM(v, ReductiveSplit::trivialIsotropy(3)).isApprox(v));
  }
}

TEST_CASE("check_structure reports") {
  SUBCASE("abelian: all residuals zero") {
    const StructureReport rep =
        checkStructure(LieAlgebra::abelian(3), ReductiveSplit::trivialIsotropy(3), 1e-9);
    CHECK(rep.pass());
    CHECK(rep.jacobi.residual == 0.0);
    CHECK(rep.h_subalgebra.residual == 0.0);
  }
  SUBCASE("Heisenberg: Jacobi residual zero by brute force") {
    const LieAlgebra h = fgtest::makeHeisenberg();
    // independent brute-force enumeration over all ordered triples
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const Vector a = h.basisVector(i), b = h.basisVector(j), c = h.basisVector(k);
          const Vector r = h.bracket(h.bracket(a, b), c) + h.bracket(h.bracket(b, c), a) +
                           h.bracket(h.bracket(c, a), b);
          worst = std::max(worst, r.cwiseAbs().maxCoeff());
        }
    CHECK(worst == 0.0);
    const StructureReport rep =
        checkStructure(h, ReductiveSplit::trivialIsotropy(3), 1e-9);
    CHECK(rep.jacobi.pass);
    CHECK(rep.jacobi.residual == worst);
  }
  SUBCASE("so(3)/so(2) split is reductive") {
    const StructureReport rep =
        checkStructure(fgtest::makeSo3(), ReductiveSplit{{2}, {0, 1}}, 1e-9);
    CHECK(rep.pass());
    CHECK(rep.h_m_invariance.residual == 0.0);
  }
  SUBCASE("h = span(e1,e2) in so(3) is not a subalgebra") {
    const StructureReport rep =
        checkStructure(fgtest::makeSo3(), ReductiveSplit{{0, 1}, {2}}, 1e-9);
    CHECK_FALSE(rep.h_subalgebra.pass);
    CHECK(rep.h_subalgebra.residual == 1.0);
  }
  SUBCASE("tol must be positive") {
    CHECK_THROWS_AS(
        checkStructure(LieAlgebra::abelian(2), ReductiveSplit::trivialIsotropy(2), 0.0),
        InputError);
  }
}

TEST_CASE("split validation") {
  CHECK_THROWS_AS((ReductiveSplit{{0}, {0, 1}}.validateAgainst(2)), InputError);
  CHECK_THROWS_AS((ReductiveSplit{{}, {0}}.validateAgainst(2)), InputError);
  CHECK_THROWS_AS((ReductiveSplit{{}, {0, 1, 2}}.validateAgainst(2)), InputError);
}

TEST_CASE("projected bracket of h with m stays in m for a valid split") {
  const LieAlgebra so3 = fgtest::makeSo3();
  const ReductiveSplit split{{2}, {0, 1}};
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Vector h = Vector::Zero(3), m = Vector::Zero(3);
    h(2) = rng.normal();
    m(0) = rng.normal();
    m(1) = rng.normal();
    const Vector b = so3.bracket(h, m);
    CHECK((projectM(b, split) - b).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("dimension mismatch raises an input error") {
  const LieAlgebra h = fgtest::makeHeisenberg();
  CHECK_THROWS_AS(h.bracket(Vector::Zero(2), Vector::Zero(3)), InputError);
}
