#include <doctest.h>

#include <cstdlib>

#include "fg/spec_io.hpp"
#include "test_util.hpp"

using namespace fg;

TEST_CASE("Heisenberg fixture parses") {
  const ProblemSpec spec = fgtest::loadFixture("heisenberg_exponential.json");
  CHECK(spec.space.dim() == 3);
  CHECK(spec.space.dimH() == 0);
  CHECK((spec.space.metric.kind() == MetricKind::Exponential));
  CHECK(spec.space.metric.b() == doctest::Approx(0.5));
  // antisymmetric completion filled in [e2,e1] = -e3
  const Vector b = spec.space.algebra.bracket(spec.space.algebra.basisVector(1),
                                              spec.space.algebra.basisVector(0));
  CHECK(b(2) == -1.0);
}

TEST_CASE("unknown keys are rejected at every level") {
  Json doc = emitSpec(fgtest::loadFixture("heisenberg_riemannian.json"));
  SUBCASE("root") {
    doc["extra"] = 1;
    CHECK_THROWS_WITH_AS(parseSpec(doc), doctest::Contains("unknown key"), InputError);
  }
  SUBCASE("algebra") {
    doc["algebra"]["rank"] = 1;
    CHECK_THROWS_AS(parseSpec(doc), InputError);
  }
  SUBCASE("metric") {
    doc["metric"]["phi"] = "exp";
    CHECK_THROWS_AS(parseSpec(doc), InputError);
  }
}

TEST_CASE("non-antisymmetric constants fail with named indices") {
  Json doc = emitSpec(fgtest::loadFixture("heisenberg_riemannian.json"));
  doc["algebra"]["structure_constants"] = Json::array({Json{1, 2, 3, 1.0}, Json{2, 1, 3, 1.0}});
  CHECK_THROWS_WITH_AS(parseSpec(doc), doctest::Contains("antisymmetric"), InputError);
}

TEST_CASE("non-positive-definite inner product names the eigenvalue") {
  Json doc = emitSpec(fgtest::loadFixture("heisenberg_riemannian.json"));
  doc["metric"]["inner_product"] = {{1, 0, 0}, {0, -2, 0}, {0, 0, 1}};
  CHECK_THROWS_WITH_AS(parseSpec(doc), doctest::Contains("eigenvalue"), InputError);
}

TEST_CASE("x must lie in m") {
  Json doc = emitSpec(fgtest::loadFixture("so3_so2_exponential.json"));
  doc["metric"]["x"] = {0.5, 0.0, 0.3};  // index 3 is in h
  CHECK_THROWS_WITH_AS(parseSpec(doc), doctest::Contains("h-component"), InputError);
}

TEST_CASE("emit-then-parse round trip is the identity") {
  for (const char* name :
       {"heisenberg_exponential.json", "heisenberg_infinite.json", "so3_riemannian.json",
        "so3_so2_exponential.json", "abelian3_riemannian.json"}) {
    const ProblemSpec spec = fgtest::loadFixture(name);
    const Json once = emitSpec(spec);
    const Json twice = emitSpec(parseSpec(once));
    CHECK(once.dump() == twice.dump());
  }
}

TEST_CASE("Jacobi violation: strict parse rejects, lenient parse reports") {
  Json doc = emitSpec(fgtest::loadFixture("heisenberg_riemannian.json"));
  doc["algebra"]["structure_constants"] =
      Json::array({Json{1, 2, 3, 1.0}, Json{1, 3, 1, 1.0}});
  CHECK_THROWS_WITH_AS(parseSpec(doc), doctest::Contains("Jacobi"), InputError);
  const ProblemSpec lenient = parseSpec(doc, /*strict_structure=*/false);
  const StructureReport rep =
      checkStructure(lenient.space.algebra, lenient.space.split, 1e-9);
  CHECK_FALSE(rep.jacobi.pass);
}

TEST_CASE("missing file is an input error") {
  CHECK_THROWS_AS(parseSpecFile("/nonexistent/path.json"), InputError);
}

TEST_CASE("environment variable overrides the Jacobi tolerance") {
  setenv("FG_TOL_JACOBI", "0.5", 1);
  const ProblemSpec spec = fgtest::loadFixture("heisenberg_riemannian.json");
  unsetenv("FG_TOL_JACOBI");
  CHECK(spec.options.jacobi_tol == 0.5);
}

TEST_CASE("run report embeds command, digest, and provenance") {
  const ProblemSpec spec = fgtest::loadFixture("heisenberg_exponential.json");
  const CriterionResidual res =
      criterionResidual(spec.space, spec.space.algebra.basisVector(0), Source::Oracle);
  const Json rep = makeRunReport("check-vector", spec, toJson(res), 1.25);
  CHECK(rep["command"] == "check-vector");
  CHECK(rep["results"]["source"] == "Oracle");
  CHECK(rep["inputs_digest"].get<std::string>().size() == 16);
  // identical inputs produce identical digests
  CHECK(rep["inputs_digest"] == makeRunReport("x", spec, Json(), 9.0)["inputs_digest"]);
}

TEST_CASE("duplicate structure constant entries are rejected") {
  Json doc = emitSpec(fgtest::loadFixture("heisenberg_riemannian.json"));
  doc["algebra"]["structure_constants"] =
      Json::array({Json{1, 2, 3, 1.0}, Json{1, 2, 3, 1.0}});
  CHECK_THROWS_WITH_AS(parseSpec(doc), doctest::Contains("duplicate"), InputError);
}
