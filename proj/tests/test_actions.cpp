#include <catch_amalgamated.hpp>

#include <random>

#include "gquant/actions.hpp"
#include "gquant/classify.hpp"
#include "gquant/errors.hpp"
#include "oracles.hpp"

using namespace gquant;

TEST_CASE("the trivial quantizer changes nothing") {
  const SpacePtr space = make_space(parse_group("S3"));
  const EquivariantAlgebra a = function_algebra(space->group());
  const EquivariantAlgebra b = quantize_algebra(a, Quantizer::trivial(space));
  CHECK((a.mult - b.mult).cwiseAbs().maxCoeff() == 0);
  const EquivariantModule m = quantize_module(regular_module(a), Quantizer::trivial(space));
  CHECK((m.action - regular_module(a).action).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("the function algebra is commutative, associative and equivariant") {
  const EquivariantAlgebra a = function_algebra(parse_group("A4"));
  CHECK(a.dim == 12);
  CHECK(associativity_residual(a) == 0);
  CHECK(equivariance_residual(a) == 0);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      // delta_i delta_j = [i == j] delta_i
      for (int k = 0; k < a.dim; ++k)
        CHECK(a.mult(k, i * a.dim + j) == cd(i == j && j == k ? 1.0 : 0.0));
    }
}

TEST_CASE("coherent quantizers keep algebras and modules associative") {
  std::mt19937_64 rng(61);
  for (const char* spec : {"S3", "A4"}) {
    INFO(spec);
    const SpacePtr space = make_space(parse_group(spec));
    const EquivariantAlgebra fun = function_algebra(space->group());
    const Classification c = classify(space, RelationModel::Exact, {.verify = false});
    for (const auto& f : c.families) {
      std::vector<cd> t(f.params());
      for (auto& x : t) x = oracle::random_unit(rng);
      const Quantizer q = algebra_from_blocks(family_instance(c, f, t));
      const EquivariantAlgebra d = quantize_algebra(fun, q);
      CHECK(associativity_residual(d) < 1e-10);
      CHECK(equivariance_residual(d) < 1e-10);
      const EquivariantModule m = quantize_module(regular_module(fun), q);
      CHECK(module_residual(m) < 1e-10);
      CHECK(module_equivariance_residual(m) < 1e-10);
    }
  }
}

TEST_CASE("an incoherent natural quantizer breaks associativity") {
  const SpacePtr space = make_space(parse_group("S3"));
  BlockQuantizer b(space);
  b.set_scalar(1, 1, 0, 3.0);
  const EquivariantAlgebra d = quantize_algebra(function_algebra(space->group()), algebra_from_blocks(b));
  CHECK(associativity_residual(d) > 1e-3);
}

TEST_CASE("zero modules stay zero") {
  const SpacePtr space = make_space(parse_group("S3"));
  const EquivariantModule z = zero_module(function_algebra(space->group()));
  const EquivariantModule q = quantize_module(z, Quantizer::trivial(space));
  CHECK(q.dim == 0);
  CHECK(module_residual(q) == 0);
}

TEST_CASE("non-natural quantizers are rejected") {
  std::mt19937_64 rng(62);
  const SpacePtr space = make_space(parse_group("S3"));
  const Quantizer raw{space, oracle::random_element(space->pair(), rng)};
  try {
    quantize_algebra(function_algebra(space->group()), raw);
    FAIL("accepted a non-natural quantizer");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Rejected);
  }
  CHECK_THROWS_AS(quantize_algebra(function_algebra(parse_group("A4")), raw), Error);
}

TEST_CASE("braidings transport along regular quantizers") {
  const SpacePtr space = make_space(parse_group("S3"));
  const auto& std2 = (*space->irreps())[2].matrices;
  const Braiding flip = flip_braiding(space->group(), std2, std2);
  CHECK(braiding_naturality(flip) < 1e-12);

  const Braiding same = transport_braiding(flip, Quantizer::trivial(space));
  CHECK((same.sigma - flip.sigma).cwiseAbs().maxCoeff() < 1e-12);

  // A regular natural quantizer that is not symmetric.
  BlockQuantizer b(space);
  b.set_scalar(2, 2, 0, 2.0);
  b.set_scalar(2, 2, 1, 2.0);
  b.set_scalar(1, 2, 2, cd(0, 1));
  const Braiding moved = transport_braiding(flip, algebra_from_blocks(b));
  CHECK(braiding_naturality(moved) < 1e-10);

  BlockQuantizer d(space);
  d.set_scalar(2, 2, 0, 0.0);
  try {
    transport_braiding(flip, algebra_from_blocks(d));
    FAIL("transported along a singular quantizer");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singularity);
  }
}

TEST_CASE("operator form of a quantizer") {
  const SpacePtr space = make_space(parse_group("A4"));
  const auto& r3 = (*space->irreps())[3].matrices;
  const Mat one = quantizer_operator(Quantizer::trivial(space), r3, r3);
  CHECK((one - Mat::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("row a at lambda = 2 transports a natural braiding") {
  const SpacePtr space = make_space(parse_group("S3"));
  const auto& std2 = (*space->irreps())[2].matrices;
  const Braiding flip = flip_braiding(space->group(), std2, std2);
  BlockQuantizer b(space);
  const auto vars = block_variables(*space);
  const std::vector<cd> row = {1.0, 1.0, 1.0, 2.0, 2.0, 1.0};
  for (size_t v = 0; v < vars.size(); ++v) set_variable(b, vars[v], row[v]);
  const Quantizer q = algebra_from_blocks(b);
  REQUIRE(is_regular(q));
  CHECK(braiding_naturality(transport_braiding(flip, q)) < 1e-10);
}
