#include <catch_amalgamated.hpp>

#include <random>

#include "gquant/abelian.hpp"
#include "gquant/errors.hpp"
#include "oracles.hpp"

using namespace gquant;

namespace {

Cocycle quaternion_type() {
  return alternating_bicharacter(builtin_irreps(parse_group("C2xC2")), {{1.0, 1.0}, {-1.0, 1.0}});
}

Cocycle random_coboundary(const Cocycle& z, std::mt19937_64& rng) {
  std::vector<cd> l(z.dual->size(), 1.0);
  for (size_t a = 1; a < l.size(); ++a) l[a] = oracle::random_unit(rng);
  return apply_coboundary(z, l);
}

}  // namespace

TEST_CASE("cocycle residuals") {
  const Cocycle one = Cocycle::trivial(builtin_irreps(parse_group("C4")));
  CHECK(cocycle_check(one) == 0);
  const Cocycle q = quaternion_type();
  CHECK(cocycle_check(q) < 1e-15);
  // The bicharacter (-1)^{a_2 b_1} on exponent tuples.
  const auto& dual = *q.dual;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const int sign = (dual.exponents(a)[1] * dual.exponents(b)[0]) % 2 ? -1 : 1;
      CHECK(std::abs(q(a, b) - static_cast<double>(sign)) < 1e-15);
    }
  Cocycle bad = q;
  bad.values[1][2] *= 1.3;
  CHECK(cocycle_check(bad) > 0.1);
  Cocycle unnormalized = one;
  unnormalized.values[0][1] = 2.0;
  CHECK(cocycle_check(unnormalized) > 0.5);
}

TEST_CASE("a cocycle is recovered from its quantizer") {
  std::mt19937_64 rng(51);
  for (const char* spec : {"C3", "C4", "C2xC2", "C2xC3"}) {
    INFO(spec);
    const SpacePtr space = make_space(parse_group(spec));
    Cocycle z = Cocycle::trivial(space->irreps());
    if (std::string(spec) == "C2xC2") z = quaternion_type();
    z = random_coboundary(z, rng);
    const Quantizer q = quantizer_from_cocycle(space, z);
    CHECK(check_conditions(q).accepted());
    CHECK(oracle::coherence(q) < 1e-12);
    const BlockQuantizer b = blocks_from_algebra(q);
    for (int a = 0; a < space->rank(); ++a)
      for (int c = 0; c < space->rank(); ++c)
        CHECK(std::abs(b.scalar(a, c, dual_multiply(*space->irreps(), a, c)) - z(a, c)) < 1e-12);
  }
}

TEST_CASE("the trivial cocycle gives the unit quantizer") {
  const SpacePtr space = make_space(parse_group("C2xC2"));
  const Quantizer q = quantizer_from_cocycle(space, Cocycle::trivial(space->irreps()));
  CHECK((q.q - Quantizer::trivial(space).q).norm_inf() < 1e-15);
}

TEST_CASE("invalid cocycles are rejected unless asked otherwise") {
  const SpacePtr space = make_space(parse_group("C3"));
  Cocycle z = Cocycle::trivial(space->irreps());
  z.values[1][1] = 2.0;
  CHECK_THROWS_AS(quantizer_from_cocycle(space, z), Error);
  CHECK_FALSE(check_conditions(quantizer_from_cocycle(space, z, false)).accepted());
}

TEST_CASE("cyclic cocycles reduce to the trivial class") {
  std::mt19937_64 rng(52);
  // z(a, b) = omega^{ab} on Z/3 is a cocycle since ab is bilinear.
  const IrrepsPtr dual = builtin_irreps(parse_group("C3"));
  Cocycle z = Cocycle::trivial(dual);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) z.values[a][b] = root_of_unity(3, a * b);
  REQUIRE(cocycle_check(z) < 1e-12);
  for (const Cocycle& w : {z, random_coboundary(z, rng)}) {
    const CoboundaryReduction r = coboundary_reduce(w);
    CHECK(r.trivial);
    const Cocycle back = apply_coboundary(w, r.gauge);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(std::abs(back(a, b) - r.representative(a, b)) < 1e-10);
  }
}

TEST_CASE("the quaternion-type class is not a coboundary") {
  std::mt19937_64 rng(53);
  const Cocycle z = random_coboundary(quaternion_type(), rng);
  const CoboundaryReduction r = coboundary_reduce(z);
  CHECK_FALSE(r.trivial);
  const Cocycle q = quaternion_type();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(std::abs(r.representative(a, b) - q(a, b)) < 1e-10);
  // Exhaustive: no sign gauge l makes the bicharacter symmetric, so no
  // coboundary equals it (coboundaries on an abelian group are symmetric).
  CHECK(std::abs(q(1, 2) - q(2, 1)) > 1);
}

TEST_CASE("zero values cannot be reduced") {
  Cocycle z = Cocycle::trivial(builtin_irreps(parse_group("C2")));
  z.values[1][1] = 0.0;
  CHECK_THROWS_AS(coboundary_reduce(z), Error);
}

TEST_CASE("twisted group algebras") {
  const Cocycle q = quaternion_type();
  const EquivariantAlgebra a = twisted_group_algebra(q);
  CHECK(associativity_residual(a) < 1e-15);
  CHECK(equivariance_residual(a) < 1e-15);
  // e_i e_j = -e_j e_i for distinct non-identity generators.
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j)
      if (i != j) CHECK((a.mult.col(i * 4 + j) + a.mult.col(j * 4 + i)).cwiseAbs().maxCoeff() < 1e-15);
  // Agreement with quantizing the graded group algebra.
  const SpacePtr space = make_space(parse_group("C2xC2"));
  const EquivariantAlgebra viaq = quantize_algebra(graded_group_algebra(space->irreps()),
                                                   quantizer_from_cocycle(space, q));
  CHECK((viaq.mult - a.mult).cwiseAbs().maxCoeff() < 1e-12);

  Cocycle bad = q;
  bad.values[1][3] *= 1.5;
  CHECK(associativity_residual(twisted_group_algebra(bad)) > 0.1);
}

TEST_CASE("non-abelian duals are refused") {
  CHECK_THROWS_AS(dual_multiply(*builtin_irreps(parse_group("S3")), 1, 2), Error);
  CHECK_THROWS_AS(graded_group_algebra(builtin_irreps(parse_group("S3"))), Error);
}
