#include <catch_amalgamated.hpp>

#include <random>

#include "gquant/errors.hpp"
#include "gquant/quantizer.hpp"
#include "oracles.hpp"

using namespace gquant;

namespace {

BlockQuantizer random_blocks(const SpacePtr& space, std::mt19937_64& rng) {
  BlockQuantizer b(space);
  for (const auto& v : block_variables(*space)) set_variable(b, v, oracle::random_unit(rng));
  return b;
}

}  // namespace

TEST_CASE("the trivial quantizer passes every check") {
  for (const char* spec : {"C3", "C2xC2", "S3", "A4"}) {
    INFO(spec);
    const Quantizer q = Quantizer::trivial(make_space(parse_group(spec)));
    const ConditionReport r = check_conditions(q);
    CHECK(r.accepted());
    CHECK(oracle::coherence(q) < 1e-12);
    CHECK(is_regular(q));
  }
}

TEST_CASE("residuals agree with the direct expansions") {
  std::mt19937_64 rng(21);
  const SpacePtr space = make_space(parse_group("S3"));
  for (int s = 0; s < 4; ++s) {
    const Quantizer q = algebra_from_blocks(random_blocks(space, rng));
    CHECK(std::abs(coherence_residual(q) - oracle::coherence(q)) < 1e-10);
    CHECK(oracle::naturality(q) < 1e-12);
    CHECK(naturality_residual(q) < 1e-12);
    CHECK(normalization_residual(q) < 1e-12);
  }
  Quantizer raw{space, oracle::random_element(space->pair(), rng)};
  CHECK(naturality_residual(raw) > 1e-3);
  CHECK(oracle::naturality(raw) > 1e-3);
  CHECK(std::abs(coherence_residual(raw) - oracle::coherence(raw)) < 1e-10);
}

TEST_CASE("blocks survive assembly and extraction") {
  std::mt19937_64 rng(22);
  for (const char* spec : {"S3", "A4", "C2xC3"}) {
    INFO(spec);
    const SpacePtr space = make_space(parse_group(spec));
    const BlockQuantizer b = random_blocks(space, rng);
    const BlockQuantizer back = blocks_from_algebra(algebra_from_blocks(b));
    for (const auto& v : block_variables(*space))
      CHECK(std::abs(variable_value(back, v) - variable_value(b, v)) < 1e-10);
  }
}

TEST_CASE("block and algebra coherence agree") {
  std::mt19937_64 rng(23);
  const SpacePtr space = make_space(parse_group("A4"));
  const BlockQuantizer b = random_blocks(space, rng);
  CHECK(check_coherence_blocks(b).max > 1e-3);
  CHECK(coherence_residual(algebra_from_blocks(b)) > 1e-3);
  const BlockQuantizer one(space);
  CHECK(check_coherence_blocks(one).max < 1e-12);
  const auto [l, r] = coherence_sides(one, 3, 3, 3);
  CHECK((l - r).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gauge action matches its algebra form") {
  std::mt19937_64 rng(24);
  for (const char* spec : {"S3", "A4"}) {
    INFO(spec);
    const SpacePtr space = make_space(parse_group(spec));
    const BlockQuantizer b = random_blocks(space, rng);
    GaugeElement l = GaugeElement::identity(space->rank());
    for (int a = 1; a < space->rank(); ++a) l.l[a] = oracle::random_unit(rng);
    const Element la = gauge_to_algebra(*space, l);
    const BlockQuantizer via_algebra =
        blocks_from_algebra(gauge_apply_algebra(la, algebra_from_blocks(b)));
    const BlockQuantizer direct = gauge_apply(l, b);
    for (const auto& v : block_variables(*space))
      CHECK(std::abs(variable_value(via_algebra, v) - variable_value(direct, v)) < 1e-10);
    const auto scalars = central_scalars(*space, la);
    for (int a = 0; a < space->rank(); ++a) CHECK(std::abs(scalars[a] - l.l[a]) < 1e-12);
    const BlockQuantizer undone = gauge_apply(gauge_inverse(l), direct);
    for (const auto& v : block_variables(*space))
      CHECK(std::abs(variable_value(undone, v) - variable_value(b, v)) < 1e-10);
  }
}

TEST_CASE("non-central units are refused") {
  const SpacePtr space = make_space(parse_group("S3"));
  const Element l = Element::one(space->group()) + Element::delta(space->group(), 1, 0.5);
  CHECK_THROWS_AS(central_scalars(*space, l), Error);
}

TEST_CASE("regularity tracks singular blocks") {
  const SpacePtr space = make_space(parse_group("S3"));
  BlockQuantizer b(space);
  CHECK(is_regular(b));
  b.set_scalar(1, 1, 0, 0.0);
  CHECK_FALSE(is_regular(b));
  CHECK(min_singular_value(b) < 1e-12);
}

TEST_CASE("spaces over large groups stop at the triple cap") {
  const SpacePtr space = make_space(parse_group("S3xS3"));
  CHECK_FALSE(space->has_triple());
  CHECK_THROWS_AS(coherence_residual(Quantizer::trivial(space)), Error);
}

TEST_CASE("the discrete S3 quantizer from row d") {
  const SpacePtr space = make_space(parse_group("S3"));
  BlockQuantizer b(space);
  const auto vars = block_variables(*space);
  const std::vector<cd> row = {0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
  for (size_t v = 0; v < vars.size(); ++v) set_variable(b, vars[v], row[v]);
  const Quantizer q = algebra_from_blocks(b);
  CHECK(check_conditions(q).accepted());
  CHECK(oracle::coherence(q) < 1e-12);
  CHECK(oracle::naturality(q) < 1e-12);
  CHECK_FALSE(is_regular(q));
}

TEST_CASE("a diagonal delta at a non-central element is not natural") {
  const SpacePtr space = make_space(parse_group("S3"));
  const int g = space->group()->index_of("(1,2)");
  const Quantizer q{space, Element::delta(space->pair(), space->pair()->pair(g, g))};
  CHECK(naturality_residual(q) > 0.1);
  CHECK(oracle::naturality(q) > 0.1);
  CHECK_THROWS_AS(blocks_from_algebra(q), Error);
}

TEST_CASE("identity blocks for the trivial A4 quantizer") {
  const SpacePtr space = make_space(parse_group("A4"));
  const BlockQuantizer b = blocks_from_algebra(Quantizer::trivial(space));
  CHECK((b.block(3, 3, 3) - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((algebra_from_blocks(BlockQuantizer(space)).q - Quantizer::trivial(space).q).norm_inf() < 1e-12);
}

TEST_CASE("violating q_11 = q_12^2 shows at the triple (1,1,2)") {
  const SpacePtr space = make_space(parse_group("S3"));
  BlockQuantizer b(space);
  b.set_scalar(1, 1, 0, 2.0);
  const BlockCoherence c = check_coherence_blocks(b);
  CHECK(c.max > 0.1);
  bool seen = false;
  for (const auto& t : c.triples)
    if (t.a == 1 && t.b == 1 && t.c == 2) seen = t.residual > 0.1;
  CHECK(seen);
}

TEST_CASE("explicit gauge moves") {
  const SpacePtr space = make_space(parse_group("S3"));
  const auto vars = block_variables(*space);
  const cd lam(1.5, -0.5);
  BlockQuantizer b(space);
  const std::vector<cd> a1 = {lam * lam, lam, lam, lam, 1.0, 1.0};
  for (size_t v = 0; v < vars.size(); ++v) set_variable(b, vars[v], a1[v]);
  const BlockQuantizer moved = gauge_apply({{1.0, lam, 1.0}}, b);
  const std::vector<cd> a = {1.0, 1.0, 1.0, lam, lam, 1.0};
  for (size_t v = 0; v < vars.size(); ++v) CHECK(std::abs(variable_value(moved, vars[v]) - a[v]) < 1e-12);
  const BlockQuantizer same = gauge_apply(GaugeElement::identity(3), b);
  for (const auto& v : vars) CHECK(variable_value(same, v) == variable_value(b, v));
  CHECK_THROWS_AS(gauge_apply({{1.0, 0.0, 1.0}}, b), Error);

  // l = 2 scales every block by 2 / (2 * 2).
  const Quantizer q = algebra_from_blocks(b);
  const BlockQuantizer half =
      blocks_from_algebra(gauge_apply_algebra(Element::one(space->group()) * cd(2.0), q));
  for (const auto& v : vars) CHECK(std::abs(variable_value(half, v) - 0.5 * variable_value(b, v)) < 1e-12);
}
