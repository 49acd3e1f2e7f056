#include <catch_amalgamated.hpp>

#include <random>

#include "gquant/classify.hpp"
#include "gquant/lattice.hpp"
#include "gquant/relations.hpp"
#include "oracles.hpp"

using namespace gquant;

namespace {

// Exponents add modulo the order on a cyclic dual.
int dual_index(const IrrepSet& reps, int a, int b) { return (a + b) % reps.size(); }

std::vector<std::string> rendered(const RelationSet& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs.reduced) out.push_back(render_binomial(r, rs.names));
  return out;
}

}  // namespace

TEST_CASE("smith normal form") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int s = 0; s < 20; ++s) {
    IntMat a(3, std::vector<long long>(4));
    for (auto& r : a)
      for (auto& x : r) x = d(rng);
    const SmithForm f = smith_normal_form(a);
    CHECK(int_multiply(int_multiply(f.U, a), f.V) == f.D);
    CHECK(f.rank == int_rank(a));
    for (int i = 0; i + 1 < f.rank; ++i) CHECK(f.D[i + 1][i + 1] % f.D[i][i] == 0);
  }
}

TEST_CASE("binomial solutions satisfy their equations") {
  // x0^2 = x1 x2, x1 = -x2, x0 x3 = 2
  const IntMat rows = {{2, -1, -1, 0}, {0, 1, -1, 0}, {1, 0, 0, 1}};
  const std::vector<cd> beta = {1.0, -1.0, 2.0};
  const TorusSolution t = solve_binomials(rows, beta, 4);
  REQUIRE(t.consistent);
  CHECK(t.params() == 1);
  std::mt19937_64 rng(32);
  for (int b = 0; b < static_cast<int>(t.branches.size()); ++b) {
    const auto x = t.point(b, {oracle::random_unit(rng)});
    CHECK(std::abs(x[0] * x[0] - x[1] * x[2]) < 1e-12);
    CHECK(std::abs(x[1] + x[2]) < 1e-12);
    CHECK(std::abs(x[0] * x[3] - 2.0) < 1e-12);
    std::vector<cd> params;
    CHECK(t.locate(x, &params) == b);
  }
  CHECK_FALSE(solve_binomials({{1, 0}, {2, 0}}, {1.0, 2.0}, 2).consistent);
}

TEST_CASE("lattice comparison") {
  const IntMat a = {{1, -1, 0}, {0, 1, -1}};
  const IntMat b = {{1, 0, -1}, {0, 1, -1}};
  CHECK(same_row_lattice(a, b, 3));
  CHECK_FALSE(same_row_lattice(a, {{2, -2, 0}, {0, 1, -1}}, 3));
}

TEST_CASE("S3 relations") {
  const SpacePtr space = make_space(parse_group("S3"));
  const RelationSet strict = extract_relations(*space, RelationModel::Strict);
  CHECK(strict.names == std::vector<std::string>{"q_11", "q_12", "q_21", "q^0_22", "q^1_22", "q^2_22"});
  CHECK(rendered(strict) ==
        std::vector<std::string>{"q_11 = (q_12)^2", "q_12 = q_21", "q_21 q^1_22 = q^0_22"});
  CHECK(strict.torus_consistent);

  const RelationSet exact = extract_relations(*space, RelationModel::Exact);
  const auto ex = rendered(exact);
  CHECK(ex.size() == 4);
  CHECK(std::find(ex.begin(), ex.end(), "q^0_22 = (q^2_22)^2") != ex.end());

  const auto ref = reference_relations(*space, strict.vars);
  REQUIRE(ref);
  CHECK(compare_relations(strict.reduced, *ref, 6).agree());
  // The exact relations imply the reference ones but not conversely.
  const auto cmp = compare_relations(exact.reduced, *ref, 6);
  CHECK_FALSE(cmp.same_lattice);
  CHECK(cmp.forward < 1e-9);
  CHECK(cmp.backward > 1e-3);
}

TEST_CASE("A4 relations generate the reference lattice") {
  const SpacePtr space = make_space(parse_group("A4"));
  for (auto model : {RelationModel::Strict, RelationModel::Exact}) {
    const RelationSet rs = extract_relations(*space, model);
    CHECK(rs.vars.size() == 15);
    const auto ref = reference_relations(*space, rs.vars);
    REQUIRE(ref);
    CHECK(ref->size() == 12);
    CHECK(compare_relations(rs.reduced, *ref, 15).agree());
  }
  CHECK_FALSE(reference_relations(*make_space(parse_group("C3")), {}).has_value());
}

TEST_CASE("exact equations vanish exactly on coherent blocks") {
  std::mt19937_64 rng(33);
  for (const char* spec : {"S3", "A4"}) {
    INFO(spec);
    const SpacePtr space = make_space(parse_group(spec));
    const auto eqs = coherence_equations(*space, RelationModel::Exact);
    const Classification c = classify(space, RelationModel::Exact, {.verify = false});
    for (const auto& f : c.families) {
      std::vector<cd> t(f.params());
      for (auto& x : t) x = oracle::random_unit(rng);
      const BlockQuantizer b = family_instance(c, f, t);
      CHECK(equation_residual(eqs, b) < 1e-10);
      CHECK(check_coherence_blocks(b).max < 1e-10);
    }
    BlockQuantizer junk(space);
    for (const auto& v : block_variables(*space)) set_variable(junk, v, oracle::random_unit(rng));
    CHECK(equation_residual(eqs, junk) > 1e-3);
  }
}

TEST_CASE("model names") {
  CHECK(parse_model("exact") == RelationModel::Exact);
  CHECK(parse_model("strict") == RelationModel::Strict);
  CHECK(std::string(model_name(RelationModel::Strict)) == "strict");
  CHECK_THROWS(parse_model("loose"));
}

TEST_CASE("cyclic relations are the cocycle identities") {
  std::mt19937_64 rng(34);
  const SpacePtr space = make_space(parse_group("C4"));
  const RelationSet rs = extract_relations(*space, RelationModel::Exact);
  const auto& reps = *space->irreps();
  // Every coboundary table satisfies the extracted relations.
  std::vector<cd> l(4, 1.0);
  for (int a = 1; a < 4; ++a) l[a] = oracle::random_unit(rng);
  std::vector<cd> x;
  for (const auto& v : rs.vars) x.push_back(l[v.c] / (l[v.a] * l[v.b]));
  for (const auto& r : rs.reduced) CHECK(binomial_defect(r, x) < 1e-12);
  // Points of the relation torus are cocycles.
  IntMat rows;
  std::vector<cd> beta;
  for (const auto& r : rs.reduced) {
    rows.push_back(r.exponents);
    beta.push_back(r.coef);
  }
  const TorusSolution t = solve_binomials(rows, beta, static_cast<int>(rs.vars.size()));
  std::vector<cd> params(t.params());
  for (auto& p : params) p = oracle::random_unit(rng);
  const auto pt = t.point(0, params);
  std::vector<std::vector<cd>> z(4, std::vector<cd>(4, 1.0));
  for (size_t v = 0; v < rs.vars.size(); ++v) z[rs.vars[v].a][rs.vars[v].b] = pt[v];
  double worst = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const int ab = dual_index(reps, a, b), bc = dual_index(reps, b, c);
        worst = std::max(worst, std::abs(z[ab][c] * z[a][b] - z[a][bc] * z[b][c]));
      }
  CHECK(worst < 1e-10);
}
