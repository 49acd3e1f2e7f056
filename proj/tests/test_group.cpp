#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "gquant/errors.hpp"
#include "gquant/group.hpp"
#include "oracles.hpp"

using namespace gquant;

TEST_CASE("permutation groups compose right to left") {
  for (const char* spec : {"S3", "A4", "S4", "A5"}) {
    const GroupPtr g = parse_group(spec);
    REQUIRE(g->verify_axioms());
    for (int a = 0; a < g->order(); ++a)
      for (int b = 0; b < g->order(); ++b) {
        const auto& pa = g->permutation(a);
        const auto& pb = g->permutation(b);
        const auto& pab = g->permutation(g->mul(a, b));
        for (size_t i = 0; i < pa.size(); ++i) REQUIRE(pab[i] == pa[pb[i]]);
      }
  }
}

TEST_CASE("orders and class sizes") {
  const auto sizes = [](const GroupPtr& g) {
    std::vector<size_t> s;
    for (const auto& c : g->classes()) s.push_back(c.size());
    std::sort(s.begin(), s.end());
    return s;
  };
  CHECK(parse_group("S3")->order() == 6);
  CHECK(sizes(parse_group("S3")) == std::vector<size_t>{1, 2, 3});
  CHECK(parse_group("A4")->order() == 12);
  CHECK(sizes(parse_group("A4")) == std::vector<size_t>{1, 3, 4, 4});
  CHECK(sizes(parse_group("S4")) == std::vector<size_t>{1, 3, 6, 6, 8});
  CHECK(parse_group("C2xC2")->order() == 4);
  CHECK(parse_group("S3xS3")->classes().size() == 9);
  CHECK(parse_group("C6")->is_abelian());
  CHECK_FALSE(parse_group("A4")->is_abelian());
}

TEST_CASE("labels use one-based cycle notation") {
  const GroupPtr g = parse_group("S3");
  CHECK(g->label(g->identity()) == "()");
  CHECK(cycle_notation({1, 0, 2}) == "(1,2)");
  CHECK(cycle_notation({1, 0, 3, 2}) == "(1,2)(3,4)");
  for (int x = 0; x < g->order(); ++x) CHECK(g->index_of(g->label(x)) == x);
  CHECK(g->index_of("3") == 3);
  CHECK_THROWS_AS(g->index_of("(1,4)"), Error);
}

TEST_CASE("products multiply componentwise") {
  const GroupPtr s3 = parse_group("S3"), p = parse_group("S3xC2");
  REQUIRE(p->order() == 12);
  for (int a = 0; a < p->order(); ++a)
    for (int b = 0; b < p->order(); ++b) {
      const int ab = p->mul(a, b);
      CHECK(p->first(ab) == s3->mul(p->first(a), p->first(b)));
      CHECK(p->second(ab) == (p->second(a) + p->second(b)) % 2);
    }
}

TEST_CASE("bad specs and caps are reported by kind") {
  const auto kind = [](const char* spec) {
    try {
      parse_group(spec);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("no error for " << spec);
    return ErrorKind::Parse;
  };
  CHECK(kind("Q8") == ErrorKind::Parse);
  CHECK(kind("S") == ErrorKind::Parse);
  CHECK(kind("S6") == ErrorKind::Capacity);
  CHECK(kind("C30") == ErrorKind::Capacity);
  CHECK(kind("S5xS5") == ErrorKind::Capacity);
}

TEST_CASE("group algebra multiplication is convolution") {
  const GroupPtr g = parse_group("A4");
  std::mt19937_64 rng(3);
  const Element a = oracle::random_element(g, rng), b = oracle::random_element(g, rng);
  const Element ab = a * b;
  for (int z = 0; z < g->order(); ++z) {
    cd s = 0.0;
    for (int x = 0; x < g->order(); ++x) s += a[x] * b[g->mul(g->inv(x), z)];
    CHECK(std::abs(ab[z] - s) < 1e-12);
  }
  CHECK((Element::one(g) * a - a).norm_inf() < 1e-15);
  CHECK((Element::delta(g, 4) * Element::delta(g, 7) - Element::delta(g, g->mul(4, 7))).norm_inf() == 0);
}

TEST_CASE("class representatives of S3 and A4") {
  const auto reps = [](const char* spec) {
    const GroupPtr g = parse_group(spec);
    std::set<std::string> out;
    for (const auto& c : g->classes()) {
      // The lexicographically smallest label stands for the class.
      std::vector<std::string> labels;
      for (int x : c) labels.push_back(g->label(x));
      out.insert(*std::min_element(labels.begin(), labels.end()));
    }
    return out;
  };
  CHECK(reps("S3") == std::set<std::string>{"()", "(1,2)", "(1,2,3)"});
  CHECK(reps("A4") == std::set<std::string>{"()", "(1,2)(3,4)", "(1,2,3)", "(1,2,4)"});
  const GroupPtr c1 = parse_group("C1");
  CHECK(c1->order() == 1);
  CHECK(c1->verify_axioms());
}

TEST_CASE("sum of all elements squares to a multiple of itself") {
  const GroupPtr g = parse_group("S3");
  Element s(g);
  for (int x = 0; x < g->order(); ++x) s[x] = 1.0;
  CHECK((s * s - s * cd(6.0)).norm_inf() == 0);
  CHECK_THROWS_AS(s * Element::one(parse_group("C6")), Error);
}

TEST_CASE("embeddings into products") {
  const GroupPtr g = parse_group("S3");
  const GroupPtr gg = make_product(g, g);
  const Element one = Element::one(g);
  CHECK((tensor_embed(one, one, gg) - Element::one(gg)).norm_inf() == 0);
  CHECK((tensor_embed(Element::delta(g, 2), Element::delta(g, 5), gg) - Element::delta(gg, gg->pair(2, 5)))
            .norm_inf() == 0);
  CHECK((diagonal_embed(Element::delta(g, 4), gg) - Element::delta(gg, gg->pair(4, 4))).norm_inf() == 0);
  const GroupPtr ggg = make_product(gg, g);
  const Element q = Element::one(gg);
  const Element l = triple_embed(q, ggg, TripleEmbedding::OneDelta) * triple_embed(q, ggg, TripleEmbedding::OneTensor);
  CHECK((l - Element::one(ggg)).norm_inf() == 0);
}
