#include <catch_amalgamated.hpp>

#include "gquant/repr.hpp"

using namespace gquant;

namespace {

const char* const kGroups[] = {"C1", "C2", "C5", "C2xC2", "C2xC3", "S3", "A4", "S3xC2", "S3xS3"};

cd inner(const Irrep& a, const Irrep& b, int order) {
  cd s = 0.0;
  for (int g = 0; g < order; ++g) s += a.character(g) * std::conj(b.character(g));
  return s / static_cast<double>(order);
}

}  // namespace

TEST_CASE("builtin irreps are unitary irreducible homomorphisms") {
  for (const char* spec : kGroups) {
    INFO(spec);
    const GroupPtr g = parse_group(spec);
    const IrrepsPtr reps = builtin_irreps(g);
    CHECK(static_cast<size_t>(reps->size()) == g->classes().size());
    int sum = 0;
    for (const auto& r : reps->all()) {
      const IrrepCheck c = check_irrep(*g, r);
      CHECK(c.homomorphism < 1e-12);
      CHECK(c.unitarity < 1e-12);
      CHECK(c.irreducibility < 1e-12);
      sum += r.dim * r.dim;
    }
    CHECK(sum == g->order());
    for (int a = 0; a < reps->size(); ++a)
      for (int b = 0; b < reps->size(); ++b)
        CHECK(std::abs(inner((*reps)[a], (*reps)[b], g->order()) - (a == b ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("frozen enumeration of the S3 and A4 duals") {
  const IrrepsPtr s3 = builtin_irreps(parse_group("S3"));
  CHECK(s3->dim(0) == 1);
  CHECK(s3->dim(1) == 1);
  CHECK(s3->dim(2) == 2);
  const GroupPtr g = s3->group();
  CHECK(std::abs((*s3)[1].character(g->index_of("(1,2)")) + 1.0) < 1e-15);

  const IrrepsPtr a4 = builtin_irreps(parse_group("A4"));
  const int c = a4->group()->index_of("(1,2,3)");
  const cd omega = std::polar(1.0, 2 * M_PI / 3);
  CHECK(std::abs((*a4)[1].character(c) - omega) < 1e-12);
  CHECK(std::abs((*a4)[2].character(c) - omega * omega) < 1e-12);
  CHECK(a4->dim(3) == 3);

  const IrrepsPtr c4 = builtin_irreps(parse_group("C4"));
  CHECK(c4->cyclic_orders() == std::vector<int>{4});
  CHECK(std::abs((*c4)[1].character(1) - cd(0, 1)) < 1e-15);
}

TEST_CASE("pair keys round trip") {
  const IrrepsPtr p = builtin_irreps(parse_group("S3xA4"));
  REQUIRE(p->is_product());
  for (int a = 0; a < p->size(); ++a) CHECK(p->from_key(p->key(a)) == a);
  CHECK(p->key(p->pair(2, 3)) == "2,3");
}

TEST_CASE("clebsch-gordan multiplicities agree with character products") {
  for (const char* spec : kGroups) {
    INFO(spec);
    const GroupPtr g = parse_group(spec);
    const IrrepsPtr reps = builtin_irreps(g);
    for (int a = 0; a < reps->size(); ++a)
      for (int b = 0; b < reps->size(); ++b) {
        const auto m = clebsch_gordan(*reps, a, b);
        int dim = 0;
        for (int c = 0; c < reps->size(); ++c) {
          cd s = 0.0;
          for (int x = 0; x < g->order(); ++x)
            s += (*reps)[a].character(x) * (*reps)[b].character(x) *
                 std::conj((*reps)[c].character(x));
          s /= static_cast<double>(g->order());
          CHECK(std::abs(s - static_cast<double>(m[c])) < 1e-10);
          dim += m[c] * reps->dim(c);
        }
        CHECK(dim == reps->dim(a) * reps->dim(b));
      }
  }
}

TEST_CASE("tensor decompositions block-diagonalize") {
  for (const char* spec : {"S3", "A4", "S3xC2"}) {
    INFO(spec);
    const IrrepsPtr reps = builtin_irreps(parse_group(spec));
    const auto dec = make_decompositions(reps);
    for (int a = 0; a < reps->size(); ++a)
      for (int b = 0; b < reps->size(); ++b) {
        const auto& td = dec->at(a, b);
        const int n = reps->dim(a) * reps->dim(b);
        CHECK((td.nu * td.nu.adjoint() - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(decomposition_residual(*reps, td) < 1e-10);
      }
  }
}

TEST_CASE("isotypic projectors are idempotent with the right rank") {
  const IrrepsPtr reps = builtin_irreps(parse_group("A4"));
  const auto rep = tensor_representation(*reps, 3, 3);
  for (int c = 0; c < reps->size(); ++c) {
    const Mat p = isotypic_projector(*reps, rep, c);
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-12);
    const int mult = clebsch_gordan(*reps, 3, 3)[c];
    CHECK(std::abs(p.trace() - cd(mult * reps->dim(c))) < 1e-12);
  }
  const auto reg = regular_representation(*reps->group());
  CHECK(std::abs(isotypic_projector(*reps, reg, 3).trace() - 9.0) < 1e-12);
}

TEST_CASE("recoupling matrices are unitary") {
  const IrrepsPtr reps = builtin_irreps(parse_group("A4"));
  const auto dec = make_decompositions(reps);
  for (int z = 0; z < reps->size(); ++z) {
    const Recoupling r = recoupling(*dec, 3, 3, 3, z);
    const int n = static_cast<int>(r.F.rows());
    REQUIRE(r.F.cols() == n);
    CHECK(static_cast<int>(r.left.size()) == n);
    CHECK((r.F * r.F.adjoint() - Mat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("small cases of the decomposition") {
  const IrrepsPtr c1 = builtin_irreps(parse_group("C1"));
  CHECK(c1->size() == 1);
  const IrrepsPtr s3 = builtin_irreps(parse_group("S3"));
  const auto dec = make_decompositions(s3);
  const auto& t = dec->at(0, 2);
  // nu commutes with the standard representation, so by Schur it is a phase.
  CHECK((t.nu - t.nu(0, 0) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(std::abs(t.nu(0, 0)) - 1.0) < 1e-12);
  CHECK(t.blocks.size() == 1);
  std::vector<int> sizes;
  for (const auto& b : dec->at(2, 2).blocks) sizes.push_back(b.mult * s3->dim(b.gamma));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{1, 1, 2});
  const IrrepsPtr a4 = builtin_irreps(parse_group("A4"));
  const auto& t33 = make_decompositions(a4)->at(3, 3);
  CHECK(t33.multiplicity(3) == 2);
  CHECK(t33.nu.rows() == 9);

  // The trivial projector on the regular representation averages.
  const Mat p = isotypic_projector(*s3, regular_representation(*s3->group()), 0);
  CHECK((p - Mat::Constant(6, 6, 1.0 / 6)).cwiseAbs().maxCoeff() < 1e-12);
}
