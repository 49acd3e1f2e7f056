#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gquant/lattice.hpp"
#include "gquant/quantizer.hpp"

namespace gquant {

// How the two sides of the coherence square are compared blockwise.
//   Exact:  through the recoupling matrix F between the two path bases, which
//           is what check_coherence_blocks computes.
//   Strict: paths identified in enumeration order (F replaced by the
//           identity), the reading used in the hand derivation of the
//           triple-product relations.
enum class RelationModel { Exact, Strict };

const char* model_name(RelationModel m);
RelationModel parse_model(const std::string& s);

// Monomial: sorted variable ids with repetition.
using Monomial = std::vector<int>;

struct Polynomial {
  std::map<Monomial, cd> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const Monomial& m, cd c);
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial scaled(cd s) const;
  void prune(double tol);
  cd evaluate(const std::vector<cd>& values) const;
};

struct Equation {
  int a = 0, b = 0, c = 0, z = 0;  // triple and target irrep
  Polynomial poly;                  // poly = 0
};

// All entries of LHS F - F RHS over every triple and target, symbolically in
// the free block entries (block_variables order).
std::vector<Equation> coherence_equations(const QuantizerSpace& space, RelationModel model,
                                          double tol = kTolerance);

// Maximum |poly| over all equations at the given blocks.
double equation_residual(const std::vector<Equation>& eqs, const BlockQuantizer& b);

struct BinomialRelation {
  std::vector<long long> exponents;  // x^{v+} = coef x^{v-}
  cd coef = 1.0;
};

struct RelationSet {
  RelationModel model = RelationModel::Exact;
  std::vector<BlockVar> vars;
  std::vector<std::string> names;
  // Deduplicated equations, each scaled so its leading coefficient is 1.
  std::vector<Equation> raw;
  // Lattice of binomial relations holding when every variable is nonzero,
  // restricted to relations whose exponents involve only 1 x 1 blocks.
  std::vector<BinomialRelation> reduced;
  bool torus_consistent = true;
};

RelationSet extract_relations(const QuantizerSpace& space, RelationModel model);

// Hand-derived relation sets for S3 (three relations) and A4 (ten chained
// lines, expanded to twelve binomials), over the variables of `vars`.
std::optional<std::vector<BinomialRelation>> reference_relations(const QuantizerSpace& space,
                                                                 const std::vector<BlockVar>& vars);

// Two binomial systems compared as lattices and by substitution: points
// sampled on the torus of one system are plugged into every relation of the
// other, in both directions.
struct RelationComparison {
  bool same_lattice = false;
  bool consistent = false;   // both systems have solutions with nonzero entries
  int samples = 0;           // per relation and direction
  double forward = 0;        // worst defect of `reference` on points of `ours`
  double backward = 0;       // worst defect of `ours` on points of `reference`
  std::vector<double> per_reference;  // forward defect per reference relation
  bool agree(double tol = 1e-9) const {
    return same_lattice && consistent && forward < tol && backward < tol;
  }
};
RelationComparison compare_relations(const std::vector<BinomialRelation>& ours,
                                     const std::vector<BinomialRelation>& reference, int nvars,
                                     int samples = 50, std::uint64_t seed = kDefaultSeed);

// |x^{v+} - coef x^{v-}| relative to the size of the two sides.
double binomial_defect(const BinomialRelation& r, const std::vector<cd>& x);

std::string render_monomial(const Monomial& m, const std::vector<std::string>& names);
std::string render_equation(const Equation& e, const std::vector<std::string>& names);
std::string render_binomial(const BinomialRelation& r, const std::vector<std::string>& names);

}  // namespace gquant
