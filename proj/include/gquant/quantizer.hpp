#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gquant/fourier.hpp"
#include "gquant/repr.hpp"

namespace gquant {

// Everything a quantizer over G needs: G, G x G, (G x G) x G when it fits
// under the product cap, the irreps and the seeded decompositions.
class QuantizerSpace {
 public:
  const GroupPtr& group() const { return group_; }
  const GroupPtr& pair() const { return pair_; }
  bool has_triple() const { return static_cast<bool>(triple_); }
  const GroupPtr& triple() const;
  const IrrepsPtr& irreps() const { return irreps_; }
  const IrrepsPtr& pair_irreps() const { return pair_irreps_; }
  const DecompositionsPtr& decompositions() const { return dec_; }
  const Decompositions& dec() const { return *dec_; }
  int rank() const { return irreps_->size(); }
  int cg(int a, int b, int c) const { return dec_->cg(a, b, c); }

 private:
  friend std::shared_ptr<const QuantizerSpace> make_space(const GroupPtr&, std::uint64_t);
  GroupPtr group_, pair_, triple_;
  IrrepsPtr irreps_, pair_irreps_;
  DecompositionsPtr dec_;
};

using SpacePtr = std::shared_ptr<const QuantizerSpace>;
SpacePtr make_space(const GroupPtr& g, std::uint64_t seed = kDefaultSeed);

// q in C[G x G].
struct Quantizer {
  SpacePtr space;
  Element q;

  static Quantizer trivial(const SpacePtr& space);
};

// Wraps an element over G x G, building the space from the left factor.
Quantizer make_quantizer(const Element& q, std::uint64_t seed = kDefaultSeed);

// One c x c matrix per (a, b, gamma) with c = c^gamma_{ab} > 0, acting on the
// multiplicity space; the assembled block is nu* ((+) q^gamma (x) I) nu.
class BlockQuantizer {
 public:
  BlockQuantizer() = default;
  explicit BlockQuantizer(SpacePtr space);  // all identity blocks

  const SpacePtr& space() const { return space_; }
  bool has_block(int a, int b, int c) const;
  const Mat& block(int a, int b, int c) const;
  void set_block(int a, int b, int c, const Mat& m);
  void set_scalar(int a, int b, int c, cd v) { set_block(a, b, c, Mat::Constant(1, 1, v)); }
  cd scalar(int a, int b, int c) const { return block(a, b, c)(0, 0); }

 private:
  size_t index(int a, int b, int c) const;
  SpacePtr space_;
  std::vector<Mat> blocks_;
};

// Free entries of a block quantizer: blocks with both a and b nontrivial.
struct BlockVar {
  int a = 0, b = 0, c = 0, i = 0, j = 0;
  bool scalar = true;  // the block is 1 x 1
};
std::vector<BlockVar> block_variables(const QuantizerSpace& space);
// "q_12", "q^0_22", "q^3_33[0,1]".
std::string variable_name(const QuantizerSpace& space, const BlockVar& v);
cd variable_value(const BlockQuantizer& b, const BlockVar& v);
void set_variable(BlockQuantizer& b, const BlockVar& v, cd value);

struct ConditionReport {
  double coherence = 0, naturality = 0, normalization = 0;
  bool accepted(double tol = kTolerance) const {
    return coherence < tol && naturality < tol && normalization < tol;
  }
};

// Residuals are infinity norms of the defect elements in C[G^3], C[G^2], C[G].
ConditionReport check_conditions(const Quantizer& q);
double coherence_residual(const Quantizer& q);
double naturality_residual(const Quantizer& q);
double normalization_residual(const Quantizer& q);

// Fourier image of q over G x G, block (a,b) of size d_a d_b.
FourierImage quantizer_fourier(const Quantizer& q);
BlockQuantizer blocks_from_algebra(const Quantizer& q);
std::vector<Mat> assemble(const BlockQuantizer& b);
Quantizer algebra_from_blocks(const BlockQuantizer& b);

struct TripleResidual {
  int a = 0, b = 0, c = 0;
  double residual = 0;
};
struct BlockCoherence {
  std::vector<TripleResidual> triples;
  double max = 0;
};
BlockCoherence check_coherence_blocks(const BlockQuantizer& b);
// Operators on E_a (x) E_b (x) E_c for both sides of the coherence square.
std::pair<Mat, Mat> coherence_sides(const BlockQuantizer& b, int a, int bb, int c);
double block_normalization_residual(const BlockQuantizer& b);

// Regular means every assembled block is invertible.
double min_singular_value(const BlockQuantizer& b);
bool is_regular(const BlockQuantizer& b, double cutoff = kZeroCutoff);
bool is_regular(const Quantizer& q, double cutoff = kZeroCutoff);

// Central unit in Fourier form: one nonzero scalar per irrep, l[0] = 1.
struct GaugeElement {
  std::vector<cd> l;
  static GaugeElement identity(int rank) { return {std::vector<cd>(rank, 1.0)}; }
};
GaugeElement gauge_compose(const GaugeElement& x, const GaugeElement& y);
GaugeElement gauge_inverse(const GaugeElement& x);
// q^gamma_{ab} -> l_gamma / (l_a l_b) q^gamma_{ab}.
BlockQuantizer gauge_apply(const GaugeElement& l, const BlockQuantizer& b);
// Delta(l) q (l^-1 (x) l^-1) for a central unit l in C[G].
Quantizer gauge_apply_algebra(const Element& l, const Quantizer& q);
Element gauge_to_algebra(const QuantizerSpace& space, const GaugeElement& l);
// Scalars of a central element; throws Capability if l is not central.
std::vector<cd> central_scalars(const QuantizerSpace& space, const Element& l);
Element algebra_inverse(const Element& l);

}  // namespace gquant
