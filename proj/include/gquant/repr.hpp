#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gquant/group.hpp"

namespace gquant {

struct Irrep {
  int index = 0;
  int dim = 1;
  std::string name;
  std::vector<Mat> matrices;  // D(g) per group element

  cd character(int g) const { return matrices[g].trace(); }
};

// The frozen enumeration of the dual of a group.
//   cyclic Cn:           chi_k(j) = exp(2 pi i jk/n), k = 0..n-1
//   products:            pairs (a,b) at index a*|right| + b
//   S3:                  trivial, sign, standard
//   A4:                  trivial, chi1, chi2 = chi1^2, three-dimensional
// chi1 sends (1,2,3) to omega = exp(2 pi i/3).
class IrrepSet {
 public:
  const GroupPtr& group() const { return group_; }
  int size() const { return static_cast<int>(irreps_.size()); }
  const Irrep& operator[](int a) const { return irreps_[a]; }
  int dim(int a) const { return irreps_[a].dim; }
  const std::vector<Irrep>& all() const { return irreps_; }
  int trivial() const { return 0; }

  // Product structure, mirroring the group.
  bool is_product() const { return static_cast<bool>(left_); }
  const std::shared_ptr<const IrrepSet>& left() const { return left_; }
  const std::shared_ptr<const IrrepSet>& right() const { return right_; }
  int pair(int a, int b) const { return a * right_->size() + b; }
  int first(int ab) const { return ab / right_->size(); }
  int second(int ab) const { return ab % right_->size(); }

  // Exponent tuples when the group is a product of cyclics, else empty.
  const std::vector<int>& cyclic_orders() const { return cyclic_orders_; }
  const std::vector<int>& exponents(int a) const { return exponents_[a]; }

  // Label used in files: "2" or "1,2" for pair groups.
  std::string key(int a) const;
  int from_key(const std::string& key) const;

 private:
  friend std::shared_ptr<const IrrepSet> builtin_irreps(const GroupPtr&);
  GroupPtr group_;
  std::vector<Irrep> irreps_;
  std::shared_ptr<const IrrepSet> left_, right_;
  std::vector<int> cyclic_orders_;
  std::vector<std::vector<int>> exponents_;
};

using IrrepsPtr = std::shared_ptr<const IrrepSet>;

IrrepsPtr builtin_irreps(const GroupPtr& g);

// Maximum homomorphism, unitarity and irreducibility defects.
struct IrrepCheck {
  double homomorphism = 0, unitarity = 0, irreducibility = 0;
};
IrrepCheck check_irrep(const FiniteGroup& g, const Irrep& rep);

// chars[a][c] = chi_a(representative of class c).
std::vector<std::vector<cd>> character_table(const IrrepSet& reps);

// c^gamma_{ab} for every gamma; throws Numerical if rounding is not clean.
std::vector<int> clebsch_gordan(const IrrepSet& reps, int a, int b);

// (d/|G|) sum_g conj(chi_gamma(g)) D(g) for a representation D of the group.
Mat isotypic_projector(const IrrepSet& reps, const std::vector<Mat>& rep, int gamma);

// Regular representation of the group as permutation matrices.
std::vector<Mat> regular_representation(const FiniteGroup& g);
// D^a(g) (x) D^b(g) for every g.
std::vector<Mat> tensor_representation(const IrrepSet& reps, int a, int b);

struct IsotypicBlock {
  int gamma = 0;
  int mult = 0;
  int offset = 0;  // first row of this block inside nu
};

// nu is unitary of size d_a d_b; rows are grouped per gamma as
// (copy, internal index), and nu (D^a (x) D^b) nu* = (+) I_c (x) D^gamma.
struct TensorDecomposition {
  int alpha = 0, beta = 0;
  std::vector<IsotypicBlock> blocks;
  Mat nu;

  int multiplicity(int gamma) const;
  const IsotypicBlock* block(int gamma) const;
  // d_a d_b x d_gamma embedding of copy `copy` of E_gamma.
  Mat embedding(int gamma, int copy, int dim_gamma) const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

TensorDecomposition tensor_decomposition(const IrrepSet& reps, int a, int b,
                                         std::uint64_t seed = kDefaultSeed);
// Max over g of the block-structure defect.
double decomposition_residual(const IrrepSet& reps, const TensorDecomposition& td);

// All pairwise decompositions, with multiplicity bases made canonical where
// an intrinsic choice exists (see recoupling-based rule in repr.cpp).
class Decompositions {
 public:
  const IrrepsPtr& irreps() const { return reps_; }
  std::uint64_t seed() const { return seed_; }
  const TensorDecomposition& at(int a, int b) const {
    return table_[static_cast<size_t>(a) * reps_->size() + b];
  }
  int cg(int a, int b, int c) const { return at(a, b).multiplicity(c); }

 private:
  friend std::shared_ptr<const Decompositions> make_decompositions(const IrrepsPtr&,
                                                                   std::uint64_t);
  IrrepsPtr reps_;
  std::uint64_t seed_ = kDefaultSeed;
  std::vector<TensorDecomposition> table_;
};

using DecompositionsPtr = std::shared_ptr<const Decompositions>;
DecompositionsPtr make_decompositions(const IrrepsPtr& reps, std::uint64_t seed = kDefaultSeed);

// A path through E_a (x) E_b (x) E_c ending in copy `j` of E_z:
// left paths go via copy i of E_eta in E_b (x) E_c, right paths via copy i of
// E_xi in E_a (x) E_b. Paths are enumerated by (mid irrep, i, j) ascending.
struct RecouplingPath {
  int mid = 0, i = 0, j = 0;
};

struct Recoupling {
  std::vector<RecouplingPath> left, right;
  Mat F;  // <left path | right path>, unitary
};

Recoupling recoupling(const Decompositions& dec, int a, int b, int c, int z);

}  // namespace gquant
