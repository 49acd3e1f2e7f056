#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gquant/linalg.hpp"

namespace gquant {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

enum class GroupKind { Cyclic, Symmetric, Alternating, Product };

// A finite group as an explicit multiplication table. Permutation groups
// enumerate in lexicographic one-line order and compose right to left:
// (ab)(i) = a(b(i)). Product elements are indexed as i*|H| + j.
class FiniteGroup {
 public:
  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mult_[static_cast<size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int element_order(int a) const;

  const std::string& name() const { return name_; }
  GroupKind kind() const { return kind_; }
  int param() const { return param_; }
  const std::string& label(int g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Accepts a label or a decimal index.
  int index_of(const std::string& label) const;

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  bool is_abelian() const;
  bool same_as(const FiniteGroup& other) const { return name_ == other.name_; }

  // Product structure; null for non-products.
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  int pair(int g, int h) const { return g * right_->order() + h; }
  int first(int gh) const { return gh / right_->order(); }
  int second(int gh) const { return gh % right_->order(); }

  // One-line images (0-based) for permutation groups.
  const std::vector<int>& permutation(int g) const { return perms_[g]; }

  // Exhaustive associativity and Latin-square checks.
  bool verify_axioms() const;

 private:
  friend GroupPtr make_cyclic(int);
  friend GroupPtr make_permutation_group(int, bool);
  friend GroupPtr make_product(const GroupPtr&, const GroupPtr&);

  void finish(bool permutation_reps);

  std::string name_;
  GroupKind kind_ = GroupKind::Cyclic;
  int param_ = 0;
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> mult_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> perms_;
  GroupPtr left_, right_;
};

inline constexpr int kMaxBaseOrder = 120;
inline constexpr int kMaxCyclic = 24;
inline constexpr int kMaxPermDegree = 5;
inline constexpr int kMaxProductOrder = 1728;

GroupPtr make_cyclic(int n);
GroupPtr make_symmetric(int n);
GroupPtr make_alternating(int n);
GroupPtr make_permutation_group(int n, bool even_only);
GroupPtr make_product(const GroupPtr& g, const GroupPtr& h);
GroupPtr make_power(const GroupPtr& g, int k);

// "S3", "A4", "C6", "C2xC2", "S3xS3", "(C2xC2)xC3".
GroupPtr parse_group(const std::string& spec);

// Cycle notation with 1-based points, e.g. "()", "(1,2)", "(1,2)(3,4)".
std::string cycle_notation(const std::vector<int>& perm);

// Complex coefficient vector over a group; multiplication is convolution.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement() = default;
  explicit GroupAlgebraElement(GroupPtr g);
  GroupAlgebraElement(GroupPtr g, std::vector<cd> coeffs);

  static GroupAlgebraElement one(const GroupPtr& g);
  static GroupAlgebraElement delta(const GroupPtr& g, int element, cd value = 1.0);

  const GroupPtr& group() const { return group_; }
  const std::vector<cd>& coeffs() const { return coeffs_; }
  cd operator[](int g) const { return coeffs_[g]; }
  cd& operator[](int g) { return coeffs_[g]; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator*(cd s) const;

  double norm_inf() const;

 private:
  void require_same(const GroupAlgebraElement& o) const;
  GroupPtr group_;
  std::vector<cd> coeffs_;
};

using Element = GroupAlgebraElement;

Element algebra_multiply(const Element& a, const Element& b);
// delta_g -> delta_(g,g) in C[target], target = G x G.
Element diagonal_embed(const Element& a, const GroupPtr& target);
// (a (x) b)(g,h) = a(g) b(h) in C[target].
Element tensor_embed(const Element& a, const Element& b, const GroupPtr& target);

// Maps used by the coherence condition, from C[GxG] into C[GxGxG]
// where the triple group is (GxG)xG.
enum class TripleEmbedding {
  OneDelta,   // (g,h) -> (g,h,h)
  DeltaOne,   // (g,h) -> (g,g,h)
  OneTensor,  // (g,h) -> (e,g,h)
  TensorOne,  // (g,h) -> (g,h,e)
};
Element triple_embed(const Element& q, const GroupPtr& triple, TripleEmbedding how);

}  // namespace gquant
