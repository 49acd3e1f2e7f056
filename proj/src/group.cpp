#include "gquant/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <tuple>

#include "gquant/errors.hpp"

namespace gquant {

namespace {

std::vector<int> moved_points(const std::vector<int>& p) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) out.push_back(i);
  return out;
}

}  // namespace

std::string cycle_notation(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    out += "(";
    size_t i = start;
    bool first = true;
    while (!seen[i]) {
      seen[i] = true;
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
      i = perm[i];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

int FiniteGroup::element_order(int a) const {
  int k = 1, x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

int FiniteGroup::index_of(const std::string& label) const {
  for (int g = 0; g < order_; ++g)
    if (labels_[g] == label) return g;
  if (!label.empty() && std::all_of(label.begin(), label.end(),
                                    [](unsigned char c) { return std::isdigit(c); })) {
    int g = std::stoi(label);
    if (g < order_) return g;
  }
  fail(ErrorKind::Parse, "unknown element '" + label + "' in group " + name_);
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::verify_axioms() const {
  const int n = order_;
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      row[mul(a, b)] = true;
      col[mul(b, a)] = true;
    }
    if (std::count(row.begin(), row.end(), true) != n) return false;
    if (std::count(col.begin(), col.end(), true) != n) return false;
    if (mul(identity_, a) != a || mul(a, identity_) != a) return false;
    if (mul(a, inv(a)) != identity_ || mul(inv(a), a) != identity_) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = mul(a, b);
      for (int c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

void FiniteGroup::finish(bool permutation_reps) {
  const int n = order_;
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) identity_ = e;
  }
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == identity_) inv_[a] = b;

  class_of_.assign(n, -1);
  std::vector<std::vector<int>> classes;
  for (int g = 0; g < n; ++g) {
    if (class_of_[g] >= 0) continue;
    std::vector<int> cls;
    for (int x = 0; x < n; ++x) {
      int c = mul(mul(x, g), inv_[x]);
      if (class_of_[c] < 0) {
        class_of_[c] = 0;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(cls);
  }

  // Representative first inside each class. For permutations prefer the
  // element supported on the smallest points, then the smallest label, so
  // that S3 gives (1,2) and A4 gives (1,2,3) and (1,3,2).
  auto rep_key = [&](int g) {
    if (permutation_reps) return std::make_tuple(moved_points(perms_[g]), labels_[g], g);
    return std::make_tuple(std::vector<int>{}, std::string{}, g);
  };
  for (auto& cls : classes) {
    auto best = std::min_element(cls.begin(), cls.end(),
                                 [&](int a, int b) { return rep_key(a) < rep_key(b); });
    std::rotate(cls.begin(), best, best + 1);
  }
  std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
    if (!permutation_reps) return a.front() < b.front();
    int oa = element_order(a.front()), ob = element_order(b.front());
    if (oa != ob) return oa < ob;
    return rep_key(a.front()) < rep_key(b.front());
  });
  for (size_t c = 0; c < classes.size(); ++c)
    for (int g : classes[c]) class_of_[g] = static_cast<int>(c);
  classes_ = std::move(classes);
}

GroupPtr make_cyclic(int n) {
  if (n < 1) fail(ErrorKind::Parse, "cyclic order must be positive");
  if (n > kMaxCyclic)
    fail(ErrorKind::Capacity, "cyclic order " + std::to_string(n) + " exceeds cap " +
                                  std::to_string(kMaxCyclic));
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->name_ = "C" + std::to_string(n);
  g->kind_ = GroupKind::Cyclic;
  g->param_ = n;
  g->order_ = n;
  g->mult_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    g->labels_.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) g->mult_[static_cast<size_t>(a) * n + b] = (a + b) % n;
  }
  g->finish(false);
  return g;
}

GroupPtr make_permutation_group(int n, bool even_only) {
  if (n < 1) fail(ErrorKind::Parse, "degree must be positive");
  if (n > kMaxPermDegree)
    fail(ErrorKind::Capacity, "degree " + std::to_string(n) + " exceeds cap " +
                                  std::to_string(kMaxPermDegree));
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->name_ = (even_only ? "A" : "S") + std::to_string(n);
  g->kind_ = even_only ? GroupKind::Alternating : GroupKind::Symmetric;
  g->param_ = n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    if (!even_only || inversions % 2 == 0) g->perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(g->perms_.size());
  g->order_ = order;
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) {
    index[g->perms_[i]] = i;
    g->labels_.push_back(cycle_notation(g->perms_[i]));
  }
  g->mult_.resize(static_cast<size_t>(order) * order);
  std::vector<int> c(n);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      for (int i = 0; i < n; ++i) c[i] = g->perms_[a][g->perms_[b][i]];
      g->mult_[static_cast<size_t>(a) * order + b] = index.at(c);
    }
  g->finish(true);
  return g;
}

GroupPtr make_symmetric(int n) { return make_permutation_group(n, false); }
GroupPtr make_alternating(int n) { return make_permutation_group(n, true); }

GroupPtr make_product(const GroupPtr& a, const GroupPtr& b) {
  const long order = static_cast<long>(a->order()) * b->order();
  if (order > kMaxProductOrder)
    fail(ErrorKind::Capacity, "product order " + std::to_string(order) + " exceeds cap " +
                                  std::to_string(kMaxProductOrder));
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  const bool wrap = b->kind() == GroupKind::Product;
  g->name_ = a->name() + "x" + (wrap ? "(" + b->name() + ")" : b->name());
  g->kind_ = GroupKind::Product;
  g->order_ = static_cast<int>(order);
  g->left_ = a;
  g->right_ = b;
  const int n = g->order_, m = b->order();
  g->mult_.resize(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    g->labels_.push_back("(" + a->label(x / m) + "," + b->label(x % m) + ")");
    for (int y = 0; y < n; ++y)
      g->mult_[static_cast<size_t>(x) * n + y] =
          a->mul(x / m, y / m) * m + b->mul(x % m, y % m);
  }
  g->finish(false);
  return g;
}

GroupPtr make_power(const GroupPtr& g, int k) {
  GroupPtr out = g;
  for (int i = 1; i < k; ++i) out = make_product(out, g);
  return out;
}

namespace {

struct SpecParser {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void bad(const std::string& why) const {
    fail(ErrorKind::Parse, "bad group spec '" + s + "': " + why);
  }

  GroupPtr expr() {
    GroupPtr g = term();
    while (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
      ++pos;
      g = make_product(g, term());
    }
    return g;
  }

  GroupPtr term() {
    if (pos >= s.size()) bad("unexpected end");
    if (s[pos] == '(') {
      ++pos;
      GroupPtr g = expr();
      if (pos >= s.size() || s[pos] != ')') bad("missing ')'");
      ++pos;
      return g;
    }
    char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
    if (kind == 'Z') kind = 'C';
    if (kind != 'C' && kind != 'S' && kind != 'A') bad("expected C, S, A or Z");
    ++pos;
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) bad("missing size");
    if (pos - start > 4) bad("size too long");
    int n = std::stoi(s.substr(start, pos - start));
    if (kind == 'C') return make_cyclic(n);
    if (kind == 'S') return make_symmetric(n);
    return make_alternating(n);
  }
};

}  // namespace

GroupPtr parse_group(const std::string& spec) {
  std::string compact;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty()) fail(ErrorKind::Parse, "empty group spec");
  SpecParser p{compact};
  GroupPtr g = p.expr();
  if (p.pos != compact.size()) p.bad("trailing characters");
  return g;
}

// ---- group algebra ----

GroupAlgebraElement::GroupAlgebraElement(GroupPtr g)
    : group_(std::move(g)), coeffs_(group_->order(), 0.0) {}

GroupAlgebraElement::GroupAlgebraElement(GroupPtr g, std::vector<cd> coeffs)
    : group_(std::move(g)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != group_->order())
    fail(ErrorKind::Structural, "coefficient vector length does not match group order");
}

GroupAlgebraElement GroupAlgebraElement::one(const GroupPtr& g) {
  return delta(g, g->identity());
}

GroupAlgebraElement GroupAlgebraElement::delta(const GroupPtr& g, int element, cd value) {
  GroupAlgebraElement e(g);
  e.coeffs_.at(element) = value;
  return e;
}

void GroupAlgebraElement::require_same(const GroupAlgebraElement& o) const {
  if (!group_ || !o.group_ || !group_->same_as(*o.group_))
    fail(ErrorKind::Structural, "group algebra elements live over different groups");
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
  require_same(o);
  GroupAlgebraElement r = *this;
  for (int i = 0; i < size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
  require_same(o);
  GroupAlgebraElement r = *this;
  for (int i = 0; i < size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(cd s) const {
  GroupAlgebraElement r = *this;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  require_same(o);
  const FiniteGroup& g = *group_;
  GroupAlgebraElement r(group_);
  std::vector<int> nz;
  for (int y = 0; y < o.size(); ++y)
    if (o.coeffs_[y] != 0.0) nz.push_back(y);
  // Ascending index order in both loops keeps the summation order fixed.
  for (int x = 0; x < size(); ++x) {
    const cd a = coeffs_[x];
    if (a == 0.0) continue;
    for (int y : nz) r.coeffs_[g.mul(x, y)] += a * o.coeffs_[y];
  }
  return r;
}

double GroupAlgebraElement::norm_inf() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Element algebra_multiply(const Element& a, const Element& b) { return a * b; }

namespace {

void require_square_of(const GroupPtr& target, const GroupPtr& base) {
  if (target->kind() != GroupKind::Product || !target->left()->same_as(*base) ||
      !target->right()->same_as(*base))
    fail(ErrorKind::Structural,
         "target " + target->name() + " is not the square of " + base->name());
}

}  // namespace

Element diagonal_embed(const Element& a, const GroupPtr& target) {
  require_square_of(target, a.group());
  Element r(target);
  for (int g = 0; g < a.size(); ++g) r[target->pair(g, g)] = a[g];
  return r;
}

Element tensor_embed(const Element& a, const Element& b, const GroupPtr& target) {
  if (!a.group()->same_as(*b.group()))
    fail(ErrorKind::Structural, "tensor_embed needs elements over the same group");
  require_square_of(target, a.group());
  Element r(target);
  for (int g = 0; g < a.size(); ++g) {
    if (a[g] == 0.0) continue;
    for (int h = 0; h < b.size(); ++h) r[target->pair(g, h)] = a[g] * b[h];
  }
  return r;
}

Element triple_embed(const Element& q, const GroupPtr& triple, TripleEmbedding how) {
  const GroupPtr& pair = q.group();
  if (pair->kind() != GroupKind::Product || triple->kind() != GroupKind::Product ||
      !triple->left()->same_as(*pair) || !triple->right()->same_as(*pair->left()))
    fail(ErrorKind::Structural, "triple group does not match the pair group");
  const int e = pair->left()->identity();
  Element r(triple);
  for (int gh = 0; gh < q.size(); ++gh) {
    if (q[gh] == 0.0) continue;
    const int g = pair->first(gh), h = pair->second(gh);
    int idx = 0;
    switch (how) {
      case TripleEmbedding::OneDelta: idx = triple->pair(pair->pair(g, h), h); break;
      case TripleEmbedding::DeltaOne: idx = triple->pair(pair->pair(g, g), h); break;
      case TripleEmbedding::OneTensor: idx = triple->pair(pair->pair(e, g), h); break;
      case TripleEmbedding::TensorOne: idx = triple->pair(pair->pair(g, h), e); break;
    }
    r[idx] += q[gh];
  }
  return r;
}

}  // namespace gquant
