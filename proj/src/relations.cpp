#include "gquant/relations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "gquant/errors.hpp"
#include "gquant/format.hpp"

namespace gquant {

const char* model_name(RelationModel m) { return m == RelationModel::Exact ? "exact" : "strict"; }

RelationModel parse_model(const std::string& s) {
  if (s == "exact") return RelationModel::Exact;
  if (s == "strict") return RelationModel::Strict;
  fail(ErrorKind::Parse, "unknown relation model '" + s + "' (expected exact or strict)");
}

void Polynomial::add(const Monomial& m, cd c) {
  if (c == 0.0) return;
  terms[m] += c;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms)
    for (const auto& [m2, c2] : o.terms) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      std::sort(m.begin(), m.end());
      r.add(m, c1 * c2);
    }
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

Polynomial Polynomial::scaled(cd s) const {
  Polynomial r;
  for (const auto& [m, c] : terms) r.add(m, c * s);
  return r;
}

void Polynomial::prune(double tol) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= tol)
      it = terms.erase(it);
    else
      ++it;
  }
}

cd Polynomial::evaluate(const std::vector<cd>& values) const {
  cd s = 0.0;
  for (const auto& [m, c] : terms) {
    cd t = c;
    for (int v : m) t *= values[v];
    s += t;
  }
  return s;
}

namespace {

using SymMat = std::vector<std::vector<Polynomial>>;

Polynomial constant(cd c) {
  Polynomial p;
  p.add({}, c);
  return p;
}

Polynomial variable(int id) {
  Polynomial p;
  p.add({id}, 1.0);
  return p;
}

SymMat sym_kron(const SymMat& a, const SymMat& b) {
  const size_t n1 = a.size(), n2 = b.size();
  SymMat r(n1 * n2, std::vector<Polynomial>(n1 * n2));
  for (size_t i = 0; i < n1 * n2; ++i)
    for (size_t j = 0; j < n1 * n2; ++j) r[i][j] = a[i / n2][j / n2] * b[i % n2][j % n2];
  return r;
}

SymMat sym_direct_sum(const std::vector<SymMat>& parts) {
  size_t n = 0;
  for (const auto& p : parts) n += p.size();
  SymMat r(n, std::vector<Polynomial>(n));
  size_t o = 0;
  for (const auto& p : parts) {
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < p.size(); ++j) r[o + i][o + j] = p[i][j];
    o += p.size();
  }
  return r;
}

class SymbolicBlocks {
 public:
  explicit SymbolicBlocks(const QuantizerSpace& s) : space_(s), vars_(block_variables(s)) {
    for (size_t id = 0; id < vars_.size(); ++id) {
      const auto& v = vars_[id];
      ids_[{v.a, v.b, v.c, v.i, v.j}] = static_cast<int>(id);
    }
  }

  SymMat block(int a, int b, int c) const {
    const int m = space_.cg(a, b, c);
    SymMat r(m, std::vector<Polynomial>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (a == 0 || b == 0)
          r[i][j] = constant(i == j ? 1.0 : 0.0);
        else
          r[i][j] = variable(ids_.at({a, b, c, i, j}));
      }
    return r;
  }

  const std::vector<BlockVar>& vars() const { return vars_; }

 private:
  const QuantizerSpace& space_;
  std::vector<BlockVar> vars_;
  std::map<std::vector<int>, int> ids_;
};

}  // namespace

std::vector<Equation> coherence_equations(const QuantizerSpace& space, RelationModel model,
                                          double tol) {
  const SymbolicBlocks sym(space);
  const Decompositions& dec = space.dec();
  const int k = space.rank();
  std::vector<Equation> out;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int z = 0; z < k; ++z) {
          const Recoupling rc = recoupling(dec, a, b, c, z);
          const size_t n = rc.left.size();
          if (n == 0) continue;
          const Mat f = model == RelationModel::Strict
                            ? Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
                            : rc.F;
          std::vector<SymMat> lparts, rparts;
          for (const auto& blk : dec.at(b, c).blocks)
            if (space.cg(a, blk.gamma, z) > 0)
              lparts.push_back(sym_kron(sym.block(b, c, blk.gamma), sym.block(a, blk.gamma, z)));
          for (const auto& blk : dec.at(a, b).blocks)
            if (space.cg(blk.gamma, c, z) > 0)
              rparts.push_back(sym_kron(sym.block(a, b, blk.gamma), sym.block(blk.gamma, c, z)));
          const SymMat lm = sym_direct_sum(lparts), rm = sym_direct_sum(rparts);
          for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
              Polynomial p;
              for (size_t t = 0; t < n; ++t) {
                const cd ftj = f(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j));
                const cd fit = f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t));
                if (std::abs(ftj) > tol) p += lm[i][t].scaled(ftj);
                if (std::abs(fit) > tol) p += rm[t][j].scaled(-fit);
              }
              p.prune(tol);
              if (!p.is_zero()) out.push_back({a, b, c, z, std::move(p)});
            }
        }
  return out;
}

double equation_residual(const std::vector<Equation>& eqs, const BlockQuantizer& b) {
  const auto vars = block_variables(*b.space());
  std::vector<cd> values;
  for (const auto& v : vars) values.push_back(variable_value(b, v));
  double worst = 0.0;
  for (const auto& e : eqs) worst = std::max(worst, std::abs(e.poly.evaluate(values)));
  return worst;
}

namespace {

// Degree first, then lexicographic; the largest monomial leads.
bool monomial_less(const Monomial& x, const Monomial& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x > y;
}

Monomial leading(const Polynomial& p) {
  Monomial best = p.terms.begin()->first;
  for (const auto& [m, c] : p.terms)
    if (monomial_less(best, m)) best = m;
  return best;
}

std::string equation_key(const Polynomial& p) {
  std::string key;
  for (const auto& [m, c] : p.terms) {
    for (int v : m) key += std::to_string(v) + ".";
    char buf[64];
    const double re = std::round(c.real() * 1e8) / 1e8 + 0.0;
    const double im = std::round(c.imag() * 1e8) / 1e8 + 0.0;
    std::snprintf(buf, sizeof buf, "|%.8f,%.8f;", re, im);
    key += buf;
  }
  return key;
}

}  // namespace

RelationSet extract_relations(const QuantizerSpace& space, RelationModel model) {
  RelationSet rs;
  rs.model = model;
  rs.vars = block_variables(space);
  for (const auto& v : rs.vars) rs.names.push_back(variable_name(space, v));

  std::set<std::string> seen;
  for (auto& e : coherence_equations(space, model)) {
    const cd lead = e.poly.terms.at(leading(e.poly));
    e.poly = e.poly.scaled(1.0 / lead);
    e.poly.prune(kTolerance);
    for (auto& [m, c] : e.poly.terms) c = snap(c);
    if (seen.insert(equation_key(e.poly)).second) rs.raw.push_back(e);
  }

  const int n = static_cast<int>(rs.vars.size());
  IntMat rows;
  std::vector<cd> coefs;
  for (const auto& e : rs.raw) {
    if (e.poly.terms.size() == 1) {
      const Monomial& m = e.poly.terms.begin()->first;
      if (std::all_of(m.begin(), m.end(), [&](int v) { return rs.vars[v].scalar; }))
        rs.torus_consistent = false;
      continue;
    }
    if (e.poly.terms.size() != 2) continue;
    const Monomial m1 = leading(e.poly);
    Monomial m2;
    cd c2 = 0.0;
    for (const auto& [m, c] : e.poly.terms)
      if (m != m1) {
        m2 = m;
        c2 = c;
      }
    std::vector<long long> v(n, 0);
    for (int x : m1) ++v[x];
    for (int x : m2) --v[x];
    bool scalar_only = true;
    for (int x = 0; x < n; ++x)
      if (v[x] != 0 && !rs.vars[x].scalar) scalar_only = false;
    if (!scalar_only) continue;
    rows.push_back(v);
    coefs.push_back(-c2 / e.poly.terms.at(m1));
  }
  bool ok = true;
  IntMat basis = lattice_basis(rows, n, &coefs, &ok);
  rs.torus_consistent = rs.torus_consistent && ok;
  for (size_t i = 0; i < basis.size(); ++i) rs.reduced.push_back({basis[i], snap(coefs[i])});
  return rs;
}

// ---------------------------------------------------------------------------
// Reference relation sets

namespace {

// Relation lhs = rhs, each side a product of (a,b,c) blocks.
using BlockTriple = std::array<int, 3>;
struct RefBinomial {
  std::vector<BlockTriple> lhs, rhs;
};

}  // namespace

std::optional<std::vector<BinomialRelation>> reference_relations(const QuantizerSpace& space,
                                                                 const std::vector<BlockVar>& vars) {
  const std::string& name = space.group()->name();
  std::vector<RefBinomial> ref;
  if (name == "S3") {
    const BlockTriple q11{1, 1, 0}, q12{1, 2, 2}, q21{2, 1, 2}, p0{2, 2, 0}, p1{2, 2, 1};
    ref = {{{q12}, {q21}}, {{q11}, {q12, q12}}, {{p0}, {q12, p1}}};
  } else if (name == "A4") {
    const BlockTriple q11{1, 1, 2}, q22{2, 2, 1}, q12{1, 2, 0}, q21{2, 1, 0}, q13{1, 3, 3},
        q31{3, 1, 3}, q23{2, 3, 3}, q32{3, 2, 3}, r0{3, 3, 0}, r1{3, 3, 1}, r2{3, 3, 2};
    ref = {{{q12}, {q21}},           {{q21}, {q11, q22}},     {{q13}, {q31}},
           {{q23}, {q32}},           {{q13, q13}, {q11, q23}}, {{q23, q23}, {q22, q13}},
           {{r0}, {q13, r1}},        {{q13, r1}, {q23, r2}},  {{r0, q23}, {r1, q12}},
           {{r0, q13}, {r2, q12}},   {{r1, q11}, {r2, q13}},  {{r1, q23}, {r2, q22}}};
  } else {
    return std::nullopt;
  }
  const auto find = [&](const BlockTriple& t) {
    for (size_t v = 0; v < vars.size(); ++v)
      if (vars[v].a == t[0] && vars[v].b == t[1] && vars[v].c == t[2] && vars[v].scalar)
        return static_cast<int>(v);
    fail(ErrorKind::Structural, "reference relation names a block missing from the variables");
  };
  std::vector<BinomialRelation> out;
  for (const auto& r : ref) {
    BinomialRelation b{std::vector<long long>(vars.size(), 0), 1.0};
    for (const auto& t : r.lhs) ++b.exponents[find(t)];
    for (const auto& t : r.rhs) --b.exponents[find(t)];
    out.push_back(std::move(b));
  }
  return out;
}

double binomial_defect(const BinomialRelation& r, const std::vector<cd>& x) {
  cd pos = 1.0, neg = 1.0;
  for (size_t v = 0; v < r.exponents.size(); ++v) {
    for (long long k = 0; k < r.exponents[v]; ++k) pos *= x[v];
    for (long long k = 0; k < -r.exponents[v]; ++k) neg *= x[v];
  }
  neg *= r.coef;
  return std::abs(pos - neg) / std::max(1.0, std::max(std::abs(pos), std::abs(neg)));
}

namespace {

TorusSolution torus_of(const std::vector<BinomialRelation>& rels, int nvars) {
  IntMat rows;
  std::vector<cd> beta;
  for (const auto& r : rels) {
    rows.push_back(r.exponents);
    beta.push_back(r.coef);
  }
  return solve_binomials(rows, beta, nvars);
}

// Worst defect of `rels` over points sampled on `torus`, per relation.
std::vector<double> sampled_defects(const TorusSolution& torus,
                                    const std::vector<BinomialRelation>& rels, int samples,
                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0), arg(-M_PI, M_PI);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(torus.branches.size()) - 1);
  std::vector<double> worst(rels.size(), 0.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<cd> t(torus.params());
    for (auto& x : t) x = std::polar(mod(rng), arg(rng));
    const auto x = torus.point(pick(rng), t);
    for (size_t i = 0; i < rels.size(); ++i)
      worst[i] = std::max(worst[i], binomial_defect(rels[i], x));
  }
  return worst;
}

}  // namespace

RelationComparison compare_relations(const std::vector<BinomialRelation>& ours,
                                     const std::vector<BinomialRelation>& reference, int nvars,
                                     int samples, std::uint64_t seed) {
  RelationComparison out;
  out.samples = samples;
  IntMat a, b;
  for (const auto& r : ours) a.push_back(r.exponents);
  for (const auto& r : reference) b.push_back(r.exponents);
  out.same_lattice = same_row_lattice(a, b, nvars);
  const TorusSolution to = torus_of(ours, nvars), tr = torus_of(reference, nvars);
  out.consistent = to.consistent && tr.consistent && !to.branches.empty() && !tr.branches.empty();
  if (!out.consistent) return out;
  std::mt19937_64 rng(seed);
  out.per_reference = sampled_defects(to, reference, samples, rng);
  for (double d : out.per_reference) out.forward = std::max(out.forward, d);
  for (double d : sampled_defects(tr, ours, samples, rng)) out.backward = std::max(out.backward, d);
  return out;
}

std::string render_monomial(const Monomial& m, const std::vector<std::string>& names) {
  if (m.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < m.size();) {
    size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty()) out += " ";
    const auto p = j - i;
    out += p == 1 ? names[m[i]] : "(" + names[m[i]] + ")^" + std::to_string(p);
    i = j;
  }
  return out;
}

namespace {

std::string scaled_monomial(cd c, const std::string& mono) {
  if (std::abs(c - 1.0) < 1e-12) return mono;
  if (std::abs(c + 1.0) < 1e-12) return "-" + mono;
  std::string cs = format_complex(c);
  if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
  return mono == "1" ? cs : cs + " " + mono;
}

}  // namespace

std::string render_equation(const Equation& e, const std::vector<std::string>& names) {
  const auto& t = e.poly.terms;
  if (t.size() == 1) return render_monomial(t.begin()->first, names) + " = 0";
  if (t.size() == 2) {
    const Monomial m1 = leading(e.poly);
    for (const auto& [m, c] : t)
      if (m != m1)
        return scaled_monomial(t.at(m1), render_monomial(m1, names)) + " = " +
               scaled_monomial(-c, render_monomial(m, names));
  }
  std::vector<Monomial> order;
  for (const auto& [m, c] : t) order.push_back(m);
  std::sort(order.begin(), order.end(), [](const Monomial& x, const Monomial& y) {
    return monomial_less(y, x);
  });
  std::string out;
  for (const auto& m : order) {
    const std::string term = scaled_monomial(t.at(m), render_monomial(m, names));
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out + " = 0";
}

std::string render_binomial(const BinomialRelation& r, const std::vector<std::string>& names) {
  Monomial pos, neg;
  for (size_t v = 0; v < r.exponents.size(); ++v) {
    for (long long k = 0; k < r.exponents[v]; ++k) pos.push_back(static_cast<int>(v));
    for (long long k = 0; k < -r.exponents[v]; ++k) neg.push_back(static_cast<int>(v));
  }
  return render_monomial(pos, names) + " = " + scaled_monomial(r.coef, render_monomial(neg, names));
}

}  // namespace gquant
