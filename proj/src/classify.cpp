#include "gquant/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gquant/errors.hpp"
#include "gquant/format.hpp"

namespace gquant {

const char* matrix_mode_name(MatrixMode m) {
  switch (m) {
    case MatrixMode::None: return "none";
    case MatrixMode::Entries: return "entries";
    case MatrixMode::Free: return "free";
    case MatrixMode::Zero: return "zero";
  }
  return "?";
}

std::vector<long long> gauge_weight(const QuantizerSpace& space, const BlockVar& v) {
  std::vector<long long> w(space.rank() - 1, 0);
  if (v.c) ++w[v.c - 1];
  if (v.a) --w[v.a - 1];
  if (v.b) --w[v.b - 1];
  return w;
}

namespace {

bool next_combination(std::vector<int>& idx, int n) {
  const int r = static_cast<int>(idx.size());
  int i = r - 1;
  while (i >= 0 && idx[i] == n - r + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

IntMat weights_of(const QuantizerSpace& space, const std::vector<BlockVar>& vars,
                  const std::vector<int>& ids) {
  IntMat w;
  for (int id : ids) w.push_back(gauge_weight(space, vars[id]));
  return w;
}

}  // namespace

std::vector<int> choose_fixed(const QuantizerSpace& space, const std::vector<BlockVar>& vars,
                              const std::vector<int>& support) {
  const int ncols = space.rank() - 1;
  const IntMat all = weights_of(space, vars, support);
  const int r = all.empty() ? 0 : int_rank(all);
  if (r == 0) return {};
  const int n = static_cast<int>(support.size());
  std::vector<int> idx(r), fallback;
  for (int i = 0; i < r; ++i) idx[i] = i;
  do {
    IntMat sub;
    for (int i : idx) sub.push_back(all[i]);
    if (int_rank(sub) != r) continue;
    std::vector<int> chosen;
    for (int i : idx) chosen.push_back(support[i]);
    if (fallback.empty()) fallback = chosen;
    if (in_row_lattice(sub, all, ncols)) return chosen;
  } while (next_combination(idx, n));
  return fallback;
}

namespace {

struct Term {
  unsigned long long mask = 0;  // variables of the monomial, as enumeration bits
  Monomial mono;
  cd coef;
};

struct System {
  MatrixMode mode = MatrixMode::None;
  std::vector<std::vector<Term>> eqs;
  std::vector<Polynomial> polys;
};

// Strict model with a free matrix: the equations must hold identically in
// the matrix entries, so each coefficient of a matrix monomial vanishes.
std::vector<Polynomial> split_by_matrix(const std::vector<Equation>& raw,
                                        const std::vector<BlockVar>& vars, bool keep_matrix) {
  std::vector<Polynomial> out;
  for (const auto& e : raw) {
    std::map<Monomial, Polynomial> groups;
    for (const auto& [m, c] : e.poly.terms) {
      Monomial mat, sca;
      for (int v : m) (vars[v].scalar ? sca : mat).push_back(v);
      groups[mat].add(sca, c);
    }
    for (auto& [mat, p] : groups) {
      if (!keep_matrix && !mat.empty()) continue;
      p.prune(kTolerance);
      if (!p.is_zero()) out.push_back(p);
    }
  }
  return out;
}

System make_system(MatrixMode mode, std::vector<Polynomial> polys, const std::vector<int>& bit_of) {
  System s;
  s.mode = mode;
  for (const auto& p : polys) {
    std::vector<Term> terms;
    for (const auto& [m, c] : p.terms) {
      Term t{0, m, c};
      for (int v : m) t.mask |= 1ULL << bit_of[v];
      terms.push_back(t);
    }
    s.eqs.push_back(std::move(terms));
  }
  s.polys = std::move(polys);
  return s;
}

std::vector<cd> random_params(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> mod(0.6, 1.6), arg(-3.0, 3.0);
  std::vector<cd> t;
  for (int i = 0; i < n; ++i) t.push_back(std::polar(mod(rng), arg(rng)));
  return t;
}

Mat random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(d(rng), d(rng));
  return m;
}

std::vector<int> matrix_blocks(const std::vector<BlockVar>& vars) {
  // Index of the first variable of every block larger than 1 x 1.
  std::vector<int> out;
  for (size_t i = 0; i < vars.size(); ++i)
    if (!vars[i].scalar && vars[i].i == 0 && vars[i].j == 0) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<cd> identity_values(const std::vector<BlockVar>& vars) {
  std::vector<cd> x;
  for (const auto& v : vars) x.push_back(v.i == v.j ? 1.0 : 0.0);
  return x;
}

}  // namespace

BlockQuantizer family_instance(const Classification& c, const Family& f, const std::vector<cd>& t,
                               const std::vector<Mat>& mats) {
  BlockQuantizer b(c.space);
  for (const auto& v : c.vars) set_variable(b, v, 0.0);
  const auto x = f.torus.point(f.branch, t);
  for (size_t i = 0; i < f.support.size(); ++i) set_variable(b, c.vars[f.support[i]], x[i]);
  if (f.matrix == MatrixMode::Free) {
    const auto heads = matrix_blocks(c.vars);
    for (size_t k = 0; k < heads.size() && k < mats.size(); ++k) {
      const auto& v = c.vars[heads[k]];
      b.set_block(v.a, v.b, v.c, mats[k]);
    }
  }
  return b;
}

std::string family_cell(const Classification& c, const Family& f, int var) {
  const auto it = std::find(f.support.begin(), f.support.end(), var);
  if (it == f.support.end()) {
    if (!c.vars[var].scalar && f.matrix == MatrixMode::Free) return "M";
    return "0";
  }
  const size_t i = static_cast<size_t>(it - f.support.begin());
  const cd coef = f.torus.branches[f.branch].coef[i];
  std::string mono;
  const int np = f.params();
  for (int l = 0; l < np; ++l) {
    const long long e = f.torus.exps[i][l];
    if (e == 0) continue;
    if (!mono.empty()) mono += " ";
    mono += np == 1 ? "t" : "t" + std::to_string(l + 1);
    if (e != 1) mono += "^" + std::to_string(e);
  }
  if (mono.empty()) return format_complex(coef);
  if (std::abs(coef - 1.0) < 1e-12) return mono;
  if (std::abs(coef + 1.0) < 1e-12) return "-" + mono;
  std::string cs = format_complex(coef);
  if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
  return cs + " " + mono;
}

Classification classify(const SpacePtr& space, RelationModel model, const ClassifyOptions& opts) {
  Classification out;
  out.space = space;
  out.model = model;
  const RelationSet rs = extract_relations(*space, model);
  out.vars = rs.vars;
  out.names = rs.names;
  const auto& vars = out.vars;
  const int nv = static_cast<int>(vars.size());
  const bool has_matrix = std::any_of(vars.begin(), vars.end(), [](const BlockVar& v) { return !v.scalar; });

  std::vector<int> enumerated;
  for (int i = 0; i < nv; ++i)
    if (model == RelationModel::Exact || vars[i].scalar) enumerated.push_back(i);
  if (enumerated.size() > 20)
    fail(ErrorKind::Capability, "support enumeration limited to 20 variables, got " +
                                    std::to_string(enumerated.size()));
  std::vector<int> bit_of(nv, -1);
  for (size_t k = 0; k < enumerated.size(); ++k) bit_of[enumerated[k]] = static_cast<int>(k);

  std::vector<System> systems;
  if (model == RelationModel::Exact || !has_matrix) {
    std::vector<Polynomial> polys;
    for (const auto& e : rs.raw) polys.push_back(e.poly);
    systems.push_back(make_system(has_matrix ? MatrixMode::Entries : MatrixMode::None,
                                  std::move(polys), bit_of));
  } else {
    systems.push_back(make_system(MatrixMode::Free, split_by_matrix(rs.raw, vars, true), bit_of));
    systems.push_back(make_system(MatrixMode::Zero, split_by_matrix(rs.raw, vars, false), bit_of));
  }

  const int nbits = static_cast<int>(enumerated.size());
  std::mt19937_64 rng(opts.seed);
  std::vector<Family> found;
  for (const auto& sys : systems) {
    for (long long mask = (1LL << nbits) - 1; mask >= 0; --mask) {
      IntMat rows;
      std::vector<cd> beta;
      std::vector<int> support;
      for (int k = 0; k < nbits; ++k)
        if (mask >> k & 1) support.push_back(enumerated[k]);
      std::vector<int> local(nv, -1);
      for (size_t i = 0; i < support.size(); ++i) local[support[i]] = static_cast<int>(i);
      bool ok = true;
      for (const auto& eq : sys.eqs) {
        std::vector<const Term*> alive;
        for (const auto& t : eq)
          if ((t.mask & ~static_cast<unsigned long long>(mask)) == 0) alive.push_back(&t);
        if (alive.empty()) continue;
        if (alive.size() == 1) {
          ok = false;
          break;
        }
        if (alive.size() > 2)
          fail(ErrorKind::Capability, "non-binomial coherence equation inside a support pattern");
        std::vector<long long> row(support.size(), 0);
        for (int v : alive[0]->mono) ++row[local[v]];
        for (int v : alive[1]->mono) --row[local[v]];
        rows.push_back(row);
        beta.push_back(-alive[1]->coef / alive[0]->coef);
      }
      if (!ok) continue;
      const auto fixed = choose_fixed(*space, vars, support);
      for (int v : fixed) {
        std::vector<long long> row(support.size(), 0);
        row[local[v]] = 1;
        rows.push_back(row);
        beta.push_back(1.0);
      }
      TorusSolution sol = solve_binomials(rows, beta, static_cast<int>(support.size()));
      if (!sol.consistent) continue;
      for (size_t br = 0; br < sol.branches.size(); ++br) {
        Family f;
        f.matrix = sys.mode;
        f.support = support;
        f.fixed = fixed;
        f.torus = sol;
        f.branch = static_cast<int>(br);
        if (sys.mode == MatrixMode::Zero) {
          // Dropped when the free-matrix family of the same support already
          // contains it.
          bool covered = true;
          for (int s = 0; s < 2 && covered; ++s) {
            const auto x = sol.point(f.branch, random_params(rng, sol.params()));
            std::vector<cd> values(nv, 0.0);
            for (size_t i = 0; i < support.size(); ++i) values[support[i]] = x[i];
            for (const auto& p : systems[0].polys)
              if (std::abs(p.evaluate(values)) > kZeroCutoff) {
                covered = false;
                break;
              }
          }
          if (covered) continue;
        }
        found.push_back(std::move(f));
      }
    }
  }

  auto weight = [&](const Family& f) {
    size_t n = f.support.size();
    if (f.matrix == MatrixMode::Free)
      n += std::count_if(vars.begin(), vars.end(), [](const BlockVar& v) { return !v.scalar; });
    return n;
  };
  std::stable_sort(found.begin(), found.end(),
                   [&](const Family& x, const Family& y) { return weight(x) > weight(y); });

  const auto ident = identity_values(vars);
  for (size_t i = 0; i < found.size(); ++i) {
    Family& f = found[i];
    f.index = static_cast<int>(i) + 1;
    std::vector<int> expect;
    for (int v : enumerated)
      if (std::abs(ident[v]) > 0.5) expect.push_back(v);
    if (f.support == expect && f.matrix != MatrixMode::Zero) {
      std::vector<cd> x;
      for (int v : f.support) x.push_back(ident[v]);
      f.contains_trivial = f.torus.locate(x) == f.branch;
    }
  }

  if (opts.verify && space->has_triple()) {
    const auto heads = matrix_blocks(vars);
    for (auto& f : found) {
      double worst = 0;
      for (int s = 0; s < opts.samples; ++s) {
        std::vector<Mat> mats;
        for (int h : heads) mats.push_back(random_matrix(rng, space->cg(vars[h].a, vars[h].b, vars[h].c)));
        const auto b = family_instance(out, f, random_params(rng, f.params()), mats);
        const auto r = check_conditions(algebra_from_blocks(b));
        worst = std::max({worst, r.coherence, r.naturality, r.normalization});
      }
      f.residual = worst;
      f.coherent = worst < opts.tolerance;
    }
  }
  out.families = std::move(found);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

struct Normal2 {
  Mat form, S;  // S^-1 M S = form
  std::string kind;
  std::vector<cd> eig;
};

bool eig_less(cd a, cd b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (std::abs(ma - mb) > 1e-9) return ma > mb;
  return std::arg(a) < std::arg(b) - 1e-12;
}

Normal2 normal_form_2x2(const Mat& m) {
  Normal2 n;
  n.S = Mat::Identity(2, 2);
  if (max_abs(m) < kZeroCutoff) {
    n.form = Mat::Zero(2, 2);
    n.kind = "zero";
    return n;
  }
  const cd tr = m.trace(), det = m.determinant();
  const cd disc = std::sqrt(tr * tr - 4.0 * det);
  cd e1 = (tr + disc) / 2.0, e2 = (tr - disc) / 2.0;
  if (eig_less(e2, e1)) std::swap(e1, e2);
  const double scale = std::max(1.0, max_abs(m));
  if (std::abs(e1 - e2) > 1e-7 * scale) {
    Mat s(2, 2);
    for (int k = 0; k < 2; ++k) {
      const cd e = k == 0 ? e1 : e2;
      const Mat a = m - e * Mat::Identity(2, 2);
      // Null vector of the rank-one matrix a.
      Vec v(2);
      if (std::abs(a(0, 0)) + std::abs(a(0, 1)) > std::abs(a(1, 0)) + std::abs(a(1, 1)))
        v << -a(0, 1), a(0, 0);
      else
        v << -a(1, 1), a(1, 0);
      s.col(k) = v / v.norm();
    }
    n.S = s;
    n.form = Mat::Zero(2, 2);
    n.form(0, 0) = snap(e1);
    n.form(1, 1) = snap(e2);
    n.kind = "diag";
    n.eig = {e1, e2};
    return n;
  }
  const cd e = snap((e1 + e2) / 2.0);
  const Mat nil = m - e * Mat::Identity(2, 2);
  n.eig = {e, e};
  if (max_abs(nil) < 1e-7 * scale) {
    n.form = e * Mat::Identity(2, 2);
    n.kind = "diag";
    return n;
  }
  Vec w = Vec::Zero(2);
  w((nil.col(0).norm() >= nil.col(1).norm()) ? 0 : 1) = 1.0;
  const Vec v = nil * w;
  n.S.col(0) = v;
  n.S.col(1) = w;
  n.form = Mat::Zero(2, 2);
  n.form(0, 0) = n.form(1, 1) = e;
  n.form(0, 1) = 1.0;
  n.kind = "jordan";
  return n;
}

bool coherent_in_model(const BlockQuantizer& b, RelationModel model, double tol) {
  if (block_normalization_residual(b) > tol) return false;
  if (model == RelationModel::Exact) return check_coherence_blocks(b).max < tol;
  return equation_residual(coherence_equations(*b.space(), RelationModel::Strict), b) < tol;
}

std::vector<int> support_of(const std::vector<BlockVar>& vars, const std::vector<cd>& x,
                            RelationModel model) {
  std::vector<int> s;
  for (size_t i = 0; i < vars.size(); ++i)
    if ((model == RelationModel::Exact || vars[i].scalar) && std::abs(x[i]) > kZeroCutoff)
      s.push_back(static_cast<int>(i));
  return s;
}

}  // namespace

CanonicalForm canonicalize(const BlockQuantizer& b, RelationModel model, double tol) {
  const auto& space = *b.space();
  if (!coherent_in_model(b, model, tol))
    fail(ErrorKind::Rejected, std::string("canonicalize: input is not coherent in the ") +
                                  model_name(model) + " model");
  const auto vars = block_variables(space);
  std::vector<cd> x;
  for (const auto& v : vars) x.push_back(variable_value(b, v));
  const auto support = support_of(vars, x, model);
  const auto fixed = choose_fixed(space, vars, support);

  CanonicalForm cf;
  cf.gauge = GaugeElement::identity(space.rank());
  const int ncols = space.rank() - 1;
  if (!fixed.empty() && ncols > 0) {
    Eigen::MatrixXd w(fixed.size(), ncols);
    Eigen::VectorXd re(fixed.size()), im(fixed.size());
    for (size_t r = 0; r < fixed.size(); ++r) {
      const auto wr = gauge_weight(space, vars[fixed[r]]);
      for (int j = 0; j < ncols; ++j) w(r, j) = static_cast<double>(wr[j]);
      const cd lg = -std::log(x[fixed[r]]);
      re(r) = lg.real();
      im(r) = lg.imag();
    }
    const auto cod = w.completeOrthogonalDecomposition();
    const Eigen::VectorXd lr = cod.solve(re), li = cod.solve(im);
    for (int j = 0; j < ncols; ++j) cf.gauge.l[j + 1] = std::exp(cd(lr(j), li(j)));
  }
  cf.blocks = gauge_apply(cf.gauge, b);
  for (const auto& v : vars)
    if (v.scalar) cf.blocks.set_scalar(v.a, v.b, v.c, snap(cf.blocks.scalar(v.a, v.b, v.c)));

  if (model == RelationModel::Strict) {
    const IntMat ws = weights_of(space, vars, support);
    for (int h : matrix_blocks(vars)) {
      const auto& v = vars[h];
      const Mat m = cf.blocks.block(v.a, v.b, v.c);
      if (m.rows() != 2) continue;
      Normal2 n = normal_form_2x2(m);
      const auto wm = gauge_weight(space, v);
      IntMat aug = ws;
      aug.push_back(wm);
      int index = 0;  // 0: the gauge rescales the matrix freely
      if (ws.empty() ? false : int_rank(aug) == int_rank(ws)) {
        for (int k = 1; k <= 12 && index == 0; ++k) {
          std::vector<long long> mw(wm);
          for (auto& e : mw) e *= k;
          if (in_row_lattice(ws, {mw}, ncols)) index = k;
        }
        if (index == 0) index = 1;
      }
      cd scale = 1.0;
      if (index == 0) {
        if (n.kind == "jordan") {
          if (std::abs(n.eig[0]) < kZeroCutoff) {
            n.kind = "nilpotent";
          } else {
            scale = 1.0 / n.eig[0];
            n = normal_form_2x2(m * scale);
            n.kind = "unipotent";
          }
        } else if (n.kind == "diag") {
          scale = 1.0 / n.eig[0];
          n = normal_form_2x2(m * scale);
        }
      } else if (index > 1 && n.kind != "zero") {
        // The gauge can still multiply the matrix by an index-th root of
        // unity; pick the rotation putting the leading eigenvalue nearest
        // the positive real axis.
        int best = 0;
        double best_arg = 10;
        for (int j = 0; j < index; ++j) {
          const double a = std::abs(std::arg(n.eig[0] * root_of_unity(index, j)));
          if (a < best_arg - 1e-9) {
            best_arg = a;
            best = j;
          }
        }
        scale = root_of_unity(index, best);
        if (best != 0) {
          const std::string kind = n.kind;
          n = normal_form_2x2(m * scale);
          n.kind = kind;
        }
      }
      cf.blocks.set_block(v.a, v.b, v.c, n.form);
      cf.similarity = n.S;
      cf.matrix_scale = scale;
      cf.matrix_form = n.kind;
    }
  }
  return cf;
}

int locate_family(const Classification& c, const BlockQuantizer& b, std::vector<cd>* t) {
  CanonicalForm cf;
  try {
    cf = canonicalize(b, c.model);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Rejected) return -1;
    throw;
  }
  std::vector<cd> x;
  for (const auto& v : c.vars) x.push_back(variable_value(cf.blocks, v));
  const auto support = support_of(c.vars, x, c.model);
  bool matrix_zero = true;
  for (size_t i = 0; i < c.vars.size(); ++i)
    if (!c.vars[i].scalar && std::abs(x[i]) > kZeroCutoff) matrix_zero = false;
  for (const auto& f : c.families) {
    if (f.support != support) continue;
    if (f.matrix == MatrixMode::Zero && !matrix_zero) continue;
    std::vector<cd> xs;
    for (int v : f.support) xs.push_back(x[v]);
    std::vector<cd> params;
    if (f.torus.locate(xs, &params) == f.branch) {
      if (t) *t = params;
      return f.index;
    }
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Reference tables

std::optional<ReferenceTable> reference_table(const QuantizerSpace& space) {
  const std::string& name = space.group()->name();
  ReferenceTable t;
  if (name == "S3") {
    t.columns = {"q_11", "q_12", "q_21", "q^0_22", "q^1_22", "q^2_22"};
    t.column_blocks = {{1, 1, 0}, {1, 2, 2}, {2, 1, 2}, {2, 2, 0}, {2, 2, 1}, {2, 2, 2}};
    t.rows = {{"a", {"1", "1", "1", "λ", "λ", "1"}}, {"b", {"0", "0", "0", "0", "1", "1"}},
              {"c", {"0", "0", "0", "0", "0", "1"}}, {"d", {"0", "0", "0", "0", "1", "0"}},
              {"e", {"1", "1", "1", "1", "1", "0"}}, {"f", {"0", "0", "0", "0", "0", "0"}},
              {"g", {"1", "1", "1", "0", "0", "0"}}};
    t.claimed_same = {{"f", "trivial"}, {"g", "trivial"}};
    return t;
  }
  if (name == "A4") {
    t.columns = {"q_11", "q_22", "q_12", "q_21", "q_13", "q_31",
                 "q_23", "q_32", "q^0_33", "q^1_33", "q^2_33", "q^3_33"};
    t.column_blocks = {{1, 1, 2}, {2, 2, 1}, {1, 2, 0}, {2, 1, 0}, {1, 3, 3}, {3, 1, 3},
                       {2, 3, 3}, {3, 2, 3}, {3, 3, 0}, {3, 3, 1}, {3, 3, 2}, {3, 3, 3}};
    auto row = [](const std::string& label, const std::string& bits, const std::string& last) {
      ReferenceRow r{label, {}};
      for (char ch : bits) r.cells.push_back(std::string(1, ch));
      r.cells.push_back(last);
      return r;
    };
    t.rows = {row("a", "11111111111", "M"), row("b", "11111111000", "P"),
              row("c", "00000000010", "P"), row("d", "00000000001", "P"),
              row("e", "00000000011", "P"), row("f", "00000000000", "P"),
              row("g", "01000000010", "P"), row("h", "01000000000", "P"),
              row("i", "10000000001", "P"), row("j", "10000000000", "P"),
              row("k", "11110000000", "P")};
    t.claimed_same = {{"f", "b"}, {"h", "b"}, {"j", "b"}, {"k", "b"}, {"g", "c"}, {"i", "d"}};
    return t;
  }
  return std::nullopt;
}

namespace {

std::string describe_matrix(const Mat& m) {
  std::string s = "[[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += "],[";
    for (int j = 0; j < m.cols(); ++j) s += (j ? "," : "") + format_complex(m(i, j));
  }
  return s + "]]";
}

Mat diag2(cd a, cd b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

std::vector<RowInstance> reference_instances(const SpacePtr& space, const ReferenceTable& table,
                                             const ReferenceRow& row,
                                             const std::vector<cd>& samples) {
  std::vector<std::pair<std::string, std::pair<cd, Mat>>> choices;  // description, (λ, matrix)
  const auto has = [&](const std::string& s) {
    return std::find(row.cells.begin(), row.cells.end(), s) != row.cells.end();
  };
  if (has("λ")) {
    for (cd l : samples) choices.push_back({"λ=" + format_complex(l), {l, Mat()}});
  } else if (has("M")) {
    for (cd l : samples)
      for (cd k : samples) {
        const Mat m = diag2(l, k);
        choices.push_back({"M=" + describe_matrix(m), {0.0, m}});
      }
    for (cd l : samples) {
      Mat m = diag2(l, l);
      m(0, 1) = 1.0;
      choices.push_back({"M=" + describe_matrix(m), {0.0, m}});
    }
  } else if (has("P")) {
    std::vector<Mat> ps;
    ps.push_back(Mat::Zero(2, 2));
    Mat n = Mat::Zero(2, 2);
    n(0, 1) = 1.0;
    ps.push_back(n);
    Mat u = Mat::Identity(2, 2);
    u(0, 1) = 1.0;
    ps.push_back(u);
    for (cd l : samples) ps.push_back(diag2(1.0, l));
    for (const auto& p : ps) choices.push_back({"P=" + describe_matrix(p), {0.0, p}});
  } else {
    choices.push_back({"", {0.0, Mat()}});
  }

  std::vector<RowInstance> out;
  for (const auto& [desc, val] : choices) {
    BlockQuantizer b(space);
    for (size_t k = 0; k < row.cells.size(); ++k) {
      const auto& blk = table.column_blocks[k];
      const std::string& cell = row.cells[k];
      const int m = space->cg(blk[0], blk[1], blk[2]);
      Mat v;
      if (cell == "0") v = Mat::Zero(m, m);
      else if (cell == "1") v = Mat::Identity(m, m);
      else if (cell == "λ") v = val.first * Mat::Identity(m, m);
      else v = val.second;
      b.set_block(blk[0], blk[1], blk[2], v);
    }
    out.push_back({desc, std::move(b)});
  }
  return out;
}

std::vector<RowReport> match_reference(Classification& c, const ReferenceTable& table,
                                       const std::vector<cd>& samples, bool run_checks) {
  std::vector<RowReport> out;
  const auto strict_eqs = c.model == RelationModel::Strict
                              ? coherence_equations(*c.space, RelationModel::Strict)
                              : std::vector<Equation>{};
  for (const auto& row : table.rows) {
    RowReport rep;
    rep.label = row.label;
    for (const auto& inst : reference_instances(c.space, table, row, samples)) {
      ++rep.instances;
      const bool solution = c.model == RelationModel::Exact
                                ? check_coherence_blocks(inst.blocks).max < kTolerance
                                : equation_residual(strict_eqs, inst.blocks) < kTolerance;
      if (solution) ++rep.solutions;
      if (run_checks && c.space->has_triple()) {
        const auto r = check_conditions(algebra_from_blocks(inst.blocks));
        const double worst = std::max({r.coherence, r.naturality, r.normalization});
        rep.worst_residual = std::max(rep.worst_residual, worst);
        if (r.accepted()) ++rep.coherent;
      }
      if (!solution) continue;
      const int fam = locate_family(c, inst.blocks);
      if (fam < 0) continue;
      if (std::find(rep.families.begin(), rep.families.end(), fam) == rep.families.end())
        rep.families.push_back(fam);
      auto& matches = c.families[fam - 1].matches;
      if (std::find(matches.begin(), matches.end(), row.label) == matches.end())
        matches.push_back(row.label);
    }
    std::sort(rep.families.begin(), rep.families.end());
    out.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed forms

Quantizer closed_form(const SpacePtr& space, int alpha,
                      const std::vector<std::pair<int, Mat>>& terms, cd scale) {
  const auto& g = *space->group();
  const auto& reps = *space->irreps();
  const auto& td = space->dec().at(alpha, alpha);
  const GroupPtr& pair = space->pair();
  Element q = Element::one(pair);
  std::vector<std::pair<const IsotypicBlock*, Mat>> full;
  for (const auto& [gamma, b] : terms) {
    const IsotypicBlock* blk = td.block(gamma);
    if (!blk) fail(ErrorKind::Structural, "closed form: irrep absent from the tensor square");
    if (b.rows() != blk->mult || b.cols() != blk->mult)
      fail(ErrorKind::Structural, "closed form: block shape does not match the multiplicity");
    full.push_back({blk, kron(b, Mat::Identity(reps.dim(gamma), reps.dim(gamma)))});
  }
  const auto& d = reps[alpha].matrices;
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      const Mat conj = td.nu * kron(d[x], d[y]) * td.nu.adjoint();
      cd s = 0.0;
      for (const auto& [blk, b] : full) {
        const int n = static_cast<int>(b.rows());
        s += (conj.block(blk->offset, blk->offset, n, n).conjugate().cwiseProduct(b)).sum();
      }
      q[pair->pair(x, y)] += scale * s;
    }
  return {space, q};
}

Quantizer reference_closed_form(const SpacePtr& space, const std::string& label,
                                ClosedFormScale scale, cd p, const Mat& m) {
  const std::string& name = space->group()->name();
  const double n = space->group()->order();
  auto one = [] { return Mat::Identity(1, 1); };
  if (name == "S3") {
    const double factor = scale == ClosedFormScale::Unit ? 1.0 : 4.0 / (n * n);
    if (label == "a") return closed_form(space, 2, {{0, one()}, {1, one()}}, p * factor);
    if (label == "b") return closed_form(space, 2, {{1, one()}, {2, one()}}, factor);
    if (label == "c") return closed_form(space, 2, {{2, one()}}, factor);
    if (label == "d") return closed_form(space, 2, {{1, one()}}, factor);
    if (label == "e") return closed_form(space, 2, {{0, one()}, {1, one()}}, factor);
  } else if (name == "A4") {
    const double factor = scale == ClosedFormScale::Unit ? 1.0 : 9.0 / (n * n);
    if (m.rows() != 2 || m.cols() != 2)
      fail(ErrorKind::Structural, "closed form: A4 families need a 2 x 2 matrix");
    if (label == "a" || label == "b") return closed_form(space, 3, {{3, m}}, factor);
    if (label == "c") return closed_form(space, 3, {{1, one()}, {3, m}}, factor);
    if (label == "d") return closed_form(space, 3, {{2, one()}, {3, m}}, factor);
    if (label == "e") return closed_form(space, 3, {{1, one()}, {2, one()}, {3, m}}, factor);
  }
  fail(ErrorKind::Capability, "no closed form '" + label + "' for group " + name);
}

}  // namespace gquant
