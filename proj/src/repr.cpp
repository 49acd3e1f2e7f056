#include "gquant/repr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gquant/errors.hpp"

namespace gquant {

namespace {

Mat permutation_matrix(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(p[i], i) = 1.0;
  return m;
}

int parity(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

Irrep one_dim(int index, std::string name, const std::vector<cd>& values) {
  Irrep r;
  r.index = index;
  r.dim = 1;
  r.name = std::move(name);
  for (cd v : values) r.matrices.push_back(Mat::Constant(1, 1, v));
  return r;
}

std::vector<Irrep> cyclic_irreps(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<Irrep> out;
  for (int k = 0; k < n; ++k) {
    std::vector<cd> vals;
    for (int j = 0; j < n; ++j) vals.push_back(root_of_unity(n, j * k));
    out.push_back(one_dim(k, "chi" + std::to_string(k), vals));
  }
  return out;
}

// Trivial and sign only; enough for S1, S2, A1, A2.
std::vector<Irrep> small_perm_irreps(const FiniteGroup& g) {
  std::vector<Irrep> out;
  out.push_back(one_dim(0, "trivial", std::vector<cd>(g.order(), 1.0)));
  if (g.order() == 2) {
    std::vector<cd> sign;
    for (int x = 0; x < 2; ++x) sign.push_back(static_cast<double>(parity(g.permutation(x))));
    out.push_back(one_dim(1, "sign", sign));
  }
  return out;
}

std::vector<Irrep> s3_irreps(const FiniteGroup& g) {
  std::vector<Irrep> out;
  out.push_back(one_dim(0, "trivial", std::vector<cd>(g.order(), 1.0)));
  std::vector<cd> sign;
  for (int x = 0; x < g.order(); ++x) sign.push_back(static_cast<double>(parity(g.permutation(x))));
  out.push_back(one_dim(1, "sign", sign));

  // Orthonormal basis of the sum-zero plane in C^3.
  Eigen::MatrixXd b(3, 2);
  b << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
      -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
      0.0, -2.0 / std::sqrt(6.0);
  Irrep std2;
  std2.index = 2;
  std2.dim = 2;
  std2.name = "standard";
  for (int x = 0; x < g.order(); ++x) {
    Eigen::MatrixXd p = permutation_matrix(g.permutation(x)).real();
    std2.matrices.push_back((b.transpose() * p * b).cast<cd>());
  }
  out.push_back(std2);
  return out;
}

std::vector<Irrep> a4_irreps(const FiniteGroup& g) {
  const int n = g.order();
  // Image in A4/V4 = Z3, with t = (1,2,3) as generator.
  std::vector<int> v4;
  for (int x = 0; x < n; ++x)
    if (g.mul(x, x) == g.identity()) v4.push_back(x);
  const int t = g.index_of("(1,2,3)");
  std::vector<int> coset(n, -1);
  int tk = g.identity();
  for (int k = 0; k < 3; ++k) {
    for (int v : v4) coset[g.mul(tk, v)] = k;
    tk = g.mul(tk, t);
  }
  std::vector<cd> chi1, chi2;
  for (int x = 0; x < n; ++x) {
    chi1.push_back(root_of_unity(3, coset[x]));
    chi2.push_back(root_of_unity(3, 2 * coset[x]));
  }
  std::vector<Irrep> out;
  out.push_back(one_dim(0, "trivial", std::vector<cd>(n, 1.0)));
  out.push_back(one_dim(1, "chi1", chi1));
  out.push_back(one_dim(2, "chi2", chi2));

  // Rotation group of the tetrahedron with vertices v_i; M v_i = v_{g(i)}.
  // The resulting matrices are signed permutation matrices.
  Eigen::Matrix<double, 3, 4> verts;
  verts << 1, 1, -1, -1,
           1, -1, 1, -1,
           1, -1, -1, 1;
  const Eigen::Matrix3d base_inv = verts.leftCols<3>().inverse();
  Irrep three;
  three.index = 3;
  three.dim = 3;
  three.name = "three";
  for (int x = 0; x < n; ++x) {
    const auto& p = g.permutation(x);
    Eigen::Matrix3d img;
    for (int i = 0; i < 3; ++i) img.col(i) = verts.col(p[i]);
    Eigen::Matrix3d m = (img * base_inv).array().round().matrix();
    three.matrices.push_back(m.cast<cd>());
  }
  out.push_back(three);
  return out;
}

}  // namespace

std::string IrrepSet::key(int a) const {
  if (!is_product()) return std::to_string(a);
  return left_->key(first(a)) + "," + right_->key(second(a));
}

int IrrepSet::from_key(const std::string& k) const {
  for (int a = 0; a < size(); ++a)
    if (key(a) == k) return a;
  fail(ErrorKind::Parse, "unknown irrep key '" + k + "' for group " + group_->name());
}

IrrepsPtr builtin_irreps(const GroupPtr& g) {
  auto set = std::make_shared<IrrepSet>();
  set->group_ = g;
  switch (g->kind()) {
    case GroupKind::Cyclic:
      set->irreps_ = cyclic_irreps(*g);
      set->cyclic_orders_ = {g->order()};
      for (int k = 0; k < g->order(); ++k) set->exponents_.push_back({k});
      break;
    case GroupKind::Symmetric:
    case GroupKind::Alternating:
      if (g->order() <= 2) {
        set->irreps_ = small_perm_irreps(*g);
      } else if (g->kind() == GroupKind::Symmetric && g->param() == 3) {
        set->irreps_ = s3_irreps(*g);
      } else if (g->kind() == GroupKind::Alternating && g->param() == 4) {
        set->irreps_ = a4_irreps(*g);
      } else {
        fail(ErrorKind::Capability, "no builtin irreps for " + g->name());
      }
      break;
    case GroupKind::Product: {
      auto l = builtin_irreps(g->left());
      auto r = builtin_irreps(g->right());
      set->left_ = l;
      set->right_ = r;
      const int m = g->right()->order();
      for (int a = 0; a < l->size(); ++a)
        for (int b = 0; b < r->size(); ++b) {
          Irrep p;
          p.index = static_cast<int>(set->irreps_.size());
          p.dim = l->dim(a) * r->dim(b);
          p.name = "(" + (*l)[a].name + "," + (*r)[b].name + ")";
          for (int x = 0; x < g->order(); ++x)
            p.matrices.push_back(kron((*l)[a].matrices[x / m], (*r)[b].matrices[x % m]));
          set->irreps_.push_back(std::move(p));
        }
      if (!l->cyclic_orders().empty() && !r->cyclic_orders().empty()) {
        set->cyclic_orders_ = l->cyclic_orders();
        for (int o : r->cyclic_orders()) set->cyclic_orders_.push_back(o);
        for (int a = 0; a < l->size(); ++a)
          for (int b = 0; b < r->size(); ++b) {
            auto e = l->exponents(a);
            for (int x : r->exponents(b)) e.push_back(x);
            set->exponents_.push_back(e);
          }
      }
      break;
    }
  }
  return set;
}

IrrepCheck check_irrep(const FiniteGroup& g, const Irrep& rep) {
  IrrepCheck c;
  const int n = g.order();
  const Mat id = Mat::Identity(rep.dim, rep.dim);
  double norm2 = 0.0;
  for (int x = 0; x < n; ++x) {
    const Mat& dx = rep.matrices[x];
    c.unitarity = std::max(c.unitarity, max_abs(dx * dx.adjoint() - id));
    norm2 += std::norm(dx.trace());
    for (int y = 0; y < n; ++y)
      c.homomorphism =
          std::max(c.homomorphism, max_abs(dx * rep.matrices[y] - rep.matrices[g.mul(x, y)]));
  }
  c.irreducibility = std::abs(norm2 / n - 1.0);
  return c;
}

std::vector<std::vector<cd>> character_table(const IrrepSet& reps) {
  const auto& classes = reps.group()->classes();
  std::vector<std::vector<cd>> out(reps.size());
  for (int a = 0; a < reps.size(); ++a)
    for (const auto& cls : classes) out[a].push_back(reps[a].character(cls.front()));
  return out;
}

std::vector<int> clebsch_gordan(const IrrepSet& reps, int a, int b) {
  const int n = reps.group()->order();
  std::vector<int> out(reps.size(), 0);
  for (int c = 0; c < reps.size(); ++c) {
    cd s = 0.0;
    for (int g = 0; g < n; ++g)
      s += reps[a].character(g) * reps[b].character(g) * std::conj(reps[c].character(g));
    s /= static_cast<double>(n);
    const double r = std::round(s.real());
    if (std::abs(s - cd(r, 0.0)) > 1e-8)
      fail(ErrorKind::Numerical, "Clebsch-Gordan multiplicity is not an integer");
    out[c] = static_cast<int>(r);
  }
  return out;
}

Mat isotypic_projector(const IrrepSet& reps, const std::vector<Mat>& rep, int gamma) {
  const int n = reps.group()->order();
  if (static_cast<int>(rep.size()) != n)
    fail(ErrorKind::Structural, "representation does not match the group order");
  Mat p = Mat::Zero(rep.front().rows(), rep.front().cols());
  for (int g = 0; g < n; ++g) p += std::conj(reps[gamma].character(g)) * rep[g];
  return p * (static_cast<double>(reps.dim(gamma)) / n);
}

std::vector<Mat> regular_representation(const FiniteGroup& g) {
  std::vector<Mat> out;
  for (int x = 0; x < g.order(); ++x) {
    Mat m = Mat::Zero(g.order(), g.order());
    for (int y = 0; y < g.order(); ++y) m(g.mul(x, y), y) = 1.0;
    out.push_back(m);
  }
  return out;
}

std::vector<Mat> tensor_representation(const IrrepSet& reps, int a, int b) {
  std::vector<Mat> out;
  for (int g = 0; g < reps.group()->order(); ++g)
    out.push_back(kron(reps[a].matrices[g], reps[b].matrices[g]));
  return out;
}

int TensorDecomposition::multiplicity(int gamma) const {
  const auto* b = block(gamma);
  return b ? b->mult : 0;
}

const IsotypicBlock* TensorDecomposition::block(int gamma) const {
  for (const auto& b : blocks)
    if (b.gamma == gamma) return &b;
  return nullptr;
}

Mat TensorDecomposition::embedding(int gamma, int copy, int dim_gamma) const {
  const auto* b = block(gamma);
  return nu.middleRows(b->offset + copy * dim_gamma, dim_gamma).adjoint();
}

TensorDecomposition tensor_decomposition(const IrrepSet& reps, int a, int b,
                                         std::uint64_t seed) {
  const int n = reps.group()->order();
  const int dab = reps.dim(a) * reps.dim(b);
  const auto rep = tensor_representation(reps, a, b);
  const auto mult = clebsch_gordan(reps, a, b);

  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(a) * 1009 + b + 1)));
  std::normal_distribution<double> normal;

  TensorDecomposition td;
  td.alpha = a;
  td.beta = b;
  td.nu = Mat::Zero(dab, dab);
  int row = 0;
  for (int c = 0; c < reps.size(); ++c) {
    if (mult[c] == 0) continue;
    const int d = reps.dim(c);
    td.blocks.push_back({c, mult[c], row});
    std::vector<Mat> found;
    int attempts = 0;
    while (static_cast<int>(found.size()) < mult[c]) {
      if (++attempts > 64) fail(ErrorKind::Numerical, "could not build an adapted basis");
      Mat x(dab, d);
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cd(normal(rng), normal(rng));
      // Average over the group to land in Hom_G(E_c, E_a (x) E_b).
      Mat t = Mat::Zero(dab, d);
      for (int g = 0; g < n; ++g) t += rep[g] * x * reps[c].matrices[g].adjoint();
      t *= static_cast<double>(d) / n;
      for (const auto& f : found) t -= f * (f.adjoint() * t);
      if (t.norm() < 1e-7) continue;
      const double s = (t.adjoint() * t).trace().real() / d;
      found.push_back(t / std::sqrt(s));
    }
    for (const auto& f : found) {
      td.nu.middleRows(row, d) = f.adjoint();
      row += d;
    }
  }
  if (row != dab) fail(ErrorKind::Numerical, "multiplicities do not fill the tensor product");
  return td;
}

double decomposition_residual(const IrrepSet& reps, const TensorDecomposition& td) {
  const auto rep = tensor_representation(reps, td.alpha, td.beta);
  double worst = max_abs(td.nu * td.nu.adjoint() - Mat::Identity(td.nu.rows(), td.nu.cols()));
  for (int g = 0; g < reps.group()->order(); ++g) {
    std::vector<Mat> parts;
    for (const auto& b : td.blocks)
      parts.push_back(kron(Mat::Identity(b.mult, b.mult), reps[b.gamma].matrices[g]));
    worst = std::max(worst, max_abs(td.nu * rep[g] * td.nu.adjoint() - direct_sum(parts)));
  }
  return worst;
}

Recoupling recoupling(const Decompositions& dec, int a, int b, int c, int z) {
  const IrrepSet& reps = *dec.irreps();
  const int da = reps.dim(a), dc = reps.dim(c), dz = reps.dim(z);
  Recoupling out;
  std::vector<Vec> lv, rv;

  const auto& bc = dec.at(b, c);
  for (const auto& blk : bc.blocks) {
    const int eta = blk.gamma, de = reps.dim(eta);
    const auto& aeta = dec.at(a, eta);
    const auto* zb = aeta.block(z);
    if (!zb) continue;
    for (int i = 0; i < blk.mult; ++i) {
      const Mat lift = kron(Mat::Identity(da, da), bc.embedding(eta, i, de));
      for (int j = 0; j < zb->mult; ++j) {
        Vec v2 = aeta.nu.row(zb->offset + j * dz).adjoint();
        lv.push_back(lift * v2);
        out.left.push_back({eta, i, j});
      }
    }
  }
  const auto& ab = dec.at(a, b);
  for (const auto& blk : ab.blocks) {
    const int xi = blk.gamma, dx = reps.dim(xi);
    const auto& xic = dec.at(xi, c);
    const auto* zb = xic.block(z);
    if (!zb) continue;
    for (int i = 0; i < blk.mult; ++i) {
      const Mat lift = kron(ab.embedding(xi, i, dx), Mat::Identity(dc, dc));
      for (int j = 0; j < zb->mult; ++j) {
        Vec v2 = xic.nu.row(zb->offset + j * dz).adjoint();
        rv.push_back(lift * v2);
        out.right.push_back({xi, i, j});
      }
    }
  }
  if (lv.size() != rv.size())
    fail(ErrorKind::Numerical, "left and right recoupling bases differ in size");
  const Eigen::Index dim = lv.empty() ? 0 : lv.front().size();
  Mat l(dim, static_cast<Eigen::Index>(lv.size())), r(dim, static_cast<Eigen::Index>(rv.size()));
  for (size_t k = 0; k < lv.size(); ++k) {
    l.col(static_cast<Eigen::Index>(k)) = lv[k];
    r.col(static_cast<Eigen::Index>(k)) = rv[k];
  }
  out.F = l.adjoint() * r;
  return out;
}

namespace {

// When gamma occurs c > 1 times in gamma (x) gamma and some nontrivial
// one-dimensional chi fixes gamma, the recoupling F(chi, gamma, gamma; gamma)
// acts on the multiplicity space with distinct eigenvalues. Its eigenbasis,
// sorted by eigenvalue angle, is intrinsic. The relative phases are fixed by
// asking the flip of gamma (x) gamma to send copy k to copy 0 with a positive
// coefficient. For A4 this makes every recoupling but (3,3,3;3) diagonal.
void canonical_multiplicity_basis(Decompositions& dec, std::vector<TensorDecomposition>& table) {
  const IrrepSet& reps = *dec.irreps();
  const int k = reps.size();
  for (int g = 0; g < k; ++g) {
    auto& td = table[static_cast<size_t>(g) * k + g];
    const auto* blk = td.block(g);
    if (!blk || blk->mult < 2) continue;
    int chi = -1;
    for (int x = 1; x < k && chi < 0; ++x)
      if (reps.dim(x) == 1 && dec.cg(x, g, g) == 1) chi = x;
    if (chi < 0) continue;
    const Recoupling r = recoupling(dec, chi, g, g, g);
    if (r.F.rows() != blk->mult) continue;
    Eigen::ComplexEigenSolver<Mat> es(r.F);
    const auto& vals = es.eigenvalues();
    std::vector<int> order(blk->mult);
    for (int i = 0; i < blk->mult; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return std::arg(vals(x)) < std::arg(vals(y)); });
    bool distinct = true;
    for (int i = 1; i < blk->mult; ++i)
      distinct = distinct && std::abs(vals(order[i]) - vals(order[i - 1])) > 1e-6;
    if (!distinct) continue;
    Mat u(blk->mult, blk->mult);
    for (int i = 0; i < blk->mult; ++i) u.col(i) = es.eigenvectors().col(order[i]).normalized();

    const int d = reps.dim(g);
    Mat old = td.nu.middleRows(blk->offset, blk->mult * d);
    Mat fresh = Mat::Zero(old.rows(), old.cols());
    for (int nk = 0; nk < blk->mult; ++nk)
      for (int i = 0; i < blk->mult; ++i)
        fresh.middleRows(nk * d, d) += std::conj(u(i, nk)) * old.middleRows(i * d, d);

    const Mat sw = flip(d, d);
    for (int nk = 1; nk < blk->mult; ++nk) {
      Vec e0 = fresh.row(0).adjoint();
      Vec ek = fresh.row(nk * d).adjoint();
      cd coef = e0.dot(sw * ek);
      if (std::abs(coef) < 1e-6) continue;
      fresh.middleRows(nk * d, d) *= coef / std::abs(coef);
    }
    td.nu.middleRows(blk->offset, blk->mult * d) = fresh;
  }
}

}  // namespace

DecompositionsPtr make_decompositions(const IrrepsPtr& reps, std::uint64_t seed) {
  auto dec = std::make_shared<Decompositions>();
  dec->reps_ = reps;
  dec->seed_ = seed;
  const int k = reps->size();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) dec->table_.push_back(tensor_decomposition(*reps, a, b, seed));
  canonical_multiplicity_basis(*dec, dec->table_);
  for (const auto& td : dec->table_)
    if (decomposition_residual(*reps, td) > 1e-9)
      fail(ErrorKind::Numerical, "adapted basis fails its residual test");
  return dec;
}

}  // namespace gquant
