#include "gquant/quantizer.hpp"

#include <algorithm>
#include <cmath>

#include "gquant/errors.hpp"

namespace gquant {

const GroupPtr& QuantizerSpace::triple() const {
  if (!triple_)
    fail(ErrorKind::Capacity, "G x G x G for " + group_->name() + " exceeds the product cap");
  return triple_;
}

SpacePtr make_space(const GroupPtr& g, std::uint64_t seed) {
  auto s = std::make_shared<QuantizerSpace>();
  s->group_ = g;
  s->irreps_ = builtin_irreps(g);
  s->pair_ = make_product(g, g);
  s->pair_irreps_ = builtin_irreps(s->pair_);
  const long n = g->order();
  if (n * n * n <= kMaxProductOrder) s->triple_ = make_product(s->pair_, g);
  s->dec_ = make_decompositions(s->irreps_, seed);
  return s;
}

Quantizer Quantizer::trivial(const SpacePtr& space) {
  return {space, Element::one(space->pair())};
}

Quantizer make_quantizer(const Element& q, std::uint64_t seed) {
  const GroupPtr& p = q.group();
  if (p->kind() != GroupKind::Product || !p->left()->same_as(*p->right()))
    fail(ErrorKind::Structural, "a quantizer lives over G x G, got " + p->name());
  auto space = make_space(p->left(), seed);
  return {space, Element(space->pair(), q.coeffs())};
}

// ---- blocks ----

BlockQuantizer::BlockQuantizer(SpacePtr space) : space_(std::move(space)) {
  const int k = space_->rank();
  blocks_.resize(static_cast<size_t>(k) * k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const int m = space_->cg(a, b, c);
        if (m > 0) blocks_[index(a, b, c)] = Mat::Identity(m, m);
      }
}

size_t BlockQuantizer::index(int a, int b, int c) const {
  const int k = space_->rank();
  if (a < 0 || b < 0 || c < 0 || a >= k || b >= k || c >= k)
    fail(ErrorKind::Structural, "irrep index out of range");
  return (static_cast<size_t>(a) * k + b) * k + c;
}

bool BlockQuantizer::has_block(int a, int b, int c) const {
  return blocks_[index(a, b, c)].size() > 0;
}

const Mat& BlockQuantizer::block(int a, int b, int c) const {
  const Mat& m = blocks_[index(a, b, c)];
  if (m.size() == 0)
    fail(ErrorKind::Structural, "E_" + std::to_string(c) + " does not occur in E_" +
                                    std::to_string(a) + " (x) E_" + std::to_string(b));
  return m;
}

void BlockQuantizer::set_block(int a, int b, int c, const Mat& m) {
  const int mult = space_->cg(a, b, c);
  if (mult == 0 || m.rows() != mult || m.cols() != mult)
    fail(ErrorKind::Structural, "block (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ") must be " + std::to_string(mult) +
                                    " x " + std::to_string(mult));
  blocks_[index(a, b, c)] = m;
}

std::vector<BlockVar> block_variables(const QuantizerSpace& space) {
  std::vector<BlockVar> out;
  const int k = space.rank();
  for (int a = 1; a < k; ++a)
    for (int b = 1; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        const int m = space.cg(a, b, c);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) out.push_back({a, b, c, i, j, m == 1});
      }
  return out;
}

std::string variable_name(const QuantizerSpace& space, const BlockVar& v) {
  const int k = space.rank();
  auto idx = [&](int x, int y) {
    return k <= 10 ? std::to_string(x) + std::to_string(y)
                   : std::to_string(x) + "," + std::to_string(y);
  };
  const auto& td = space.dec().at(v.a, v.b);
  const bool single = td.blocks.size() == 1 && td.blocks.front().mult == 1;
  if (single) return "q_" + idx(v.a, v.b);
  std::string s = "q^" + std::to_string(v.c) + "_" + idx(v.a, v.b);
  if (!v.scalar) s += "[" + std::to_string(v.i) + "," + std::to_string(v.j) + "]";
  return s;
}

cd variable_value(const BlockQuantizer& b, const BlockVar& v) {
  return b.block(v.a, v.b, v.c)(v.i, v.j);
}

void set_variable(BlockQuantizer& b, const BlockVar& v, cd value) {
  Mat m = b.block(v.a, v.b, v.c);
  m(v.i, v.j) = value;
  b.set_block(v.a, v.b, v.c, m);
}

// ---- algebra-side conditions ----

double coherence_residual(const Quantizer& q) {
  const GroupPtr& t = q.space->triple();
  const Element lhs = triple_embed(q.q, t, TripleEmbedding::OneDelta) *
                      triple_embed(q.q, t, TripleEmbedding::OneTensor);
  const Element rhs = triple_embed(q.q, t, TripleEmbedding::DeltaOne) *
                      triple_embed(q.q, t, TripleEmbedding::TensorOne);
  return (lhs - rhs).norm_inf();
}

double naturality_residual(const Quantizer& q) {
  const FiniteGroup& g = *q.space->group();
  const FiniteGroup& p = *q.space->pair();
  const int n = g.order();
  double worst = 0.0;
  std::vector<cd> right(p.order()), left(p.order());
  for (int x = 0; x < n; ++x) {
    std::fill(right.begin(), right.end(), 0.0);
    std::fill(left.begin(), left.end(), 0.0);
    for (int gh = 0; gh < p.order(); ++gh) {
      const cd c = q.q[gh];
      if (c == 0.0) continue;
      const int a = p.first(gh), b = p.second(gh);
      right[p.pair(g.mul(a, x), g.mul(b, x))] += c;
      left[p.pair(g.mul(x, a), g.mul(x, b))] += c;
    }
    for (int i = 0; i < p.order(); ++i) worst = std::max(worst, std::abs(right[i] - left[i]));
  }
  return worst;
}

double normalization_residual(const Quantizer& q) {
  const FiniteGroup& g = *q.space->group();
  const FiniteGroup& p = *q.space->pair();
  const int n = g.order();
  std::vector<cd> first(n, 0.0), second(n, 0.0);
  for (int gh = 0; gh < p.order(); ++gh) {
    first[p.second(gh)] += q.q[gh];   // (eps (x) 1) q
    second[p.first(gh)] += q.q[gh];   // (1 (x) eps) q
  }
  first[g.identity()] -= 1.0;
  second[g.identity()] -= 1.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max({worst, std::abs(first[i]), std::abs(second[i])});
  return worst;
}

ConditionReport check_conditions(const Quantizer& q) {
  return {coherence_residual(q), naturality_residual(q), normalization_residual(q)};
}

// ---- Fourier picture ----

FourierImage quantizer_fourier(const Quantizer& q) {
  return fourier_forward(q.q, q.space->pair_irreps());
}

BlockQuantizer blocks_from_algebra(const Quantizer& q) {
  const QuantizerSpace& s = *q.space;
  const IrrepSet& reps = *s.irreps();
  const FourierImage img = quantizer_fourier(q);
  BlockQuantizer out(q.space);
  const int k = s.rank();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const auto& td = s.dec().at(a, b);
      const Mat x = td.nu * img.blocks[s.pair_irreps()->pair(a, b)] * td.nu.adjoint();
      std::vector<Mat> parts;
      for (const auto& blk : td.blocks) {
        const int d = reps.dim(blk.gamma);
        Mat m(blk.mult, blk.mult);
        for (int i = 0; i < blk.mult; ++i)
          for (int j = 0; j < blk.mult; ++j)
            m(i, j) = x.block(blk.offset + i * d, blk.offset + j * d, d, d).trace() /
                      static_cast<double>(d);
        parts.push_back(kron(m, Mat::Identity(d, d)));
        out.set_block(a, b, blk.gamma, m);
      }
      if (max_abs(x - direct_sum(parts)) > kZeroCutoff)
        fail(ErrorKind::Naturality, "block (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") has off-structure mass; q is not natural");
    }
  return out;
}

std::vector<Mat> assemble(const BlockQuantizer& b) {
  const QuantizerSpace& s = *b.space();
  const IrrepSet& reps = *s.irreps();
  const int k = s.rank();
  std::vector<Mat> out(static_cast<size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c) {
      const auto& td = s.dec().at(a, c);
      std::vector<Mat> parts;
      for (const auto& blk : td.blocks) {
        const int d = reps.dim(blk.gamma);
        parts.push_back(kron(b.block(a, c, blk.gamma), Mat::Identity(d, d)));
      }
      out[s.pair_irreps()->pair(a, c)] = td.nu.adjoint() * direct_sum(parts) * td.nu;
    }
  return out;
}

Quantizer algebra_from_blocks(const BlockQuantizer& b) {
  FourierImage img{b.space()->pair_irreps(), assemble(b)};
  Element q = fourier_inverse(img);
  return {b.space(), q};
}

std::pair<Mat, Mat> coherence_sides(const BlockQuantizer& q, int a, int b, int c) {
  const QuantizerSpace& s = *q.space();
  const IrrepSet& reps = *s.irreps();
  const auto full = assemble(q);
  auto qhat = [&](int x, int y) -> const Mat& { return full[s.pair_irreps()->pair(x, y)]; };
  const int da = reps.dim(a), db = reps.dim(b), dc = reps.dim(c);
  const int dbc = db * dc, dab = da * db;

  // Left: Q_{a, b(x)c} (I_a (x) q_bc), with Q_{a, b(x)c} assembled over the
  // decomposition of E_b (x) E_c.
  const auto& tbc = s.dec().at(b, c);
  Mat mid = Mat::Zero(da * dbc, da * dbc);
  for (const auto& blk : tbc.blocks) {
    const int de = reps.dim(blk.gamma);
    const Mat& qa = qhat(a, blk.gamma);
    for (int copy = 0; copy < blk.mult; ++copy) {
      const int o = blk.offset + copy * de;
      for (int x = 0; x < da; ++x)
        for (int kk = 0; kk < de; ++kk)
          for (int x2 = 0; x2 < da; ++x2)
            for (int k2 = 0; k2 < de; ++k2)
              mid(x * dbc + o + kk, x2 * dbc + o + k2) = qa(x * de + kk, x2 * de + k2);
    }
  }
  const Mat lift_bc = kron(Mat::Identity(da, da), tbc.nu);
  const Mat lhs = lift_bc.adjoint() * mid * lift_bc * kron(Mat::Identity(da, da), qhat(b, c));

  // Right: Q_{a(x)b, c} (q_ab (x) I_c).
  const auto& tab = s.dec().at(a, b);
  Mat mid2 = Mat::Zero(dab * dc, dab * dc);
  for (const auto& blk : tab.blocks) {
    const int dx = reps.dim(blk.gamma);
    const Mat& qc = qhat(blk.gamma, c);
    for (int copy = 0; copy < blk.mult; ++copy) {
      const int o = blk.offset + copy * dx;
      for (int kk = 0; kk < dx; ++kk)
        for (int y = 0; y < dc; ++y)
          for (int k2 = 0; k2 < dx; ++k2)
            for (int y2 = 0; y2 < dc; ++y2)
              mid2((o + kk) * dc + y, (o + k2) * dc + y2) = qc(kk * dc + y, k2 * dc + y2);
    }
  }
  const Mat lift_ab = kron(tab.nu, Mat::Identity(dc, dc));
  const Mat rhs = lift_ab.adjoint() * mid2 * lift_ab * kron(qhat(a, b), Mat::Identity(dc, dc));
  return {lhs, rhs};
}

BlockCoherence check_coherence_blocks(const BlockQuantizer& b) {
  BlockCoherence out;
  const int k = b.space()->rank();
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z) {
        auto [l, r] = coherence_sides(b, x, y, z);
        const double res = op_inf_norm(l - r);
        out.triples.push_back({x, y, z, res});
        out.max = std::max(out.max, res);
      }
  return out;
}

double block_normalization_residual(const BlockQuantizer& b) {
  double worst = 0.0;
  for (int a = 0; a < b.space()->rank(); ++a) {
    worst = std::max(worst, std::abs(b.scalar(0, a, a) - 1.0));
    worst = std::max(worst, std::abs(b.scalar(a, 0, a) - 1.0));
  }
  return worst;
}

double min_singular_value(const BlockQuantizer& b) {
  double m = INFINITY;
  for (const auto& blk : assemble(b)) m = std::min(m, smallest_singular_value(blk));
  return m;
}

bool is_regular(const BlockQuantizer& b, double cutoff) { return min_singular_value(b) > cutoff; }

bool is_regular(const Quantizer& q, double cutoff) {
  for (const auto& blk : quantizer_fourier(q).blocks)
    if (smallest_singular_value(blk) <= cutoff) return false;
  return true;
}

// ---- gauge ----

namespace {

void validate_gauge(const GaugeElement& l, int rank) {
  if (static_cast<int>(l.l.size()) != rank)
    fail(ErrorKind::Structural, "gauge element has the wrong number of scalars");
  for (cd x : l.l)
    if (std::abs(x) == 0.0) fail(ErrorKind::Structural, "gauge scalars must be nonzero");
}

}  // namespace

GaugeElement gauge_compose(const GaugeElement& x, const GaugeElement& y) {
  GaugeElement r = x;
  for (size_t i = 0; i < r.l.size(); ++i) r.l[i] *= y.l.at(i);
  return r;
}

GaugeElement gauge_inverse(const GaugeElement& x) {
  GaugeElement r = x;
  for (auto& v : r.l) v = 1.0 / v;
  return r;
}

BlockQuantizer gauge_apply(const GaugeElement& l, const BlockQuantizer& b) {
  const int k = b.space()->rank();
  validate_gauge(l, k);
  BlockQuantizer out = b;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int z = 0; z < k; ++z)
        if (b.has_block(x, y, z))
          out.set_block(x, y, z, b.block(x, y, z) * (l.l[z] / (l.l[x] * l.l[y])));
  return out;
}

Element gauge_to_algebra(const QuantizerSpace& space, const GaugeElement& l) {
  validate_gauge(l, space.rank());
  FourierImage img{space.irreps(), {}};
  for (int a = 0; a < space.rank(); ++a)
    img.blocks.push_back(l.l[a] * Mat::Identity(space.irreps()->dim(a), space.irreps()->dim(a)));
  return fourier_inverse(img);
}

std::vector<cd> central_scalars(const QuantizerSpace& space, const Element& l) {
  const FiniteGroup& g = *l.group();
  if (!g.same_as(*space.group()))
    fail(ErrorKind::Structural, "unit lives over a different group");
  const double scale = std::max(1.0, l.norm_inf());
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      if (std::abs(l[g.mul(g.mul(y, x), g.inv(y))] - l[x]) > 1e-12 * scale)
        fail(ErrorKind::Capability, "only central units are supported as gauge elements");
  const FourierImage img = fourier_forward(l, space.irreps());
  std::vector<cd> out;
  for (const auto& b : img.blocks) out.push_back(b(0, 0));
  return out;
}

Element algebra_inverse(const Element& l) {
  const FiniteGroup& g = *l.group();
  const int n = g.order();
  Mat lm(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) lm(x, y) = l[g.mul(x, g.inv(y))];
  Eigen::FullPivLU<Mat> lu(lm);
  lu.setThreshold(1e-10);
  if (lu.rank() < n) fail(ErrorKind::Singularity, "element is not invertible in C[G]");
  Vec rhs = Vec::Zero(n);
  rhs(g.identity()) = 1.0;
  Vec x = lu.solve(rhs);
  Element inv(l.group(), std::vector<cd>(x.data(), x.data() + n));
  if ((l * inv - Element::one(l.group())).norm_inf() > 1e-9)
    fail(ErrorKind::Singularity, "inverse in C[G] is numerically unreliable");
  return inv;
}

Quantizer gauge_apply_algebra(const Element& l, const Quantizer& q) {
  central_scalars(*q.space, l);
  const Element inv = algebra_inverse(l);
  const GroupPtr& p = q.space->pair();
  Element out = diagonal_embed(l, p) * q.q * tensor_embed(inv, inv, p);
  return {q.space, out};
}

}  // namespace gquant
