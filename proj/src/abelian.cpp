#include "gquant/abelian.hpp"

#include <algorithm>
#include <map>

#include "gquant/errors.hpp"

namespace gquant {

namespace {

void require_abelian(const IrrepSet& reps) {
  if (!reps.group()->is_abelian() || reps.cyclic_orders().empty())
    fail(ErrorKind::Capability, "cocycles need a cyclic group or a product of cyclics");
}

int index_of_exponents(const IrrepSet& reps, const std::vector<int>& e) {
  for (int a = 0; a < reps.size(); ++a)
    if (reps.exponents(a) == e) return a;
  fail(ErrorKind::Structural, "exponent tuple outside the dual group");
}

}  // namespace

Cocycle Cocycle::trivial(const IrrepsPtr& dual) {
  return {dual, std::vector<std::vector<cd>>(dual->size(), std::vector<cd>(dual->size(), 1.0))};
}

int dual_multiply(const IrrepSet& reps, int a, int b) {
  require_abelian(reps);
  const auto& orders = reps.cyclic_orders();
  std::vector<int> e(orders.size());
  for (size_t i = 0; i < orders.size(); ++i)
    e[i] = (reps.exponents(a)[i] + reps.exponents(b)[i]) % orders[i];
  return index_of_exponents(reps, e);
}

double cocycle_check(const Cocycle& z) {
  const auto& reps = *z.dual;
  require_abelian(reps);
  const int n = reps.size();
  if (static_cast<int>(z.values.size()) != n)
    fail(ErrorKind::Structural, "cocycle table does not match the dual group");
  for (const auto& row : z.values)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::Structural, "cocycle table does not match the dual group");
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] = dual_multiply(reps, a, b);
  double worst = 0;
  for (int a = 0; a < n; ++a) {
    worst = std::max({worst, std::abs(z(0, a) - 1.0), std::abs(z(a, 0) - 1.0)});
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        worst = std::max(worst, std::abs(z(m[a][b], c) * z(a, b) - z(a, m[b][c]) * z(b, c)));
  }
  return worst;
}

Cocycle alternating_bicharacter(const IrrepsPtr& dual, const std::vector<std::vector<cd>>& c) {
  require_abelian(*dual);
  const int n = dual->size();
  const size_t r = dual->cyclic_orders().size();
  Cocycle z = Cocycle::trivial(dual);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cd v = 1.0;
      for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
          v *= std::pow(c[j][i], dual->exponents(a)[j] * dual->exponents(b)[i]);
      z.values[a][b] = snap(v);
    }
  return z;
}

Quantizer quantizer_from_cocycle(const SpacePtr& space, const Cocycle& z, bool require_valid,
                                 double tol) {
  if (z.dual->group()->name() != space->group()->name())
    fail(ErrorKind::Structural, "cocycle and quantizer space use different groups");
  if (require_valid) {
    const double r = cocycle_check(z);
    if (r > tol) fail(ErrorKind::Rejected, "table fails the cocycle identity (residual " + std::to_string(r) + ")");
  }
  const auto& pair = *space->pair_irreps();
  const int n = z.dual->size();
  FourierImage img{space->pair_irreps(), {}};
  for (int ab = 0; ab < pair.size(); ++ab)
    img.blocks.push_back(Mat::Constant(1, 1, z(ab / n, ab % n)));
  return {space, fourier_inverse(img)};
}

Cocycle apply_coboundary(const Cocycle& z, const std::vector<cd>& l) {
  const int n = z.dual->size();
  Cocycle out = z;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.values[a][b] = z(a, b) * l[dual_multiply(*z.dual, a, b)] / (l[a] * l[b]);
  return out;
}

CoboundaryReduction coboundary_reduce(const Cocycle& z, double tol) {
  const auto& reps = *z.dual;
  require_abelian(reps);
  const int n = reps.size();
  for (const auto& row : z.values)
    for (cd v : row)
      if (std::abs(v) < kZeroCutoff) fail(ErrorKind::Rejected, "coboundary reduction needs nonzero values");
  const double r0 = cocycle_check(z);
  if (r0 > tol) fail(ErrorKind::Rejected, "table fails the cocycle identity");

  const auto& orders = reps.cyclic_orders();
  const size_t r = orders.size();
  std::vector<int> gen(r);
  for (size_t i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1 % orders[i];
    gen[i] = index_of_exponents(reps, e);
  }
  std::vector<std::vector<cd>> c(r, std::vector<cd>(r, 1.0));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j) c[j][i] = snap(z(gen[j], gen[i]) / z(gen[i], gen[j]));
  CoboundaryReduction out;
  out.representative = alternating_bicharacter(z.dual, c);

  // w = z / z_can is symmetric, hence w(a,b) = l_a l_b / l_ab; build l along
  // the generators.
  auto w = [&](int a, int b) { return z(a, b) / out.representative(a, b); };
  std::vector<cd> l(n, 0.0), step(r);
  l[0] = 1.0;
  for (size_t i = 0; i < r; ++i) {
    cd prod = 1.0;
    int x = gen[i];
    for (int m = 1; m < orders[i]; ++m) {
      prod *= w(x, gen[i]);
      x = dual_multiply(reps, x, gen[i]);
    }
    step[i] = std::pow(prod, 1.0 / orders[i]);
  }
  std::vector<int> order_visit{0};
  for (size_t i = 0; i < r; ++i) {
    const size_t known = order_visit.size();
    for (size_t k = 0; k < known; ++k) {
      int x = order_visit[k];
      for (int m = 1; m < orders[i]; ++m) {
        const int y = dual_multiply(reps, x, gen[i]);
        l[y] = l[x] * step[i] / w(x, gen[i]);
        order_visit.push_back(y);
        x = y;
      }
    }
  }
  out.gauge = l;
  const Cocycle check = apply_coboundary(z, l);
  double diff = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) diff = std::max(diff, std::abs(check(a, b) - out.representative(a, b)));
  if (diff > 1e-7) fail(ErrorKind::Numerical, "coboundary reduction failed to verify");
  out.trivial = true;
  for (const auto& row : out.representative.values)
    for (cd v : row)
      if (std::abs(v - 1.0) > tol) out.trivial = false;
  return out;
}

EquivariantAlgebra twisted_group_algebra(const Cocycle& z) {
  EquivariantAlgebra a = graded_group_algebra(z.dual);
  const int n = a.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.mult.col(i * n + j) *= z(i, j);
  return a;
}

}  // namespace gquant
