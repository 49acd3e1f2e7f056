#include "gquant/actions.hpp"

#include <algorithm>

#include "gquant/errors.hpp"

namespace gquant {

Mat quantizer_operator(const Quantizer& q, const std::vector<Mat>& rx, const std::vector<Mat>& ry) {
  const auto& pair = *q.q.group();
  const int nx = static_cast<int>(rx.at(0).rows()), ny = static_cast<int>(ry.at(0).rows());
  Mat out = Mat::Zero(nx * ny, nx * ny);
  for (int gh = 0; gh < pair.order(); ++gh) {
    const cd c = q.q[gh];
    if (c == 0.0) continue;
    out += c * kron(rx[pair.first(gh)], ry[pair.second(gh)]);
  }
  return out;
}

EquivariantAlgebra function_algebra(const GroupPtr& g) {
  EquivariantAlgebra a;
  a.group = g;
  a.dim = g->order();
  a.rep = regular_representation(*g);
  a.mult = Mat::Zero(a.dim, a.dim * a.dim);
  for (int x = 0; x < a.dim; ++x) a.mult(x, x * a.dim + x) = 1.0;
  return a;
}

EquivariantAlgebra graded_group_algebra(const IrrepsPtr& reps) {
  const auto& g = *reps->group();
  if (!g.is_abelian()) fail(ErrorKind::Capability, "graded group algebra needs an abelian group");
  const int n = reps->size();
  EquivariantAlgebra a;
  a.group = reps->group();
  a.dim = n;
  for (int x = 0; x < g.order(); ++x) {
    Mat r = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) r(k, k) = (*reps)[k].character(x);
    a.rep.push_back(r);
  }
  a.mult = Mat::Zero(n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // The product character is the unique k with chi_k = chi_i chi_j.
      for (int k = 0; k < n; ++k) {
        bool same = true;
        for (int x = 0; x < g.order() && same; ++x)
          same = std::abs((*reps)[k].character(x) - (*reps)[i].character(x) * (*reps)[j].character(x)) < 1e-9;
        if (same) {
          a.mult(k, i * n + j) = 1.0;
          break;
        }
      }
    }
  return a;
}

double equivariance_residual(const EquivariantAlgebra& a) {
  double worst = 0;
  for (const auto& r : a.rep) worst = std::max(worst, max_abs(r * a.mult - a.mult * kron(r, r)));
  return worst;
}

double associativity_residual(const EquivariantAlgebra& a) {
  const Mat id = Mat::Identity(a.dim, a.dim);
  return max_abs(a.mult * kron(a.mult, id) - a.mult * kron(id, a.mult));
}

namespace {

void require_natural(const Quantizer& q, const GroupPtr& g, double tol) {
  if (!q.q.group()->left()->same_as(*g))
    fail(ErrorKind::Structural, "quantizer and module live over different groups");
  const double nat = naturality_residual(q);
  if (nat > tol)
    fail(ErrorKind::Rejected, "quantizer is not natural (residual " + std::to_string(nat) + ")");
}

}  // namespace

EquivariantAlgebra quantize_algebra(const EquivariantAlgebra& a, const Quantizer& q, double tol) {
  require_natural(q, a.group, tol);
  EquivariantAlgebra out = a;
  out.mult = a.mult * quantizer_operator(q, a.rep, a.rep);
  return out;
}

EquivariantModule regular_module(const EquivariantAlgebra& a) {
  return {a, a.dim, a.rep, a.mult};
}

EquivariantModule zero_module(const EquivariantAlgebra& a) {
  std::vector<Mat> rep(a.rep.size(), Mat::Zero(0, 0));
  return {a, 0, rep, Mat::Zero(0, 0)};
}

EquivariantModule quantize_module(const EquivariantModule& e, const Quantizer& q, double tol) {
  EquivariantModule out = e;
  out.algebra = quantize_algebra(e.algebra, q, tol);
  if (e.dim > 0) out.action = e.action * quantizer_operator(q, e.algebra.rep, e.rep);
  return out;
}

double module_residual(const EquivariantModule& e) {
  if (e.dim == 0) return 0;
  const Mat ia = Mat::Identity(e.algebra.dim, e.algebra.dim);
  const Mat ie = Mat::Identity(e.dim, e.dim);
  return max_abs(e.action * kron(e.algebra.mult, ie) - e.action * kron(ia, e.action));
}

double module_equivariance_residual(const EquivariantModule& e) {
  if (e.dim == 0) return 0;
  double worst = 0;
  for (size_t g = 0; g < e.rep.size(); ++g)
    worst = std::max(worst, max_abs(e.rep[g] * e.action - e.action * kron(e.algebra.rep[g], e.rep[g])));
  return worst;
}

Braiding flip_braiding(const GroupPtr& g, const std::vector<Mat>& rx, const std::vector<Mat>& ry) {
  return {g, rx, ry, flip(static_cast<int>(rx.at(0).rows()), static_cast<int>(ry.at(0).rows()))};
}

Braiding transport_braiding(const Braiding& s, const Quantizer& q) {
  if (!is_regular(q))
    fail(ErrorKind::Singularity, "braiding transport needs a regular quantizer");
  const Mat qxy = quantizer_operator(q, s.rep_x, s.rep_y);
  const Mat qyx = quantizer_operator(q, s.rep_y, s.rep_x);
  Eigen::FullPivLU<Mat> lu(qyx);
  if (!lu.isInvertible()) fail(ErrorKind::Singularity, "Q_{Y,X} is not invertible");
  Braiding out = s;
  out.sigma = lu.solve(s.sigma * qxy);
  return out;
}

double braiding_naturality(const Braiding& s) {
  double worst = 0;
  for (size_t g = 0; g < s.rep_x.size(); ++g)
    worst = std::max(worst, max_abs(s.sigma * kron(s.rep_x[g], s.rep_y[g]) -
                                    kron(s.rep_y[g], s.rep_x[g]) * s.sigma));
  return worst;
}

}  // namespace gquant
