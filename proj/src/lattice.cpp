#include "gquant/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "gquant/linalg.hpp"

namespace gquant {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long l1(const std::vector<long long>& v) {
  long long s = 0;
  for (long long x : v) s += std::llabs(x);
  return s;
}

}  // namespace

IntMat int_identity(int n) {
  IntMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat int_multiply(const IntMat& a, const IntMat& b) {
  if (a.empty()) return {};
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, std::vector<long long>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

SmithForm smith_normal_form(const IntMat& a) {
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  SmithForm s;
  s.D = a;
  s.U = int_identity(m);
  s.V = int_identity(n);
  auto& d = s.D;
  auto swap_rows = [](IntMat& x, int i, int j) { std::swap(x[i], x[j]); };
  auto swap_cols = [](IntMat& x, int i, int j) {
    for (auto& r : x) std::swap(r[i], r[j]);
  };
  auto add_row = [](IntMat& x, int src, int dst, long long f) {
    for (size_t j = 0; j < x[dst].size(); ++j) x[dst][j] += f * x[src][j];
  };
  auto add_col = [](IntMat& x, int src, int dst, long long f) {
    for (auto& r : x) r[dst] += f * r[src];
  };

  int t = 0;
  for (; t < std::min(m, n); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (d[i][j] != 0 && (pi < 0 || std::llabs(d[i][j]) < std::llabs(d[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(d, t, pi);
    swap_rows(s.U, t, pi);
    swap_cols(d, t, pj);
    swap_cols(s.V, t, pj);
    bool done = false;
    while (!done) {
      done = true;
      for (int i = t + 1; i < m; ++i) {
        if (d[i][t] == 0) continue;
        long long f = floor_div(d[i][t], d[t][t]);
        add_row(d, t, i, -f);
        add_row(s.U, t, i, -f);
        if (d[i][t] != 0) {
          done = false;
          swap_rows(d, t, i);
          swap_rows(s.U, t, i);
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (d[t][j] == 0) continue;
        long long f = floor_div(d[t][j], d[t][t]);
        add_col(d, t, j, -f);
        add_col(s.V, t, j, -f);
        if (d[t][j] != 0) {
          done = false;
          swap_cols(d, t, j);
          swap_cols(s.V, t, j);
        }
      }
      if (done) {
        for (int i = t + 1; i < m && done; ++i)
          for (int j = t + 1; j < n && done; ++j)
            if (d[i][j] % d[t][t] != 0) {
              add_row(d, i, t, 1);
              add_row(s.U, i, t, 1);
              done = false;
            }
      }
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
  }
  s.rank = t;
  return s;
}

int int_rank(const IntMat& rows) {
  if (rows.empty()) return 0;
  return smith_normal_form(rows).rank;
}

bool in_row_lattice(const IntMat& basis, const IntMat& rows, int ncols) {
  if (basis.empty()) {
    for (const auto& r : rows)
      for (long long x : r)
        if (x != 0) return false;
    return true;
  }
  // U B V = D, so row space of B is {y D V^-1}; v = y' D V^-1 iff (v V)_j is a
  // multiple of d_j for j < rank and zero beyond.
  const SmithForm s = smith_normal_form(basis);
  for (const auto& r : rows) {
    for (int j = 0; j < ncols; ++j) {
      long long val = 0;
      for (int i = 0; i < ncols; ++i) val += r[i] * s.V[i][j];
      const long long dj = (j < s.rank) ? s.D[j][j] : 0;
      if (dj == 0) {
        if (val != 0) return false;
      } else if (val % dj != 0) {
        return false;
      }
    }
  }
  return true;
}

bool same_row_lattice(const IntMat& a, const IntMat& b, int ncols) {
  return in_row_lattice(a, b, ncols) && in_row_lattice(b, a, ncols);
}

IntMat lattice_basis(const IntMat& rows, int ncols, std::vector<std::complex<double>>* coefs,
                     bool* consistent) {
  using cplx = std::complex<double>;
  IntMat h;
  std::vector<cplx> c;
  bool ok = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const cplx ci = coefs ? (*coefs)[i] : cplx(1.0);
    if (std::any_of(r.begin(), r.end(), [](long long x) { return x != 0; })) {
      h.push_back(r);
      c.push_back(ci);
    } else if (std::abs(ci - 1.0) > 1e-7) {
      ok = false;
    }
  }
  auto axpy = [&](size_t dst, size_t src, long long f) {
    for (int j = 0; j < ncols; ++j) h[dst][j] += f * h[src][j];
    c[dst] *= std::pow(c[src], static_cast<double>(f));
  };
  auto negate = [&](size_t i) {
    for (auto& x : h[i]) x = -x;
    c[i] = 1.0 / c[i];
  };
  // Hermite-style elimination, column by column.
  size_t row = 0;
  for (int col = 0; col < ncols && row < h.size(); ++col) {
    while (true) {
      int piv = -1;
      for (size_t i = row; i < h.size(); ++i)
        if (h[i][col] != 0 &&
            (piv < 0 || std::llabs(h[i][col]) < std::llabs(h[static_cast<size_t>(piv)][col])))
          piv = static_cast<int>(i);
      if (piv < 0) break;
      std::swap(h[row], h[static_cast<size_t>(piv)]);
      std::swap(c[row], c[static_cast<size_t>(piv)]);
      bool cleared = true;
      for (size_t i = row + 1; i < h.size(); ++i) {
        if (h[i][col] == 0) continue;
        axpy(i, row, -floor_div(h[i][col], h[row][col]));
        if (h[i][col] != 0) cleared = false;
      }
      if (cleared) {
        if (h[row][col] < 0) negate(row);
        ++row;
        break;
      }
    }
  }
  for (size_t i = row; i < h.size(); ++i)
    if (std::abs(c[i] - 1.0) > 1e-7) ok = false;
  h.resize(row);
  c.resize(row);
  // Greedy L1 shortening: replace b_i by b_i +- b_j while it gets shorter.
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t i = 0; i < h.size(); ++i)
      for (size_t j = 0; j < h.size(); ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          std::vector<long long> v(ncols);
          for (int t = 0; t < ncols; ++t) v[t] = h[i][t] + sign * h[j][t];
          if (l1(v) < l1(h[i])) {
            axpy(i, j, sign);
            improved = true;
          }
        }
      }
  }
  auto lead = [](const std::vector<long long>& r) {
    return std::find_if(r.begin(), r.end(), [](long long x) { return x != 0; }) - r.begin();
  };
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i][static_cast<size_t>(lead(h[i]))] < 0) negate(i);
  std::vector<size_t> order(h.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (lead(h[a]) != lead(h[b])) return lead(h[a]) < lead(h[b]);
    if (l1(h[a]) != l1(h[b])) return l1(h[a]) < l1(h[b]);
    return h[a] > h[b];
  });
  IntMat out;
  std::vector<cplx> outc;
  for (size_t i : order) {
    out.push_back(h[i]);
    outc.push_back(c[i]);
  }
  if (coefs) *coefs = outc;
  if (consistent) *consistent = ok;
  return out;
}

}  // namespace gquant

namespace gquant {

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx z, long long k) {
  cplx r = 1.0;
  cplx b = k < 0 ? 1.0 / z : z;
  for (long long n = std::llabs(k); n > 0; n >>= 1) {
    if (n & 1) r *= b;
    b *= b;
  }
  return r;
}

cplx principal_root(cplx b, long long d, long long j) {
  const double pi = std::acos(-1.0);
  if (std::abs(b - 1.0) < 1e-9) return root_of_unity(static_cast<int>(d), static_cast<int>(j));
  return snap(std::exp((std::log(b) + cplx(0, 2 * pi * static_cast<double>(j))) /
                       static_cast<double>(d)));
}

IntMat unimodular_inverse(const IntMat& v) {
  const int n = static_cast<int>(v.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(v[i][j]);
  const Eigen::MatrixXd inv = m.inverse();
  IntMat r(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = std::llround(inv(i, j));
  if (int_multiply(r, v) != int_identity(n))
    throw std::runtime_error("unimodular inverse failed");
  return r;
}

}  // namespace

std::vector<cplx> TorusSolution::point(int branch, const std::vector<cplx>& t) const {
  std::vector<cplx> x = branches[branch].coef;
  for (int i = 0; i < nvars; ++i)
    for (int l = 0; l < params(); ++l) x[i] *= ipow(t[l], exps[i][l]);
  return x;
}

int TorusSolution::locate(const std::vector<cplx>& x, std::vector<cplx>* t, double tol) const {
  for (cplx v : x)
    if (std::abs(v) < 1e-12) return -1;
  std::vector<cplx> y(nvars, 1.0);
  for (int s = 0; s < nvars; ++s)
    for (int i = 0; i < nvars; ++i) y[s] *= ipow(x[i], Vinv[s][i]);
  for (size_t b = 0; b < branches.size(); ++b) {
    bool ok = true;
    for (int s = 0; s < rank && ok; ++s)
      ok = std::abs(y[s] - branches[b].roots[s]) < tol * std::max(1.0, std::abs(y[s]));
    if (!ok) continue;
    std::vector<cplx> params(this->params());
    for (int l = 0; l < this->params(); ++l) params[l] = ipow(y[rank + l], param_sign[l]);
    // Guard against tolerance slack: the reconstructed point must agree.
    const auto back = point(static_cast<int>(b), params);
    for (int i = 0; i < nvars && ok; ++i)
      ok = std::abs(back[i] - x[i]) < tol * std::max(1.0, std::abs(x[i]));
    if (!ok) continue;
    if (t) *t = params;
    return static_cast<int>(b);
  }
  return -1;
}

TorusSolution solve_binomials(const IntMat& rows, const std::vector<cplx>& beta, int nvars) {
  TorusSolution sol;
  sol.nvars = nvars;
  std::vector<cplx> bprime;
  IntMat d;
  if (rows.empty()) {
    sol.V = int_identity(nvars);
  } else {
    const SmithForm snf = smith_normal_form(rows);
    sol.V = snf.V;
    sol.rank = snf.rank;
    d = snf.D;
    for (size_t s = 0; s < rows.size(); ++s) {
      cplx v = 1.0;
      for (size_t t = 0; t < rows.size(); ++t) v *= ipow(beta[t], snf.U[s][t]);
      bprime.push_back(v);
    }
    for (size_t s = sol.rank; s < rows.size(); ++s)
      if (std::abs(bprime[s] - 1.0) > 1e-7) sol.consistent = false;
  }
  sol.Vinv = unimodular_inverse(sol.V);
  const int nfree = nvars - sol.rank;
  sol.exps.assign(nvars, std::vector<long long>(nfree, 0));
  sol.param_sign.assign(nfree, 1);
  for (int l = 0; l < nfree; ++l) {
    for (int i = 0; i < nvars; ++i) sol.exps[i][l] = sol.V[i][sol.rank + l];
    for (int i = 0; i < nvars; ++i) {
      if (sol.exps[i][l] == 0) continue;
      if (sol.exps[i][l] < 0) {
        sol.param_sign[l] = -1;
        for (int k = 0; k < nvars; ++k) sol.exps[k][l] = -sol.exps[k][l];
      }
      break;
    }
  }
  if (!sol.consistent) return sol;

  std::vector<long long> counter(sol.rank, 0);
  while (true) {
    TorusBranch br;
    for (int s = 0; s < sol.rank; ++s) br.roots.push_back(principal_root(bprime[s], d[s][s], counter[s]));
    for (int i = 0; i < nvars; ++i) {
      cplx c = 1.0;
      for (int s = 0; s < sol.rank; ++s) c *= ipow(br.roots[s], sol.V[i][s]);
      br.coef.push_back(snap(c));
    }
    sol.branches.push_back(std::move(br));
    int s = sol.rank - 1;
    while (s >= 0 && ++counter[s] == d[s][s]) counter[s--] = 0;
    if (s < 0) break;
  }
  return sol;
}

}  // namespace gquant
