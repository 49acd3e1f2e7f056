#pragma once

#include <complex>
#include <vector>

namespace gquant {

using IntMat = std::vector<std::vector<long long>>;

struct SmithForm {
  IntMat U, D, V;  // U A V = D, U and V unimodular, D diagonal, d_i | d_{i+1}
  int rank = 0;
};

SmithForm smith_normal_form(const IntMat& a);
IntMat int_multiply(const IntMat& a, const IntMat& b);
IntMat int_identity(int n);
int int_rank(const IntMat& rows);

// True when every row of `rows` is an integer combination of `basis`.
bool in_row_lattice(const IntMat& basis, const IntMat& rows, int ncols);
bool same_row_lattice(const IntMat& a, const IntMat& b, int ncols);

// Row-style Hermite normal form with zero rows dropped: a basis of the
// row lattice, then shortened greedily in the L1 norm.
//
// With `coefs`, each row v stands for the binomial x^{v+} = coef x^{v-}; the
// coefficients follow the row operations. A row reduced to zero with a
// coefficient away from 1 means the relations have no common solution with
// all variables nonzero; `consistent` reports that.
IntMat lattice_basis(const IntMat& rows, int ncols,
                     std::vector<std::complex<double>>* coefs = nullptr,
                     bool* consistent = nullptr);

// Points with every coordinate nonzero solving x^{rows_t} = beta_t.
//
// With U A V = D, substitute x = y^V: then y_s^{d_s} = prod_t beta_t^{U_st}
// for s < rank and the remaining y are free. Each choice of d_s-th roots is
// one branch; x_i = coef_i prod_l t_l^{exps_il} over the free parameters.
struct TorusBranch {
  std::vector<std::complex<double>> coef;
  std::vector<std::complex<double>> roots;  // y_s for s < rank
};

struct TorusSolution {
  bool consistent = true;
  int nvars = 0;
  int rank = 0;
  IntMat V, Vinv;
  std::vector<int> param_sign;  // t_l = y_{rank+l}^{sign_l}
  IntMat exps;                  // nvars x (nvars - rank)
  std::vector<TorusBranch> branches;

  int params() const { return nvars - rank; }
  std::vector<std::complex<double>> point(int branch,
                                          const std::vector<std::complex<double>>& t) const;
  // Branch containing x, or -1; fills the parameters when found.
  int locate(const std::vector<std::complex<double>>& x,
             std::vector<std::complex<double>>* t = nullptr, double tol = 1e-7) const;
};

TorusSolution solve_binomials(const IntMat& rows, const std::vector<std::complex<double>>& beta,
                              int nvars);

}  // namespace gquant
