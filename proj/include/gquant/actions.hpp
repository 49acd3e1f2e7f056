#pragma once

#include <vector>

#include "gquant/quantizer.hpp"

namespace gquant {

// A G-module C^n with a bilinear product; mult is n x n^2 and column
// i*n + j holds the coordinates of e_i e_j.
struct EquivariantAlgebra {
  GroupPtr group;
  int dim = 0;
  std::vector<Mat> rep;
  Mat mult;
};

// A module over an algebra: action is n x (dim_A n), column a*n + x holds
// e_a . f_x.
struct EquivariantModule {
  EquivariantAlgebra algebra;
  int dim = 0;
  std::vector<Mat> rep;
  Mat action;
};

// sigma : X (x) Y -> Y (x) X.
struct Braiding {
  GroupPtr group;
  std::vector<Mat> rep_x, rep_y;
  Mat sigma;
};

// Q_{X,Y} = sum q(g,h) rho_X(g) (x) rho_Y(h).
Mat quantizer_operator(const Quantizer& q, const std::vector<Mat>& rx, const std::vector<Mat>& ry);

// Functions on G with the pointwise product; g . delta_x = delta_{gx}.
EquivariantAlgebra function_algebra(const GroupPtr& g);
// Group algebra of the dual of an abelian G, e_a e_b = e_{ab}, graded by
// g . e_a = a(g) e_a.
EquivariantAlgebra graded_group_algebra(const IrrepsPtr& reps);

double equivariance_residual(const EquivariantAlgebra& a);
double associativity_residual(const EquivariantAlgebra& a);

// mu^Q = mu Q_{A,A}; rejects q that fails naturality.
EquivariantAlgebra quantize_algebra(const EquivariantAlgebra& a, const Quantizer& q,
                                    double tol = kTolerance);

EquivariantModule regular_module(const EquivariantAlgebra& a);
EquivariantModule zero_module(const EquivariantAlgebra& a);
// nu^Q = nu Q_{A,E} over the quantized algebra.
EquivariantModule quantize_module(const EquivariantModule& e, const Quantizer& q,
                                  double tol = kTolerance);
// max |(ab)x - a(bx)| in operator form.
double module_residual(const EquivariantModule& e);
double module_equivariance_residual(const EquivariantModule& e);

Braiding flip_braiding(const GroupPtr& g, const std::vector<Mat>& rx, const std::vector<Mat>& ry);
// sigma_Q = Q_{Y,X}^-1 sigma Q_{X,Y}; throws Singularity unless q is regular.
Braiding transport_braiding(const Braiding& s, const Quantizer& q);
double braiding_naturality(const Braiding& s);

}  // namespace gquant
