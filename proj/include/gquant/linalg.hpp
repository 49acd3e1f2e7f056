#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gquant {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kTolerance = 1e-9;
inline constexpr double kZeroCutoff = 1e-8;

Mat kron(const Mat& a, const Mat& b);
Mat direct_sum(const std::vector<Mat>& blocks);

// Largest absolute entry.
double max_abs(const Mat& m);
// Induced infinity norm: max row sum of absolute values.
double op_inf_norm(const Mat& m);
double smallest_singular_value(const Mat& m);
int numerical_rank(const Mat& m, double cutoff = 1e-7);

// Swap operator on C^m (x) C^n: x (x) y -> y (x) x.
Mat flip(int m, int n);

// Principal n-th roots of unity and friends.
cd root_of_unity(int n, int k);
// Snap values within 1e-12 of a simple rational root of unity onto it.
cd snap(cd z);

}  // namespace gquant
