#include "gquant/linalg.hpp"

#include <cmath>
#include <numbers>

#include "gquant/errors.hpp"

namespace gquant {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Capability: return "capability";
    case ErrorKind::Numerical: return "numerical-integrity";
    case ErrorKind::Naturality: return "naturality-violation";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Rejected: return "rejected";
  }
  return "unknown";
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat direct_sum(const std::vector<Mat>& blocks) {
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out = Mat::Zero(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double op_inf_norm(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

double smallest_singular_value(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

int numerical_rank(const Mat& m, double cutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cutoff) ++r;
  return r;
}

Mat flip(int m, int n) {
  Mat p = Mat::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) p(j * m + i, i * n + j) = 1.0;
  return p;
}

cd root_of_unity(int n, int k) {
  // Exact values for the common cases keep golden outputs clean.
  int r = ((k % n) + n) % n;
  if (r == 0) return 1.0;
  if (2 * r == n) return -1.0;
  if (4 * r == n) return cd(0, 1);
  if (4 * r == 3 * n) return cd(0, -1);
  double t = 2.0 * std::numbers::pi * r / n;
  return {std::cos(t), std::sin(t)};
}

cd snap(cd z) {
  double re = z.real(), im = z.imag();
  auto fix = [](double v) {
    static const double candidates[] = {0.0, 0.5, 1.0, std::sqrt(3.0) / 2.0,
                                        std::sqrt(0.5)};
    for (double c : candidates) {
      if (std::abs(std::abs(v) - c) < 1e-12) return v < 0 ? -c : c;
    }
    return v;
  };
  return {fix(re), fix(im)};
}

}  // namespace gquant
