#include "gquant/fourier.hpp"

#include "gquant/errors.hpp"

namespace gquant {

FourierImage fourier_forward(const Element& f, const IrrepsPtr& irreps) {
  if (!irreps->group()->same_as(*f.group()))
    fail(ErrorKind::Structural, "irreps belong to a different group");
  FourierImage out;
  out.irreps = irreps;
  for (const auto& rep : irreps->all()) {
    Mat block = Mat::Zero(rep.dim, rep.dim);
    for (int g = 0; g < f.size(); ++g)
      if (f[g] != 0.0) block += f[g] * rep.matrices[g];
    out.blocks.push_back(std::move(block));
  }
  return out;
}

FourierImage fourier_forward(const Element& f) {
  return fourier_forward(f, builtin_irreps(f.group()));
}

Element fourier_inverse(const FourierImage& image) {
  const IrrepSet& reps = *image.irreps;
  if (static_cast<int>(image.blocks.size()) != reps.size())
    fail(ErrorKind::Structural, "block count does not match the number of irreps");
  for (int a = 0; a < reps.size(); ++a)
    if (image.blocks[a].rows() != reps.dim(a) || image.blocks[a].cols() != reps.dim(a))
      fail(ErrorKind::Structural, "block " + reps.key(a) + " has the wrong dimension");
  const GroupPtr& g = reps.group();
  Element f(g);
  const double n = g->order();
  for (int x = 0; x < g->order(); ++x) {
    cd s = 0.0;
    for (int a = 0; a < reps.size(); ++a) {
      // Tr(D* B) = sum_ij conj(D_ij) B_ij
      s += static_cast<double>(reps.dim(a)) *
           reps[a].matrices[x].conjugate().cwiseProduct(image.blocks[a]).sum();
    }
    f[x] = s / n;
  }
  return f;
}

FourierImage fourier_multiply(const FourierImage& a, const FourierImage& b) {
  if (a.blocks.size() != b.blocks.size())
    fail(ErrorKind::Structural, "Fourier images over different duals");
  FourierImage out{a.irreps, {}};
  for (size_t i = 0; i < a.blocks.size(); ++i) out.blocks.push_back(a.blocks[i] * b.blocks[i]);
  return out;
}

double fourier_distance(const FourierImage& a, const FourierImage& b) {
  if (a.blocks.size() != b.blocks.size())
    fail(ErrorKind::Structural, "Fourier images over different duals");
  double d = 0.0;
  for (size_t i = 0; i < a.blocks.size(); ++i) d = std::max(d, max_abs(a.blocks[i] - b.blocks[i]));
  return d;
}

}  // namespace gquant
