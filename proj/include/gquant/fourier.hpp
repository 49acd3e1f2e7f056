#pragma once

#include <vector>

#include "gquant/repr.hpp"

namespace gquant {

// f_hat[a] = sum_g f(g) D^a(g), one dense block per irrep. For a pair group
// G x H the irreps are the pairs (a,b) and D^{a,b}(g,h) = D^a(g) (x) D^b(h).
struct FourierImage {
  IrrepsPtr irreps;
  std::vector<Mat> blocks;
};

FourierImage fourier_forward(const Element& f, const IrrepsPtr& irreps);
FourierImage fourier_forward(const Element& f);

// f(g) = (1/|G|) sum_a d_a Tr(D^a(g)* f_hat[a]).
Element fourier_inverse(const FourierImage& image);

// Blockwise product and max-entry distance.
FourierImage fourier_multiply(const FourierImage& a, const FourierImage& b);
double fourier_distance(const FourierImage& a, const FourierImage& b);

}  // namespace gquant
