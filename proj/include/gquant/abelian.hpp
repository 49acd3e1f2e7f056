#pragma once

#include <vector>

#include "gquant/actions.hpp"
#include "gquant/quantizer.hpp"

namespace gquant {

// A table over the dual of an abelian group, indexed by the frozen character
// enumeration (exponent tuples, lexicographic).
struct Cocycle {
  IrrepsPtr dual;
  std::vector<std::vector<cd>> values;

  cd operator()(int a, int b) const { return values[a][b]; }
  static Cocycle trivial(const IrrepsPtr& dual);
};

// Index of the product character; requires an abelian group.
int dual_multiply(const IrrepSet& reps, int a, int b);

// Max violation of z(ab,c) z(a,b) = z(a,bc) z(b,c) and of z(0,a) = z(a,0) = 1.
double cocycle_check(const Cocycle& z);

// Bicharacter prod_{i<j} c_ji^{a_j b_i} on exponent tuples.
Cocycle alternating_bicharacter(const IrrepsPtr& dual, const std::vector<std::vector<cd>>& c);

// Pair Fourier inverse of the 1 x 1 blocks z(a,b): with the forward transform
// sum f D, this is q(g,h) = |G|^-2 sum z(a,b) conj(a(g) b(h)). Rejects a
// table failing cocycle_check unless `require_valid` is false.
Quantizer quantizer_from_cocycle(const SpacePtr& space, const Cocycle& z,
                                 bool require_valid = true, double tol = kTolerance);

struct CoboundaryReduction {
  Cocycle representative;
  // z'(a,b) = l_a^-1 l_b^-1 z(a,b) l_ab.
  std::vector<cd> gauge;
  bool trivial = false;
};
// Canonical representative prod_{i<j} c_ji^{a_j b_i} with c_ji the
// commutator z(e_j,e_i)/z(e_i,e_j) of generators; rejects zero values.
CoboundaryReduction coboundary_reduce(const Cocycle& z, double tol = kTolerance);
Cocycle apply_coboundary(const Cocycle& z, const std::vector<cd>& l);

// e_a e_b = z(a,b) e_ab with the graded action.
EquivariantAlgebra twisted_group_algebra(const Cocycle& z);

}  // namespace gquant
