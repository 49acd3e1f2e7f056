#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gquant/lattice.hpp"
#include "gquant/quantizer.hpp"
#include "gquant/relations.hpp"

namespace gquant {

// How a family treats the blocks of size > 1.
//   Entries: every entry is a variable of the support pattern (exact model).
//   Free:    the matrix is arbitrary; the scalars satisfy the equations for
//            every value of it (strict model).
//   Zero:    the matrix vanishes.
enum class MatrixMode { None, Entries, Free, Zero };
const char* matrix_mode_name(MatrixMode m);

struct Family {
  int index = 0;
  MatrixMode matrix = MatrixMode::None;
  std::vector<int> support;  // nonzero variables, ascending
  std::vector<int> fixed;    // variables set to 1 by the gauge
  TorusSolution torus;       // over `support`, local indices
  int branch = 0;
  bool contains_trivial = false;
  // Worst residual of check_conditions over the sampled instances; negative
  // when not verified.
  double residual = -1;
  bool coherent = false;
  std::vector<std::string> matches;  // reference rows landing in this family

  int params() const { return torus.params(); }
};

struct Classification {
  SpacePtr space;
  RelationModel model = RelationModel::Exact;
  std::vector<BlockVar> vars;
  std::vector<std::string> names;
  std::vector<Family> families;
};

struct ClassifyOptions {
  bool verify = true;
  int samples = 2;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kTolerance;
};

// Support-pattern enumeration over the block variables, binomial solving in
// the torus of each pattern, and gauge fixing of a lattice-spanning subset
// of the surviving variables. Families are sorted by descending support.
Classification classify(const SpacePtr& space, RelationModel model,
                        const ClassifyOptions& opts = {});

// Blocks of a family at free parameters t; `mats` fills Free matrix blocks in
// variable order (zero when omitted).
BlockQuantizer family_instance(const Classification& c, const Family& f,
                               const std::vector<cd>& t, const std::vector<Mat>& mats = {});
std::string family_cell(const Classification& c, const Family& f, int var);

// Gauge weights e_c - e_a - e_b over the nontrivial irreps.
std::vector<long long> gauge_weight(const QuantizerSpace& space, const BlockVar& v);
// First subset (lexicographic) of the given variables whose weights have full
// rank and span the same integer lattice as all of them.
std::vector<int> choose_fixed(const QuantizerSpace& space, const std::vector<BlockVar>& vars,
                              const std::vector<int>& support);

struct CanonicalForm {
  BlockQuantizer blocks;
  GaugeElement gauge;
  // Strict model only: the matrix block is brought to a normal form by a
  // change of basis S (M -> S^-1 M S) and, when the gauge allows it, a
  // rescaling by `matrix_scale`.
  Mat similarity;
  cd matrix_scale = 1.0;
  std::string matrix_form;  // "", "zero", "diag", "jordan", "nilpotent", "unipotent"
};

// Gauge-fixes a coherent block quantizer; rejects incoherent input.
CanonicalForm canonicalize(const BlockQuantizer& b, RelationModel model = RelationModel::Exact,
                           double tol = kTolerance);

// Family containing the canonical form of b, or -1.
int locate_family(const Classification& c, const BlockQuantizer& b, std::vector<cd>* t = nullptr);

// Hand-derived classification tables for S3 and A4, with the columns mapped
// onto block variables. Cells: "0", "1", "λ" (one free scalar), "M" (free
// matrix) or "P" (one of the four normal forms).
struct ReferenceRow {
  std::string label;
  std::vector<std::string> cells;
};
struct ReferenceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<int>> column_blocks;  // (a, b, c) per column
  std::vector<ReferenceRow> rows;
  // Rows said to give the same quantizer as another row.
  std::vector<std::pair<std::string, std::string>> claimed_same;
};
std::optional<ReferenceTable> reference_table(const QuantizerSpace& space);

// Concrete instances of a reference row: λ and κ run over `samples`; M over
// diag(λ, κ) and the Jordan block; P over the four normal forms with λ from
// `samples`.
struct RowInstance {
  std::string description;
  BlockQuantizer blocks;
};
std::vector<RowInstance> reference_instances(const SpacePtr& space, const ReferenceTable& table,
                                             const ReferenceRow& row,
                                             const std::vector<cd>& samples);

struct RowReport {
  std::string label;
  int instances = 0;
  int solutions = 0;  // instances satisfying the model's equations
  int coherent = 0;   // instances passing check_conditions
  std::vector<int> families;
  double worst_residual = 0;
};
std::vector<RowReport> match_reference(Classification& c, const ReferenceTable& table,
                                       const std::vector<cd>& samples, bool run_checks = true);

// Closed forms 1 + s sum_{g,h} sum_gamma Tr(D_gamma(g,h)^* B_gamma) (g,h),
// D_gamma the gamma-block of nu (D^alpha (x) D^alpha) nu^*.
enum class ClosedFormScale { Unit, Table };
Quantizer closed_form(const SpacePtr& space, int alpha,
                      const std::vector<std::pair<int, Mat>>& terms, cd scale);
// Named closed forms: S3 "a" (with p), "b".."e"; A4 "a" (with M), "b".."e"
// (with P).
Quantizer reference_closed_form(const SpacePtr& space, const std::string& label,
                                ClosedFormScale scale, cd p = 0.0, const Mat& m = Mat());

}  // namespace gquant
