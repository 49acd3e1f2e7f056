#include "gquant/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "gquant/abelian.hpp"
#include "gquant/actions.hpp"
#include "gquant/classify.hpp"
#include "gquant/format.hpp"
#include "gquant/io.hpp"

namespace gquant::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kBadInput;
    case ErrorKind::Rejected: return kFailedCheck;
    case ErrorKind::Structural: return kStructural;
    case ErrorKind::Capacity:
    case ErrorKind::Capability: return kUnsupported;
    case ErrorKind::Numerical:
    case ErrorKind::Naturality:
    case ErrorKind::Singularity: return kNumerical;
  }
  return kInternal;
}

namespace {

// Raised for the group given on the command line, as opposed to one read
// from an input file.
struct BadGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A verb whose computation succeeded but whose residual check did not.
struct CheckFailed {};

struct Options {
  std::string group;
  std::string in;
  std::string quantizer;
  std::string builtin;
  std::string out;
  std::string format;  // empty: the verb's default
  std::string model;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kTolerance;
  int samples = 20;
};

// "s3" -> "S3", "c2xc2" -> "C2xC2".
std::string normalize_spec(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  std::replace(s.begin(), s.end(), 'X', 'x');
  return s;
}

GroupPtr command_group(const Options& o) {
  if (o.group.empty()) throw BadGroup("a group is required (positional or --group)");
  try {
    return parse_group(normalize_spec(o.group));
  } catch (const Error& e) {
    throw BadGroup(e.what());
  }
}

json read_json(const std::string& path) {
  if (path.empty()) fail(ErrorKind::Parse, "an input file is required (--in)");
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Parse, "cannot open " + path);
  return json::parse(f);
}

Quantizer quantizer_from_file(const json& j, std::uint64_t seed) {
  if (j.contains("terms")) return make_quantizer(element_from_json(j), seed);
  const GroupPtr g = parse_group(json_string(j, "group"));
  const SpacePtr space = make_space(g, seed);
  return algebra_from_blocks(blocks_from_json(j, space));
}

// Column-aligned text table; widths count code points, not bytes.
class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void print(std::ostream& os) const {
    std::vector<size_t> w;
    for (const auto& r : rows_)
      for (size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i) w.push_back(0);
        w[i] = std::max(w[i], width(r[i]));
      }
    for (const auto& r : rows_) {
      std::string line;
      for (size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(w[i] - width(r[i]) + 2, ' ');
      }
      os << line << "\n";
    }
  }

 private:
  static size_t width(const std::string& s) {
    return static_cast<size_t>(
        std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  }
  std::vector<std::vector<std::string>> rows_;
};

// Report verbs default to tables; verbs producing input files for other
// verbs default to JSON.
bool want_json(const Options& o, bool data) { return o.format.empty() ? data : o.format == "json"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---- verbs ----

void group_info(const Options& o, std::ostream& os) {
  const GroupPtr g = command_group(o);
  json classes = json::array();
  for (const auto& cls : g->classes()) {
    json c = json::array();
    for (int x : cls) c.push_back(g->label(x));
    classes.push_back(c);
  }
  const bool axioms = g->verify_axioms();
  if (want_json(o, false)) {
    os << json{{"group", g->name()},     {"order", g->order()},
               {"abelian", g->is_abelian()}, {"elements", g->labels()},
               {"classes", classes},     {"axioms", axioms}}
              .dump(2)
       << "\n";
    return;
  }
  os << "group " << g->name() << "  order " << g->order() << "  abelian " << yes_no(g->is_abelian())
     << "  axioms " << (axioms ? "ok" : "FAILED") << "\n";
  Table t;
  t.row({"index", "element", "order", "class"});
  for (int x = 0; x < g->order(); ++x)
    t.row({std::to_string(x), g->label(x), std::to_string(g->element_order(x)),
           std::to_string(g->class_of(x))});
  t.print(os);
  if (!axioms) throw CheckFailed{};
}

void rep_table(const Options& o, std::ostream& os) {
  const auto reps = builtin_irreps(command_group(o));
  double worst = 0;
  for (const auto& r : reps->all()) {
    const auto c = check_irrep(*reps->group(), r);
    worst = std::max({worst, c.homomorphism, c.unitarity, c.irreducibility});
  }
  if (want_json(o, false)) {
    json j = rep_tables_to_json(*reps);
    j["irrep_residual"] = worst;
    os << j.dump(2) << "\n";
  } else {
    const auto& g = *reps->group();
    os << "characters of " << g.name() << " (irrep residual " << format_residual(worst) << ")\n";
    Table t;
    std::vector<std::string> head{"irrep", "dim"};
    for (const auto& cls : g.classes()) head.push_back(g.label(cls.front()));
    t.row(head);
    const auto chars = character_table(*reps);
    for (int a = 0; a < reps->size(); ++a) {
      std::vector<std::string> r{"E" + reps->key(a), std::to_string(reps->dim(a))};
      for (cd v : chars[a]) r.push_back(format_complex(snap(v)));
      t.row(r);
    }
    t.print(os);
  }
  if (worst > o.tolerance) throw CheckFailed{};
}

std::string cg_cell(const IrrepSet& reps, int a, int b) {
  const auto m = clebsch_gordan(reps, a, b);
  std::string s;
  for (int c = 0; c < reps.size(); ++c) {
    if (!m[c]) continue;
    if (!s.empty()) s += "+";
    if (m[c] > 1) s += std::to_string(m[c]);
    s += "E" + reps.key(c);
  }
  return s;
}

void rep_cg(const Options& o, std::ostream& os) {
  const auto reps = builtin_irreps(command_group(o));
  if (want_json(o, false)) {
    os << rep_tables_to_json(*reps)["cg"].dump(2) << "\n";
    return;
  }
  Table t;
  std::vector<std::string> head{"(x)"};
  for (int b = 0; b < reps->size(); ++b) head.push_back("E" + reps->key(b));
  t.row(head);
  for (int a = 0; a < reps->size(); ++a) {
    std::vector<std::string> r{"E" + reps->key(a)};
    for (int b = 0; b < reps->size(); ++b) r.push_back(cg_cell(*reps, a, b));
    t.row(r);
  }
  t.print(os);
}

void fourier_roundtrip(const Options& o, std::ostream& os) {
  std::vector<Element> elements;
  if (!o.in.empty()) {
    elements.push_back(element_from_json(read_json(o.in)));
  } else {
    const GroupPtr g = command_group(o);
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> d;
    for (int s = 0; s < o.samples; ++s) {
      Element e(g);
      for (int x = 0; x < g->order(); ++x) e[x] = cd(d(rng), d(rng));
      elements.push_back(e);
    }
  }
  double worst = 0;
  for (const auto& e : elements)
    worst = std::max(worst, (fourier_inverse(fourier_forward(e)) - e).norm_inf());
  const bool ok = worst < o.tolerance;
  if (want_json(o, false))
    os << json{{"group", elements.front().group()->name()}, {"elements", elements.size()},
               {"residual", worst}, {"ok", ok}}
              .dump(2)
       << "\n";
  else
    os << "fourier roundtrip over " << elements.front().group()->name() << ": " << elements.size()
       << " elements, max residual " << format_residual(worst) << (ok ? "" : "  FAILED") << "\n";
  if (!ok) throw CheckFailed{};
}

void quantizer_verify(const Options& o, std::ostream& os) {
  const Quantizer q = quantizer_from_file(read_json(o.in), o.seed);
  const ConditionReport r = check_conditions(q);
  const bool regular = is_regular(q);
  if (want_json(o, false)) {
    json j = report_to_json(r, o.tolerance);
    j["group"] = q.space->group()->name();
    j["regular"] = regular;
    os << j.dump(2) << "\n";
  } else {
    Table t;
    t.row({"check", "residual"});
    t.row({"coherence", format_residual(r.coherence)});
    t.row({"naturality", format_residual(r.naturality)});
    t.row({"normalization", format_residual(r.normalization)});
    os << "quantizer over " << q.space->group()->name() << "  regular " << yes_no(regular)
       << "  accepted " << yes_no(r.accepted(o.tolerance)) << "\n";
    t.print(os);
  }
  if (!r.accepted(o.tolerance)) throw CheckFailed{};
}

void print_blocks(const BlockQuantizer& b, std::ostream& os) {
  const auto& space = *b.space();
  os << "blocks over " << space.group()->name() << "\n";
  const int k = space.rank();
  Table t;
  t.row({"block", "value"});
  for (int a = 0; a < k; ++a)
    for (int x = 0; x < k; ++x)
      for (int c = 0; c < k; ++c) {
        if (!b.has_block(a, x, c)) continue;
        const Mat& m = b.block(a, x, c);
        std::string v;
        for (int i = 0; i < m.rows(); ++i) {
          v += i ? "; " : "";
          for (int j = 0; j < m.cols(); ++j) v += (j ? " " : "") + format_complex(snap(m(i, j)));
        }
        t.row({std::to_string(a) + "," + std::to_string(x) + "," + std::to_string(c),
               m.rows() > 1 ? "[" + v + "]" : v});
      }
  t.print(os);
}

void quantizer_blocks(const Options& o, std::ostream& os) {
  const Quantizer q = quantizer_from_file(read_json(o.in), o.seed);
  const BlockQuantizer b = blocks_from_algebra(q);
  if (!want_json(o, true))
    print_blocks(b, os);
  else
    os << blocks_to_json(b).dump(2) << "\n";
}

void quantizer_assemble(const Options& o, std::ostream& os) {
  const json j = read_json(o.in);
  const SpacePtr space = make_space(parse_group(json_string(j, "group")), o.seed);
  const Quantizer q = algebra_from_blocks(blocks_from_json(j, space));
  os << element_to_json(q.q).dump(2) << "\n";
}

void quantizer_trivial(const Options& o, std::ostream& os) {
  const SpacePtr space = make_space(command_group(o), o.seed);
  if (!want_json(o, true))
    print_blocks(BlockQuantizer(space), os);
  else
    os << json{{"group", space->group()->name()}, {"blocks", json::object()}}.dump(2) << "\n";
}

RelationModel model_or(const Options& o, RelationModel fallback) {
  return o.model.empty() ? fallback : parse_model(o.model);
}

void quantizer_canonicalize(const Options& o, std::ostream& os) {
  const json j = read_json(o.in);
  const SpacePtr space = make_space(parse_group(json_string(j, "group")), o.seed);
  const CanonicalForm c =
      canonicalize(blocks_from_json(j, space), model_or(o, RelationModel::Exact), o.tolerance);
  if (!want_json(o, true)) {
    print_blocks(c.blocks, os);
    std::string g;
    for (cd l : c.gauge.l) g += (g.empty() ? "" : " ") + format_complex(snap(l));
    os << "gauge " << g << "\n";
    if (!c.matrix_form.empty()) os << "matrix form " << c.matrix_form << "\n";
    return;
  }
  json out = blocks_to_json(c.blocks);
  json gauge = json::array();
  for (cd l : c.gauge.l) gauge.push_back(complex_to_json(l));
  out["gauge"] = gauge;
  if (!c.matrix_form.empty()) out["matrix_form"] = c.matrix_form;
  os << out.dump(2) << "\n";
}

std::vector<cd> reference_samples() { return {0.0, 1.0, 2.0, -1.0, cd(0.0, 1.0)}; }

void quantizer_classify(const Options& o, std::ostream& os) {
  const SpacePtr space = make_space(command_group(o), o.seed);
  ClassifyOptions opts;
  opts.seed = o.seed;
  opts.tolerance = o.tolerance;
  Classification c = classify(space, model_or(o, RelationModel::Exact), opts);
  const auto table = reference_table(*space);
  std::vector<RowReport> rows;
  if (table) rows = match_reference(c, *table, reference_samples());

  if (want_json(o, false)) {
    os << classification_to_json(c, rows).dump(2) << "\n";
    return;
  }
  os << space->group()->name() << " quantizers, " << model_name(c.model) << " model, "
     << c.families.size() << " families up to gauge\n";
  Table t;
  std::vector<std::string> head{"#"};
  for (const auto& n : c.names) head.push_back(n);
  for (const char* h : {"matrix", "params", "coherent", "residual", "rows"}) head.push_back(h);
  t.row(head);
  for (const auto& f : c.families) {
    std::vector<std::string> r{std::to_string(f.index)};
    for (size_t v = 0; v < c.vars.size(); ++v) r.push_back(family_cell(c, f, static_cast<int>(v)));
    std::string m;
    for (const auto& s : f.matches) m += (m.empty() ? "" : ",") + s;
    r.push_back(f.matrix == MatrixMode::None ? "-" : matrix_mode_name(f.matrix));
    r.push_back(std::to_string(f.params()));
    r.push_back(f.residual < 0 ? "-" : yes_no(f.coherent));
    r.push_back(f.residual < 0 ? "-" : format_residual(f.residual));
    r.push_back(m.empty() ? (f.contains_trivial ? "trivial" : "-")
                          : m + (f.contains_trivial ? ",trivial" : ""));
    t.row(r);
  }
  t.print(os);
  if (!table) return;

  os << "\nreference rows (λ, κ over 0, 1, 2, -1, i)\n";
  Table rt;
  std::vector<std::string> rh{"row"};
  for (const auto& col : table->columns) rh.push_back(col);
  for (const char* h : {"instances", "solutions", "coherent", "families"}) rh.push_back(h);
  rt.row(rh);
  for (size_t i = 0; i < table->rows.size(); ++i) {
    const auto& row = table->rows[i];
    const auto& rep = rows[i];
    std::vector<std::string> r{row.label + ")"};
    for (const auto& cell : row.cells) r.push_back(cell);
    std::string fams;
    for (int f : rep.families) fams += (fams.empty() ? "" : ",") + std::to_string(f);
    r.push_back(std::to_string(rep.instances));
    r.push_back(std::to_string(rep.solutions));
    r.push_back(std::to_string(rep.coherent));
    r.push_back(fams.empty() ? "-" : fams);
    rt.row(r);
  }
  rt.print(os);
}

void quantizer_relations(const Options& o, std::ostream& os) {
  const SpacePtr space = make_space(command_group(o), o.seed);
  const RelationSet rs = extract_relations(*space, model_or(o, RelationModel::Strict));
  const auto ref = reference_relations(*space, rs.vars);
  RelationComparison cmp;
  if (ref) cmp = compare_relations(rs.reduced, *ref, static_cast<int>(rs.vars.size()), 50, o.seed);

  if (want_json(o, false)) {
    json j = relations_to_json(rs);
    j["group"] = space->group()->name();
    if (ref) {
      json rj = json::array();
      for (size_t i = 0; i < ref->size(); ++i)
        rj.push_back({{"relation", render_binomial((*ref)[i], rs.names)},
                      {"defect", cmp.per_reference[i]}});
      j["reference"] = {{"relations", rj},
                        {"same_lattice", cmp.same_lattice},
                        {"forward_defect", cmp.forward},
                        {"backward_defect", cmp.backward},
                        {"agree", cmp.agree()}};
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << space->group()->name() << " coherence relations, " << model_name(rs.model) << " model\n"
     << rs.raw.size() << " distinct equations, " << rs.reduced.size()
     << " binomial relations on the torus (all scalars nonzero)"
     << (rs.torus_consistent ? "" : ", torus inconsistent") << "\n";
  for (const auto& r : rs.reduced) os << "  " << render_binomial(r, rs.names) << "\n";
  if (!ref) return;
  os << "\nreference relations (" << ref->size() << ")\n";
  Table t;
  t.row({"relation", "implied", "defect"});
  for (size_t i = 0; i < ref->size(); ++i)
    t.row({render_binomial((*ref)[i], rs.names), yes_no(cmp.per_reference[i] < 1e-9),
           format_residual(cmp.per_reference[i])});
  t.print(os);
  os << "same lattice " << yes_no(cmp.same_lattice) << ", substitution defect "
     << format_residual(cmp.forward) << " / " << format_residual(cmp.backward) << "\n";
}

void quantizer_equations(const Options& o, std::ostream& os) {
  const SpacePtr space = make_space(command_group(o), o.seed);
  const RelationSet rs = extract_relations(*space, model_or(o, RelationModel::Strict));
  if (want_json(o, false)) {
    os << relations_to_json(rs)["equations"].dump(2) << "\n";
    return;
  }
  for (const auto& e : rs.raw)
    os << "(" << e.a << "," << e.b << "," << e.c << ")->" << e.z << "  "
       << render_equation(e, rs.names) << "\n";
}

void cocycle_check_verb(const Options& o, std::ostream& os) {
  const Cocycle z = cocycle_from_json(read_json(o.in));
  const double r = cocycle_check(z);
  const bool ok = r < o.tolerance;
  json j{{"dual", z.dual->group()->name()}, {"residual", r}, {"valid", ok}};
  bool trivial = false;
  if (ok) {
    try {
      const auto red = coboundary_reduce(z, o.tolerance);
      trivial = red.trivial;
      j["representative"] = cocycle_to_json(red.representative)["values"];
      j["cohomologically_trivial"] = trivial;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Rejected) throw;
      j["reduction"] = e.what();
    }
  }
  if (want_json(o, false))
    os << j.dump(2) << "\n";
  else
    os << "cocycle over the dual of " << z.dual->group()->name() << ": residual "
       << format_residual(r) << (ok ? "  valid" : "  INVALID")
       << (j.contains("cohomologically_trivial") ? (trivial ? ", trivial class" : ", nontrivial class")
                                                 : "")
       << "\n";
  if (!ok) throw CheckFailed{};
}

void cocycle_quantize(const Options& o, std::ostream& os) {
  const Cocycle z = cocycle_from_json(read_json(o.in));
  const SpacePtr space = make_space(z.dual->group(), o.seed);
  const Quantizer q = quantizer_from_cocycle(space, z, true, o.tolerance);
  const ConditionReport r = check_conditions(q);
  if (!want_json(o, true)) {
    os << "quantizer over " << space->group()->name() << "  coherence "
       << format_residual(r.coherence) << "  naturality " << format_residual(r.naturality)
       << "  normalization " << format_residual(r.normalization) << "\n";
  } else {
    json j = element_to_json(q.q);
    j["checks"] = report_to_json(r, o.tolerance);
    os << j.dump(2) << "\n";
  }
  if (!r.accepted(o.tolerance)) throw CheckFailed{};
}

EquivariantAlgebra algebra_input(const Options& o) {
  if (!o.builtin.empty()) {
    const auto colon = o.builtin.find(':');
    const std::string kind = o.builtin.substr(0, colon);
    if (colon == std::string::npos) fail(ErrorKind::Parse, "--builtin takes functions:<G> or graded:<G>");
    Options g = o;
    g.group = o.builtin.substr(colon + 1);
    if (kind == "functions") return function_algebra(command_group(g));
    if (kind == "graded") return graded_group_algebra(builtin_irreps(command_group(g)));
    fail(ErrorKind::Parse, "unknown builtin algebra '" + kind + "'");
  }
  return algebra_from_json(read_json(o.in));
}

void algebra_quantize(const Options& o, std::ostream& os) {
  const EquivariantAlgebra a = algebra_input(o);
  if (o.quantizer.empty()) fail(ErrorKind::Parse, "a quantizer file is required (--quantizer)");
  const Quantizer q = quantizer_from_file(read_json(o.quantizer), o.seed);
  if (!q.space->group()->same_as(*a.group))
    fail(ErrorKind::Structural, "quantizer is over " + q.space->group()->name() +
                                    ", algebra over " + a.group->name());
  const EquivariantAlgebra d = quantize_algebra(a, q, o.tolerance);
  const double before = associativity_residual(a), after = associativity_residual(d);
  const double equi = equivariance_residual(d);
  // Associativity must survive whenever the input had it.
  const bool ok = equi < o.tolerance && (before >= o.tolerance || after < o.tolerance);
  if (!want_json(o, true)) {
    os << "quantized algebra over " << a.group->name() << ", dimension " << a.dim << "\n"
       << "associativity " << format_residual(before) << " -> " << format_residual(after)
       << "  equivariance " << format_residual(equi) << "\n";
  } else {
    json j = algebra_to_json(d);
    j["checks"] = {{"associativity_before", before},
                   {"associativity_after", after},
                   {"equivariance", equi},
                   {"ok", ok}};
    os << j.dump(2) << "\n";
  }
  if (!ok) throw CheckFailed{};
}

void error_json(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantizers of finite-group module categories", "gquant"};
  app.require_subcommand(1);
  std::function<void(const Options&, std::ostream&)> action;

  const auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                        std::function<void(const Options&, std::ostream&)> fn) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->add_option("group_spec", o.group, "group, e.g. S3, A4, C2xC2");
    s->add_option("--group", o.group, "group, e.g. S3, A4, C2xC2");
    s->add_option("--in", o.in, "input JSON file");
    s->add_option("--out", o.out, "write output here instead of stdout");
    s->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    s->add_option("--seed", o.seed, "seed for decompositions and sampling");
    s->add_option("--tolerance", o.tolerance, "residual tolerance");
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  CLI::App* group = app.add_subcommand("group", "finite groups")->require_subcommand(1);
  leaf(group, "info", "elements, orders and conjugacy classes", group_info);

  CLI::App* rep = app.add_subcommand("rep", "irreducible representations")->require_subcommand(1);
  leaf(rep, "table", "character table", rep_table);
  leaf(rep, "cg", "tensor product multiplicities", rep_cg);

  CLI::App* fourier = app.add_subcommand("fourier", "Fourier transform")->require_subcommand(1);
  leaf(fourier, "roundtrip", "inverse(forward(f)) on --in or random elements", fourier_roundtrip)
      ->add_option("--samples", o.samples, "random elements when no --in is given");

  CLI::App* quant = app.add_subcommand("quantizer", "quantizers")->require_subcommand(1);
  leaf(quant, "verify", "coherence, naturality and normalization residuals", quantizer_verify);
  leaf(quant, "blocks", "block form of a quantizer", quantizer_blocks);
  leaf(quant, "assemble", "group-algebra form of a block file", quantizer_assemble);
  leaf(quant, "trivial", "the trivial quantizer as a block file", quantizer_trivial);
  leaf(quant, "canonicalize", "gauge-fixed form of a coherent block file", quantizer_canonicalize)
      ->add_option("--model", o.model, "exact or strict");
  leaf(quant, "classify", "families of block quantizers up to gauge", quantizer_classify)
      ->add_option("--model", o.model, "exact (default) or strict");
  leaf(quant, "relations", "binomial coherence relations", quantizer_relations)
      ->add_option("--model", o.model, "strict (default) or exact");
  leaf(quant, "equations", "all distinct coherence equations", quantizer_equations)
      ->add_option("--model", o.model, "strict (default) or exact");

  CLI::App* coc = app.add_subcommand("cocycle", "2-cocycles on duals of abelian groups")
                      ->require_subcommand(1);
  leaf(coc, "check", "cocycle residual and cohomology class", cocycle_check_verb);
  leaf(coc, "quantize", "quantizer of a cocycle", cocycle_quantize);

  CLI::App* alg = app.add_subcommand("algebra", "equivariant algebras")->require_subcommand(1);
  CLI::App* aq = leaf(alg, "quantize", "deform a multiplication by a quantizer", algebra_quantize);
  aq->add_option("--quantizer", o.quantizer, "quantizer file (blocks or element over GxG)");
  aq->add_option("--builtin", o.builtin, "functions:<G> or graded:<G> instead of --in");

  std::vector<std::string> argv_store{"gquant"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_json(err, "usage", e.what());
    return kUsage;
  }

  if (const char* env = std::getenv("QUANTIZER_SEED")) {
    try {
      size_t used = 0;
      o.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      error_json(err, "usage", std::string("QUANTIZER_SEED is not an unsigned integer: ") + env);
      return kUsage;
    }
  }
  if (!(o.tolerance > 0)) {
    error_json(err, "usage", "--tolerance must be positive");
    return kUsage;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    action(o, buffer);
  } catch (const CheckFailed&) {
    code = kFailedCheck;
  } catch (const BadGroup& e) {
    error_json(err, "bad-group", e.what());
    return kBadGroup;
  } catch (const Error& e) {
    error_json(err, error_kind_name(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    error_json(err, "parse", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    error_json(err, "internal", e.what());
    return kInternal;
  }

  if (o.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(o.out);
    if (!f) {
      error_json(err, "io", "cannot write " + o.out);
      return kBadInput;
    }
    f << buffer.str();
  }
  if (code == kFailedCheck) error_json(err, "check-failed", "residual check failed");
  return code;
}

}  // namespace gquant::cli
