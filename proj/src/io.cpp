#include "gquant/io.hpp"

#include "gquant/errors.hpp"
#include "gquant/format.hpp"

namespace gquant {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    fail(ErrorKind::Parse, std::string("missing field '") + name + "'");
  return j.at(name);
}

GroupPtr group_field(const json& j, const char* name) { return parse_group(json_string(j, name)); }

std::vector<int> split_ints(const std::string& key) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= key.size()) {
    const size_t next = key.find(',', pos);
    const std::string part = key.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad index list '" + key + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

std::string json_string(const json& j, const char* name) {
  const json& s = field(j, name);
  if (!s.is_string()) fail(ErrorKind::Parse, std::string("field '") + name + "' must be a string");
  return s.get<std::string>();
}

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::Parse, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "matrices are arrays of rows");
  const size_t n = j.size();
  const size_t m = n ? j[0].size() : 0;
  Mat out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != m) fail(ErrorKind::Parse, "ragged matrix");
    for (size_t k = 0; k < m; ++k)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k]);
  }
  return out;
}

json element_to_json(const Element& e) {
  json terms = json::array();
  for (int g = 0; g < e.size(); ++g) {
    if (e[g] == 0.0) continue;
    terms.push_back({{"g", e.group()->label(g)}, {"re", e[g].real()}, {"im", e[g].imag()}});
  }
  return {{"group", e.group()->name()}, {"terms", terms}};
}

Element element_from_json(const json& j) {
  const GroupPtr g = group_field(j, "group");
  Element e(g);
  const json& terms = field(j, "terms");
  if (!terms.is_array()) fail(ErrorKind::Parse, "'terms' must be an array");
  for (const auto& t : terms) {
    const json& gl = field(t, "g");
    int idx;
    if (gl.is_number_integer()) {
      idx = gl.get<int>();
      if (idx < 0 || idx >= g->order()) fail(ErrorKind::Parse, "element index out of range");
    } else if (gl.is_string()) {
      idx = g->index_of(gl.get<std::string>());
    } else {
      fail(ErrorKind::Parse, "'g' must be a label or an index");
    }
    const double re = t.contains("re") ? t.at("re").get<double>() : 0.0;
    const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
    e[idx] += cd(re, im);
  }
  return e;
}

json fourier_to_json(const FourierImage& f) {
  json blocks = json::object();
  for (int a = 0; a < f.irreps->size(); ++a) blocks[f.irreps->key(a)] = matrix_to_json(f.blocks[a]);
  return {{"group", f.irreps->group()->name()}, {"blocks", blocks}};
}

FourierImage fourier_from_json(const json& j, const IrrepsPtr& irreps) {
  FourierImage f{irreps, std::vector<Mat>(irreps->size())};
  std::vector<bool> seen(irreps->size(), false);
  for (const auto& [key, m] : field(j, "blocks").items()) {
    const int a = irreps->from_key(key);
    f.blocks[a] = matrix_from_json(m);
    seen[a] = true;
  }
  for (int a = 0; a < irreps->size(); ++a)
    if (!seen[a]) fail(ErrorKind::Structural, "Fourier image misses block " + irreps->key(a));
  return f;
}

json blocks_to_json(const BlockQuantizer& b) {
  const auto& space = *b.space();
  const int k = space.rank();
  json blocks = json::object();
  for (int a = 0; a < k; ++a)
    for (int x = 0; x < k; ++x)
      for (int c = 0; c < k; ++c)
        if (b.has_block(a, x, c))
          blocks[std::to_string(a) + "," + std::to_string(x) + "," + std::to_string(c)] =
              matrix_to_json(b.block(a, x, c));
  return {{"group", space.group()->name()}, {"blocks", blocks}};
}

BlockQuantizer blocks_from_json(const json& j, const SpacePtr& space) {
  const GroupPtr g = group_field(j, "group");
  if (!g->same_as(*space->group()))
    fail(ErrorKind::Structural, "block file is over " + g->name() + ", expected " + space->group()->name());
  BlockQuantizer b(space);
  for (const auto& [key, m] : field(j, "blocks").items()) {
    const auto idx = split_ints(key);
    if (idx.size() != 3) fail(ErrorKind::Parse, "block keys are 'a,b,c', got '" + key + "'");
    b.set_block(idx[0], idx[1], idx[2], matrix_from_json(m));
  }
  return b;
}

json cocycle_to_json(const Cocycle& z) {
  json rows = json::array();
  for (const auto& r : z.values) {
    json row = json::array();
    for (cd v : r) row.push_back(complex_to_json(v));
    rows.push_back(row);
  }
  return {{"dual", z.dual->group()->name()}, {"values", rows}};
}

Cocycle cocycle_from_json(const json& j) {
  const GroupPtr g = group_field(j, "dual");
  Cocycle z{builtin_irreps(g), {}};
  const json& v = field(j, "values");
  if (!v.is_array()) fail(ErrorKind::Parse, "'values' must be an array of rows");
  for (const auto& row : v) {
    if (!row.is_array()) fail(ErrorKind::Parse, "'values' must be an array of rows");
    std::vector<cd> r;
    for (const auto& x : row) r.push_back(complex_from_json(x));
    z.values.push_back(std::move(r));
  }
  return z;
}

json algebra_to_json(const EquivariantAlgebra& a) {
  json reps = json::array();
  for (const auto& r : a.rep) reps.push_back(matrix_to_json(r));
  return {{"group", a.group->name()}, {"dim", a.dim}, {"rep", reps}, {"mult", matrix_to_json(a.mult)}};
}

EquivariantAlgebra algebra_from_json(const json& j) {
  EquivariantAlgebra a;
  a.group = group_field(j, "group");
  a.dim = field(j, "dim").get<int>();
  for (const auto& r : field(j, "rep")) a.rep.push_back(matrix_from_json(r));
  a.mult = matrix_from_json(field(j, "mult"));
  if (static_cast<int>(a.rep.size()) != a.group->order())
    fail(ErrorKind::Structural, "algebra needs one representation matrix per group element");
  for (const auto& r : a.rep)
    if (r.rows() != a.dim || r.cols() != a.dim) fail(ErrorKind::Structural, "representation matrix has the wrong size");
  if (a.mult.rows() != a.dim || a.mult.cols() != a.dim * a.dim)
    fail(ErrorKind::Structural, "structure constants must be dim x dim^2");
  return a;
}

json rep_tables_to_json(const IrrepSet& reps) {
  const int k = reps.size();
  json dims = json::array(), chars = json::array(), cg = json::object();
  for (int a = 0; a < k; ++a) dims.push_back(reps.dim(a));
  for (const auto& row : character_table(reps)) {
    json r = json::array();
    for (cd v : row) r.push_back(complex_to_json(snap(v)));
    chars.push_back(r);
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      json entry = json::object();
      const auto m = clebsch_gordan(reps, a, b);
      for (int c = 0; c < k; ++c)
        if (m[c]) entry[reps.key(c)] = m[c];
      cg["(" + reps.key(a) + "," + reps.key(b) + ")"] = entry;
    }
  json classes = json::array();
  const auto& g = *reps.group();
  for (const auto& cls : g.classes()) classes.push_back(g.label(cls.front()));
  return {{"group", g.name()}, {"dims", dims}, {"classes", classes}, {"chars", chars}, {"cg", cg}};
}

json report_to_json(const ConditionReport& r, double tol) {
  return {{"coherence", r.coherence},
          {"naturality", r.naturality},
          {"normalization", r.normalization},
          {"accepted", r.accepted(tol)}};
}

json relations_to_json(const RelationSet& rs) {
  json raw = json::array(), reduced = json::array();
  for (const auto& e : rs.raw)
    raw.push_back({{"triple", {e.a, e.b, e.c}}, {"target", e.z}, {"equation", render_equation(e, rs.names)}});
  for (const auto& r : rs.reduced)
    reduced.push_back({{"relation", render_binomial(r, rs.names)}, {"exponents", r.exponents},
                       {"coef", complex_to_json(r.coef)}});
  return {{"model", model_name(rs.model)},
          {"variables", rs.names},
          {"torus_consistent", rs.torus_consistent},
          {"equations", raw},
          {"relations", reduced}};
}

json classification_to_json(const Classification& c, const std::vector<RowReport>& rows) {
  json fams = json::array();
  for (const auto& f : c.families) {
    json cells = json::object();
    for (size_t v = 0; v < c.vars.size(); ++v) cells[c.names[v]] = family_cell(c, f, static_cast<int>(v));
    json fixed = json::array();
    for (int v : f.fixed) fixed.push_back(c.names[v]);
    fams.push_back({{"index", f.index},
                    {"matrix", matrix_mode_name(f.matrix)},
                    {"params", f.params()},
                    {"values", cells},
                    {"gauge_fixed", fixed},
                    {"contains_trivial", f.contains_trivial},
                    {"verified_residual", f.residual},
                    {"coherent", f.coherent},
                    {"reference_rows", f.matches}});
  }
  json rep = json::array();
  for (const auto& r : rows)
    rep.push_back({{"row", r.label},
                   {"instances", r.instances},
                   {"solutions", r.solutions},
                   {"coherent", r.coherent},
                   {"families", r.families},
                   {"worst_residual", r.worst_residual}});
  return {{"group", c.space->group()->name()},
          {"model", model_name(c.model)},
          {"variables", c.names},
          {"families", fams},
          {"reference", rep}};
}

}  // namespace gquant
