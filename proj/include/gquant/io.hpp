#pragma once

#include <json.hpp>
#include <string>

#include "gquant/abelian.hpp"
#include "gquant/actions.hpp"
#include "gquant/classify.hpp"
#include "gquant/fourier.hpp"
#include "gquant/quantizer.hpp"
#include "gquant/relations.hpp"

namespace gquant {

using json = nlohmann::json;

// String field of an object; Parse error when missing or not a string.
std::string json_string(const json& j, const char* name);

// Complex numbers are [re, im]; matrices are row-major nested arrays.
json complex_to_json(cd z);
cd complex_from_json(const json& j);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

// {"group": spec, "terms": [{"g": label, "re": x, "im": y}, ...]}
json element_to_json(const Element& e);
Element element_from_json(const json& j);

// {"group": spec, "blocks": {"a" or "a,b": matrix}}
json fourier_to_json(const FourierImage& f);
FourierImage fourier_from_json(const json& j, const IrrepsPtr& irreps);

// {"group": spec, "blocks": {"a,b,c": matrix}} with integer irrep indices;
// omitted blocks are identities.
json blocks_to_json(const BlockQuantizer& b);
BlockQuantizer blocks_from_json(const json& j, const SpacePtr& space);

// {"dual": spec, "values": [[[re, im], ...], ...]}
json cocycle_to_json(const Cocycle& z);
Cocycle cocycle_from_json(const json& j);

// {"group": spec, "dim": n, "rep": [matrix per element], "mult": matrix}
json algebra_to_json(const EquivariantAlgebra& a);
EquivariantAlgebra algebra_from_json(const json& j);

// {"group": spec, "dims": [...], "chars": [[...]], "cg": {"(a,b)": {"c": n}}}
json rep_tables_to_json(const IrrepSet& reps);

json report_to_json(const ConditionReport& r, double tol);
json relations_to_json(const RelationSet& rs);
json classification_to_json(const Classification& c, const std::vector<RowReport>& rows);

}  // namespace gquant
