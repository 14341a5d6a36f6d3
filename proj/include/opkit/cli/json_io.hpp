#pragma once

#include <json.hpp>

#include "opkit/model/model.hpp"
#include "opkit/multicat/free.hpp"

namespace opkit::io {

using nlohmann::json;

// Signatures are keyed "x1,x2;x" by color label; permutations by perm_index.
// Simplices are [id, [surjection values]].

json to_json(const FinSet& s);
FinSet finset_from_json(const json& j);
json to_json(const enrich::Simplex& s);
enrich::Simplex simplex_from_json(const json& j);
json to_json(const SSet& x);
SSet sset_from_json(const json& j);
json to_json(const EnrichValue& v);
EnrichValue value_from_json(const json& j, Backend b);
json to_json(const EnrichMap& f);
EnrichMap map_from_json(const json& j, Backend b);

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& s);

json to_json(const Collection& k);
Collection collection_from_json(const json& j);

// {"objects", "backend", "bounds", "ops": <collection with action tables>,
//  "comp": {"outer|slot|inner": [[...] per level]}, "units"}
json to_json(const MultiData& d);
MultiData multidata_from_json(const json& j);
json to_json(const Multicategory& p);
MultiPtr multicategory_from_json(const json& j);  // validates

// {"source", "target", "on_objects": [labels], "on_ops": {"sig": [[...]]}}
json to_json(const Multifunctor& f);
Multifunctor functor_from_json(const json& j);
bool same_json_functor(const Multifunctor& a, const Multifunctor& b);

// Vertex {"op": sig, "elem": label, "children": [...]}, leaf {"leaf": i, "color": label}.
json to_json(const FreeMulticategory& f, const TreeNode& t);
TreeNode tree_from_json(const Collection& generators, const std::vector<Signature>& gsigs, const json& j);
// {"generators": <collection>, "bound": B, "relations": [[t, u], ...]}
FreeMulticategory free_from_json(const json& j);

struct Bounds {
  int arity = 2;
  int dim = 2;
  int tree = 4;
  long lift_budget = 1'000'000;
};
json to_json(const Bounds& b);

json verdict_json(const model::ModelVerdict& v);
json report(const model::ModelVerdict& v, const Bounds& b, const json& counterexample = nullptr);

json read_file(const std::string& path);  // ParseError with the location on failure
void write_file(const std::string& path, const json& j);

}  // namespace opkit::io
