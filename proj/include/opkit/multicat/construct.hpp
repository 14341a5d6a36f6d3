#pragma once

#include <functional>
#include <map>
#include <vector>

#include "opkit/enrich/sset.hpp"
#include "opkit/multicat/multifunctor.hpp"

namespace opkit {

using enrich::Simplex;

// Level tables of a value; finite-set element x is the simplex {x, {0}}.
struct EntryLevels {
  std::vector<std::vector<Simplex>> at;
  std::vector<std::map<Simplex, int>> index;
  int find(const Simplex& s) const { return index.at(s.dim()).at(s); }
};
EntryLevels entry_levels(const EnrichValue& v, int dim_bound);
Simplex apply_map(const EnrichMap& f, const Simplex& s);

// Fill every action and composition table of `d` (entries, units and flags
// already set) from elementwise rules. A composite with id -1 is left
// unmaterialized.
using CompRule = std::function<Simplex(const CompKey&, const Simplex& a, const Simplex& b)>;
using ActRule = std::function<Simplex(const Signature&, const Perm&, const Simplex&)>;
void fill_tables(MultiData& d, const CompRule& comp, const ActRule& act);

// Categories are multicategories with arity bound 1.
MultiPtr category_from_table(const enrich::CategoryTable& c, const FinSet& objects);
enrich::CategoryTable category_table(const Multicategory& c);  // finite-set entries, arity 1 part
MultiPtr discrete_category(const FinSet& objects);

MultiPtr underlying_cat(const Multicategory& p);
MultiPtr xi(const Multicategory& c, int arity_bound = 2);
MultiPtr empty_multicategory(Backend b = Backend::FinSet, int arity_bound = 2, int dim_bound = 0);

// Reindex along f: T -> objects(P), keeping the signatures accepted by `keep`
// (which must be closed under composition and the action).
MultiPtr reindex(const Multicategory& p, const FinSet& t, const std::vector<int>& f, int arity_bound,
                 const std::function<bool(const Signature&)>& keep = {});

struct Pullback {
  MultiPtr result;
  Multifunctor canonical;  // F*(P) -> P over f
};
Pullback pullback(const MultiPtr& p, const FinSet& t, const std::vector<int>& f);

// Free symmetric structure on a non-symmetric multicategory.
MultiPtr symmetrize_multi(const Multicategory& p);
// Each element becomes a vertex; simplicial, truncated at dim_bound.
MultiPtr discrete_enrichment(const Multicategory& p, int dim_bound);
Multifunctor discrete_enrichment(const Multifunctor& f, int dim_bound);
// Objects and operations side by side; no operations mix the parts.
MultiPtr disjoint_union(const std::vector<MultiPtr>& parts, const std::vector<std::string>& tags);

// Examples.
MultiPtr commutative_operad(int arity_bound, bool nullary = false, bool symmetric = true);
MultiPtr associative_operad(int arity_bound, bool nullary = false);
MultiPtr cat_s(const FinSet& s, int arity_bound);
MultiPtr p_one(const Multicategory& p);
// Corolla G_n[K]: colors 0..n, one generator family (1..n; 0) valued in K.
MultiPtr corolla(int n, const EnrichValue& k, int arity_bound = 2, int dim_bound = 0);
// G_n[K] -> G_n[L] induced by f: K -> L.
Multifunctor corolla_map(int n, const EnrichMap& f, int arity_bound = 2, int dim_bound = 0);
MultiPtr forget_symmetry(const Multicategory& p);
MultiPtr contractible_groupoid(int objects = 2, int arity_bound = 2);
MultiPtr terminal_multicategory(int arity_bound = 2);  // one object, every entry a point

}  // namespace opkit
