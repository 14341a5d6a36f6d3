#pragma once

#include <string>
#include <variant>
#include <vector>

#include "opkit/enrich/finset.hpp"
#include "opkit/enrich/oracles.hpp"
#include "opkit/enrich/sset.hpp"

namespace opkit::enrich {

// The two enriching backends behind one interface. Finite sets carry the
// discrete homotopy theory: weak equivalences are bijections, every map is a
// fibration, injections are cofibrations.
enum class Backend { FinSet, FinSSet };
std::string to_string(Backend b);
Backend parse_backend(const std::string& s);

using EnrichValue = std::variant<FinSet, SSet>;
using EnrichMap = std::variant<FinMap, SMap>;

Backend backend_of(const EnrichValue& v);
Backend backend_of(const EnrichMap& f);

constexpr int kDefaultDimBound = 3;

EnrichMap identity_map(const EnrichValue& v);
EnrichMap compose(const EnrichMap& g, const EnrichMap& f);  // g after f
void validate(const EnrichMap& f);
const EnrichValue source_of(const EnrichMap& f);
const EnrichValue target_of(const EnrichMap& f);
bool is_empty(const EnrichValue& v);
int size_of(const EnrichValue& v);  // elements, or nondegenerate simplices

struct EnrichCoproduct {
  EnrichValue object;
  std::vector<EnrichMap> injections;
};
// Tagged disjoint union; names of summand k are prefixed by tags[k].
EnrichCoproduct coproduct(Backend b, const std::vector<EnrichValue>& summands, const std::vector<std::string>& tags);

EnrichValue unit(Backend b);
EnrichValue initial(Backend b);
EnrichValue tensor(const EnrichValue& a, const EnrichValue& b, int dim_bound = kDefaultDimBound);
// Coherence isomorphism a (x) b -> b (x) a.
EnrichMap tensor_symmetry(const EnrichValue& a, const EnrichValue& b, int dim_bound = kDefaultDimBound);

struct SQuotient {
  SSet object;
  SMap projection;
};
// Orbit simplicial set of a group acting by automorphisms.
SQuotient coinvariants(const SSet& x, const std::vector<Perm>& group, const std::vector<SMap>& acts,
                       ActionSide side = ActionSide::Left);

// All maps a -> b (finite sets or simplicial sets).
std::vector<EnrichMap> hom_set(const EnrichValue& a, const EnrichValue& b, long budget = 1'000'000);

KanResult kan_fibration_check(const EnrichMap& f, int bound);
WeqResult weq_oracle(const EnrichMap& f, int bound);
bool is_cofibration(const EnrichMap& f);

struct GeneratingMap {
  std::string name;
  EnrichMap map;
};
std::vector<GeneratingMap> generating_cofibrations(Backend b, int dim_bound = kDefaultDimBound);
std::vector<GeneratingMap> generating_acyclic_cofibrations(Backend b, int dim_bound = kDefaultDimBound);

}  // namespace opkit::enrich
