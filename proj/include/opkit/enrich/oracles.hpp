#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opkit/budget.hpp"
#include "opkit/enrich/sset.hpp"

namespace opkit::enrich {

enum class Verdict { Yes, No, Inconclusive };
std::string to_string(Verdict v);

// Enumerates simplicial maps x -> y extending the optional fixed values on
// nondegenerate simplices. `visit` returns false to stop. Returns false when
// stopped early or out of budget.
bool enumerate_smaps(const SSet& x, const SSet& y, const std::vector<std::optional<Simplex>>& fixed,
                     const std::function<bool(const SMap&)>& visit, SearchBudget& budget);

// Connected components; component[v] for every vertex id (other ids get -1).
std::vector<int> components(const SSet& x, int* count);
// Induced map on components, indexed by component of the source.
std::vector<int> pi0_map(const SMap& f);

struct KanResult {
  bool ok = true;
  std::string witness;  // unfillable horn, when !ok
};

// Horn lifting for every Lambda^n_k -> Delta^n with 1 <= n <= bound.
KanResult kan_fibration_check(const SMap& f, int bound);

struct WeqResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

// Sound oracle: "no" from pi_0 or cone homology, "yes" from an isomorphism or
// a deformation-retraction certificate, otherwise inconclusive.
WeqResult weq_oracle(const SMap& f, int bound, long budget = 200'000);

// Searches for a homotopy between maps a, b : x -> y (from a to b).
std::optional<SMap> find_homotopy(const SMap& a, const SMap& b, SearchBudget& budget);

}  // namespace opkit::enrich
