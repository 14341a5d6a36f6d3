#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opkit/budget.hpp"
#include "opkit/multicat/multicategory.hpp"

namespace opkit {

// on_ops[sig][level][x] is the image of element x of source signature `sig`
// inside the image signature of the target.
struct Multifunctor {
  MultiPtr source;
  MultiPtr target;
  std::vector<int> on_objects;
  std::vector<std::vector<std::vector<int>>> on_ops;
};

Signature image_signature(const Multifunctor& f, const Signature& s);
// Target signature id of source signature id `sig`, or -1.
int image_sig_id(const Multifunctor& f, int sig);

struct FunctorReport {
  bool ok = true;
  std::vector<std::string> failures;
};
FunctorReport check_multifunctor(const Multifunctor& f, int max_failures = 10);
bool is_multifunctor(const Multifunctor& f);

Multifunctor identity_functor(const MultiPtr& p);
Multifunctor compose_functors(const Multifunctor& g, const Multifunctor& f);  // g after f
bool same_functor(const Multifunctor& a, const Multifunctor& b);

// Component at a source signature as an enrichment map.
EnrichMap component(const Multifunctor& f, const Signature& s);
// From components given on nondegenerate data; missing signatures must be
// empty in the source.
Multifunctor functor_from_components(const MultiPtr& p, const MultiPtr& q, const std::vector<int>& on_objects,
                                     const std::map<Signature, EnrichMap>& components);

// Exhaustive search for multifunctors between finite-set multicategories.
struct FunctorSearch {
  std::optional<std::vector<std::vector<int>>> object_candidates;  // per source object
  std::map<std::pair<int, int>, int> fixed;                        // (sig, x) -> forced image
  std::function<bool(int sig, int x, int tsig, int image)> allow;  // element filter
  long limit = -1;                                                 // stop after this many
  SearchBudget* budget = nullptr;
};
struct FunctorSearchResult {
  std::vector<Multifunctor> functors;
  bool exhausted = false;  // budget ran out; the list may be incomplete
};
FunctorSearchResult enumerate_multifunctors(const MultiPtr& p, const MultiPtr& q, const FunctorSearch& opts = {});
long count_multifunctors(const MultiPtr& p, const MultiPtr& q, const FunctorSearch& opts = {});

std::string functor_summary(const Multifunctor& f);

}  // namespace opkit
