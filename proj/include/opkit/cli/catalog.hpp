#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opkit/collection/sequence.hpp"
#include "opkit/multicat/multifunctor.hpp"

namespace opkit::catalog {

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

// Curated symmetric sequences with entries of size <= 2 in arities <= 3.
Named<Collection> sequences();

// Every Sigma_n-set of size <= max_size up to isomorphism, placed at arity n
// (n <= 3), with an unrelated entry at another arity.
struct RepresentabilityCase {
  std::string name;
  int n;
  Collection y;
};
std::vector<RepresentabilityCase> representability_cases(int max_size = 3);

// Curated FinSet multicategories: <= 3 objects, entries <= 2, arity <= 2.
Named<MultiPtr> multicategories();

// All multifunctors between catalog pairs, at most `per_pair` for each pair.
struct FunctorCase {
  std::string name;
  Multifunctor f;
};
std::vector<FunctorCase> multifunctors(const Named<MultiPtr>& cat, long per_pair = -1);

// Maps Xi(I) -> P for every catalog P with <= 3 objects.
std::vector<FunctorCase> points(const Named<MultiPtr>& cat);

}  // namespace opkit::catalog
