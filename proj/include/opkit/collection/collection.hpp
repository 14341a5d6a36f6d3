#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opkit/enrich/enrich.hpp"
#include "opkit/perm.hpp"

namespace opkit {

using enrich::Backend;
using enrich::EnrichMap;
using enrich::EnrichValue;
using enrich::FinMap;
using enrich::FinSet;
using enrich::SMap;
using enrich::SSet;

constexpr int kDefaultArityBound = 4;

// A colored signature (x_1,...,x_n; x) over colors 0..|S|-1. Ordered by
// arity, then inputs, then output.
struct Signature {
  std::vector<int> inputs;
  int output = 0;

  int arity() const { return static_cast<int>(inputs.size()); }
  bool operator==(const Signature&) const = default;
  bool operator<(const Signature& o) const;
};

// (x_{s(1)},...,x_{s(n)}; x), the signature that phi . s lives in.
Signature act(const Signature& sig, const Perm& s);
Signature unary(int x, int y);

// "x1,x2;x" with color labels.
std::string signature_key(const Signature& sig, const FinSet& colors);
Signature parse_signature(const std::string& key, const FinSet& colors);

// Every signature of arity <= bound over `ncolors` colors, in order.
std::vector<Signature> all_signatures(int ncolors, int bound);

// Entries indexed by signature; absent entries are the initial object.
// sigma[(sig, perm_index(s))] is the map entry(sig) -> entry(act(sig, s)).
// points[x] is the element (or vertex) 1_x of entry(x;x).
struct Collection {
  Backend backend = Backend::FinSet;
  FinSet colors;
  int arity_bound = kDefaultArityBound;
  std::map<Signature, EnrichValue> entries;
  bool symmetric = false;
  std::map<std::pair<Signature, int>, EnrichMap> sigma;
  bool pointed = false;
  std::map<int, int> points;

  EnrichValue entry(const Signature& sig) const;
  const EnrichMap& sigma_map(const Signature& sig, const Perm& s) const;
  int entry_size(const Signature& sig) const;  // elements, or simplices of all dimensions

  bool operator==(const Collection&) const = default;
};

// Throws ValidationError or InvalidAction.
void validate(const Collection& k);

// Drops empty entries and fills identity or trivial sigma data for them.
void normalize(Collection& k);

// Trivial actions on an arity <= 1 collection.
Collection with_trivial_action(Collection k);

// A map of collections over a map of colors.
struct CollectionMap {
  std::vector<int> on_colors;
  std::map<Signature, EnrichMap> on;
  bool operator==(const CollectionMap&) const = default;
};

Signature map_signature(const Signature& sig, const std::vector<int>& on_colors);

// Checks totality, equivariance (when both are symmetric) and points (when
// both are pointed).
bool is_collection_map(const Collection& a, const Collection& b, const CollectionMap& f, std::string* why = nullptr);

// All collection maps a -> b (FinSet). `on_colors` restricts the color map.
std::vector<CollectionMap> all_collection_maps(const Collection& a, const Collection& b,
                                               const std::optional<std::vector<int>>& on_colors = std::nullopt,
                                               bool respect_sigma = true, long budget = 1'000'000);

// Forgets sigma and points as requested.
Collection forget_sigma(Collection k);

struct Symmetrization {
  Collection result;
  CollectionMap unit;  // K -> U(result)
};
// Free symmetric collection: entry(sig) is the coproduct over s in Sigma_n of
// K(act(sig, s^-1)); element (phi, s) . t = (phi, s t).
Symmetrization symmetrize(const Collection& k);

// G_n(Y): colors 0..n, Y at (1,...,n; 0), initial elsewhere.
Collection make_generating(int n, const EnrichValue& y, bool symmetrized = false,
                           int arity_bound = kDefaultArityBound);

// Stabilizers of weakly increasing tuples, one per (tuple, output).
struct SignatureGroupoid {
  FinSet colors;
  int arity_bound = 0;
  std::vector<Signature> objects;
  std::vector<std::vector<Perm>> stabilizers;
};
SignatureGroupoid signature_groupoid(const FinSet& colors, int arity_bound);
// A permutation sorting the inputs of sig: act(sig, s) is weakly increasing.
Perm sorting_perm(const Signature& sig);

}  // namespace opkit
