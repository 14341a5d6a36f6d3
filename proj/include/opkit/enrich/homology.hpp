#pragma once

#include <vector>

#include "opkit/enrich/sset.hpp"

namespace opkit::enrich {

using IntMatrix = std::vector<std::vector<long long>>;

// Diagonal of the Smith normal form (nonzero entries only, each dividing the
// next).
std::vector<long long> smith_diagonal(IntMatrix m);

struct ChainComplex {
  std::vector<int> ranks;      // ranks[n] = rank of C_n
  std::vector<IntMatrix> d;    // d[n]: C_n -> C_{n-1}, ranks[n-1] x ranks[n]
};

struct HomologyGroup {
  int rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1
  bool zero() const { return rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

// H_k for k = 0..ranks.size()-2 (the top group needs d_{k+1}).
std::vector<HomologyGroup> homology(const ChainComplex& c);

// Normalized chains of nondegenerate simplices up to dimension top.
ChainComplex normalized_chains(const SSet& x, int top);
std::vector<HomologyGroup> homology(const SSet& x, int max_k);

// Homology of the mapping cone of f; all groups up to max_k vanish exactly
// when f induces isomorphisms on H_k for k < max_k and injects on H_max_k.
std::vector<HomologyGroup> cone_homology(const SMap& f, int max_k);

}  // namespace opkit::enrich
