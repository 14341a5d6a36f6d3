#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "opkit/multicat/multifunctor.hpp"

namespace opkit {

// A tree with labeled leaves. A leaf has gen == -1 and carries its color and
// input position; a vertex carries a generating signature (index into the
// presentation's signature list), an element of it, and one child per input.
struct TreeNode {
  int gen = -1;
  int elem = 0;
  int color = 0;
  int leaf = -1;
  std::vector<TreeNode> children;
  bool operator==(const TreeNode& o) const;
  bool operator<(const TreeNode& o) const;
};

int vertex_count(const TreeNode& t);
int leaf_count(const TreeNode& t);

inline constexpr int kDefaultTreeBound = 6;

// Free multicategory on a pointed collection, cut at `bound` vertices, and
// optionally divided by relations (congruence closure over the enumerated
// terms). Finite-set collections only.
class FreeMulticategory {
 public:
  FreeMulticategory(const Collection& k, int bound,
                    const std::vector<std::pair<TreeNode, TreeNode>>& relations = {});

  const Collection& generators() const { return k_; }
  int bound() const { return bound_; }
  const std::vector<Signature>& generator_signatures() const { return gsigs_; }
  const std::vector<std::pair<TreeNode, TreeNode>>& relations() const { return relations_; }

  Signature signature_of(const TreeNode& t) const;
  TreeNode leaf(int color) const { return TreeNode{-1, 0, color, 0, {}}; }
  // One generator applied to leaves 0..n-1, canonical.
  TreeNode generator(const Signature& s, int elem) const;
  TreeNode canonical(const TreeNode& t) const;
  TreeNode graft(const TreeNode& t, int slot, const TreeNode& u) const;
  TreeNode act(const TreeNode& t, const Perm& s) const;
  std::string to_string(const TreeNode& t) const;

  // Canonical representatives per signature, one per class.
  const std::map<Signature, std::vector<TreeNode>>& terms() const { return terms_; }
  // Element index of a term in the materialized multicategory, or -1 beyond
  // the bound.
  int index_of(const TreeNode& t) const;

  MultiPtr multicategory() const { return multi_; }
  // K -> U(F K) as element indices per generating signature.
  CollectionMap unit_map() const;
  // Restriction of a multifunctor out of F K along the unit.
  CollectionMap restrict_to_generators(const Multifunctor& f) const;

 private:
  Collection k_;
  int bound_;
  std::vector<std::pair<TreeNode, TreeNode>> relations_;
  std::vector<Signature> gsigs_;
  std::map<Signature, int> gids_;
  std::map<Signature, std::vector<TreeNode>> terms_;
  std::map<TreeNode, std::pair<Signature, int>> index_;
  MultiPtr multi_;

  std::vector<TreeNode> enumerate() const;
  void quotient(std::vector<TreeNode> all);
  void materialize();
  int min_leaf(const TreeNode& t) const;
};

// free_multicat(K, B); a non-symmetric K is symmetrized first.
FreeMulticategory free_multicat(const Collection& k, int bound = kDefaultTreeBound);

}  // namespace opkit
