#pragma once

#include <map>
#include <vector>

#include "opkit/collection/collection.hpp"

namespace opkit {

// Symmetric sequences are one-color collections; arity n lives at the
// signature (*,...,*; *). The algebra below is for finite sets.
struct SeqEntry {
  FinSet set;
  std::vector<std::vector<int>> action;  // action[perm_index(s)][x] = x . s
};

Signature arity_signature(int n);
int top_arity(const Collection& k);  // -1 when empty

// Bound to which K o L must be computed so that (K o L) o M is exact up to
// `bound`: nullary entries of M let every arity of K o L contribute.
int circle_intermediate_bound(const Collection& k, const Collection& l, const Collection& m, int bound);
Collection make_sequence(const std::map<int, SeqEntry>& entries, int arity_bound = kDefaultArityBound);
FinSet seq_entry(const Collection& k, int n);
int seq_act(const Collection& k, int n, int x, const Perm& s);

// unit_0(0) = unit, empty elsewhere: the unit of the tensor product.
Collection tensor_unit(int arity_bound = kDefaultArityBound);
// J(1) = unit, empty elsewhere: the unit of the circle product.
Collection circle_unit(int arity_bound = kDefaultArityBound);
// Sigma_n with right translation at arity n.
Collection generating_sequence(int n, int arity_bound = kDefaultArityBound);
// The right Sigma_n-set of cosets H\Sigma_n at arity n.
Collection coset_sequence(int n, const std::vector<Perm>& subgroup, int arity_bound = kDefaultArityBound);

// Arity-wise tagged disjoint union.
Collection seq_coproduct(const std::vector<Collection>& parts, int arity_bound = kDefaultArityBound);

// An element [(x_1,...,x_r), t] of an r-fold tensor power, with x_j in
// K_j(m_j) and t in Sigma_n.
struct TensorElement {
  std::vector<int> arities;
  std::vector<int> parts;
  Perm tau;
  auto operator<=>(const TensorElement&) const = default;
};

struct DetailedTensor {
  Collection result;
  std::map<int, std::vector<TensorElement>> reps;  // representative per element
  std::map<int, std::map<TensorElement, int>> index;  // every representative of every element
};

// Day convolution of several sequences. The empty product is unit_0.
DetailedTensor tensor_product(const std::vector<Collection>& factors, int arity_bound);
Collection tensor_seq(const Collection& k, const Collection& l);
Collection tensor_seq(const Collection& k, const Collection& l, int arity_bound);
Collection tensor_power(const Collection& l, int r, int arity_bound);

int tensor_class(const DetailedTensor& t, const TensorElement& e);

// Left action of pi in Sigma_r on an r-fold power.
TensorElement permute_factors(const TensorElement& e, const Perm& pi);

// An element [k ; (l_1,...,l_r), t] of the circle product.
struct CircleElement {
  int k = 0;
  TensorElement inner;
  auto operator<=>(const CircleElement&) const = default;
};

struct DetailedCircle {
  Collection result;
  std::map<int, std::vector<CircleElement>> reps;
  std::map<int, std::map<CircleElement, int>> index;  // representatives only
  std::map<int, DetailedTensor> powers;                // L^(x)r
};

// Element of the circle product named by any representative.
int circle_class(const DetailedCircle& c, const CircleElement& e);

DetailedCircle circle_detailed(const Collection& k, const Collection& l, int arity_bound);
Collection circle(const Collection& k, const Collection& l);
Collection circle(const Collection& k, const Collection& l, int arity_bound);

// Arity-wise maps between sequences.
using SeqMap = std::map<int, FinMap>;
bool is_equivariant(const Collection& a, const Collection& b, const SeqMap& f);
bool is_iso(const Collection& a, const Collection& b, const SeqMap& f);

SeqMap tensor_unit_iso(const Collection& k);                       // K -> K (x) unit_0
SeqMap tensor_symmetry_iso(const Collection& k, const Collection& l);  // K (x) L -> L (x) K
SeqMap circle_right_unit_iso(const Collection& k);                // K -> K o J
SeqMap circle_left_unit_iso(const Collection& k);                 // K -> J o K

// (K o L) o M -> K o (L o M) up to `bound`, regrouping trees of height 3.
// Every representative of every element is mapped; throws ValidationError if
// two representatives disagree.
struct CircleAssociator {
  Collection left, right;
  SeqMap map;
  long representatives = 0;
};
CircleAssociator circle_associator(const Collection& k, const Collection& l, const Collection& m, int bound);
// Same, reusing K o L (computed to circle_intermediate_bound) and L o M.
CircleAssociator circle_associator(const Collection& k, const DetailedCircle& kl, const DetailedCircle& lm,
                                   const Collection& m, int bound);

// Equivariant families K(n) -> L(n), n <= bound.
struct HomSeq {
  FinSet object;
  std::vector<SeqMap> families;
};
HomSeq hom_seq(const Collection& k, const Collection& l);

// hom(G_n, Y) with its right Sigma_n-action and the map f |-> f_n(id).
struct Representability {
  HomSeq hom;
  std::vector<std::vector<int>> action;  // action[perm_index(s)][f] = f . s
  FinMap omega;
};
Representability representability(int n, const Collection& y);

}  // namespace opkit
