#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opkit/enrich/finset.hpp"

namespace opkit::enrich {

// A simplex of a finite simplicial set in Eilenberg-Zilber form: a
// nondegenerate simplex `id` of dimension m together with an order-preserving
// surjection [n] -> [m], stored as its n+1 values.
struct Simplex {
  int id = -1;
  std::vector<int> surj;

  int dim() const { return static_cast<int>(surj.size()) - 1; }
  bool nondegenerate() const;
  auto operator<=>(const Simplex&) const = default;
};

// Degeneracy words are strictly decreasing lists [i1 > i2 > ... > ik]
// denoting s_{i1} ... s_{ik}.
std::vector<int> degen_to_surj(const std::vector<int>& degen, int base_dim);
std::vector<int> surj_to_degen(const std::vector<int>& surj);

struct FaceSpec {
  int target = -1;
  std::vector<int> degen;
  bool operator==(const FaceSpec&) const = default;
};

// A finite simplicial set presented by its nondegenerate simplices and their
// faces. Faces may be degenerate.
class SSet {
 public:
  SSet() = default;

  // Appends a nondegenerate simplex; faces are given in order d_0 .. d_n.
  // Throws ValidationError if the faces have the wrong dimension or break a
  // simplicial identity.
  int add(const std::string& name, int dim, const std::vector<Simplex>& faces);
  int add_vertex(const std::string& name) { return add(name, 0, {}); }

  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int id) const { return dims_[id]; }
  const std::string& name(int id) const { return names_[id]; }
  int find(const std::string& name) const;
  int max_dim() const;
  std::vector<int> nondegenerate(int d) const;
  const std::vector<Simplex>& faces_of(int id) const { return faces_[id]; }

  static Simplex nd(int id, int dim);
  Simplex nd(int id) const { return nd(id, dims_[id]); }

  Simplex face(const Simplex& s, int i) const;
  Simplex degeneracy(const Simplex& s, int i) const;
  Simplex vertex(const Simplex& s, int k) const;  // k-th vertex

  // All simplices (degenerate included) of dimension n, deterministic order.
  std::vector<Simplex> simplices(int n) const;
  std::string simplex_name(const Simplex& s) const;

  bool operator==(const SSet&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> dims_;
  std::vector<std::vector<Simplex>> faces_;
};

// Maps are given on nondegenerate simplices.
struct SMap {
  SSet source;
  SSet target;
  std::vector<Simplex> on;

  Simplex apply(const Simplex& s) const;
  bool operator==(const SMap&) const = default;
};

void validate(const SMap& f);  // throws ValidationError
SMap identity_map(const SSet& x);
SMap compose(const SMap& g, const SMap& f);
bool is_isomorphism(const SMap& f);

// Index of every simplex of each dimension <= max_n.
class SimplexIndex {
 public:
  SimplexIndex(const SSet& x, int max_n);
  const std::vector<Simplex>& level(int n) const { return levels_[n]; }
  int index(const Simplex& s) const;
  int max_n() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  std::vector<std::vector<Simplex>> levels_;
  std::vector<std::map<Simplex, int>> index_;
};

// Standard objects.
SSet point();
SSet standard_simplex(int n);
SSet boundary(int n);
SSet horn(int n, int k);
SSet discrete(const FinSet& s);
SSet coproduct(const SSet& x, const SSet& y);
SMap inclusion_into_simplex(const SSet& sub, int n);  // for boundary/horn

struct Product {
  SSet object;
  SMap first;
  SMap second;
};
// Product truncated to nondegenerate simplices of dimension <= bound.
Product product(const SSet& x, const SSet& y, int bound);
SMap map_to_point(const SSet& x);

// Nerve of a finite category given by a composition table, truncated at
// dimension `bound`. morphisms[f] = (source, target); identities[o] is the
// identity morphism of object o; compose[f][g] is f after g, or -1.
struct CategoryTable {
  int objects = 0;
  std::vector<std::pair<int, int>> morphisms;
  std::vector<int> identities;
  std::vector<std::vector<int>> compose;
  std::vector<std::string> morphism_names;
};
SSet nerve(const CategoryTable& c, int bound);
CategoryTable codiscrete_groupoid(int objects);

}  // namespace opkit::enrich
