#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "opkit/collection/collection.hpp"

namespace opkit {

// (outer signature, 0-based slot, inner signature).
struct CompKey {
  Signature outer;
  int slot = 0;
  Signature inner;
  bool operator==(const CompKey&) const = default;
  bool operator<(const CompKey& o) const;
};

// Result signature of outer o_slot inner; throws SignatureError on a color
// mismatch.
Signature composite_signature(const Signature& outer, int slot, const Signature& inner);

// Raw multicategory data. Operations of a simplicial entry are handled one
// dimension at a time: level n lists every n-simplex of the entry (degenerate
// ones included) in SimplexIndex order; finite sets have the single level 0.
// Tables hold element indices within a level; -1 in a composition table marks
// a composite that is not materialized (free structures cut at a bound).
struct MultiData {
  Backend backend = Backend::FinSet;
  FinSet objects;
  int arity_bound = 2;
  int dim_bound = 0;  // top level for simplicial entries
  bool symmetric = true;
  bool partial = false;
  std::map<Signature, EnrichValue> entries;
  std::map<std::pair<Signature, int>, std::vector<std::vector<int>>> sigma;  // [level][x] -> element of act(sig, s)
  std::map<CompKey, std::vector<std::vector<int>>> comp;  // [level][a * |inner| + b]
  std::vector<int> units;                                  // element (or vertex) of (x; x)

  bool operator==(const MultiData&) const = default;
};

struct ValidationReport {
  bool ok = true;
  long checked = 0;
  std::vector<std::string> failures;  // at most `max_failures`, each localized
  std::vector<std::string> axioms;    // "unit: 12 instances" and so on
};

ValidationReport validate(const MultiData& d, int max_failures = 20);

// A validated multicategory. Signatures with nonempty entries are interned
// and ordered; lookups return -1 for empty signatures.
class Multicategory {
 public:
  // Validates eagerly; throws ValidationError with the first failures.
  explicit Multicategory(MultiData d);

  const MultiData& data() const { return d_; }
  Backend backend() const { return d_.backend; }
  const FinSet& objects() const { return d_.objects; }
  int num_objects() const { return static_cast<int>(d_.objects.size()); }
  int arity_bound() const { return d_.arity_bound; }
  int dim_bound() const { return d_.dim_bound; }
  int levels() const { return d_.dim_bound + 1; }
  bool symmetric() const { return d_.symmetric; }
  bool partial() const { return d_.partial; }

  int num_sigs() const { return static_cast<int>(sigs_.size()); }
  const Signature& sig(int id) const { return sigs_[id]; }
  int sig_id(const Signature& s) const;
  EnrichValue entry(const Signature& s) const;
  int size(int sig, int level = 0) const { return sizes_[level][sig]; }
  std::string element_name(int sig, int x, int level = 0) const;
  int element_index(int sig, const std::string& name, int level = 0) const;

  // Composite a o_slot b, or -1 when not materialized. Returns the result
  // signature id through `result`.
  int compose(int outer, int slot, int inner, int a, int b, int level = 0, int* result = nullptr) const;
  // a . s, landing in act(sig, s).
  int act(int sig, const Perm& s, int a, int level = 0, int* result = nullptr) const;
  int unit(int object, int level = 0) const;
  int unit_sig(int object) const;

  // Faces and degeneracies of level elements (simplicial entries).
  int face(int sig, int level, int x, int i) const;
  int degeneracy(int sig, int level, int x, int i) const;
  // Level element x as a simplex; finite-set elements are {x, {0}}.
  enrich::Simplex simplex(int sig, int level, int x) const;
  int simplex_index(int sig, const enrich::Simplex& s) const;

  bool operator==(const Multicategory& o) const { return d_ == o.d_; }

 private:
  MultiData d_;
  std::vector<Signature> sigs_;
  std::map<Signature, int> ids_;
  std::vector<std::vector<int>> sizes_;  // [level][sig]
  struct CompEntry {
    int result;
    const std::vector<std::vector<int>>* table;
  };
  std::map<std::tuple<int, int, int>, CompEntry> comp_;
  std::vector<std::vector<std::pair<int, const std::vector<std::vector<int>>*>>> sigma_;  // [sig][perm]
  std::vector<std::vector<std::vector<enrich::Simplex>>> simplices_;  // [sig][level][x]
  std::vector<std::vector<std::map<enrich::Simplex, int>>> simplex_ids_;
  struct Unchecked {};
  Multicategory(MultiData d, Unchecked);
  void index();
  friend ValidationReport validate(const MultiData& d, int max_failures);
};


using MultiPtr = std::shared_ptr<const Multicategory>;
MultiPtr make_multi(MultiData d);

// Level tables of a simplicial value: every n-simplex for n <= dim_bound.
std::vector<std::vector<enrich::Simplex>> level_simplices(const SSet& x, int dim_bound);

// Builds levelwise tables from per-element functions on finite sets.
class MultiBuilder {
 public:
  MultiBuilder(FinSet objects, int arity_bound, bool symmetric = true);
  // Adds (or extends) an entry; returns the element index.
  int add(const Signature& sig, const std::string& label);
  void set_unit(int object, int element);
  void set_sigma(const Signature& sig, const Perm& s, const std::vector<int>& on);
  void set_comp(const Signature& outer, int slot, const Signature& inner, int a, int b, int value);
  // Fill every composition with f(outer, slot, inner, a, b) -> element index.
  template <class F>
  void fill_comp(F f);
  template <class F>
  void fill_sigma(F f);
  MultiData data() const;
  const std::vector<std::string>& labels(const Signature& sig) const;

 private:
  MultiData d_;
  std::map<Signature, std::vector<std::string>> labels_;
  std::map<CompKey, std::map<std::pair<int, int>, int>> comp_;
  std::map<std::pair<Signature, int>, std::vector<int>> sigma_;
};

// The underlying collection with its action and unit points.
Collection underlying_collection(const Multicategory& p);

// Element of P(c_1..d_1..d_k..c_n; c) from the composition table.
int compose_at(const Multicategory& p, const Signature& outer, int a, int slot, const Signature& inner, int b,
               int level = 0);
// p(q_1, ..., q_n) by composing from the last slot down; also checks that the
// first-slot-up order agrees. Throws SignatureError or BoundExceeded.
struct Operation {
  Signature sig;
  int element = 0;
  bool operator==(const Operation&) const = default;
};
Operation full_composition(const Multicategory& p, const Operation& outer, const std::vector<Operation>& inner,
                           int level = 0);

template <class F>
void MultiBuilder::fill_comp(F f) {
  for (const auto& [o, lo] : labels_)
    for (int slot = 0; slot < o.arity(); ++slot)
      for (const auto& [i, li] : labels_) {
        if (i.output != o.inputs[slot]) continue;
        if (o.arity() - 1 + i.arity() > d_.arity_bound) continue;
        for (int a = 0; a < static_cast<int>(lo.size()); ++a)
          for (int b = 0; b < static_cast<int>(li.size()); ++b) set_comp(o, slot, i, a, b, f(o, slot, i, a, b));
      }
}

template <class F>
void MultiBuilder::fill_sigma(F f) {
  for (const auto& [sig, l] : labels_)
    for (const auto& s : all_perms(sig.arity())) {
      std::vector<int> on;
      for (int a = 0; a < static_cast<int>(l.size()); ++a) on.push_back(f(sig, s, a));
      set_sigma(sig, s, on);
    }
}

}  // namespace opkit
