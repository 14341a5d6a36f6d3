#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opkit/perm.hpp"

namespace opkit::enrich {

// A finite set given by an ordered list of distinct labels. The empty set is
// the initial object.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::string& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<std::string>& elements() const { return elements_; }
  int index_of(const std::string& label) const;

  bool operator==(const FinSet&) const = default;

 private:
  std::vector<std::string> elements_;
};

FinSet singleton(const std::string& label = "*");
// {label0, ..., label(n-1)} with labels prefix + index.
FinSet numbered(std::size_t n, const std::string& prefix = "e");

// A total function between finite sets; `on[i]` is the image of element i.
struct FinMap {
  FinSet source;
  FinSet target;
  std::vector<int> on;

  bool operator==(const FinMap&) const = default;
};

void validate(const FinMap& f);
FinMap identity_map(const FinSet& a);
FinMap compose(const FinMap& g, const FinMap& f);  // g after f
bool is_injective(const FinMap& f);
bool is_surjective(const FinMap& f);
bool is_bijective(const FinMap& f);

// Cartesian product, element (i, j) at index i * |b| + j, labelled "(x,y)".
FinSet tensor(const FinSet& a, const FinSet& b);

struct Coproduct {
  FinSet object;
  std::vector<FinMap> injections;
};
// Tagged disjoint union: element x of summand k is labelled tags[k] + x.
Coproduct coproduct(const std::vector<FinSet>& summands, const std::vector<std::string>& tags);

enum class ActionSide { Left, Right };

// A finite group, given as a list of permutations closed under composition,
// acting on a finite set. acts[g][x] is the image of x under group[g].
struct GroupAction {
  std::vector<Perm> group;
  std::vector<std::vector<int>> acts;
  ActionSide side = ActionSide::Left;
};

// Throws InvalidAction when the data is not a group action.
void verify_action(const FinSet& a, const GroupAction& action);

struct Quotient {
  FinSet object;    // one element per orbit, labelled by its least member
  FinMap projection;
};

// Orbit set with the canonical surjection. Verifies the action first.
Quotient coinvariants(const FinSet& a, const GroupAction& action);
// Orbits only, for trusted generator lists (no verification).
std::vector<int> orbits_by_generators(std::size_t n, const std::vector<std::vector<int>>& generators,
                                      int* num_orbits);

// Factor an invariant map through the quotient. Returns nullopt if `h` is not
// constant on orbits.
std::optional<FinMap> factor_through(const Quotient& q, const FinMap& h);

// All functions a -> b, in lexicographic order of their images.
std::vector<FinMap> all_maps(const FinSet& a, const FinSet& b);

}  // namespace opkit::enrich
