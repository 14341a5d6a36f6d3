#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opkit/multicat/construct.hpp"
#include "opkit/multicat/free.hpp"

namespace opkit::model {

struct Evidence {
  std::string condition;  // "full", "faithful", "W1", "F2", ...
  std::string signature;  // "x1,x2;x" or "" for global conditions
  std::string result;     // "yes", "no", "inconclusive" or a short note
};

// Unset flags are undecided.
struct ModelVerdict {
  std::optional<bool> weq, fib, cofib, trivfib;
  std::vector<Evidence> evidence;
};

// Invertible unary operations of [Q]_1 as (signature id, element, inverse).
struct Iso {
  int sig;
  int elem;
  int inverse;
};
std::vector<Iso> isomorphisms(const Multicategory& q);
// Objects of [Q]_1 reachable from x by an isomorphism.
std::vector<int> iso_class(const Multicategory& q, int x);

// Set-enriched predicates.
bool is_full(const Multifunctor& f, std::vector<Evidence>* ev = nullptr);
bool is_faithful(const Multifunctor& f, std::vector<Evidence>* ev = nullptr);
bool is_essentially_surjective(const Multifunctor& f, std::vector<Evidence>* ev = nullptr);
ModelVerdict is_equivalence_set(const Multifunctor& f);
bool is_fibration_set(const Multifunctor& f, std::vector<Evidence>* ev = nullptr);
bool is_cofibration_set(const Multifunctor& f);
bool is_trivial_fibration_set(const Multifunctor& f);
ModelVerdict classify_set(const Multifunctor& f);

// Square i: A -> B, f: A -> P, p: P -> Q, g: B -> Q with p f = g i.
struct LiftingProblem {
  Multifunctor i, f, p, g;
};
bool commutes(const LiftingProblem& l);

enum class LiftStatus { Found, None, BudgetExhausted };
std::string to_string(LiftStatus s);
struct LiftResult {
  LiftStatus status = LiftStatus::None;
  std::optional<Multifunctor> lift;  // h: B -> P with h i = f and p h = g
  long steps = 0;
};
LiftResult solve_lift(const LiftingProblem& l, long budget = 1'000'000);

struct GeneratingMap {
  std::string tag;  // C1, C2, A1, A2
  std::string name;
  Multifunctor map;
};
using GeneratingSet = std::vector<GeneratingMap>;
// C1: corollas over the backend generating cofibrations for n <= max_n; C2.
GeneratingSet generating_cofibrations(int max_n = 2, int arity_bound = 2);
// A1: corollas over the backend acyclic cofibrations; A2: Xi(I) -> Xi(H).
GeneratingSet generating_acyclic_cofibrations(int max_n = 2, int arity_bound = 2);
// Xi(I) -> Xi(H) picking object 0.
Multifunctor xi_i_to_h(int arity_bound = 2, Backend b = Backend::FinSet, int dim_bound = 0);

struct RlpResult {
  bool holds = true;
  bool exhausted = false;
  long squares = 0;
  std::optional<LiftingProblem> counterexample;
  std::string failing_map;
};
RlpResult rlp_against(const Multifunctor& f, const GeneratingSet& family, long budget = 1'000'000);

struct Mc5 {
  MultiPtr qprime;
  Multifunctor i;     // P -> Q'
  Multifunctor pfib;  // Q' -> Q
};
Mc5 factorize_mc5(const Multifunctor& f);

struct PushoutXiH {
  MultiPtr q;
  Multifunctor j;  // Xi(I) -> Xi(H)
  Multifunctor g;  // P -> Q
  Multifunctor k;  // Xi(H) -> Q
  int star = -1;   // the new object
  int x_star = -1;
};
// F: Xi(I) -> P.
PushoutXiH pushout_xi_h(const Multifunctor& f);

struct CoconeCheck {
  long cocones = 0;
  long unique = 0;  // cocones with exactly one mediating map
  std::vector<std::string> failures;
};
// Mediating maps out of a square (a: S -> B, b: S -> C, g: B -> Q, k: C -> Q)
// tested against every cocone into each target.
CoconeCheck check_pushout(const Multifunctor& a, const Multifunctor& b, const Multifunctor& g, const Multifunctor& k,
                          const std::vector<MultiPtr>& targets, long budget = 5'000'000);

// s_*(G_n[X]) for a surjection s: {0..n} -> S (s[0] is the output color).
struct Pushforward {
  FreeMulticategory free;
  std::optional<Multifunctor> from_corolla;  // G_n[X] -> s_*(G_n[X]), absent at tree bound 0
};
Pushforward pushforward_corolla(const std::vector<int>& s, const FinSet& colors, const FinSet& x, int tree_bound,
                                int arity_bound = 2);

// Simplicial predicates.
MultiPtr pi0_category(const Multicategory& p);
Multifunctor pi0_functor(const Multifunctor& f);
ModelVerdict classify_simplicial(const Multifunctor& f, long oracle_budget = 200'000);

std::string verdict_string(const std::optional<bool>& v);

}  // namespace opkit::model
