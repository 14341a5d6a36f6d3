// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <string>
#include <vector>

#include "opkit/cli/suites.hpp"

namespace {

struct Criterion {
  int number;
  const char* suites[2];
  double limit_seconds;
  const char* text;
};

// Time limits are wall-clock seconds, pinned here.
const std::vector<Criterion> kCriteria = {
    {1, {"representability", nullptr}, 10, "representability hom(G_n,Y) = Y(n), catalog entries <= 3, n <= 3"},
    {2, {"rlp", nullptr}, 300, "trivial fibration <=> RLP against C1 u C2, n <= 2"},
    {3, {"fibration", nullptr}, 300, "fibration <=> RLP against A1 u A2"},
    {4, {"mc5", nullptr}, 60, "MC5 factorization Pfib o I = F, I cofibration, Pfib trivial fibration"},
    {5, {"pushout", nullptr}, 600, "pushout along Xi(I) -> Xi(H): unique mediating maps, G fully faithful"},
    {6, {"circle", nullptr}, 60, "tensor/circle unit, symmetry, associativity isomorphisms vs orbit oracle"},
    {7, {"adjunction", nullptr}, 60, "Xi -| [-]_1, symmetrize -| forget, free -| forget at B = 4"},
    {8, {"kan", nullptr}, 60, "Kan checks, simplicial classification on discrete enrichments"},
    {9, {"free_monoid", nullptr}, 10, "free monoid unary sizes 1, 1+|X|, 1+|X|+|X|^2 at B = 0,1,2"},
};

}  // namespace

int main() {
  opkit::suites::Options o;
  o.seed = 0;
  o.tree_bound = 4;
  o.lift_budget = 1'000'000;
  int failed = 0;
  for (const auto& c : kCriteria) {
    long instances = 0, failures = 0;
    double seconds = 0;
    bool exhausted = false;
    std::vector<std::string> ce;
    for (const char* id : c.suites) {
      if (!id) continue;
      auto r = opkit::suites::run(id, o);
      instances += r.instances;
      failures += r.failures;
      seconds += r.seconds;
      exhausted = exhausted || r.budget_exhausted;
      ce.insert(ce.end(), r.counterexamples.begin(), r.counterexamples.end());
    }
    bool in_time = seconds < c.limit_seconds;
    bool pass = failures == 0 && !exhausted && instances > 0 && in_time;
    failed += !pass;
    std::printf("%s criterion %d: %s [%ld instances, %ld failures%s, %.2fs < %.0fs%s]\n", pass ? "PASS" : "FAIL",
                c.number, c.text, instances, failures, exhausted ? ", budget exhausted" : "", seconds,
                c.limit_seconds, in_time ? "" : " EXCEEDED");
    for (const auto& x : ce) std::printf("    counterexample: %s\n", x.c_str());
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size());
  return failed ? 1 : 0;
}
