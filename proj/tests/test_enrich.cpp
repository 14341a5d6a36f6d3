#include <functional>
#include <set>

#include "doctest.h"
#include "opkit/enrich/enrich.hpp"
#include "opkit/enrich/homology.hpp"
#include "opkit/error.hpp"

using namespace opkit;
using namespace opkit::enrich;

namespace {

// Brute force: pairs of monotone maps [n] -> [1] with no common repeated step,
// i.e. nondegenerate n-simplices of Delta^1 x Delta^1.
int count_product_simplices(int n) {
  std::vector<std::vector<int>> monotone;
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> v) {
    if (static_cast<int>(v.size()) == n + 1) {
      monotone.push_back(v);
      return;
    }
    for (int x = v.empty() ? 0 : v.back(); x <= 1; ++x) {
      auto w = v;
      w.push_back(x);
      rec(w);
    }
  };
  rec({});
  int count = 0;
  for (const auto& a : monotone)
    for (const auto& b : monotone) {
      bool degenerate = false;
      for (int t = 0; t < n; ++t)
        if (a[t] == a[t + 1] && b[t] == b[t + 1]) degenerate = true;
      if (!degenerate) ++count;
    }
  return count;
}

int count_dim(const SSet& x, int d) { return static_cast<int>(x.nondegenerate(d).size()); }

SSet truncated_iso_nerve(int bound) { return nerve(codiscrete_groupoid(2), bound); }

}  // namespace

TEST_CASE("tensor of finite sets") {
  auto t = std::get<FinSet>(tensor(EnrichValue(FinSet({"x", "y"})), EnrichValue(singleton())));
  CHECK(t.size() == 2);
  CHECK(t[0] == "(x,*)");
  auto e = std::get<FinSet>(tensor(EnrichValue(FinSet()), EnrichValue(FinSet({"a", "b"}))));
  CHECK(e.empty());
  CHECK_THROWS_AS(tensor(EnrichValue(FinSet()), EnrichValue(point())), BackendMismatch);
}

TEST_CASE("product of simplices matches shuffle enumeration") {
  SSet d1 = standard_simplex(1);
  auto p = std::get<SSet>(tensor(EnrichValue(d1), EnrichValue(d1)));
  CHECK(count_product_simplices(0) == 4);
  CHECK(count_product_simplices(1) == 5);
  CHECK(count_product_simplices(2) == 2);
  CHECK(count_dim(p, 0) == count_product_simplices(0));
  CHECK(count_dim(p, 1) == count_product_simplices(1));
  CHECK(count_dim(p, 2) == count_product_simplices(2));
  CHECK(count_dim(p, 3) == 0);
  // Delta^1 x Delta^2 at truncation 2 drops the three 3-simplices.
  auto q = product(d1, standard_simplex(2), 2).object;
  CHECK(count_dim(q, 3) == 0);
  CHECK(count_dim(product(d1, standard_simplex(2), 3).object, 3) == 3);
}

TEST_CASE("tensor symmetry is an isomorphism") {
  SSet d1 = standard_simplex(1);
  SSet h = horn(2, 1);
  auto s = std::get<SMap>(tensor_symmetry(EnrichValue(d1), EnrichValue(h)));
  validate(s);
  CHECK(is_isomorphism(s));
  auto back = std::get<SMap>(tensor_symmetry(EnrichValue(h), EnrichValue(d1)));
  CHECK(compose(back, s) == identity_map(s.source));
  auto f = std::get<FinMap>(tensor_symmetry(EnrichValue(FinSet({"a", "b"})), EnrichValue(FinSet({"x", "y", "z"}))));
  CHECK(is_bijective(f));
  CHECK(f.target[f.on[1]] == "(y,a)");
}

TEST_CASE("coinvariants of finite sets") {
  FinSet two({"p", "q"});
  SUBCASE("trivial group") {
    auto q = coinvariants(two, {{Perm{0}}, {{0, 1}}, ActionSide::Left});
    CHECK(q.object.size() == 2);
    CHECK(is_bijective(q.projection));
  }
  SUBCASE("swap gives a single orbit") {
    auto q = coinvariants(two, {{Perm{0, 1}, Perm{1, 0}}, {{0, 1}, {1, 0}}, ActionSide::Left});
    CHECK(q.object.size() == 1);
  }
  SUBCASE("right translation on Sigma_2 x K") {
    FinSet k({"k0", "k1", "k2"});
    FinSet s2({"id", "t"});
    FinSet a = tensor(s2, k);
    // (sigma, k) . tau = (sigma tau, k)
    std::vector<int> act_t(6);
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < 3; ++j) act_t[s * 3 + j] = (1 - s) * 3 + j;
    auto q = coinvariants(a, {{Perm{0, 1}, Perm{1, 0}}, {{0, 1, 2, 3, 4, 5}, act_t}, ActionSide::Right});
    CHECK(q.object.size() == 3);
  }
  SUBCASE("non-action rejected") {
    CHECK_THROWS_AS(coinvariants(two, {{Perm{0, 1}, Perm{1, 0}}, {{0, 1}, {0, 0}}, ActionSide::Left}),
                    InvalidAction);
    FinSet three({"a", "b", "c"});
    // Sigma_2 cannot act by a 3-cycle.
    CHECK_THROWS_AS(coinvariants(three, {{Perm{0, 1}, Perm{1, 0}}, {{0, 1, 2}, {1, 2, 0}}, ActionSide::Left}),
                    InvalidAction);
  }
}

TEST_CASE("coinvariants are universal among invariant maps") {
  FinSet a({"a", "b", "c", "d"});
  GroupAction act{{Perm{0, 1}, Perm{1, 0}}, {{0, 1, 2, 3}, {1, 0, 2, 3}}, ActionSide::Left};
  auto q = coinvariants(a, act);
  FinSet t({"u", "v"});
  int invariant = 0;
  for (const auto& h : all_maps(a, t)) {
    bool is_invariant = h.on[0] == h.on[1];
    auto fac = factor_through(q, h);
    CHECK(fac.has_value() == is_invariant);
    if (!fac) continue;
    ++invariant;
    CHECK(compose(*fac, q.projection) == h);
    // Uniqueness: no other map out of the quotient factors h.
    int hits = 0;
    for (const auto& g : all_maps(q.object, t))
      if (compose(g, q.projection) == h) ++hits;
    CHECK(hits == 1);
  }
  CHECK(invariant == 8);
}

TEST_CASE("coinvariants of simplicial sets") {
  SSet two = coproduct(standard_simplex(1), standard_simplex(1));
  SMap swap{two, two, {}};
  for (int i = 0; i < two.size(); ++i) swap.on.push_back(two.nd((i + 3) % 6));
  auto q = coinvariants(two, {Perm{0, 1}, Perm{1, 0}}, {identity_map(two), swap});
  CHECK(q.object.size() == 3);
  CHECK(count_dim(q.object, 1) == 1);
}

TEST_CASE("degeneracy words") {
  for (int n = 0; n <= 4; ++n) {
    SSet d = standard_simplex(0);
    for (const auto& s : d.simplices(n)) {
      auto w = surj_to_degen(s.surj);
      CHECK(static_cast<int>(w.size()) == n);
      CHECK(degen_to_surj(w, 0) == s.surj);
    }
  }
  SSet d2 = standard_simplex(2);
  for (int n = 2; n <= 4; ++n)
    for (const auto& s : d2.simplices(n)) CHECK(degen_to_surj(surj_to_degen(s.surj), d2.dim(s.id)) == s.surj);
  CHECK_THROWS_AS(degen_to_surj({0, 1}, 0), ValidationError);
}

TEST_CASE("simplicial identities are enforced") {
  SSet x;
  int a = x.add_vertex("a"), b = x.add_vertex("b");
  int e = x.add("e", 1, {x.nd(b), x.nd(a)});
  int f = x.add("f", 1, {x.nd(b), x.nd(b)});
  // d0 = e, d1 = f, d2 = e breaks d0 d1 = d0 d0 on vertices.
  CHECK_THROWS_AS(x.add("t", 2, {x.nd(e), x.nd(f), x.nd(e)}), ValidationError);
  CHECK_NOTHROW(x.add("u", 2, {x.nd(f), x.nd(e), x.nd(e)}));
}

TEST_CASE("Kan fibration check") {
  SSet d0 = point(), d1 = standard_simplex(1);
  CHECK(kan_fibration_check(identity_map(d0), 2).ok);
  auto to_point = map_to_point(d1);
  CHECK(kan_fibration_check(to_point, 1).ok);
  auto r2 = kan_fibration_check(to_point, 2);
  CHECK_FALSE(r2.ok);
  CHECK(r2.witness.find("Lambda^2") != std::string::npos);
  // Failure persists at higher bounds.
  for (int d = 2; d <= 4; ++d) CHECK_FALSE(kan_fibration_check(to_point, d).ok);
  CHECK(kan_fibration_check(map_to_point(truncated_iso_nerve(3)), 3).ok);
  CHECK(kan_fibration_check(map_to_point(standard_simplex(2)), 1).ok);
  CHECK_FALSE(kan_fibration_check(map_to_point(boundary(2)), 2).ok);
  CHECK_THROWS_AS(kan_fibration_check(EnrichMap(identity_map(singleton())), 2), NotApplicable);
}

TEST_CASE("nerve of the contractible groupoid") {
  SSet n = truncated_iso_nerve(3);
  for (int d = 0; d <= 3; ++d) CHECK(count_dim(n, d) == 2);
  CHECK(n.simplices(2).size() == 8);
}

TEST_CASE("homology via Smith normal form") {
  CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<long long>{1, 6});
  CHECK(smith_diagonal({{2, 4}, {4, 8}}) == std::vector<long long>{2});
  auto hb = homology(boundary(2), 1);
  CHECK(hb[0].rank == 1);
  CHECK(hb[1].rank == 1);
  auto hd = homology(standard_simplex(3), 2);
  CHECK(hd[0].rank == 1);
  CHECK(hd[1].zero());
  CHECK(hd[2].zero());
  // A 2-cell glued along a loop twice: H_1 = Z/2.
  SSet rp;
  int v = rp.add_vertex("v");
  int a = rp.add("a", 1, {rp.nd(v), rp.nd(v)});
  rp.add("t", 2, {rp.nd(a), rp.degeneracy(rp.nd(v), 0), rp.nd(a)});
  auto hr = homology(rp, 1);
  CHECK(hr[1].rank == 0);
  CHECK(hr[1].torsion == std::vector<long long>{2});
}

TEST_CASE("weak equivalence oracle") {
  SSet d0 = point(), d1 = standard_simplex(1);
  CHECK(weq_oracle(identity_map(d1), 2).verdict == Verdict::Yes);
  SSet two_points = coproduct(d0, d0);
  CHECK(weq_oracle(map_to_point(two_points), 2).verdict == Verdict::No);
  auto r = weq_oracle(map_to_point(d1), 2);
  CHECK(r.verdict == Verdict::Yes);
  CHECK(weq_oracle(map_to_point(boundary(2)), 2).verdict == Verdict::No);
  CHECK(weq_oracle(map_to_point(standard_simplex(2)), 2).verdict == Verdict::Yes);
  // Vertex inclusion into Delta^1 retracts the other way.
  SMap v{d0, d1, {d1.nd(d1.find("0"))}};
  CHECK(weq_oracle(v, 2).verdict == Verdict::Yes);
  CHECK(weq_oracle(EnrichMap(FinMap{FinSet({"a", "b"}), singleton(), {0, 0}}), 2).verdict == Verdict::No);
}

TEST_CASE("generating maps") {
  auto gc = generating_cofibrations(Backend::FinSSet, 2);
  CHECK(gc.size() == 3);
  for (const auto& g : gc) CHECK(is_cofibration(g.map));
  auto ga = generating_acyclic_cofibrations(Backend::FinSSet, 2);
  CHECK(ga.size() == 5);
  for (const auto& g : ga) CHECK(weq_oracle(g.map, 2).verdict == Verdict::Yes);
  auto fs = generating_cofibrations(Backend::FinSet);
  CHECK(fs.size() == 2);
}

TEST_CASE("hom-set enumeration") {
  auto maps = hom_set(EnrichValue(standard_simplex(1)), EnrichValue(standard_simplex(1)));
  CHECK(maps.size() == 3);
  CHECK(hom_set(EnrichValue(FinSet({"a", "b"})), EnrichValue(FinSet({"x", "y", "z"}))).size() == 9);
}
