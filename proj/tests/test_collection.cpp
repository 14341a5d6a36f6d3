#include <algorithm>
#include <set>

#include "doctest.h"
#include "opkit/cli/catalog.hpp"
#include "opkit/collection/sequence.hpp"
#include "opkit/error.hpp"
#include "opkit/oracle/orbit_oracle.hpp"

using namespace opkit;

namespace {

oracle::PlainSeq plain(const Collection& k) {
  oracle::PlainSeq p;
  for (const auto& [sig, v] : k.entries) {
    int n = sig.arity();
    p.size[n] = static_cast<int>(std::get<FinSet>(v).size());
    for (const auto& t : adjacent_transpositions(n)) p.gens[n].push_back(std::get<FinMap>(k.sigma_map(sig, t)).on);
  }
  return p;
}

// Same Sigma_n-set up to isomorphism in every arity <= bound.
void check_same(const Collection& impl, const oracle::PlainSeq& ref, int bound) {
  oracle::PlainSeq mine = plain(impl);
  for (int n = 0; n <= bound; ++n) {
    int a = mine.size.count(n) ? mine.size[n] : 0;
    int b = ref.size.count(n) ? ref.size.at(n) : 0;
    CHECK(a == b);
    if (a == b && a > 0) CHECK(oracle::marks(mine, n) == oracle::marks(ref, n));
  }
}

Collection one_color(std::map<Signature, EnrichValue> entries, int bound = 3) {
  Collection k;
  k.colors = FinSet({"a"});
  k.arity_bound = bound;
  k.entries = std::move(entries);
  return k;
}

int size_at(const Collection& k, int n) { return static_cast<int>(seq_entry(k, n).size()); }

}  // namespace

TEST_CASE("signature keys and order") {
  FinSet colors({"a", "b"});
  Signature s{{0, 1, 1}, 0};
  CHECK(signature_key(s, colors) == "a,b,b;a");
  CHECK(parse_signature("a,b,b;a", colors) == s);
  CHECK(parse_signature(";b", colors) == Signature{{}, 1});
  CHECK_THROWS_AS(parse_signature("a,c;a", colors), ParseError);
  CHECK(Signature{{1}, 0} < Signature{{0, 0}, 0});
  CHECK(all_signatures(2, 2).size() == 2 + 4 + 8);
  CHECK(act(s, {2, 0, 1}) == Signature{{1, 0, 1}, 0});
}

TEST_CASE("symmetrize") {
  SUBCASE("unary-only collection is unchanged") {
    Collection k = one_color({{unary(0, 0), FinSet({"f", "g"})}});
    auto s = symmetrize(k);
    CHECK(s.result.entry_size(unary(0, 0)) == 2);
    CHECK(s.result.entries.size() == 1);
    CHECK(is_collection_map(k, forget_sigma(s.result), s.unit));
    CHECK(enrich::is_bijective(std::get<FinMap>(s.unit.on.at(unary(0, 0)))));
  }
  SUBCASE("binary generator gets a free action") {
    Collection k = one_color({{Signature{{0, 0}, 0}, FinSet({"m"})}});
    auto s = symmetrize(k);
    validate(s.result);
    CHECK(s.result.entry_size(Signature{{0, 0}, 0}) == 2);
    const auto& swap = std::get<FinMap>(s.result.sigma_map(Signature{{0, 0}, 0}, {1, 0}));
    CHECK(swap.on[0] != 0);
  }
  SUBCASE("empty") { CHECK(symmetrize(one_color({})).result.entries.empty()); }
  SUBCASE("two colors move entries") {
    Collection k;
    k.colors = FinSet({"a", "b"});
    k.arity_bound = 2;
    k.entries[Signature{{0, 1}, 0}] = FinSet({"p"});
    auto s = symmetrize(k);
    validate(s.result);
    CHECK(s.result.entry_size(Signature{{0, 1}, 0}) == 1);
    CHECK(s.result.entry_size(Signature{{1, 0}, 0}) == 1);
  }
  SUBCASE("simplicial entries") {
    Collection k;
    k.backend = Backend::FinSSet;
    k.colors = FinSet({"a"});
    k.arity_bound = 2;
    k.entries[Signature{{0, 0}, 0}] = enrich::standard_simplex(1);
    auto s = symmetrize(k);
    validate(s.result);
    CHECK(s.result.entry_size(Signature{{0, 0}, 0}) == 6);
  }
}

TEST_CASE("symmetrize is left adjoint to forgetting the action") {
  std::vector<Collection> ks;
  ks.push_back(one_color({{Signature{{0, 0}, 0}, FinSet({"m"})}}, 2));
  ks.push_back(one_color({{Signature{{0, 0}, 0}, FinSet({"m", "n"})}, {unary(0, 0), FinSet({"u"})}}, 2));
  ks.push_back(one_color({{Signature{{}, 0}, FinSet({"c"})}, {Signature{{0, 0}, 0}, FinSet({"m"})}}, 2));
  std::vector<Collection> qs;
  for (const auto& [name, q] : catalog::sequences()) {
    Collection r = q;
    r.arity_bound = 2;
    for (auto it = r.entries.begin(); it != r.entries.end();)
      it = it->first.arity() > 2 ? r.entries.erase(it) : std::next(it);
    for (auto it = r.sigma.begin(); it != r.sigma.end();)
      it = it->first.first.arity() > 2 ? r.sigma.erase(it) : std::next(it);
    r.colors = FinSet({"a"});
    qs.push_back(r);
  }
  int pairs = 0;
  for (const auto& k : ks) {
    auto s = symmetrize(k);
    for (const auto& q : qs) {
      auto sym_maps = all_collection_maps(s.result, q);
      auto plain_maps = all_collection_maps(k, forget_sigma(q));
      std::set<std::map<Signature, std::vector<int>>> images;
      for (const auto& f : sym_maps) {
        CHECK(is_collection_map(s.result, q, f));
        std::map<Signature, std::vector<int>> restricted;
        for (const auto& [sig, u] : s.unit.on) {
          FinMap r = enrich::compose(std::get<FinMap>(f.on.at(sig)), std::get<FinMap>(u));
          restricted[sig] = r.on;
        }
        images.insert(restricted);
      }
      CHECK(images.size() == sym_maps.size());
      CHECK(images.size() == plain_maps.size());
      ++pairs;
    }
  }
  CHECK(pairs == static_cast<int>(ks.size() * qs.size()));
}

TEST_CASE("generating collections") {
  auto g0 = make_generating(0, FinSet({"y"}));
  CHECK(g0.colors.size() == 1);
  CHECK(g0.entry_size(Signature{{}, 0}) == 1);
  auto g2 = make_generating(2, FinSet({"a"}));
  CHECK(g2.entries.size() == 1);
  CHECK(g2.entry_size(Signature{{1, 2}, 0}) == 1);
  auto g2s = make_generating(2, FinSet({"a"}), true);
  validate(g2s);
  CHECK(g2s.entry_size(Signature{{2, 1}, 0}) == 1);
  CHECK_THROWS_AS(make_generating(5, FinSet({"a"})), BoundExceeded);
  for (int n = 0; n <= 3; ++n) {
    Collection one = one_color({{arity_signature(n), enrich::singleton()}}, 3);
    one.colors = FinSet({"*"});
    auto sym = symmetrize(one).result;
    auto gen = generating_sequence(n, 3);
    for (int r = 0; r <= 3; ++r) CHECK(size_at(sym, r) == (r == n ? factorial(n) : 0));
    check_same(sym, plain(gen), 3);
  }
}

TEST_CASE("signature groupoid") {
  auto g = signature_groupoid(FinSet({"a"}), 2);
  REQUIRE(g.objects.size() == 3);
  CHECK(g.stabilizers[1].size() == 1);
  CHECK(g.stabilizers[2].size() == 2);
  auto h = signature_groupoid(FinSet({"a", "b"}), 3);
  for (std::size_t i = 0; i < h.objects.size(); ++i) {
    const auto& sig = h.objects[i];
    if (sig.inputs == std::vector<int>{0, 1}) CHECK(h.stabilizers[i].size() == 1);
    if (sig.inputs == std::vector<int>{0, 0, 1}) CHECK(h.stabilizers[i].size() == 2);
    std::set<Perm> group(h.stabilizers[i].begin(), h.stabilizers[i].end());
    for (const auto& a : group) {
      CHECK(act(sig, a) == sig);
      CHECK(group.count(inverse(a)));
      for (const auto& b : group) CHECK(group.count(opkit::compose(a, b)));
    }
  }
  // Number of objects: weakly increasing tuples times outputs.
  CHECK(h.objects.size() == 2 * (1 + 2 + 3 + 4));
  // The ordered skeleton is equivalent to the full signature groupoid: every
  // signature is isomorphic to a sorted one, and automorphism groups agree.
  for (const auto& sig : all_signatures(2, 3)) {
    Perm s = sorting_perm(sig);
    Signature sorted = act(sig, s);
    CHECK(std::is_sorted(sorted.inputs.begin(), sorted.inputs.end()));
    int autos = 0;
    for (const auto& p : all_perms(sig.arity()))
      if (act(sig, p) == sig) ++autos;
    CHECK(autos == static_cast<int>(stabilizer(sorted.inputs).size()));
  }
}

TEST_CASE("collection validation") {
  Collection k = one_color({{Signature{{0, 0}, 0}, FinSet({"x", "y"})}}, 2);
  k.symmetric = true;
  FinSet e({"x", "y"});
  k.sigma[{Signature{{0, 0}, 0}, 0}] = enrich::identity_map(e);
  k.sigma[{Signature{{0, 0}, 0}, 1}] = FinMap{e, e, {0, 0}};
  CHECK_THROWS_AS(validate(k), InvalidAction);
  k.sigma[{Signature{{0, 0}, 0}, 1}] = FinMap{e, e, {1, 0}};
  CHECK_NOTHROW(validate(k));
  k.pointed = true;
  CHECK_THROWS_AS(validate(k), ValidationError);
}

TEST_CASE("tensor of sequences") {
  auto j = circle_unit(3);
  SUBCASE("unit law") {
    for (const auto& [name, k] : catalog::sequences()) {
      auto f = tensor_unit_iso(k);
      Collection t = tensor_seq(k, tensor_unit(3), 3);
      CHECK_MESSAGE(is_iso(k, t, f), name);
      CHECK_MESSAGE(is_equivariant(k, t, f), name);
    }
  }
  SUBCASE("two unary singletons") {
    auto t = tensor_seq(j, j, 3);
    CHECK(size_at(t, 2) == 2);
    CHECK(size_at(t, 1) == 0);
  }
  SUBCASE("empty factor") { CHECK(tensor_seq(make_sequence({}, 3), j, 3).entries.empty()); }
  SUBCASE("binary power") {
    auto k = catalog::sequences()[9].second;
    auto a = tensor_seq(k, k, 3);
    auto b = tensor_power(k, 2, 3);
    CHECK(a == b);
  }
  SUBCASE("bound") { CHECK_THROWS_AS(tensor_seq(j, j, 9), BoundExceeded); }
}

TEST_CASE("tensor against the orbit oracle") {
  auto cat = catalog::sequences();
  for (const auto& [a, k] : cat)
    for (const auto& [b, l] : cat) {
      auto t = tensor_seq(k, l, 3);
      check_same(t, oracle::tensor(plain(k), plain(l), 3), 3);
      // Free action of Sigma_p x Sigma_q on Sigma_n gives n!/(p!q!) per pair.
      for (int n = 0; n <= 3; ++n) {
        long expect = 0;
        for (int p = 0; p <= n; ++p)
          expect += size_at(k, p) * size_at(l, n - p) * factorial(n) / (factorial(p) * factorial(n - p));
        CHECK(size_at(t, n) == expect);
      }
      auto s = tensor_symmetry_iso(k, l);
      auto t2 = tensor_seq(l, k, 3);
      CHECK_MESSAGE(is_iso(t, t2, s), (a + "," + b));
      CHECK_MESSAGE(is_equivariant(t, t2, s), (a + "," + b));
    }
}

TEST_CASE("circle product") {
  auto j = circle_unit(3);
  SUBCASE("unit laws") {
    for (const auto& [name, k] : catalog::sequences()) {
      auto r = circle_right_unit_iso(k);
      auto kj = circle(k, j, 3);
      CHECK_MESSAGE(is_iso(k, kj, r), name);
      CHECK_MESSAGE(is_equivariant(k, kj, r), name);
      auto l = circle_left_unit_iso(k);
      auto jk = circle(j, k, 3);
      CHECK_MESSAGE(is_iso(k, jk, l), name);
      CHECK_MESSAGE(is_equivariant(k, jk, l), name);
    }
  }
  SUBCASE("binary singleton") {
    auto k = make_sequence({{2, {enrich::singleton(), {{0}, {0}}}}}, 3);
    auto c = circle(k, j, 3);
    CHECK(size_at(c, 2) == 1);
  }
  SUBCASE("empty") {
    auto k = catalog::sequences()[6].second;
    CHECK(circle(k, make_sequence({}, 3), 3).entries.empty());
  }
  SUBCASE("arity-0 unit does not work on the right") {
    auto k = catalog::sequences()[5].second;
    CHECK_FALSE(circle(k, tensor_unit(3), 3) == k);
    CHECK(size_at(circle(k, tensor_unit(3), 3), 0) == 1);
  }
}

TEST_CASE("circle against the orbit oracle") {
  auto cat = catalog::sequences();
  for (const auto& [a, k] : cat)
    for (const auto& [b, l] : cat) {
      auto c = circle(k, l, 3);
      INFO(a << " o " << b);
      check_same(c, oracle::circle(plain(k), plain(l), 3), 3);
    }
}

TEST_CASE("circle associativity up to isomorphism of Sigma-sets") {
  auto cat = catalog::sequences();
  int triples = 0, skipped = 0;
  for (std::size_t x = 0; x < cat.size(); x += 2)
    for (std::size_t y = 1; y < cat.size(); y += 2)
      for (std::size_t z = 0; z < cat.size(); z += 3) {
        const auto& k = cat[x].second;
        const auto& l = cat[y].second;
        const auto& m = cat[z].second;
        int mid = circle_intermediate_bound(k, l, m, 3);
        if (mid > 6) {
          ++skipped;
          continue;
        }
        auto kl = circle(k, l, mid);
        auto left = circle(kl, m, 3);
        auto right = circle(k, circle(l, m, 3), 3);
        INFO(cat[x].first << "," << cat[y].first << "," << cat[z].first);
        check_same(left, plain(right), 3);
        auto ref = oracle::circle(oracle::circle(plain(k), plain(l), mid), plain(m), 3);
        check_same(left, ref, 3);
        auto a = circle_associator(k, l, m, 3);
        CHECK(a.left == left);
        CHECK(is_iso(a.left, a.right, a.map));
        CHECK(is_equivariant(a.left, a.right, a.map));
        ++triples;
      }
  CHECK(triples > 0);
  CHECK(skipped < triples);
}

TEST_CASE("internal hom") {
  auto cat = catalog::sequences();
  for (const auto& [name, k] : cat) {
    auto h = hom_seq(k, k);
    SeqMap id;
    for (const auto& [sig, v] : k.entries) id[sig.arity()] = enrich::identity_map(std::get<FinSet>(v));
    CHECK_MESSAGE(std::find(h.families.begin(), h.families.end(), id) != h.families.end(), name);
    CHECK(hom_seq(make_sequence({}, 3), k).object.size() == 1);
  }
  // Brute force: all arity-wise maps filtered by equivariance.
  for (const auto& [a, k] : cat)
    for (const auto& [b, l] : cat) {
      long brute = 1;
      for (int n = 0; n <= 3 && brute > 0; ++n) {
        FinSet x = seq_entry(k, n), y = seq_entry(l, n);
        if (x.empty()) continue;
        long count = 0;
        for (const auto& f : enrich::all_maps(x, y))
          if (is_equivariant(k, l, {{n, f}})) ++count;
        brute *= count;
      }
      CHECK_MESSAGE(static_cast<long>(hom_seq(k, l).families.size()) == brute, (a + "," + b));
    }
  Collection s;
  s.backend = Backend::FinSSet;
  s.colors = FinSet({"*"});
  CHECK_THROWS_AS(hom_seq(s, s), NotImplemented);
}

TEST_CASE("representability") {
  auto cases = catalog::representability_cases(3);
  CHECK(cases.size() == 4 + 4 + 6 + 7);
  for (const auto& c : cases) {
    auto r = representability(c.n, c.y);
    INFO(c.name);
    CHECK(enrich::is_bijective(r.omega));
    const auto& perms = all_perms(c.n);
    for (std::size_t s = 0; s < perms.size(); ++s)
      for (std::size_t f = 0; f < r.hom.families.size(); ++f)
        CHECK(r.omega.on[r.action[s][f]] == seq_act(c.y, c.n, r.omega.on[f], perms[s]));
  }
}
