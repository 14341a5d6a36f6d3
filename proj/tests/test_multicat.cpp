#include <doctest.h>

#include "opkit/error.hpp"
#include <set>

#include "opkit/multicat/construct.hpp"
#include "opkit/multicat/free.hpp"

using namespace opkit;
using enrich::FinSet;

namespace {

Signature sig(std::vector<int> in, int out) { return Signature{std::move(in), out}; }

int entry_size(const Multicategory& p, const Signature& s) {
  int id = p.sig_id(s);
  return id < 0 ? 0 : p.size(id);
}

}  // namespace

TEST_CASE("basic examples validate") {
  auto h = contractible_groupoid(2, 2);
  CHECK(h->num_objects() == 2);
  CHECK(entry_size(*h, sig({0}, 1)) == 1);
  CHECK(entry_size(*h, sig({0, 0}, 1)) == 0);
  auto com = commutative_operad(3, true);
  CHECK(validate(com->data()).ok);
  auto ass = associative_operad(3, true);
  auto rep = validate(ass->data());
  CHECK(rep.ok);
  CHECK(entry_size(*ass, sig({0, 0, 0}, 0)) == 6);
  CHECK(entry_size(*ass, sig({}, 0)) == 1);
  auto empty = empty_multicategory();
  auto er = validate(empty->data());
  CHECK(er.ok);
  CHECK(er.checked == 0);
}

TEST_CASE("Ass composition is concatenation of orders") {
  auto ass = associative_operad(3);
  int s2 = ass->sig_id(sig({0, 0}, 0));
  // mu2 . (1 0) composed with the identity order: the order of inputs is what matters
  int swapped = ass->act(s2, {1, 0}, 0);
  CHECK(swapped == 1);
  int rs;
  int c = ass->compose(s2, 0, s2, swapped, 0, 0, &rs);
  CHECK(ass->sig(rs).arity() == 3);
  CHECK(ass->element_name(rs, c) != ass->element_name(rs, ass->compose(s2, 0, s2, 0, 0)));
}

TEST_CASE("corrupted composition is localized") {
  auto ass = associative_operad(3);
  MultiData d = ass->data();
  Signature s2 = sig({0, 0}, 0);
  auto& t = d.comp.at(CompKey{s2, 0, s2})[0];
  t[0] = (t[0] + 1) % 6;
  auto rep = validate(d);
  CHECK_FALSE(rep.ok);
  REQUIRE(!rep.failures.empty());
  bool mentions = false;
  for (const auto& f : rep.failures)
    if (f.find("*,*;*:[0,1]:mu2") != std::string::npos) mentions = true;
  CHECK(mentions);
  CHECK_THROWS_AS(make_multi(d), ValidationError);
}

TEST_CASE("Cat_S") {
  auto c = cat_s(FinSet({"a", "b"}), 2);
  CHECK_FALSE(c->symmetric());
  // objects (a,a)=0 (a,b)=1 (b,a)=2 (b,b)=3
  CHECK(entry_size(*c, sig({}, 0)) == 1);
  CHECK(entry_size(*c, sig({}, 3)) == 1);
  CHECK(entry_size(*c, sig({}, 1)) == 0);
  CHECK(entry_size(*c, sig({1, 2}, 0)) == 1);
  CHECK(entry_size(*c, sig({1, 1}, 0)) == 0);
  auto u = underlying_cat(*c);
  CHECK(entry_size(*u, sig({0}, 0)) == 1);
  auto sym = symmetrize_multi(*c);
  CHECK(entry_size(*sym, sig({2, 1}, 0)) == 1);
  CHECK(entry_size(*sym, sig({1, 2}, 0)) == 1);
}

TEST_CASE("P one") {
  auto com = commutative_operad(2, true);
  auto p1 = p_one(*com);
  CHECK(entry_size(*p1, sig({0, 0}, 1)) == 1);
  CHECK(entry_size(*p1, sig({1}, 0)) == 0);
  CHECK(entry_size(*p1, sig({}, 0)) == 1);
  CHECK(entry_size(*p1, sig({0, 1}, 1)) == 1);
  auto ass = associative_operad(2, true);
  auto p2 = p_one(*ass);
  CHECK(entry_size(*p2, sig({1, 0}, 1)) == 2);
}

TEST_CASE("corolla") {
  auto g = corolla(2, FinSet({"y"}), 2);
  CHECK(g->num_objects() == 3);
  CHECK(entry_size(*g, sig({1, 2}, 0)) == 1);
  CHECK(entry_size(*g, sig({2, 1}, 0)) == 1);
  CHECK(entry_size(*g, sig({0}, 0)) == 1);
  auto e = corolla(2, FinSet{}, 2);
  CHECK(entry_size(*e, sig({1, 2}, 0)) == 0);
  auto s = corolla(1, enrich::standard_simplex(1), 2, 2);
  CHECK(s->size(s->sig_id(sig({1}, 0)), 1) == 3);
  auto u = underlying_cat(*g);
  CHECK(u->num_sigs() == 3);
}

TEST_CASE("pullback") {
  auto ass = associative_operad(2, true);
  auto pb = pullback(ass, FinSet({"t1", "t2"}), {0, 0});
  CHECK(is_multifunctor(pb.canonical));
  CHECK(entry_size(*pb.result, sig({0, 1}, 1)) == 2);
  CHECK(entry_size(*pb.result, sig({1, 1}, 0)) == 2);
  auto h = contractible_groupoid(3, 2);
  auto sub = pullback(h, FinSet({"x", "y"}), {0, 2});
  CHECK(entry_size(*sub.result, sig({0}, 1)) == 1);
  auto same = pullback(h, h->objects(), {0, 1, 2});
  CHECK(*same.result == *h);
}

TEST_CASE("discrete enrichment and disjoint union") {
  auto ass = associative_operad(2);
  auto s = discrete_enrichment(*ass, 2);
  CHECK(s->levels() == 3);
  CHECK(s->size(s->sig_id(sig({0, 0}, 0)), 2) == 2);
  auto u = disjoint_union({contractible_groupoid(2, 2), ass}, {"h", "a"});
  CHECK(u->num_objects() == 3);
  CHECK(entry_size(*u, sig({2, 2}, 2)) == 2);
  CHECK(entry_size(*u, sig({0, 2}, 2)) == 0);
}

TEST_CASE("corrupted associativity in a cyclic monoid") {
  enrich::CategoryTable z3;
  z3.objects = 1;
  z3.morphisms = {{0, 0}, {0, 0}, {0, 0}};
  z3.morphism_names = {"e", "g", "h"};
  z3.identities = {0};
  z3.compose = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  auto c = xi(*category_from_table(z3, FinSet({"x"})), 2);
  CHECK(validate(c->data()).ok);
  MultiData d = c->data();
  Signature u = sig({0}, 0);
  d.comp.at(CompKey{u, 0, u})[0][1 * 3 + 1] = 1;  // g o g := g
  auto rep = validate(d);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failures.size() >= 1);
  CHECK(rep.failures[0].find("associativity") != std::string::npos);
  CHECK(rep.failures[0].find("x;x:g") != std::string::npos);
}

namespace {

Collection one_color(std::map<int, FinSet> by_arity, bool trivial_action, int bound) {
  Collection k;
  k.colors = FinSet({"*"});
  k.arity_bound = bound;
  for (auto& [n, s] : by_arity) k.entries[sig(std::vector<int>(n, 0), 0)] = s;
  if (trivial_action) {
    k.symmetric = true;
    for (auto& [n, s] : by_arity)
      for (int p = 0; p < static_cast<int>(all_perms(n).size()); ++p)
        k.sigma[{sig(std::vector<int>(n, 0), 0), p}] = enrich::identity_map(s);
  }
  return k;
}

}  // namespace

TEST_CASE("free multicategory on one unary generator") {
  auto k = one_color({{1, FinSet({"f"})}}, true, 2);
  auto f = free_multicat(k, 3);
  auto p = f.multicategory();
  int u = p->sig_id(sig({0}, 0));
  REQUIRE(u >= 0);
  CHECK(p->size(u) == 4);
  CHECK(p->element_name(u, p->unit(0)) == "1");
  CHECK(p->element_index(u, "f(f(f(#1)))") >= 0);
  CHECK(p->partial());
  auto g = free_multicat(k, 0);
  CHECK(g.multicategory()->size(g.multicategory()->sig_id(sig({0}, 0))) == 1);
  CHECK_THROWS_AS(g.unit_map(), BoundExceeded);
}

TEST_CASE("free multicategory with a relation") {
  auto k = one_color({{1, FinSet({"f"})}}, true, 2);
  FreeMulticategory probe(k, 1);
  TreeNode ff = probe.graft(probe.generator(sig({0}, 0), 0), 0, probe.generator(sig({0}, 0), 0));
  FreeMulticategory q(k, 3, {{ff, probe.leaf(0)}});
  auto p = q.multicategory();
  CHECK(p->size(p->sig_id(sig({0}, 0))) == 2);
}

TEST_CASE("free symmetric multicategory on a binary generator") {
  auto plain = one_color({{2, FinSet({"m"})}}, false, 3);
  auto f = free_multicat(plain, 2);
  auto p = f.multicategory();
  CHECK(p->size(p->sig_id(sig({0, 0}, 0))) == 2);
  CHECK(p->size(p->sig_id(sig({0, 0, 0}, 0))) == 12);
  auto commutative = one_color({{2, FinSet({"m"})}}, true, 3);
  auto c = free_multicat(commutative, 2).multicategory();
  CHECK(c->size(c->sig_id(sig({0, 0}, 0))) == 1);
  CHECK(c->size(c->sig_id(sig({0, 0, 0}, 0))) == 3);
}

TEST_CASE("free on a generating collection and on nothing") {
  auto g = make_generating(2, FinSet({"y1", "y2"}), false, 2);
  auto f = free_multicat(g, 4);
  auto p = f.multicategory();
  CHECK(p->size(p->sig_id(sig({1, 2}, 0))) == 2);
  CHECK(p->size(p->sig_id(sig({2, 1}, 0))) == 2);
  CHECK(p->num_sigs() == 5);
  CHECK_FALSE(p->partial());
  auto direct = corolla(2, FinSet({"y1", "y2"}), 2);
  CHECK(direct->num_sigs() == 5);
  Collection empty;
  empty.colors = FinSet({"a", "b"});
  empty.arity_bound = 2;
  auto e = free_multicat(empty, 3).multicategory();
  CHECK(e->num_sigs() == 2);
}

TEST_CASE("free-forget bijection") {
  auto k = one_color({{1, FinSet({"f"})}, {2, FinSet({"m"})}}, false, 2);
  std::vector<MultiPtr> targets = {commutative_operad(2, true), associative_operad(2, true)};
  enrich::CategoryTable z2;
  z2.objects = 1;
  z2.morphisms = {{0, 0}, {0, 0}};
  z2.morphism_names = {"e", "g"};
  z2.identities = {0};
  z2.compose = {{0, 1}, {1, 0}};
  targets.push_back(xi(*category_from_table(z2, FinSet({"x"})), 2));
  auto f = free_multicat(k, 4);
  auto sym = symmetrize(k).result;
  for (const auto& t : targets) {
    auto maps = all_collection_maps(sym, underlying_collection(*t));
    auto functors = enumerate_multifunctors(f.multicategory(), t);
    CHECK(maps.size() == functors.functors.size());
    std::set<std::string> seen;
    for (const auto& fn : functors.functors) {
      CHECK(is_multifunctor(fn));
      auto r = f.restrict_to_generators(fn);
      std::string why;
      CHECK_MESSAGE(is_collection_map(sym, underlying_collection(*t), r, &why), why);
      std::string key;
      for (const auto& [s, m] : r.on)
        for (int v : std::get<FinMap>(m).on) key += std::to_string(v) + ",";
      seen.insert(key);
    }
    CHECK(seen.size() == functors.functors.size());
  }
}

namespace {

MultiPtr monoid(const std::vector<std::string>& names, const std::vector<std::vector<int>>& table, int bound = 2) {
  enrich::CategoryTable c;
  c.objects = 1;
  c.identities = {0};
  c.morphism_names = names;
  c.compose = table;
  for (std::size_t i = 0; i < names.size(); ++i) c.morphisms.push_back({0, 0});
  return xi(*category_from_table(c, FinSet({"x"})), bound);
}

}  // namespace

TEST_CASE("Xi is left adjoint to the linear part") {
  std::vector<MultiPtr> cats = {underlying_cat(*contractible_groupoid(2, 2)), discrete_category(FinSet({"p", "q"})),
                                underlying_cat(*monoid({"e", "g"}, {{0, 1}, {1, 0}}))};
  std::vector<MultiPtr> targets = {associative_operad(2, true), contractible_groupoid(2, 2),
                                   monoid({"e", "p"}, {{0, 1}, {1, 1}}), corolla(1, FinSet({"a"}), 2),
                                   pullback(commutative_operad(2, true), FinSet({"a", "b"}), {0, 0}).result};
  for (const auto& c : cats) {
    auto xc = xi(*c, 2);
    CHECK(*underlying_cat(*xc) == *c);
    for (const auto& p : targets) {
      auto up = underlying_cat(*p);
      auto left = enumerate_multifunctors(xc, p).functors;
      auto right = enumerate_multifunctors(c, up).functors;
      CHECK(left.size() == right.size());
      std::set<std::pair<std::vector<int>, std::vector<std::vector<std::vector<int>>>>> images;
      for (const auto& f : left) {
        // restriction to unary parts
        Multifunctor r{c, up, f.on_objects, f.on_ops};
        CHECK(is_multifunctor(r));
        images.insert({r.on_objects, r.on_ops});
      }
      CHECK(images.size() == left.size());
    }
  }
  for (const auto& p : targets) {
    auto counit = identity_functor(xi(*underlying_cat(*p), p->arity_bound()));
    counit.target = p;
    CHECK(is_multifunctor(counit));
  }
}

TEST_CASE("full composition and compose_at") {
  auto ass = associative_operad(3, true);
  Signature s2 = sig({0, 0}, 0), s1 = sig({0}, 0), s0 = sig({}, 0);
  Operation p{s2, 1};
  Operation one{s1, ass->unit(0)};
  CHECK(full_composition(*ass, p, {one, one}) == p);
  Operation z{s0, 0};
  CHECK(full_composition(*ass, z, {}) == z);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto r = full_composition(*ass, Operation{s2, a}, {Operation{s2, b}, Operation{s1, 0}});
      CHECK(r.sig.arity() == 3);
    }
  CHECK_THROWS_AS(compose_at(*associative_operad(2), s2, 0, 0, s2, 0), BoundExceeded);
  auto h = contractible_groupoid(2, 2);
  CHECK_THROWS_AS(compose_at(*h, sig({0}, 1), 0, 0, sig({0}, 1), 0), SignatureError);
  // in Xi(C), g o_1 f is g after f
  CHECK(compose_at(*h, sig({0}, 1), 0, 0, sig({1}, 0), 0) == h->unit(1));
}
