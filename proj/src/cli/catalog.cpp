#include "opkit/cli/catalog.hpp"

#include <functional>

#include "opkit/multicat/construct.hpp"

namespace opkit::catalog {

namespace {

Collection trivial_at(const std::vector<std::pair<int, int>>& arity_size) {
  std::map<int, SeqEntry> entries;
  for (auto [n, size] : arity_size) {
    SeqEntry e{enrich::numbered(size, "a" + std::to_string(n) + "_"), {}};
    for (std::size_t p = 0; p < all_perms(n).size(); ++p) {
      std::vector<int> row(size);
      for (int x = 0; x < size; ++x) row[x] = x;
      e.action.push_back(row);
    }
    entries[n] = e;
  }
  return make_sequence(entries, 3);
}

std::vector<Perm> generated(const std::vector<Perm>& gens, int n) {
  std::vector<Perm> h{identity_perm(n)};
  bool grew = true;
  while (grew) {
    grew = false;
    auto cur = h;
    for (const auto& a : cur)
      for (const auto& b : gens) {
        Perm c = opkit::compose(a, b);
        if (std::find(h.begin(), h.end(), c) == h.end()) {
          h.push_back(c);
          grew = true;
        }
      }
  }
  return h;
}

}  // namespace

Named<Collection> sequences() {
  Named<Collection> out;
  out.push_back({"empty", make_sequence({}, 3)});
  out.push_back({"unit0", tensor_unit(3)});
  out.push_back({"J", circle_unit(3)});
  out.push_back({"nullary2", trivial_at({{0, 2}})});
  out.push_back({"unary2", trivial_at({{1, 2}})});
  out.push_back({"free2", generating_sequence(2, 3)});
  out.push_back({"triv2", trivial_at({{2, 1}})});
  out.push_back({"sign3", coset_sequence(3, generated({{1, 2, 0}}, 3), 3)});
  out.push_back({"com", trivial_at({{1, 1}, {2, 1}, {3, 1}})});
  out.push_back({"mixed", trivial_at({{0, 1}, {1, 2}, {2, 1}})});
  out.push_back({"pair2_3", trivial_at({{2, 2}, {3, 1}})});
  out.push_back({"unit_free", seq_coproduct({circle_unit(3), generating_sequence(2, 3)}, 3)});
  return out;
}

std::vector<RepresentabilityCase> representability_cases(int max_size) {
  std::vector<RepresentabilityCase> out;
  for (int n = 0; n <= 3; ++n) {
    // Conjugacy-class representatives of subgroups with their index.
    std::vector<std::pair<std::string, std::vector<Perm>>> subs;
    subs.push_back({"S", all_perms(n)});
    if (n == 2) subs.push_back({"1", {identity_perm(2)}});
    if (n == 3) {
      subs.push_back({"A3", generated({{1, 2, 0}}, 3)});
      subs.push_back({"C2", generated({{1, 0, 2}}, 3)});
      subs.push_back({"1", {identity_perm(3)}});
    }
    std::vector<std::pair<std::string, Collection>> orbits;
    for (const auto& [name, h] : subs) {
      Collection c = coset_sequence(n, h, 3);
      if (static_cast<int>(seq_entry(c, n).size()) <= max_size) orbits.push_back({name, c});
    }
    // Multisets of orbit types with total size <= max_size.
    std::vector<int> pick;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int used) {
      std::vector<Collection> parts;
      std::string name = "n" + std::to_string(n) + ":";
      for (int i : pick) {
        parts.push_back(orbits[i].second);
        name += orbits[i].first + "+";
      }
      parts.push_back(trivial_at({{(n + 1) % 4, 1}}));
      out.push_back({name, n, seq_coproduct(parts, 3)});
      for (std::size_t i = from; i < orbits.size(); ++i) {
        int s = static_cast<int>(seq_entry(orbits[i].second, n).size());
        if (used + s > max_size) continue;
        pick.push_back(static_cast<int>(i));
        rec(i, used + s);
        pick.pop_back();
      }
    };
    rec(0, 0);
  }
  return out;
}

namespace {

MultiPtr monoid(const std::vector<std::string>& names, const std::vector<std::vector<int>>& table) {
  enrich::CategoryTable c;
  c.objects = 1;
  c.identities = {0};
  c.morphism_names = names;
  c.compose = table;
  c.morphisms.assign(names.size(), {0, 0});
  return xi(*category_from_table(c, FinSet({"x"})), 2);
}

}  // namespace

Named<MultiPtr> multicategories() {
  Named<MultiPtr> out;
  out.push_back({"empty", empty_multicategory()});
  out.push_back({"I", xi(*discrete_category(FinSet({"0"})), 2)});
  out.push_back({"D2", xi(*discrete_category(FinSet({"0", "1"})), 2)});
  out.push_back({"H", contractible_groupoid(2, 2)});
  out.push_back({"H3", contractible_groupoid(3, 2)});
  out.push_back({"Z2", monoid({"e", "g"}, {{0, 1}, {1, 0}})});
  out.push_back({"idem", monoid({"e", "p"}, {{0, 1}, {1, 1}})});
  out.push_back({"Com", commutative_operad(2)});
  out.push_back({"Com0", commutative_operad(2, true)});
  out.push_back({"Ass", associative_operad(2)});
  out.push_back({"G1a", corolla(1, FinSet({"a"}))});
  out.push_back({"G2a", corolla(2, FinSet({"a"}))});
  out.push_back({"G2ab", corolla(2, FinSet({"a", "b"}))});
  out.push_back({"P1Com", p_one(*commutative_operad(2))});
  out.push_back({"T2", pullback(terminal_multicategory(2), FinSet({"0", "1"}), {0, 0}).result});
  out.push_back({"I+Com", disjoint_union({out[1].second, commutative_operad(2)}, {"i", "c"})});
  out.push_back({"D3", xi(*discrete_category(FinSet({"0", "1", "2"})), 2)});
  out.push_back({"Z2^2", pullback(out[5].second, FinSet({"0", "1"}), {0, 0}).result});
  out.push_back({"Com^2", pullback(commutative_operad(2), FinSet({"0", "1"}), {0, 0}).result});
  out.push_back({"idem+I", disjoint_union({out[6].second, out[1].second}, {"m", "i"})});
  return out;
}

std::vector<FunctorCase> multifunctors(const Named<MultiPtr>& cat, long per_pair) {
  std::vector<FunctorCase> out;
  for (const auto& [a, p] : cat)
    for (const auto& [b, q] : cat) {
      FunctorSearch s;
      s.limit = per_pair;
      auto r = enumerate_multifunctors(p, q, s);
      for (std::size_t i = 0; i < r.functors.size(); ++i)
        out.push_back({a + "->" + b + "#" + std::to_string(i), r.functors[i]});
    }
  return out;
}

std::vector<FunctorCase> points(const Named<MultiPtr>& cat) {
  auto i = cat.at(1).second;
  std::vector<FunctorCase> out;
  for (const auto& [b, q] : cat) {
    if (q->num_objects() > 3) continue;
    auto r = enumerate_multifunctors(i, q);
    for (std::size_t k = 0; k < r.functors.size(); ++k)
      out.push_back({"I->" + b + "#" + std::to_string(k), r.functors[k]});
  }
  return out;
}

}  // namespace opkit::catalog
