#include "opkit/cli/suites.hpp"

#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "opkit/error.hpp"
#include "opkit/model/model.hpp"
#include "opkit/multicat/construct.hpp"
#include "opkit/multicat/free.hpp"
#include "opkit/oracle/orbit_oracle.hpp"

namespace opkit::suites {

using namespace opkit::model;

namespace {

struct Tally {
  Result& r;
  void check(bool ok, const std::string& what) {
    ++r.instances;
    if (ok) return;
    ++r.failures;
    if (r.counterexamples.size() < 5) r.counterexamples.push_back(what);
  }
};

oracle::PlainSeq plain(const Collection& k) {
  oracle::PlainSeq p;
  for (const auto& [sig, v] : k.entries) {
    int n = sig.arity();
    p.size[n] = static_cast<int>(std::get<FinSet>(v).size());
    for (const auto& t : adjacent_transpositions(n)) p.gens[n].push_back(std::get<FinMap>(k.sigma_map(sig, t)).on);
  }
  return p;
}

bool same_as_oracle(const Collection& impl, const oracle::PlainSeq& ref, int bound) {
  oracle::PlainSeq mine = plain(impl);
  for (int n = 0; n <= bound; ++n) {
    int a = mine.size.count(n) ? mine.size[n] : 0;
    int b = ref.size.count(n) ? ref.size.at(n) : 0;
    if (a != b) return false;
    if (a > 0 && oracle::marks(mine, n) != oracle::marks(ref, n)) return false;
  }
  return true;
}

bool iso(const Collection& a, const Collection& b, const SeqMap& f) { return is_iso(a, b, f) && is_equivariant(a, b, f); }

void representability_suite(Result& r, const Options&) {
  Tally t{r};
  for (const auto& c : catalog::representability_cases(3)) {
    auto rep = representability(c.n, c.y);
    bool ok = enrich::is_bijective(rep.omega);
    const auto& perms = all_perms(c.n);
    for (std::size_t s = 0; s < perms.size() && ok; ++s)
      for (std::size_t f = 0; f < rep.hom.families.size() && ok; ++f)
        ok = rep.omega.on[rep.action[s][f]] == seq_act(c.y, c.n, rep.omega.on[f], perms[s]);
    t.check(ok, c.name);
  }
}

void rlp_suite(Result& r, const Options& o, bool acyclic) {
  Tally t{r};
  auto cat = catalog::multicategories();
  auto family = acyclic ? generating_acyclic_cofibrations() : generating_cofibrations();
  long agree_true = 0;
  for (const auto& [name, f] : catalog::multifunctors(cat)) {
    bool expect = acyclic ? is_fibration_set(f) : is_trivial_fibration_set(f);
    auto got = rlp_against(f, family, o.lift_budget);
    if (got.exhausted) r.budget_exhausted = true;
    t.check(got.holds == expect, name + (got.holds ? " lifts but predicate is false" : " fails at " + got.failing_map));
    agree_true += expect;
  }
  r.notes.push_back(std::to_string(agree_true) + " functors satisfy the predicate");
}

void mc5_suite(Result& r, const Options&) {
  Tally t{r};
  for (const auto& [name, f] : catalog::multifunctors(catalog::multicategories())) {
    auto m = factorize_mc5(f);
    bool inj = true;
    std::set<int> seen;
    for (int x : m.i.on_objects) inj = inj && seen.insert(x).second;
    t.check(same_functor(compose_functors(m.pfib, m.i), f) && inj && is_cofibration_set(m.i) &&
                is_trivial_fibration_set(m.pfib),
            name);
  }
}

void pushout_suite(Result& r, const Options& o) {
  Tally t{r};
  auto cat = catalog::multicategories();
  std::vector<MultiPtr> targets;
  for (const auto& [n, p] : cat)
    if (p->num_objects() <= 3) targets.push_back(p);
  long cocones = 0;
  for (const auto& [name, f] : catalog::points(cat)) {
    auto po = pushout_xi_h(f);
    auto c = check_pushout(po.j, f, po.k, po.g, targets, o.lift_budget);
    cocones += c.cocones;
    bool ff = is_full(po.g) && is_faithful(po.g);
    t.check(c.unique == c.cocones && c.failures.empty() && ff,
            name + (c.failures.empty() ? "" : ": " + c.failures.front()) + (ff ? "" : ": G not fully faithful"));
  }
  r.notes.push_back(std::to_string(cocones) + " cocones checked");
}

void circle_suite(Result& r, const Options&) {
  Tally t{r};
  auto cat = catalog::sequences();
  Collection unit0 = tensor_unit(3), j = circle_unit(3);
  for (const auto& [a, k] : cat) {
    t.check(iso(k, tensor_seq(k, unit0, 3), tensor_unit_iso(k)), "tensor unit " + a);
    t.check(iso(k, circle(k, j, 3), circle_right_unit_iso(k)), "circle right unit " + a);
    t.check(iso(k, circle(j, k, 3), circle_left_unit_iso(k)), "circle left unit " + a);
    for (const auto& [b, l] : cat) {
      auto kl = tensor_seq(k, l, 3);
      t.check(iso(kl, tensor_seq(l, k, 3), tensor_symmetry_iso(k, l)), "tensor symmetry " + a + "," + b);
      t.check(same_as_oracle(kl, oracle::tensor(plain(k), plain(l), 3), 3), "tensor oracle " + a + "," + b);
      t.check(same_as_oracle(circle(k, l, 3), oracle::circle(plain(k), plain(l), 3), 3), "circle oracle " + a + "," + b);
    }
  }
  long skipped = 0;
  std::map<std::tuple<std::size_t, std::size_t, int>, std::pair<DetailedCircle, oracle::PlainSeq>> kls;
  std::map<std::pair<std::size_t, std::size_t>, DetailedCircle> lms;
  for (std::size_t x = 0; x < cat.size(); ++x)
    for (std::size_t y = 0; y < cat.size(); ++y)
      for (std::size_t z = 0; z < cat.size(); ++z) {
        const auto& k = cat[x].second;
        const auto& l = cat[y].second;
        const auto& m = cat[z].second;
        int mid = circle_intermediate_bound(k, l, m, 3);
        if (mid > 6) {
          ++skipped;
          continue;
        }
        auto kt = kls.find({x, y, mid});
        if (kt == kls.end())
          kt = kls.emplace(std::make_tuple(x, y, mid),
                           std::make_pair(circle_detailed(k, l, mid), oracle::circle(plain(k), plain(l), mid)))
                   .first;
        auto lt = lms.find({y, z});
        if (lt == lms.end()) lt = lms.emplace(std::make_pair(y, z), circle_detailed(l, m, 3)).first;
        std::string name = "associator " + cat[x].first + "," + cat[y].first + "," + cat[z].first;
        auto a = circle_associator(k, kt->second.first, lt->second, m, 3);
        auto ref = oracle::circle(kt->second.second, plain(m), 3);
        t.check(iso(a.left, a.right, a.map) && same_as_oracle(a.left, ref, 3), name);
      }
  r.notes.push_back(std::to_string(skipped) + " associativity triples need intermediate arity above 6 and are skipped");
}

MultiPtr monoid(const std::vector<std::string>& names, const std::vector<std::vector<int>>& table) {
  enrich::CategoryTable c;
  c.objects = 1;
  c.identities = {0};
  c.morphism_names = names;
  c.compose = table;
  c.morphisms.assign(names.size(), {0, 0});
  return category_from_table(c, FinSet({"x"}));
}

std::string functor_key(const Multifunctor& f) {
  std::ostringstream s;
  for (int x : f.on_objects) s << x << ',';
  for (const auto& sig : f.on_ops)
    for (const auto& lv : sig) {
      s << '|';
      for (int v : lv) s << v << ',';
    }
  return s.str();
}

void adjunction_suite(Result& r, const Options& o) {
  Tally t{r};
  auto cat = catalog::multicategories();
  // Xi -| linear part
  std::vector<std::pair<std::string, MultiPtr>> cats = {
      {"empty", discrete_category(FinSet())},
      {"point", discrete_category(FinSet({"0"}))},
      {"two", discrete_category(FinSet({"p", "q"}))},
      {"iso", underlying_cat(*contractible_groupoid(2, 2))},
      {"Z2", monoid({"e", "g"}, {{0, 1}, {1, 0}})},
      {"idem", monoid({"e", "p"}, {{0, 1}, {1, 1}})},
      {"arrow", underlying_cat(*corolla(1, FinSet({"a"})))}};
  for (const auto& [cn, c] : cats)
    for (const auto& [pn, p] : cat) {
      auto left = enumerate_multifunctors(xi(*c, 2), p).functors;
      auto right = enumerate_multifunctors(c, underlying_cat(*p)).functors;
      std::set<std::string> images;
      bool ok = left.size() == right.size();
      for (const auto& f : left) {
        Multifunctor res{c, underlying_cat(*p), f.on_objects, f.on_ops};
        ok = ok && is_multifunctor(res);
        images.insert(functor_key(res));
      }
      t.check(ok && images.size() == left.size(), "Xi(" + cn + ") -> " + pn);
    }
  // symmetrize -| forget
  std::vector<std::pair<std::string, MultiPtr>> planar = {
      {"planar Com", commutative_operad(2, false, false)},
      {"planar Com0", commutative_operad(2, true, false)},
      {"planar G2a", forget_symmetry(*corolla(2, FinSet({"a"})))},
      {"planar H", forget_symmetry(*contractible_groupoid(2, 2))}};
  for (const auto& [an, a] : planar) {
    auto sa = symmetrize_multi(*a);
    for (const auto& [pn, p] : cat) {
      auto fp = forget_symmetry(*p);
      auto left = enumerate_multifunctors(sa, p).functors;
      auto right = enumerate_multifunctors(a, fp).functors;
      std::set<std::string> images;
      bool ok = left.size() == right.size();
      for (const auto& f : left) {
        Multifunctor res{a, fp, f.on_objects, {}};
        for (int s = 0; s < a->num_sigs(); ++s) {
          // (phi, id) sits first in each symmetrized entry
          int ss = sa->sig_id(a->sig(s));
          std::vector<int> on(f.on_ops[ss][0].begin(), f.on_ops[ss][0].begin() + a->size(s));
          res.on_ops.push_back({on});
        }
        ok = ok && is_multifunctor(res);
        images.insert(functor_key(res));
      }
      t.check(ok && images.size() == left.size(), "symmetrize(" + an + ") -> " + pn);
    }
  }
  // free -| forget, within the tree bound
  auto one = [](std::map<int, std::vector<std::string>> byarity) {
    Collection k;
    k.colors = FinSet({"x"});
    k.arity_bound = 2;
    for (auto& [n, names] : byarity) k.entries[Signature{std::vector<int>(n, 0), 0}] = FinSet(names);
    return k;
  };
  Collection two;
  two.colors = FinSet({"p", "q"});
  two.arity_bound = 2;
  two.entries[Signature{{0}, 1}] = FinSet({"u"});
  two.entries[Signature{{0, 1}, 1}] = FinSet({"v"});
  std::vector<std::pair<std::string, Collection>> gens = {
      {"f", one({{1, {"f"}}})}, {"f,g", one({{1, {"f", "g"}}})}, {"m", one({{2, {"m"}}})},
      {"f+m", one({{1, {"f"}}, {2, {"m"}}})}, {"c", one({{0, {"c"}}, {2, {"m"}}})}, {"uv", two}};
  for (const auto& [gn, k] : gens) {
    auto fr = free_multicat(k, o.tree_bound);
    auto sym = symmetrize(k).result;
    for (const auto& [pn, p] : cat) {
      auto maps = all_collection_maps(sym, underlying_collection(*p));
      auto functors = enumerate_multifunctors(fr.multicategory(), p).functors;
      std::set<std::string> images;
      bool ok = maps.size() == functors.size();
      for (const auto& fn : functors) {
        auto res = fr.restrict_to_generators(fn);
        ok = ok && is_collection_map(sym, underlying_collection(*p), res);
        std::string key;
        for (int x : res.on_colors) key += std::to_string(x) + ",";
        for (const auto& [s, m] : res.on)
          for (int v : std::get<FinMap>(m).on) key += std::to_string(v) + ",";
        images.insert(key);
      }
      t.check(ok && images.size() == functors.size(), "free(" + gn + ") -> " + pn);
    }
  }
}

void kan_suite(Result& r, const Options&) {
  Tally t{r};
  SMap collapse = enrich::map_to_point(enrich::standard_simplex(1));
  t.check(!enrich::kan_fibration_check(collapse, 2).ok, "Delta^1 -> Delta^0 passed the Kan check at D=2");
  auto n = enrich::nerve(enrich::codiscrete_groupoid(2), 3);
  t.check(enrich::kan_fibration_check(enrich::map_to_point(n), 3).ok, "nerve of the contractible groupoid not Kan at D=3");
  for (const auto& [name, f] : catalog::multifunctors(catalog::multicategories(), 2)) {
    auto g = discrete_enrichment(f, 2);
    auto a = classify_simplicial(g), b = classify_set(f);
    t.check(a.weq && a.fib && *a.weq == *b.weq && *a.fib == *b.fib, name);
  }
}

void free_monoid_suite(Result& r, const Options&) {
  Tally t{r};
  for (int x = 1; x <= 3; ++x) {
    int expect = 1, pw = 1;
    for (int b = 0; b <= 2; ++b) {
      if (b > 0) expect += (pw *= x);
      auto m = pushforward_corolla({0, 0}, FinSet({"a"}), enrich::numbered(x, "x"), b);
      auto fm = m.free.multicategory();
      int got = fm->size(fm->sig_id(Signature{{0}, 0}));
      t.check(got == expect, "|X|=" + std::to_string(x) + " B=" + std::to_string(b) + ": " + std::to_string(got) +
                                 " != " + std::to_string(expect));
    }
  }
}

// Random corruption of a forced table cell must be caught: composites with a
// unit, and single entries of action tables (which then stop being bijective).
void mutation_suite(Result& r, const Options& o) {
  Tally t{r};
  std::mt19937 rng(o.seed);
  auto size_of = [](const MultiData& d, const Signature& s) {
    return static_cast<int>(std::get<FinSet>(d.entries.at(s)).size());
  };
  for (const auto& [name, p] : catalog::multicategories()) {
    MultiData d0 = p->data();
    struct Cell {
      std::vector<int>* row;
      std::size_t at;
      int range;
      std::string where;
    };
    MultiData d = d0;
    std::vector<Cell> cells;
    for (auto& [key, tab] : d.comp) {
      int range = size_of(d, composite_signature(key.outer, key.slot, key.inner));
      int ni = size_of(d, key.inner), no = size_of(d, key.outer);
      if (range < 2) continue;
      bool unit_outer = key.outer.arity() == 1 && key.outer.inputs[0] == key.outer.output;
      bool unit_inner = key.inner.arity() == 1 && key.inner.inputs[0] == key.inner.output;
      for (int a = 0; a < no; ++a)
        for (int b = 0; b < ni; ++b)
          if ((unit_outer && a == d.units[key.outer.output]) || (unit_inner && b == d.units[key.inner.output]))
            cells.push_back({&tab[0], static_cast<std::size_t>(a * ni + b), range,
                             "comp " + signature_key(key.outer, d.objects) + " o_" + std::to_string(key.slot + 1) +
                                 " " + signature_key(key.inner, d.objects)});
    }
    for (auto& [key, tab] : d.sigma) {
      int range = size_of(d, key.first);
      if (range < 2) continue;
      for (std::size_t x = 0; x < tab[0].size(); ++x)
        cells.push_back({&tab[0], x, range, "action " + signature_key(key.first, d.objects) + " by " +
                                                perm_to_string(all_perms(key.first.arity())[key.second])});
    }
    if (cells.empty()) continue;
    for (int trial = 0; trial < 8; ++trial) {
      std::size_t pick = std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng);
      Cell c = cells[pick];
      int old = (*c.row)[c.at];
      (*c.row)[c.at] = (old + 1 + std::uniform_int_distribution<int>(0, c.range - 2)(rng)) % c.range;
      auto rep = validate(d);
      t.check(!rep.ok, name + ": " + c.where + " cell " + std::to_string(c.at) + " went undetected");
      if (!rep.ok && r.notes.size() < 3) r.notes.push_back(name + ": " + rep.failures.front());
      (*c.row)[c.at] = old;
    }
  }
}

}  // namespace

const std::vector<Suite>& all() {
  static const std::vector<Suite> s = {
      {"representability", "hom(G_n, Y) = Y(n) equivariantly", 10},
      {"rlp", "trivial fibrations = RLP against C1 and C2", 300},
      {"fibration", "fibrations = RLP against A1 and A2", 300},
      {"mc5", "MC5 factorization", 60},
      {"pushout", "pushout along Xi(I) -> Xi(H)", 600},
      {"circle", "tensor and circle unit, symmetry and associativity isomorphisms", 60},
      {"adjunction", "Xi, symmetrization and free adjunctions", 60},
      {"kan", "Kan checks and components", 60},
      {"free_monoid", "free monoid growth of the collapsed corolla", 10},
      {"mutation", "random table corruption is detected", 60},
  };
  return s;
}

Result run(const std::string& id, const Options& o) {
  const Suite* s = nullptr;
  for (const auto& x : all())
    if (x.id == id) s = &x;
  if (!s) throw ParseError("unknown suite '" + id + "'");
  Result r;
  r.id = s->id;
  r.title = s->title;
  auto t0 = std::chrono::steady_clock::now();
  if (id == "representability") representability_suite(r, o);
  if (id == "rlp") rlp_suite(r, o, false);
  if (id == "fibration") rlp_suite(r, o, true);
  if (id == "mc5") mc5_suite(r, o);
  if (id == "pushout") pushout_suite(r, o);
  if (id == "circle") circle_suite(r, o);
  if (id == "adjunction") adjunction_suite(r, o);
  if (id == "kan") kan_suite(r, o);
  if (id == "free_monoid") free_monoid_suite(r, o);
  if (id == "mutation") mutation_suite(r, o);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Result validate_all(const catalog::Named<MultiData>& inputs) {
  Result r;
  r.id = "validate";
  r.title = "validation of the given multicategories";
  Tally t{r};
  if (inputs.empty()) r.warnings.push_back("empty catalog: vacuous pass");
  for (const auto& [name, d] : inputs) {
    auto rep = validate(d);
    t.check(rep.ok, rep.ok ? name : name + ": " + rep.failures.front());
  }
  return r;
}

}  // namespace opkit::suites
