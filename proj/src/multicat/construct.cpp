#include "opkit/multicat/construct.hpp"

#include <algorithm>

#include "opkit/error.hpp"

namespace opkit {

using enrich::numbered;
using enrich::singleton;

EntryLevels entry_levels(const EnrichValue& v, int dim_bound) {
  EntryLevels l;
  if (auto* f = std::get_if<FinSet>(&v)) {
    l.at.resize(1);
    l.index.resize(1);
    for (int x = 0; x < static_cast<int>(f->size()); ++x) {
      l.at[0].push_back(Simplex{x, {0}});
      l.index[0][Simplex{x, {0}}] = x;
    }
    return l;
  }
  l.at = level_simplices(std::get<SSet>(v), dim_bound);
  l.index.resize(l.at.size());
  for (std::size_t n = 0; n < l.at.size(); ++n)
    for (int x = 0; x < static_cast<int>(l.at[n].size()); ++x) l.index[n][l.at[n][x]] = x;
  return l;
}

Simplex apply_map(const EnrichMap& f, const Simplex& s) {
  if (auto* m = std::get_if<FinMap>(&f)) return Simplex{m->on.at(s.id), s.surj};
  return std::get<SMap>(f).apply(s);
}

void fill_tables(MultiData& d, const CompRule& comp, const ActRule& act) {
  int nl = d.dim_bound + 1;
  std::map<Signature, EntryLevels> lv;
  for (const auto& [s, v] : d.entries)
    if (!enrich::is_empty(v)) lv[s] = entry_levels(v, d.dim_bound);
  d.sigma.clear();
  d.comp.clear();
  if (d.symmetric)
    for (const auto& [s, l] : lv) {
      const auto& perms = all_perms(s.arity());
      for (std::size_t p = 0; p < perms.size(); ++p) {
        Signature t = opkit::act(s, perms[p]);
        auto it = lv.find(t);
        if (it == lv.end()) throw ValidationError("action target " + signature_key(t, d.objects) + " is empty");
        std::vector<std::vector<int>> tab(nl);
        for (int n = 0; n < nl; ++n)
          for (const auto& x : l.at[n]) tab[n].push_back(it->second.find(act(s, perms[p], x)));
        d.sigma[{s, static_cast<int>(p)}] = tab;
      }
    }
  for (const auto& [o, lo] : lv)
    for (int slot = 0; slot < o.arity(); ++slot)
      for (const auto& [i, li] : lv) {
        if (i.output != o.inputs[slot]) continue;
        if (o.arity() - 1 + i.arity() > d.arity_bound) continue;
        Signature r = composite_signature(o, slot, i);
        auto rt = lv.find(r);
        CompKey key{o, slot, i};
        std::vector<std::vector<int>> tab(nl);
        for (int n = 0; n < nl; ++n)
          for (const auto& a : lo.at[n])
            for (const auto& b : li.at[n]) {
              Simplex c = comp(key, a, b);
              if (c.id < 0) {
                tab[n].push_back(-1);
                continue;
              }
              if (rt == lv.end()) throw ValidationError("composite lands in the empty " + signature_key(r, d.objects));
              tab[n].push_back(rt->second.find(c));
            }
        d.comp[key] = tab;
      }
}

MultiPtr category_from_table(const enrich::CategoryTable& c, const FinSet& objects) {
  MultiData d;
  d.objects = objects;
  d.arity_bound = 1;
  std::map<Signature, std::vector<std::string>> names;
  std::vector<int> local(c.morphisms.size());
  std::map<Signature, std::vector<int>> members;
  for (std::size_t f = 0; f < c.morphisms.size(); ++f) {
    Signature s = unary(c.morphisms[f].first, c.morphisms[f].second);
    local[f] = static_cast<int>(members[s].size());
    members[s].push_back(static_cast<int>(f));
    names[s].push_back(c.morphism_names.empty() ? "f" + std::to_string(f) : c.morphism_names[f]);
  }
  for (const auto& [s, n] : names) d.entries[s] = FinSet(n);
  for (int x = 0; x < c.objects; ++x) d.units.push_back(local[c.identities[x]]);
  fill_tables(
      d,
      [&](const CompKey& k, const Simplex& a, const Simplex& b) {
        int g = members[k.outer][a.id], f = members[k.inner][b.id];
        int h = c.compose[g][f];
        if (h < 0) throw ValidationError("composition table is not total");
        return Simplex{local[h], {0}};
      },
      [](const Signature&, const Perm&, const Simplex& x) { return x; });
  return make_multi(std::move(d));
}

enrich::CategoryTable category_table(const Multicategory& c) {
  if (c.backend() != Backend::FinSet) throw NotApplicable("category tables need finite-set entries");
  enrich::CategoryTable t;
  t.objects = c.num_objects();
  std::map<std::pair<int, int>, int> id;
  for (int s = 0; s < c.num_sigs(); ++s) {
    if (c.sig(s).arity() != 1) continue;
    for (int a = 0; a < c.size(s); ++a) {
      id[{s, a}] = static_cast<int>(t.morphisms.size());
      t.morphisms.push_back({c.sig(s).inputs[0], c.sig(s).output});
      t.morphism_names.push_back(c.element_name(s, a));
    }
  }
  for (int x = 0; x < c.num_objects(); ++x) t.identities.push_back(id.at({c.unit_sig(x), c.unit(x)}));
  int m = static_cast<int>(t.morphisms.size());
  t.compose.assign(m, std::vector<int>(m, -1));
  for (const auto& [gk, g] : id)
    for (const auto& [fk, f] : id) {
      int rs;
      if (c.sig(fk.first).output != c.sig(gk.first).inputs[0]) continue;
      int v = c.compose(gk.first, 0, fk.first, gk.second, fk.second, 0, &rs);
      if (v >= 0) t.compose[g][f] = id.at({rs, v});
    }
  return t;
}

MultiPtr discrete_category(const FinSet& objects) {
  enrich::CategoryTable t;
  t.objects = static_cast<int>(objects.size());
  for (int x = 0; x < t.objects; ++x) {
    t.morphisms.push_back({x, x});
    t.identities.push_back(x);
    t.morphism_names.push_back("1");
  }
  t.compose.assign(t.objects, std::vector<int>(t.objects, -1));
  for (int x = 0; x < t.objects; ++x) t.compose[x][x] = x;
  return category_from_table(t, objects);
}

MultiPtr reindex(const Multicategory& p, const FinSet& t, const std::vector<int>& f, int arity_bound,
                 const std::function<bool(const Signature&)>& keep) {
  if (f.size() != t.size()) throw SignatureError("reindexing map is not total");
  for (int y : f)
    if (y < 0 || y >= p.num_objects()) throw SignatureError("reindexing map out of range");
  MultiData d;
  d.backend = p.backend();
  d.objects = t;
  d.arity_bound = arity_bound;
  d.dim_bound = p.dim_bound();
  d.symmetric = p.symmetric();
  d.partial = p.partial();
  auto image = [&](const Signature& s) {
    Signature r{{}, f[s.output]};
    for (int x : s.inputs) r.inputs.push_back(f[x]);
    return r;
  };
  for (const auto& s : all_signatures(static_cast<int>(t.size()), arity_bound)) {
    if (keep && !keep(s)) continue;
    if (s.arity() > p.arity_bound()) continue;
    int id = p.sig_id(image(s));
    if (id >= 0) d.entries[s] = p.entry(image(s));
  }
  for (int x = 0; x < static_cast<int>(t.size()); ++x) d.units.push_back(p.data().units[f[x]]);
  fill_tables(
      d,
      [&](const CompKey& k, const Simplex& a, const Simplex& b) {
        int o = p.sig_id(image(k.outer)), i = p.sig_id(image(k.inner));
        int lv = a.dim(), rs;
        int v = p.compose(o, k.slot, i, p.simplex_index(o, a), p.simplex_index(i, b), lv, &rs);
        if (v < 0) return Simplex{-1, {}};
        return p.simplex(rs, lv, v);
      },
      [&](const Signature& s, const Perm& pi, const Simplex& x) {
        int id = p.sig_id(image(s)), rs;
        int v = p.act(id, pi, p.simplex_index(id, x), x.dim(), &rs);
        return p.simplex(rs, x.dim(), v);
      });
  return make_multi(std::move(d));
}

MultiPtr underlying_cat(const Multicategory& p) {
  std::vector<int> id;
  for (int x = 0; x < p.num_objects(); ++x) id.push_back(x);
  return reindex(p, p.objects(), id, 1, [](const Signature& s) { return s.arity() == 1; });
}

MultiPtr xi(const Multicategory& c, int arity_bound) {
  std::vector<int> id;
  for (int x = 0; x < c.num_objects(); ++x) id.push_back(x);
  return reindex(c, c.objects(), id, arity_bound, [](const Signature& s) { return s.arity() == 1; });
}

MultiPtr empty_multicategory(Backend b, int arity_bound, int dim_bound) {
  MultiData d;
  d.backend = b;
  d.arity_bound = arity_bound;
  d.dim_bound = b == Backend::FinSet ? 0 : dim_bound;
  return make_multi(std::move(d));
}

Pullback pullback(const MultiPtr& p, const FinSet& t, const std::vector<int>& f) {
  Pullback out;
  out.result = reindex(*p, t, f, p->arity_bound());
  out.canonical = identity_functor(out.result);
  out.canonical.target = p;
  out.canonical.on_objects = f;
  return out;
}

MultiPtr symmetrize_multi(const Multicategory& p) {
  if (p.symmetric()) throw NotApplicable("already symmetric");
  MultiData d;
  d.backend = p.backend();
  d.objects = p.objects();
  d.arity_bound = p.arity_bound();
  d.dim_bound = p.dim_bound();
  d.partial = p.partial();
  d.units = p.data().units;
  // offsets[sig][perm] of the summand P(act(sig, perm^-1)); sizes count nondegenerate simplices.
  std::map<Signature, std::vector<int>> offsets;
  for (const auto& s : all_signatures(p.num_objects(), p.arity_bound())) {
    const auto& perms = all_perms(s.arity());
    std::vector<EnrichValue> parts;
    std::vector<std::string> tags;
    std::vector<int> off;
    int total = 0;
    for (const auto& u : perms) {
      EnrichValue v = p.entry(opkit::act(s, inverse(u)));
      off.push_back(total);
      total += enrich::size_of(v);
      parts.push_back(v);
      tags.push_back(perm_to_string(u) + ":");
    }
    off.push_back(total);
    if (total == 0) continue;
    d.entries[s] = enrich::coproduct(p.backend(), parts, tags).object;
    offsets[s] = off;
  }
  auto decode = [&](const Signature& s, const Simplex& x) {
    const auto& off = offsets.at(s);
    int j = static_cast<int>(std::upper_bound(off.begin(), off.end(), x.id) - off.begin()) - 1;
    return std::pair<int, Simplex>{j, Simplex{x.id - off[j], x.surj}};
  };
  auto encode = [&](const Signature& s, int j, const Simplex& x) { return Simplex{x.id + offsets.at(s)[j], x.surj}; };
  fill_tables(
      d,
      [&](const CompKey& k, const Simplex& a, const Simplex& b) {
        auto [ja, phi] = decode(k.outer, a);
        auto [jb, psi] = decode(k.inner, b);
        const Perm& sigma = all_perms(k.outer.arity())[ja];
        const Perm& tau = all_perms(k.inner.arity())[jb];
        Signature so = opkit::act(k.outer, inverse(sigma));
        Signature si = opkit::act(k.inner, inverse(tau));
        int n = k.outer.arity(), kk = k.inner.arity(), j = sigma[k.slot];
        int o = p.sig_id(so), i = p.sig_id(si), lv = a.dim(), rs;
        int v = p.compose(o, j, i, p.simplex_index(o, phi), p.simplex_index(i, psi), lv, &rs);
        if (v < 0) return Simplex{-1, {}};
        std::vector<Perm> blocks;
        std::vector<int> sizes(n, 1);
        sizes[j] = kk;
        for (int t = 0; t < n; ++t) blocks.push_back(t == j ? tau : identity_perm(1));
        Perm w = opkit::compose(block_sum(blocks), block_perm(sigma, sizes));
        return encode(composite_signature(k.outer, k.slot, k.inner), perm_index(w), p.simplex(rs, lv, v));
      },
      [&](const Signature& s, const Perm& t, const Simplex& x) {
        auto [j, chi] = decode(s, x);
        const Perm& u = all_perms(s.arity())[j];
        return encode(opkit::act(s, t), perm_index(opkit::compose(u, t)), chi);
      });
  d.symmetric = true;
  return make_multi(std::move(d));
}

MultiPtr discrete_enrichment(const Multicategory& p, int dim_bound) {
  if (p.backend() != Backend::FinSet) throw NotApplicable("already simplicial");
  MultiData d;
  d.backend = Backend::FinSSet;
  d.objects = p.objects();
  d.arity_bound = p.arity_bound();
  d.dim_bound = dim_bound;
  d.symmetric = p.symmetric();
  d.partial = p.partial();
  d.units = p.data().units;
  for (int s = 0; s < p.num_sigs(); ++s) d.entries[p.sig(s)] = enrich::discrete(std::get<FinSet>(p.entry(p.sig(s))));
  fill_tables(
      d,
      [&](const CompKey& k, const Simplex& a, const Simplex& b) {
        int v = p.compose(p.sig_id(k.outer), k.slot, p.sig_id(k.inner), a.id, b.id);
        if (v < 0) return Simplex{-1, {}};
        return Simplex{v, a.surj};
      },
      [&](const Signature& s, const Perm& t, const Simplex& x) {
        return Simplex{p.act(p.sig_id(s), t, x.id), x.surj};
      });
  return make_multi(std::move(d));
}

Multifunctor discrete_enrichment(const Multifunctor& f, int dim_bound) {
  auto s = discrete_enrichment(*f.source, dim_bound), t = discrete_enrichment(*f.target, dim_bound);
  Multifunctor g{s, t, f.on_objects, {}};
  for (int sid = 0; sid < s->num_sigs(); ++sid) {
    int fid = f.source->sig_id(s->sig(sid));
    std::vector<std::vector<int>> levels;
    for (int lv = 0; lv <= dim_bound; ++lv) {
      std::vector<int> row;
      for (int x = 0; x < s->size(sid, lv); ++x) {
        int image = f.on_ops[fid][0][s->simplex(sid, lv, x).id];
        int tsig = t->sig_id(f.target->sig(image_sig_id(f, fid)));
        enrich::Simplex v{t->simplex(tsig, 0, image).id, std::vector<int>(lv + 1, 0)};
        row.push_back(t->simplex_index(tsig, v));
      }
      levels.push_back(row);
    }
    g.on_ops.push_back(levels);
  }
  return g;
}

MultiPtr disjoint_union(const std::vector<MultiPtr>& parts, const std::vector<std::string>& tags) {
  if (parts.empty()) return empty_multicategory();
  MultiData d;
  d.backend = parts[0]->backend();
  d.arity_bound = parts[0]->arity_bound();
  d.dim_bound = parts[0]->dim_bound();
  d.symmetric = parts[0]->symmetric();
  std::vector<std::string> names;
  std::vector<int> part_of, local;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = *parts[k];
    if (p.backend() != d.backend || p.arity_bound() != d.arity_bound || p.dim_bound() != d.dim_bound ||
        p.symmetric() != d.symmetric)
      throw BackendMismatch("disjoint union of unlike multicategories");
    d.partial = d.partial || p.partial();
    for (int x = 0; x < p.num_objects(); ++x) {
      names.push_back(tags[k] + p.objects()[x]);
      part_of.push_back(static_cast<int>(k));
      local.push_back(x);
      d.units.push_back(p.data().units[x]);
    }
  }
  d.objects = FinSet(names);
  auto split = [&](const Signature& s, int* k) {
    *k = part_of[s.output];
    Signature r{{}, local[s.output]};
    for (int x : s.inputs) {
      if (part_of[x] != *k) return std::optional<Signature>{};
      r.inputs.push_back(local[x]);
    }
    return std::optional<Signature>{r};
  };
  for (const auto& s : all_signatures(static_cast<int>(names.size()), d.arity_bound)) {
    int k;
    auto r = split(s, &k);
    if (r && parts[k]->sig_id(*r) >= 0) d.entries[s] = parts[k]->entry(*r);
  }
  fill_tables(
      d,
      [&](const CompKey& key, const Simplex& a, const Simplex& b) {
        int k;
        auto o = split(key.outer, &k);
        auto i = split(key.inner, &k);
        const auto& p = *parts[k];
        int oi = p.sig_id(*o), ii = p.sig_id(*i), lv = a.dim(), rs;
        int v = p.compose(oi, key.slot, ii, p.simplex_index(oi, a), p.simplex_index(ii, b), lv, &rs);
        if (v < 0) return Simplex{-1, {}};
        return p.simplex(rs, lv, v);
      },
      [&](const Signature& s, const Perm& t, const Simplex& x) {
        int k;
        auto r = split(s, &k);
        const auto& p = *parts[k];
        int id = p.sig_id(*r), rs;
        int v = p.act(id, t, p.simplex_index(id, x), x.dim(), &rs);
        return p.simplex(rs, x.dim(), v);
      });
  return make_multi(std::move(d));
}

MultiPtr commutative_operad(int arity_bound, bool nullary, bool symmetric) {
  MultiData d;
  d.objects = singleton("*");
  d.arity_bound = arity_bound;
  d.symmetric = symmetric;
  d.units = {0};
  for (int n = nullary ? 0 : 1; n <= arity_bound; ++n)
    d.entries[Signature{std::vector<int>(n, 0), 0}] = singleton("mu" + std::to_string(n));
  fill_tables(
      d, [](const CompKey&, const Simplex&, const Simplex&) { return Simplex{0, {0}}; },
      [](const Signature&, const Perm&, const Simplex& x) { return x; });
  return make_multi(std::move(d));
}

MultiPtr associative_operad(int arity_bound, bool nullary) {
  return symmetrize_multi(*commutative_operad(arity_bound, nullary, false));
}

MultiPtr cat_s(const FinSet& s, int arity_bound) {
  int n = static_cast<int>(s.size());
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) names.push_back("(" + s[a] + "," + s[b] + ")");
  MultiData d;
  d.objects = FinSet(names);
  d.arity_bound = arity_bound;
  d.symmetric = false;
  for (int a = 0; a < n; ++a) d.units.push_back(0);
  auto first = [n](int obj) { return obj / n; };
  auto second = [n](int obj) { return obj % n; };
  for (const auto& sig : all_signatures(n * n, arity_bound)) {
    int cur = first(sig.output);
    bool ok = true;
    for (int x : sig.inputs) {
      if (first(x) != cur) ok = false;
      cur = second(x);
    }
    if (cur != second(sig.output)) ok = false;
    if (ok) d.entries[sig] = singleton("c");
  }
  d.units.assign(n * n, 0);
  fill_tables(
      d, [](const CompKey&, const Simplex&, const Simplex&) { return Simplex{0, {0}}; },
      [](const Signature&, const Perm&, const Simplex& x) { return x; });
  return make_multi(std::move(d));
}

MultiPtr p_one(const Multicategory& p) {
  if (p.num_objects() != 1) throw SignatureError("p_one needs a one-object operad");
  return reindex(p, FinSet({"0", "1"}), {0, 0}, p.arity_bound(), [](const Signature& s) {
    int m = -1;
    for (int x : s.inputs) m = std::max(m, x);
    return m <= s.output;
  });
}

MultiPtr corolla(int n, const EnrichValue& k, int arity_bound, int dim_bound) {
  if (n > arity_bound) throw BoundExceeded("corolla arity above the arity bound");
  Backend b = enrich::backend_of(k);
  MultiData d;
  d.backend = b;
  d.objects = numbered(n + 1, "");
  d.arity_bound = arity_bound;
  d.dim_bound = b == Backend::FinSet ? 0 : dim_bound;
  Signature g{{}, 0};
  for (int i = 1; i <= n; ++i) g.inputs.push_back(i);
  for (int x = 0; x <= n; ++x) {
    d.entries[unary(x, x)] = b == Backend::FinSet ? EnrichValue(singleton("1")) : EnrichValue(enrich::point());
    d.units.push_back(0);
  }
  if (!enrich::is_empty(k))
    for (const auto& s : all_perms(n)) d.entries[opkit::act(g, s)] = k;
  fill_tables(
      d,
      [](const CompKey& key, const Simplex& a, const Simplex& bb) {
        if (key.outer.arity() == 1 && key.outer.inputs[0] == key.outer.output) return bb;
        return a;
      },
      [](const Signature&, const Perm&, const Simplex& x) { return x; });
  return make_multi(std::move(d));
}

Multifunctor corolla_map(int n, const EnrichMap& f, int arity_bound, int dim_bound) {
  auto src = corolla(n, enrich::source_of(f), arity_bound, dim_bound);
  auto tgt = corolla(n, enrich::target_of(f), arity_bound, dim_bound);
  std::map<Signature, EnrichMap> comps;
  for (int s = 0; s < src->num_sigs(); ++s) {
    const Signature& sg = src->sig(s);
    bool unit_sig = sg.arity() == 1 && sg.inputs[0] == sg.output;
    comps[sg] = unit_sig ? enrich::identity_map(src->entry(sg)) : f;
  }
  std::vector<int> id;
  for (int x = 0; x <= n; ++x) id.push_back(x);
  return functor_from_components(src, tgt, id, comps);
}

MultiPtr forget_symmetry(const Multicategory& p) {
  MultiData d = p.data();
  d.symmetric = false;
  d.sigma.clear();
  return make_multi(std::move(d));
}

MultiPtr contractible_groupoid(int objects, int arity_bound) {
  return xi(*category_from_table(enrich::codiscrete_groupoid(objects), numbered(objects, "")), arity_bound);
}

MultiPtr terminal_multicategory(int arity_bound) { return commutative_operad(arity_bound, true); }

}  // namespace opkit
