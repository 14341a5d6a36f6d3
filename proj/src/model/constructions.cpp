#include <set>

#include "opkit/error.hpp"
#include "opkit/model/model.hpp"

namespace opkit::model {

Mc5 factorize_mc5(const Multifunctor& f) {
  const Multicategory& p = *f.source;
  const Multicategory& q = *f.target;
  std::vector<std::string> names;
  std::vector<int> delta;
  for (int x = 0; x < p.num_objects(); ++x) {
    names.push_back("P:" + p.objects()[x]);
    delta.push_back(f.on_objects[x]);
  }
  for (int y = 0; y < q.num_objects(); ++y) {
    names.push_back("Q:" + q.objects()[y]);
    delta.push_back(y);
  }
  auto pb = pullback(f.target, FinSet(names), delta);
  Mc5 out;
  out.qprime = pb.result;
  out.pfib = pb.canonical;
  out.i = Multifunctor{f.source, pb.result, {}, f.on_ops};
  for (int x = 0; x < p.num_objects(); ++x) out.i.on_objects.push_back(x);
  auto rep = check_multifunctor(out.i);
  if (!rep.ok) throw ValidationError("MC5 first leg: " + rep.failures.front());
  return out;
}

PushoutXiH pushout_xi_h(const Multifunctor& f) {
  const Multicategory& p = *f.target;
  if (f.source->num_objects() != 1) throw SignatureError("the source must be Xi(I)");
  PushoutXiH out;
  out.j = xi_i_to_h(p.arity_bound(), p.backend(), p.dim_bound());
  if (!(*out.j.source == *f.source)) throw SignatureError("the source must be Xi(I) with matching bounds");
  out.x_star = f.on_objects[0];
  std::vector<std::string> names = p.objects().elements();
  std::string star = "*";
  while (p.objects().index_of(star) >= 0) star += "'";
  names.push_back(star);
  std::vector<int> delta;
  for (int x = 0; x < p.num_objects(); ++x) delta.push_back(x);
  delta.push_back(out.x_star);
  out.star = p.num_objects();
  out.q = reindex(p, FinSet(names), delta, p.arity_bound());
  out.g = identity_functor(f.target);
  out.g.target = out.q;
  const MultiPtr& h = out.j.target;
  out.k = Multifunctor{h, out.q, {out.x_star, out.star}, {}};
  out.k.on_ops.resize(h->num_sigs());
  for (int s = 0; s < h->num_sigs(); ++s) {
    int ts = image_sig_id(out.k, s);
    for (int lv = 0; lv < h->levels(); ++lv) {
      // Every arrow of H goes to the identity of x_* seen through the relabeling.
      int u = out.q->simplex_index(ts, p.simplex(p.unit_sig(out.x_star), lv, p.unit(out.x_star, lv)));
      out.k.on_ops[s].push_back(std::vector<int>(h->size(s, lv), u));
    }
  }
  for (const auto* m : {&out.g, &out.k}) {
    auto rep = check_multifunctor(*m);
    if (!rep.ok) throw ValidationError("pushout leg: " + rep.failures.front());
  }
  return out;
}

Pushforward pushforward_corolla(const std::vector<int>& s, const FinSet& colors, const FinSet& x, int tree_bound,
                                int arity_bound) {
  int n = static_cast<int>(s.size()) - 1;
  if (n < 0) throw SignatureError("surjection on {0..n} needs n >= 0");
  std::vector<char> hit(colors.size(), 0);
  for (int c : s) {
    if (c < 0 || c >= static_cast<int>(colors.size())) throw SignatureError("surjection out of range");
    hit[c] = 1;
  }
  for (char h : hit)
    if (!h) throw SignatureError("map is not surjective");
  Collection k;
  k.colors = colors;
  k.arity_bound = arity_bound;
  Signature g{{}, s[0]};
  for (int i = 1; i <= n; ++i) g.inputs.push_back(s[i]);
  if (g.arity() > arity_bound) throw BoundExceeded("generator above the arity bound");
  k.entries[g] = x;
  Pushforward out{FreeMulticategory(k, tree_bound), {}};
  if (tree_bound >= 1) {
    auto cor = corolla(n, x, arity_bound);
    auto fm = out.free.multicategory();
    Multifunctor m{cor, fm, s, {}};
    m.on_ops.resize(cor->num_sigs());
    Signature g0{{}, 0};
    for (int i = 1; i <= n; ++i) g0.inputs.push_back(i);
    for (int sid = 0; sid < cor->num_sigs(); ++sid) {
      const Signature& cs = cor->sig(sid);
      std::vector<int> on;
      if (cs.arity() == 1 && cs.inputs[0] == cs.output) {
        on.push_back(fm->unit(s[cs.output]));
      } else {
        Perm pi;
        for (const auto& cand : all_perms(n))
          if (act(g0, cand) == cs) pi = cand;
        for (int e = 0; e < cor->size(sid); ++e)
          on.push_back(out.free.index_of(out.free.act(out.free.generator(g, e), pi)));
      }
      m.on_ops[sid] = {on};
    }
    auto rep = check_multifunctor(m);
    if (!rep.ok) throw ValidationError("corolla leg: " + rep.failures.front());
    out.from_corolla = m;
  }
  return out;
}

MultiPtr pi0_category(const Multicategory& p) {
  if (p.backend() == Backend::FinSet) return underlying_cat(p);
  enrich::CategoryTable t;
  t.objects = p.num_objects();
  // (signature id, component) -> morphism
  std::map<std::pair<int, int>, int> mor;
  std::map<int, std::vector<int>> comp_of;  // sig -> component per vertex id
  for (int s = 0; s < p.num_sigs(); ++s) {
    if (p.sig(s).arity() != 1) continue;
    const SSet e = std::get<SSet>(p.entry(p.sig(s)));
    int count = 0;
    auto comps = enrich::components(e, &count);
    comp_of[s] = comps;
    std::vector<int> rep(count, -1);
    for (int v = 0; v < e.size(); ++v)
      if (e.dim(v) == 0 && rep[comps[v]] < 0) rep[comps[v]] = v;
    for (int c = 0; c < count; ++c) {
      mor[{s, c}] = static_cast<int>(t.morphisms.size());
      t.morphisms.push_back({p.sig(s).inputs[0], p.sig(s).output});
      t.morphism_names.push_back("[" + e.name(rep[c]) + "]");
    }
  }
  auto vertex_comp = [&](int s, int level0_index) {
    return comp_of.at(s)[p.simplex(s, 0, level0_index).id];
  };
  for (int x = 0; x < p.num_objects(); ++x) {
    int us = p.unit_sig(x);
    t.identities.push_back(mor.at({us, vertex_comp(us, p.unit(x))}));
  }
  int m = static_cast<int>(t.morphisms.size());
  t.compose.assign(m, std::vector<int>(m, -1));
  for (const auto& [gk, g] : mor)
    for (const auto& [fk, f] : mor) {
      int gs = gk.first, fs = fk.first;
      if (p.sig(fs).output != p.sig(gs).inputs[0]) continue;
      int value = -1;
      for (int a = 0; a < p.size(gs, 0); ++a) {
        if (vertex_comp(gs, a) != gk.second) continue;
        for (int b = 0; b < p.size(fs, 0); ++b) {
          if (vertex_comp(fs, b) != fk.second) continue;
          int rs;
          int c = p.compose(gs, 0, fs, a, b, 0, &rs);
          int v = mor.at({rs, vertex_comp(rs, c)});
          if (value >= 0 && v != value) throw ValidationError("composition is not well defined on components");
          value = v;
        }
      }
      t.compose[g][f] = value;
    }
  return category_from_table(t, p.objects());
}

Multifunctor pi0_functor(const Multifunctor& f) {
  if (f.source->backend() == Backend::FinSet) {
    auto s = underlying_cat(*f.source), t = underlying_cat(*f.target);
    Multifunctor r{s, t, f.on_objects, {}};
    for (int sid = 0; sid < s->num_sigs(); ++sid) r.on_ops.push_back(f.on_ops[f.source->sig_id(s->sig(sid))]);
    return r;
  }
  auto s = pi0_category(*f.source), t = pi0_category(*f.target);
  Multifunctor r{s, t, f.on_objects, {}};
  for (int sid = 0; sid < s->num_sigs(); ++sid) {
    const Signature& sg = s->sig(sid);
    EnrichMap c = component(f, sg);
    auto pm = enrich::pi0_map(std::get<SMap>(c));
    std::vector<int> on;
    for (int e = 0; e < s->size(sid); ++e) on.push_back(pm[e]);
    r.on_ops.push_back({on});
  }
  auto rep = check_multifunctor(r);
  if (!rep.ok) throw ValidationError("induced functor on components: " + rep.failures.front());
  return r;
}

namespace {

std::optional<bool> all_of3(const std::vector<enrich::Verdict>& v) {
  bool undecided = false;
  for (auto x : v) {
    if (x == enrich::Verdict::No) return false;
    if (x == enrich::Verdict::Inconclusive) undecided = true;
  }
  if (undecided) return std::nullopt;
  return true;
}

std::optional<bool> and3(std::optional<bool> a, std::optional<bool> b) {
  if ((a && !*a) || (b && !*b)) return false;
  if (!a || !b) return std::nullopt;
  return true;
}

}  // namespace

ModelVerdict classify_simplicial(const Multifunctor& f, long oracle_budget) {
  if (f.source->backend() == Backend::FinSet) return classify_set(f);
  ModelVerdict v;
  const Multicategory& p = *f.source;
  int d = p.dim_bound();
  std::vector<enrich::Verdict> w1;
  bool f1 = true;
  for (const auto& s : all_signatures(p.num_objects(), p.arity_bound())) {
    if (image_signature(f, s).arity() > f.target->arity_bound()) continue;
    SMap c = std::get<SMap>(component(f, s));
    std::string key = signature_key(s, p.objects());
    auto w = enrich::weq_oracle(c, d, oracle_budget);
    w1.push_back(w.verdict);
    v.evidence.push_back({"W1", key, enrich::to_string(w.verdict)});
    auto k = enrich::kan_fibration_check(c, d);
    if (!k.ok) f1 = false;
    v.evidence.push_back({"F1", key, k.ok ? "yes" : "no: " + k.witness});
  }
  auto pf = pi0_functor(f);
  auto eq = is_equivalence_set(pf);
  bool w2 = *eq.weq;
  bool f2 = is_fibration_set(pf);
  v.evidence.push_back({"W2", "", w2 ? "yes" : "no"});
  v.evidence.push_back({"F2", "", f2 ? "yes" : "no"});
  v.weq = and3(all_of3(w1), w2);
  v.fib = and3(f1, f2);
  if (v.weq && v.fib) v.trivfib = *v.weq && *v.fib;
  bool fixes = f.source->objects() == f.target->objects();
  for (int x = 0; x < static_cast<int>(f.on_objects.size()) && fixes; ++x) fixes = f.on_objects[x] == x;
  if (fixes && all_of3(w1) == std::optional<bool>(true) && f1) {
    v.trivfib = true;
    v.evidence.push_back({"acyclic fibration (object-fixing, componentwise)", "", "yes"});
  }
  v.evidence.push_back({"cofibration", "", "not decided for simplicial enrichment"});
  return v;
}

}  // namespace opkit::model
