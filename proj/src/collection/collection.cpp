#include "opkit/collection/collection.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "opkit/error.hpp"

namespace opkit {

bool Signature::operator<(const Signature& o) const {
  if (arity() != o.arity()) return arity() < o.arity();
  if (inputs != o.inputs) return inputs < o.inputs;
  return output < o.output;
}

Signature act(const Signature& sig, const Perm& s) {
  if (static_cast<int>(s.size()) != sig.arity()) throw SignatureError("permutation size does not match arity");
  Signature out{{}, sig.output};
  for (int i : s) out.inputs.push_back(sig.inputs[i]);
  return out;
}

Signature unary(int x, int y) { return Signature{{x}, y}; }

std::string signature_key(const Signature& sig, const FinSet& colors) {
  std::string s;
  for (int i = 0; i < sig.arity(); ++i) {
    if (i) s += ",";
    s += colors[sig.inputs[i]];
  }
  return s + ";" + colors[sig.output];
}

Signature parse_signature(const std::string& key, const FinSet& colors) {
  auto semi = key.rfind(';');
  if (semi == std::string::npos) throw ParseError("signature '" + key + "' lacks ';'");
  auto color = [&](const std::string& label) {
    int c = colors.index_of(label);
    if (c < 0) throw ParseError("unknown color '" + label + "' in signature '" + key + "'");
    return c;
  };
  Signature sig{{}, color(key.substr(semi + 1))};
  std::string ins = key.substr(0, semi);
  // Labels may contain commas; split by backtracking over the color list.
  std::function<bool(std::size_t)> split = [&](std::size_t at) {
    if (at == ins.size()) return true;
    for (int c = 0; c < static_cast<int>(colors.size()); ++c) {
      const std::string& l = colors[c];
      if (ins.compare(at, l.size(), l) != 0) continue;
      std::size_t next = at + l.size();
      if (next != ins.size() && ins[next] != ',') continue;
      sig.inputs.push_back(c);
      if (split(next == ins.size() ? next : next + 1) && (next != ins.size() - 1)) return true;
      sig.inputs.pop_back();
    }
    return false;
  };
  if (!ins.empty() && !split(0)) throw ParseError("cannot read the inputs of signature '" + key + "'");
  return sig;
}

std::vector<Signature> all_signatures(int ncolors, int bound) {
  std::vector<Signature> out;
  if (ncolors == 0) return out;
  for (int n = 0; n <= bound; ++n) {
    std::vector<int> word(n, 0);
    while (true) {
      for (int x = 0; x < ncolors; ++x) out.push_back({word, x});
      int i = n - 1;
      while (i >= 0 && word[i] == ncolors - 1) word[i--] = 0;
      if (i < 0) break;
      ++word[i];
    }
  }
  return out;
}

EnrichValue Collection::entry(const Signature& sig) const {
  auto it = entries.find(sig);
  if (it == entries.end()) return enrich::initial(backend);
  return it->second;
}

const EnrichMap& Collection::sigma_map(const Signature& sig, const Perm& s) const {
  auto it = sigma.find({sig, perm_index(s)});
  if (it == sigma.end()) throw ValidationError("missing action data for " + signature_key(sig, colors));
  return it->second;
}

int Collection::entry_size(const Signature& sig) const {
  auto it = entries.find(sig);
  return it == entries.end() ? 0 : enrich::size_of(it->second);
}

void validate(const Collection& k) {
  int nc = static_cast<int>(k.colors.size());
  for (const auto& [sig, v] : k.entries) {
    if (sig.output < 0 || sig.output >= nc) throw ValidationError("signature output out of range");
    for (int x : sig.inputs)
      if (x < 0 || x >= nc) throw ValidationError("signature input out of range");
    if (sig.arity() > k.arity_bound)
      throw ValidationError("entry " + signature_key(sig, k.colors) + " exceeds the arity bound");
    if (enrich::backend_of(v) != k.backend) throw BackendMismatch("entry from another backend");
  }
  if (k.symmetric) {
    for (const auto& [sig, v] : k.entries) {
      if (enrich::is_empty(v)) continue;
      const auto& perms = all_perms(sig.arity());
      for (const auto& s : perms) {
        auto it = k.sigma.find({sig, perm_index(s)});
        std::string where = signature_key(sig, k.colors) + " by " + perm_to_string(s);
        if (it == k.sigma.end()) throw InvalidAction("missing action of " + where);
        const EnrichMap& m = it->second;
        if (enrich::backend_of(m) != k.backend) throw BackendMismatch("action map from another backend");
        if (auto* fm = std::get_if<FinMap>(&m)) {
          const auto* src = std::get_if<FinSet>(&v);
          auto tgt = k.entries.find(act(sig, s));
          if (!src || tgt == k.entries.end() || fm->on.size() != src->size() ||
              std::get<FinSet>(tgt->second).size() != src->size())
            throw InvalidAction("action of " + where + " has the wrong source or target");
          std::vector<char> hit(src->size(), 0);
          for (int y : fm->on) {
            if (y < 0 || y >= static_cast<int>(src->size()) || hit[y]) throw InvalidAction(where + " is not a bijection");
            hit[y] = 1;
          }
          if (is_identity(s))
            for (std::size_t x = 0; x < fm->on.size(); ++x)
              if (fm->on[x] != static_cast<int>(x)) throw InvalidAction("identity acts nontrivially on " + where);
        } else {
          if (!(enrich::source_of(m) == v) || !(enrich::target_of(m) == k.entry(act(sig, s))))
            throw InvalidAction("action of " + where + " has the wrong source or target");
          enrich::validate(m);
          if (is_identity(s) && m != enrich::identity_map(v)) throw InvalidAction("identity acts nontrivially on " + where);
        }
      }
      // (st)* = t* s* for adjacent t and every s implies it for all t.
      for (const auto& s : perms)
        for (const auto& t : adjacent_transpositions(sig.arity())) {
          const auto& lhs = k.sigma_map(sig, opkit::compose(s, t));
          const auto& ts = k.sigma_map(act(sig, s), t);
          const auto& ss = k.sigma_map(sig, s);
          bool same;
          if (k.backend == Backend::FinSet) {
            const auto& l = std::get<FinMap>(lhs).on;
            const auto& a = std::get<FinMap>(ts).on;
            const auto& b = std::get<FinMap>(ss).on;
            same = true;
            for (std::size_t x = 0; x < l.size() && same; ++x) same = l[x] == a[b[x]];
          } else {
            same = lhs == enrich::compose(ts, ss);
          }
          if (!same)
            throw InvalidAction("(st)* != t* s* at " + signature_key(sig, k.colors) + " s=" + perm_to_string(s) +
                                " t=" + perm_to_string(t));
        }
    }
  }
  if (k.pointed) {
    for (int x = 0; x < nc; ++x) {
      auto it = k.points.find(x);
      if (it == k.points.end()) throw ValidationError("missing unit point for color " + k.colors[x]);
      EnrichValue e = k.entry(unary(x, x));
      if (auto* s = std::get_if<FinSet>(&e)) {
        if (it->second < 0 || it->second >= static_cast<int>(s->size()))
          throw ValidationError("unit point out of range for color " + k.colors[x]);
      } else {
        const SSet& ss = std::get<SSet>(e);
        if (it->second < 0 || it->second >= ss.size() || ss.dim(it->second) != 0)
          throw ValidationError("unit point is not a vertex for color " + k.colors[x]);
      }
    }
  }
}

void normalize(Collection& k) {
  for (auto it = k.entries.begin(); it != k.entries.end();) {
    if (enrich::is_empty(it->second)) {
      Signature sig = it->first;
      it = k.entries.erase(it);
      for (int p = 0; p < factorial(sig.arity()); ++p) k.sigma.erase({sig, p});
    } else {
      ++it;
    }
  }
}

Collection with_trivial_action(Collection k) {
  for (const auto& [sig, v] : k.entries) {
    if (sig.arity() >= 2 && !enrich::is_empty(v))
      throw ValidationError("trivial action needs arity <= 1 entries");
    k.sigma[{sig, 0}] = enrich::identity_map(v);
  }
  k.symmetric = true;
  return k;
}

Signature map_signature(const Signature& sig, const std::vector<int>& on_colors) {
  Signature out{{}, on_colors.at(sig.output)};
  for (int x : sig.inputs) out.inputs.push_back(on_colors.at(x));
  return out;
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool is_collection_map(const Collection& a, const Collection& b, const CollectionMap& f, std::string* why) {
  if (a.backend != b.backend) return fail(why, "backends differ");
  if (f.on_colors.size() != a.colors.size()) return fail(why, "color map has the wrong size");
  for (int c : f.on_colors)
    if (c < 0 || c >= static_cast<int>(b.colors.size())) return fail(why, "color map out of range");
  for (const auto& [sig, v] : a.entries) {
    if (enrich::is_empty(v)) continue;
    std::string key = signature_key(sig, a.colors);
    Signature t = map_signature(sig, f.on_colors);
    if (t.arity() > b.arity_bound) return fail(why, "image of " + key + " exceeds the target bound");
    auto it = f.on.find(sig);
    if (it == f.on.end()) return fail(why, "no component at " + key);
    if (!(enrich::source_of(it->second) == v) || !(enrich::target_of(it->second) == b.entry(t)))
      return fail(why, "component at " + key + " has the wrong source or target");
    try {
      enrich::validate(it->second);
    } catch (const Error& e) {
      return fail(why, "component at " + key + ": " + e.what());
    }
  }
  auto comp = [&](const Signature& sig) -> EnrichMap {
    auto it = f.on.find(sig);
    if (it != f.on.end()) return it->second;
    const Signature t = map_signature(sig, f.on_colors);
    if (a.backend == Backend::FinSet) return FinMap{FinSet(), std::get<FinSet>(b.entry(t)), {}};
    return SMap{SSet(), std::get<SSet>(b.entry(t)), {}};
  };
  if (a.symmetric && b.symmetric) {
    for (const auto& [sig, v] : a.entries) {
      if (enrich::is_empty(v)) continue;
      Signature t = map_signature(sig, f.on_colors);
      for (const auto& s : all_perms(sig.arity())) {
        auto lhs = enrich::compose(comp(act(sig, s)), a.sigma_map(sig, s));
        auto rhs = enrich::compose(b.sigma_map(t, s), comp(sig));
        if (lhs != rhs)
          return fail(why, "not equivariant at " + signature_key(sig, a.colors) + " under " + perm_to_string(s));
      }
    }
  }
  if (a.pointed && b.pointed) {
    for (const auto& [x, p] : a.points) {
      auto m = comp(unary(x, x));
      int target = b.points.at(f.on_colors[x]);
      bool ok = a.backend == Backend::FinSet ? std::get<FinMap>(m).on[p] == target
                                              : std::get<SMap>(m).on[p] == SSet::nd(target, 0);
      if (!ok) return fail(why, "unit point of " + a.colors[x] + " not preserved");
    }
  }
  return true;
}

std::vector<CollectionMap> all_collection_maps(const Collection& a, const Collection& b,
                                               const std::optional<std::vector<int>>& on_colors, bool respect_sigma,
                                               long budget) {
  if (a.backend != Backend::FinSet || b.backend != Backend::FinSet)
    throw NotImplemented("collection map enumeration is for finite sets");
  std::vector<CollectionMap> out;
  int na = static_cast<int>(a.colors.size()), nb = static_cast<int>(b.colors.size());
  std::vector<std::vector<int>> color_maps;
  if (on_colors) {
    color_maps.push_back(*on_colors);
  } else {
    if (nb == 0 && na > 0) return out;
    std::vector<int> c(na, 0);
    while (true) {
      color_maps.push_back(c);
      int i = na - 1;
      while (i >= 0 && c[i] == nb - 1) c[i--] = 0;
      if (i < 0) break;
      ++c[i];
    }
  }
  bool sym = respect_sigma && a.symmetric && b.symmetric;
  for (const auto& cm : color_maps) {
    // Orbits of (signature, element) pairs under the Sigma action.
    std::map<std::pair<Signature, int>, bool> seen;
    struct Orbit {
      Signature sig;
      int x;
      std::vector<int> candidates;
    };
    std::vector<Orbit> orbits;
    bool dead = false;
    for (const auto& [sig, v] : a.entries) {
      const FinSet& e = std::get<FinSet>(v);
      Signature t = map_signature(sig, cm);
      if (!e.empty() && t.arity() > b.arity_bound) dead = true;
      for (int x = 0; x < static_cast<int>(e.size()) && !dead; ++x) {
        if (seen.count({sig, x})) continue;
        Orbit o{sig, x, {}};
        FinSet te = std::get<FinSet>(b.entry(t));
        std::vector<Perm> stab;
        if (sym) {
          for (const auto& s : all_perms(sig.arity())) {
            Signature ss = act(sig, s);
            int y = std::get<FinMap>(a.sigma_map(sig, s)).on[x];
            seen[{ss, y}] = true;
            if (ss == sig && y == x) stab.push_back(s);
          }
        }
        seen[{sig, x}] = true;
        bool is_point = a.pointed && b.pointed && sig.arity() == 1 && sig.inputs[0] == sig.output &&
                        a.points.at(sig.output) == x;
        for (int y = 0; y < static_cast<int>(te.size()); ++y) {
          if (is_point && y != b.points.at(t.output)) continue;
          bool ok = true;
          for (const auto& s : stab)
            if (std::get<FinMap>(b.sigma_map(t, s)).on[y] != y) ok = false;
          if (ok) o.candidates.push_back(y);
        }
        if (o.candidates.empty()) dead = true;
        orbits.push_back(o);
      }
      if (dead) break;
    }
    if (dead) continue;
    std::vector<std::size_t> choice(orbits.size(), 0);
    while (true) {
      if (--budget < 0) throw BoundExceeded("collection map enumeration budget exhausted");
      CollectionMap f{cm, {}};
      for (const auto& [sig, v] : a.entries) {
        FinMap m{std::get<FinSet>(v), std::get<FinSet>(b.entry(map_signature(sig, cm))), {}};
        m.on.assign(m.source.size(), -1);
        f.on[sig] = m;
      }
      for (std::size_t i = 0; i < orbits.size(); ++i) {
        const auto& o = orbits[i];
        int y = o.candidates[choice[i]];
        Signature t = map_signature(o.sig, cm);
        if (sym) {
          for (const auto& s : all_perms(o.sig.arity())) {
            Signature ss = act(o.sig, s);
            int xs = std::get<FinMap>(a.sigma_map(o.sig, s)).on[o.x];
            int ys = std::get<FinMap>(b.sigma_map(t, s)).on[y];
            std::get<FinMap>(f.on[ss]).on[xs] = ys;
          }
        } else {
          std::get<FinMap>(f.on[o.sig]).on[o.x] = y;
        }
      }
      out.push_back(std::move(f));
      std::size_t i = 0;
      while (i < orbits.size() && ++choice[i] == orbits[i].candidates.size()) choice[i++] = 0;
      if (i == orbits.size()) break;
    }
  }
  return out;
}

Collection forget_sigma(Collection k) {
  k.symmetric = false;
  k.sigma.clear();
  return k;
}

Symmetrization symmetrize(const Collection& k) {
  Symmetrization out;
  Collection& r = out.result;
  r.backend = k.backend;
  r.colors = k.colors;
  r.arity_bound = k.arity_bound;
  r.symmetric = true;
  r.pointed = k.pointed;
  out.unit.on_colors.resize(k.colors.size());
  std::iota(out.unit.on_colors.begin(), out.unit.on_colors.end(), 0);

  std::set<Signature> targets;
  for (const auto& [sig, v] : k.entries)
    if (!enrich::is_empty(v))
      for (const auto& s : all_perms(sig.arity())) targets.insert(act(sig, s));
  std::map<Signature, std::vector<EnrichMap>> injections;
  for (const auto& sig : targets) {
    std::vector<EnrichValue> parts;
    std::vector<std::string> tags;
    for (const auto& s : all_perms(sig.arity())) {
      parts.push_back(k.entry(act(sig, inverse(s))));
      tags.push_back(perm_to_string(s) + ":");
    }
    auto c = enrich::coproduct(k.backend, parts, tags);
    r.entries[sig] = c.object;
    injections[sig] = c.injections;
  }
  for (const auto& sig : targets) {
    const auto& perms = all_perms(sig.arity());
    for (const auto& t : perms) {
      Signature st = act(sig, t);
      const auto& src_inj = injections[sig];
      const auto& dst_inj = injections[st];
      if (k.backend == Backend::FinSet) {
        FinMap m{std::get<FinSet>(r.entries[sig]), std::get<FinSet>(r.entries[st]), {}};
        m.on.resize(m.source.size());
        for (const auto& s : perms) {
          const FinMap& from = std::get<FinMap>(src_inj[perm_index(s)]);
          const FinMap& to = std::get<FinMap>(dst_inj[perm_index(opkit::compose(s, t))]);
          for (std::size_t e = 0; e < from.source.size(); ++e) m.on[from.on[e]] = to.on[e];
        }
        r.sigma[{sig, perm_index(t)}] = m;
      } else {
        SMap m{std::get<SSet>(r.entries[sig]), std::get<SSet>(r.entries[st]), {}};
        m.on.resize(m.source.size());
        for (const auto& s : perms) {
          const SMap& from = std::get<SMap>(src_inj[perm_index(s)]);
          const SMap& to = std::get<SMap>(dst_inj[perm_index(opkit::compose(s, t))]);
          for (int e = 0; e < from.source.size(); ++e) m.on[from.on[e].id] = to.on[e];
        }
        r.sigma[{sig, perm_index(t)}] = m;
      }
    }
  }
  for (const auto& [sig, v] : k.entries) {
    if (enrich::is_empty(v)) continue;
    out.unit.on[sig] = injections[sig][0];
  }
  if (k.pointed) {
    for (const auto& [x, p] : k.points) {
      const EnrichMap& inj = injections[unary(x, x)][0];
      if (k.backend == Backend::FinSet)
        r.points[x] = std::get<FinMap>(inj).on[p];
      else
        r.points[x] = std::get<SMap>(inj).on[p].id;
    }
  }
  return out;
}

Collection make_generating(int n, const EnrichValue& y, bool symmetrized, int arity_bound) {
  if (n > arity_bound) throw BoundExceeded("generator arity " + std::to_string(n) + " exceeds the bound");
  Collection k;
  k.backend = enrich::backend_of(y);
  k.colors = enrich::numbered(n + 1, "");
  k.arity_bound = arity_bound;
  Signature sig{{}, 0};
  for (int i = 1; i <= n; ++i) sig.inputs.push_back(i);
  if (!enrich::is_empty(y)) k.entries[sig] = y;
  if (symmetrized) return symmetrize(k).result;
  return k;
}

SignatureGroupoid signature_groupoid(const FinSet& colors, int arity_bound) {
  if (colors.empty()) throw ValidationError("signature groupoid needs a nonempty color set");
  SignatureGroupoid g{colors, arity_bound, {}, {}};
  int nc = static_cast<int>(colors.size());
  for (const auto& sig : all_signatures(nc, arity_bound)) {
    if (!std::is_sorted(sig.inputs.begin(), sig.inputs.end())) continue;
    g.objects.push_back(sig);
    g.stabilizers.push_back(stabilizer(sig.inputs));
  }
  return g;
}

Perm sorting_perm(const Signature& sig) {
  Perm s(sig.arity());
  std::iota(s.begin(), s.end(), 0);
  std::stable_sort(s.begin(), s.end(), [&](int i, int j) { return sig.inputs[i] < sig.inputs[j]; });
  return s;
}

}  // namespace opkit
