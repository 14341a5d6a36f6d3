#include "opkit/enrich/finset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "opkit/error.hpp"

namespace opkit::enrich {

FinSet::FinSet(std::vector<std::string> elements) : elements_(std::move(elements)) {
  std::set<std::string> seen;
  for (const auto& e : elements_)
    if (!seen.insert(e).second) throw ValidationError("duplicate label '" + e + "' in finite set");
}

int FinSet::index_of(const std::string& label) const {
  auto it = std::find(elements_.begin(), elements_.end(), label);
  return it == elements_.end() ? -1 : static_cast<int>(it - elements_.begin());
}

FinSet singleton(const std::string& label) { return FinSet({label}); }

FinSet numbered(std::size_t n, const std::string& prefix) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return FinSet(std::move(v));
}

void validate(const FinMap& f) {
  if (f.on.size() != f.source.size()) throw ValidationError("map is not total on its source");
  for (int v : f.on)
    if (v < 0 || v >= static_cast<int>(f.target.size()))
      throw ValidationError("map image out of range");
}

FinMap identity_map(const FinSet& a) {
  std::vector<int> on(a.size());
  std::iota(on.begin(), on.end(), 0);
  return {a, a, on};
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (!(f.target == g.source)) throw ValidationError("compose: maps not composable");
  FinMap r{f.source, g.target, std::vector<int>(f.on.size())};
  for (std::size_t i = 0; i < f.on.size(); ++i) r.on[i] = g.on[f.on[i]];
  return r;
}

bool is_injective(const FinMap& f) {
  std::vector<char> hit(f.target.size(), 0);
  for (int v : f.on) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool is_surjective(const FinMap& f) {
  std::vector<char> hit(f.target.size(), 0);
  for (int v : f.on) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool is_bijective(const FinMap& f) { return f.source.size() == f.target.size() && is_injective(f); }

FinSet tensor(const FinSet& a, const FinSet& b) {
  std::vector<std::string> v;
  v.reserve(a.size() * b.size());
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) v.push_back("(" + x + "," + y + ")");
  return FinSet(std::move(v));
}

Coproduct coproduct(const std::vector<FinSet>& summands, const std::vector<std::string>& tags) {
  if (summands.size() != tags.size()) throw ValidationError("coproduct: tag count mismatch");
  std::vector<std::string> v;
  for (std::size_t k = 0; k < summands.size(); ++k)
    for (const auto& x : summands[k].elements()) v.push_back(tags[k] + x);
  Coproduct out{FinSet(std::move(v)), {}};
  int offset = 0;
  for (const auto& s : summands) {
    FinMap inj{s, out.object, std::vector<int>(s.size())};
    std::iota(inj.on.begin(), inj.on.end(), offset);
    offset += static_cast<int>(s.size());
    out.injections.push_back(std::move(inj));
  }
  return out;
}

void verify_action(const FinSet& a, const GroupAction& action) {
  const auto& G = action.group;
  if (G.size() != action.acts.size()) throw InvalidAction("one action table per group element required");
  if (G.empty()) throw InvalidAction("group is empty");
  std::vector<Perm> as_perms;
  for (const auto& t : action.acts) {
    if (t.size() != a.size() || !is_perm(t)) throw InvalidAction("group element does not act by a bijection");
    as_perms.push_back(t);
  }
  auto find = [&](const Perm& p) -> int {
    for (std::size_t i = 0; i < G.size(); ++i)
      if (G[i] == p) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t g = 0; g < G.size(); ++g) {
    if (is_identity(G[g]) && !is_identity(as_perms[g])) throw InvalidAction("identity acts nontrivially");
    for (std::size_t h = 0; h < G.size(); ++h) {
      int gh = find(opkit::compose(G[g], G[h]));
      if (gh < 0) throw InvalidAction("group is not closed under composition");
      Perm expect = action.side == ActionSide::Left ? opkit::compose(as_perms[g], as_perms[h])
                                                    : opkit::compose(as_perms[h], as_perms[g]);
      if (as_perms[gh] != expect)
        throw InvalidAction("action does not respect composition at " + perm_to_string(G[g]) + " * " +
                            perm_to_string(G[h]));
    }
  }
}

std::vector<int> orbits_by_generators(std::size_t n, const std::vector<std::vector<int>>& generators,
                                      int* num_orbits) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : generators)
    for (std::size_t x = 0; x < n; ++x) {
      int rx = find(static_cast<int>(x)), ry = find(g[x]);
      if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    }
  // Orbit ids numbered by least member.
  std::vector<int> id(n, -1), out(n);
  int k = 0;
  for (std::size_t x = 0; x < n; ++x) {
    int r = find(static_cast<int>(x));
    if (id[r] < 0) id[r] = k++;
    out[x] = id[r];
  }
  if (num_orbits) *num_orbits = k;
  return out;
}

Quotient coinvariants(const FinSet& a, const GroupAction& action) {
  verify_action(a, action);
  int k = 0;
  auto proj = orbits_by_generators(a.size(), action.acts, &k);
  std::vector<std::string> labels(k);
  std::vector<char> done(k, 0);
  for (std::size_t x = 0; x < a.size(); ++x)
    if (!done[proj[x]]) {
      done[proj[x]] = 1;
      labels[proj[x]] = "[" + a[x] + "]";
    }
  FinSet q(std::move(labels));
  return {q, FinMap{a, q, proj}};
}

std::optional<FinMap> factor_through(const Quotient& q, const FinMap& h) {
  std::vector<int> on(q.object.size(), -1);
  for (std::size_t x = 0; x < h.on.size(); ++x) {
    int o = q.projection.on[x];
    if (on[o] >= 0 && on[o] != h.on[x]) return std::nullopt;
    on[o] = h.on[x];
  }
  return FinMap{q.object, h.target, on};
}

std::vector<FinMap> all_maps(const FinSet& a, const FinSet& b) {
  std::vector<FinMap> out;
  if (b.empty() && !a.empty()) return out;
  std::vector<int> on(a.size(), 0);
  while (true) {
    out.push_back({a, b, on});
    std::size_t i = a.size();
    while (i > 0) {
      --i;
      if (++on[i] < static_cast<int>(b.size())) break;
      on[i] = 0;
      if (i == 0) return out;
    }
    if (a.empty()) return out;
  }
}

}  // namespace opkit::enrich
