#include "opkit/multicat/free.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <set>

#include "opkit/error.hpp"
#include "opkit/multicat/construct.hpp"

namespace opkit {

bool TreeNode::operator==(const TreeNode& o) const {
  return gen == o.gen && elem == o.elem && color == o.color && leaf == o.leaf && children == o.children;
}

bool TreeNode::operator<(const TreeNode& o) const {
  if (gen != o.gen) return gen < o.gen;
  if (elem != o.elem) return elem < o.elem;
  if (color != o.color) return color < o.color;
  if (leaf != o.leaf) return leaf < o.leaf;
  return std::lexicographical_compare(children.begin(), children.end(), o.children.begin(), o.children.end());
}

int vertex_count(const TreeNode& t) {
  if (t.gen < 0) return 0;
  int n = 1;
  for (const auto& c : t.children) n += vertex_count(c);
  return n;
}

int leaf_count(const TreeNode& t) {
  if (t.gen < 0) return 1;
  int n = 0;
  for (const auto& c : t.children) n += leaf_count(c);
  return n;
}

namespace {

void relabel(TreeNode& t, const std::function<int(int)>& f) {
  if (t.gen < 0) {
    t.leaf = f(t.leaf);
    return;
  }
  for (auto& c : t.children) relabel(c, f);
}

void collect_leaves(const TreeNode& t, std::vector<const TreeNode*>& out) {
  if (t.gen < 0) {
    out.push_back(&t);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

}  // namespace

FreeMulticategory free_multicat(const Collection& k, int bound) { return FreeMulticategory(k, bound); }

FreeMulticategory::FreeMulticategory(const Collection& k, int bound,
                                     const std::vector<std::pair<TreeNode, TreeNode>>& relations)
    : k_(k.symmetric ? k : symmetrize(k).result), bound_(bound) {
  if (k_.backend != Backend::FinSet) throw NotImplemented("free multicategories on simplicial collections");
  if (bound < 0) throw BoundExceeded("negative tree bound");
  validate(k_);
  for (const auto& [s, v] : k_.entries)
    if (!enrich::is_empty(v)) {
      gids_[s] = static_cast<int>(gsigs_.size());
      gsigs_.push_back(s);
    }
  for (const auto& [a, b] : relations) {
    TreeNode ca = canonical(a), cb = canonical(b);
    if (!(signature_of(ca) == signature_of(cb))) throw SignatureError("relation between different signatures");
    relations_.push_back({ca, cb});
  }
  quotient(enumerate());
  materialize();
}

Signature FreeMulticategory::signature_of(const TreeNode& t) const {
  std::vector<const TreeNode*> leaves;
  collect_leaves(t, leaves);
  Signature s{std::vector<int>(leaves.size(), -1), t.color};
  for (const auto* l : leaves) {
    if (l->leaf < 0 || l->leaf >= static_cast<int>(leaves.size()) || s.inputs[l->leaf] >= 0)
      throw SignatureError("leaf numbering is not a bijection");
    s.inputs[l->leaf] = l->color;
  }
  return s;
}

int FreeMulticategory::min_leaf(const TreeNode& t) const {
  if (t.gen < 0) return t.leaf;
  int m = INT_MAX;
  for (const auto& c : t.children) m = std::min(m, min_leaf(c));
  return m;
}

TreeNode FreeMulticategory::generator(const Signature& s, int elem) const {
  auto it = gids_.find(s);
  if (it == gids_.end()) throw SignatureError("no generators at " + signature_key(s, k_.colors));
  TreeNode t{it->second, elem, s.output, -1, {}};
  for (int j = 0; j < s.arity(); ++j) t.children.push_back(TreeNode{-1, 0, s.inputs[j], j, {}});
  return canonical(t);
}

TreeNode FreeMulticategory::canonical(const TreeNode& t0) const {
  if (t0.gen < 0) return t0;
  TreeNode t = t0;
  const Signature& s = gsigs_.at(t.gen);
  if (static_cast<int>(t.children.size()) != s.arity()) throw SignatureError("vertex with the wrong number of children");
  for (int j = 0; j < s.arity(); ++j) {
    t.children[j] = canonical(t.children[j]);
    if (t.children[j].color != s.inputs[j]) throw SignatureError("edge colors do not match the vertex label");
  }
  if (t.color != s.output) throw SignatureError("vertex output color mismatch");
  if (k_.pointed && s.arity() == 1 && s.inputs[0] == s.output) {
    auto p = k_.points.find(s.output);
    if (p != k_.points.end() && p->second == t.elem) return t.children[0];
  }
  int k = s.arity();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> mins(k);
  for (int j = 0; j < k; ++j) mins[j] = min_leaf(t.children[j]);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (mins[a] != mins[b]) return mins[a] < mins[b];
    return t.children[a] < t.children[b];
  });
  Signature s2 = opkit::act(s, order);
  int e2 = std::get<FinMap>(k_.sigma_map(s, order)).on[t.elem];
  std::vector<TreeNode> kids;
  for (int j = 0; j < k; ++j) kids.push_back(t.children[order[j]]);
  int best = e2;
  bool ties = false;
  for (int j = 0; j + 1 < k; ++j)
    if (kids[j] == kids[j + 1]) ties = true;
  if (ties)
    for (const auto& tau : all_perms(k)) {
      bool keeps = true;
      for (int j = 0; j < k && keeps; ++j) keeps = kids[tau[j]] == kids[j];
      if (keeps) best = std::min(best, std::get<FinMap>(k_.sigma_map(s2, tau)).on[e2]);
    }
  return TreeNode{gids_.at(s2), best, s2.output, -1, std::move(kids)};
}

TreeNode FreeMulticategory::graft(const TreeNode& t, int slot, const TreeNode& u) const {
  Signature st = signature_of(t);
  int k = leaf_count(u);
  if (slot < 0 || slot >= st.arity()) throw SignatureError("slot out of range");
  if (st.inputs[slot] != u.color) throw SignatureError("output color does not match the input slot");
  TreeNode v = u;
  relabel(v, [&](int l) { return slot + l; });
  std::function<TreeNode(const TreeNode&)> go = [&](const TreeNode& x) -> TreeNode {
    if (x.gen < 0) {
      if (x.leaf == slot) return v;
      TreeNode y = x;
      if (y.leaf > slot) y.leaf += k - 1;
      return y;
    }
    TreeNode y = x;
    for (auto& c : y.children) c = go(c);
    return y;
  };
  return canonical(go(t));
}

TreeNode FreeMulticategory::act(const TreeNode& t, const Perm& s) const {
  Perm inv = inverse(s);
  TreeNode r = t;
  relabel(r, [&](int l) { return inv[l]; });
  return canonical(r);
}

std::string FreeMulticategory::to_string(const TreeNode& t) const {
  if (t.gen < 0) return "1";
  std::function<std::string(const TreeNode&)> go = [&](const TreeNode& x) -> std::string {
    if (x.gen < 0) return "#" + std::to_string(x.leaf + 1);
    std::string r = std::get<FinSet>(k_.entry(gsigs_[x.gen]))[x.elem];
    if (x.children.empty()) return r;
    r += "(";
    for (std::size_t j = 0; j < x.children.size(); ++j) r += (j ? "," : "") + go(x.children[j]);
    return r + ")";
  };
  return go(t);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<TreeNode> FreeMulticategory::enumerate() const {
  int n_max = k_.arity_bound;
  // Vertex labels: one element per orbit, points excluded.
  std::vector<std::pair<int, int>> labels;
  for (int g = 0; g < static_cast<int>(gsigs_.size()); ++g) {
    const Signature& s = gsigs_[g];
    int size = static_cast<int>(std::get<FinSet>(k_.entry(s)).size());
    for (int a = 0; a < size; ++a) {
      if (k_.pointed && s.arity() == 1 && s.inputs[0] == s.output) {
        auto p = k_.points.find(s.output);
        if (p != k_.points.end() && p->second == a) continue;
      }
      std::pair<int, int> rep{g, a};
      for (const auto& pi : all_perms(s.arity())) {
        int e = std::get<FinMap>(k_.sigma_map(s, pi)).on[a];
        rep = std::min(rep, std::pair<int, int>{gids_.at(opkit::act(s, pi)), e});
      }
      if (rep == std::pair<int, int>{g, a}) labels.push_back(rep);
    }
  }
  std::map<std::pair<int, int>, std::vector<TreeNode>> memo;
  std::function<const std::vector<TreeNode>&(int, int)> shapes = [&](int color, int budget) -> const std::vector<TreeNode>& {
    auto key = std::make_pair(color, budget);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<TreeNode> out{TreeNode{-1, 0, color, -1, {}}};
    if (budget > 0)
      for (const auto& [g, a] : labels) {
        const Signature& s = gsigs_[g];
        if (s.output != color) continue;
        std::vector<TreeNode> kids;
        std::function<void(int, int, int)> fill = [&](int j, int used, int leaves) {
          if (j == s.arity()) {
            out.push_back(TreeNode{g, a, color, -1, kids});
            return;
          }
          for (const auto& c : shapes(s.inputs[j], budget - 1 - used)) {
            int v = vertex_count(c), l = leaf_count(c);
            if (used + v > budget - 1 || leaves + l > n_max) continue;
            kids.push_back(c);
            fill(j + 1, used + v, leaves + l);
            kids.pop_back();
          }
        };
        fill(0, 0, 0);
      }
    return memo[key] = std::move(out);
  };
  std::set<TreeNode> all;
  for (int c = 0; c < static_cast<int>(k_.colors.size()); ++c)
    for (const auto& shape : shapes(c, bound_)) {
      int n = leaf_count(shape);
      if (n > n_max) continue;
      for (const auto& labeling : all_perms(n)) {
        TreeNode t = shape;
        int next = 0;
        std::function<void(TreeNode&)> lab = [&](TreeNode& x) {
          if (x.gen < 0) {
            x.leaf = labeling[next++];
            return;
          }
          for (auto& ch : x.children) lab(ch);
        };
        lab(t);
        all.insert(canonical(t));
      }
    }
  return {all.begin(), all.end()};
}

void FreeMulticategory::quotient(std::vector<TreeNode> all) {
  std::map<TreeNode, int> pos;
  for (int i = 0; i < static_cast<int>(all.size()); ++i) pos[all[i]] = i;
  UnionFind uf(static_cast<int>(all.size()));
  for (const auto& [a, b] : relations_) {
    auto ia = pos.find(a), ib = pos.find(b);
    if (ia == pos.end() || ib == pos.end()) throw BoundExceeded("relation term beyond the tree bound");
    uf.unite(ia->second, ib->second);
  }
  if (!relations_.empty()) {
    std::vector<Signature> sigs;
    std::vector<int> verts;
    for (const auto& t : all) {
      sigs.push_back(signature_of(t));
      verts.push_back(vertex_count(t));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::tuple<int, int, int>, int> grafts;
      for (int i = 0; i < static_cast<int>(all.size()); ++i)
        for (int slot = 0; slot < sigs[i].arity(); ++slot)
          for (int j = 0; j < static_cast<int>(all.size()); ++j) {
            if (all[j].color != sigs[i].inputs[slot]) continue;
            if (verts[i] + verts[j] > bound_ || sigs[i].arity() - 1 + sigs[j].arity() > k_.arity_bound) continue;
            int c = pos.at(graft(all[i], slot, all[j]));
            auto key = std::make_tuple(uf.find(i), slot, uf.find(j));
            auto [it, fresh] = grafts.emplace(key, c);
            if (!fresh && uf.unite(it->second, c)) changed = true;
          }
      std::map<std::pair<int, int>, int> acts;
      for (int i = 0; i < static_cast<int>(all.size()); ++i) {
        auto ts = adjacent_transpositions(sigs[i].arity());
        for (int t = 0; t < static_cast<int>(ts.size()); ++t) {
          int c = pos.at(act(all[i], ts[t]));
          auto [it, fresh] = acts.emplace(std::make_pair(uf.find(i), t), c);
          if (!fresh && uf.unite(it->second, c)) changed = true;
        }
      }
    }
  }
  std::map<Signature, std::vector<int>> reps;
  for (int i = 0; i < static_cast<int>(all.size()); ++i)
    if (uf.find(i) == i) reps[signature_of(all[i])].push_back(i);
  std::map<int, std::pair<Signature, int>> rep_index;
  for (const auto& [s, ids] : reps)
    for (int x = 0; x < static_cast<int>(ids.size()); ++x) {
      terms_[s].push_back(all[ids[x]]);
      rep_index[ids[x]] = {s, x};
    }
  for (int i = 0; i < static_cast<int>(all.size()); ++i) index_[all[i]] = rep_index.at(uf.find(i));
}

int FreeMulticategory::index_of(const TreeNode& t) const {
  auto it = index_.find(canonical(t));
  return it == index_.end() ? -1 : it->second.second;
}

void FreeMulticategory::materialize() {
  MultiData d;
  d.objects = k_.colors;
  d.arity_bound = k_.arity_bound;
  for (const auto& [s, ts] : terms_) {
    std::vector<std::string> names;
    for (const auto& t : ts) names.push_back(to_string(t));
    d.entries[s] = FinSet(names);
  }
  for (int x = 0; x < static_cast<int>(k_.colors.size()); ++x) d.units.push_back(index_of(leaf(x)));
  fill_tables(
      d,
      [&](const CompKey& key, const Simplex& a, const Simplex& b) {
        const TreeNode& t = terms_.at(key.outer)[a.id];
        const TreeNode& u = terms_.at(key.inner)[b.id];
        if (vertex_count(t) + vertex_count(u) > bound_) return Simplex{-1, {}};
        int v = index_of(graft(t, key.slot, u));
        return Simplex{v, {0}};
      },
      [&](const Signature& s, const Perm& p, const Simplex& x) {
        return Simplex{index_of(act(terms_.at(s)[x.id], p)), {0}};
      });
  for (const auto& [key, tab] : d.comp)
    for (int v : tab[0])
      if (v < 0) d.partial = true;
  multi_ = make_multi(std::move(d));
}

CollectionMap FreeMulticategory::unit_map() const {
  CollectionMap m;
  for (int x = 0; x < static_cast<int>(k_.colors.size()); ++x) m.on_colors.push_back(x);
  for (const auto& s : gsigs_) {
    FinSet src = std::get<FinSet>(k_.entry(s));
    FinMap f{src, std::get<FinSet>(multi_->entry(s)), {}};
    for (int a = 0; a < static_cast<int>(src.size()); ++a) {
      int v = index_of(generator(s, a));
      if (v < 0) throw BoundExceeded("generators need tree bound at least 1");
      f.on.push_back(v);
    }
    m.on[s] = f;
  }
  return m;
}

CollectionMap FreeMulticategory::restrict_to_generators(const Multifunctor& f) const {
  CollectionMap m;
  m.on_colors = f.on_objects;
  CollectionMap u = unit_map();
  for (const auto& s : gsigs_) {
    const FinMap& us = std::get<FinMap>(u.on.at(s));
    Signature t = map_signature(s, f.on_objects);
    FinMap g{us.source, std::get<FinSet>(f.target->entry(t)), {}};
    int sid = multi_->sig_id(s);
    for (int v : us.on) g.on.push_back(f.on_ops[sid][0][v]);
    m.on[s] = g;
  }
  return m;
}

}  // namespace opkit
