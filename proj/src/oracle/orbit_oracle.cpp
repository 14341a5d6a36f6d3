#include "opkit/oracle/orbit_oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace opkit::oracle {

namespace {

using P = std::vector<int>;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<P> perms_of(int n) {
  std::vector<P> out;
  P p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int size_at(const PlainSeq& k, int n) {
  auto it = k.size.find(n);
  return it == k.size.end() ? 0 : it->second;
}

int gen_act(const PlainSeq& k, int n, int x, int i) { return k.gens.at(n)[i][x]; }

int top_arity(const PlainSeq& k) {
  int t = -1;
  for (auto [n, s] : k.size)
    if (s > 0) t = std::max(t, n);
  return t;
}

// An element: a root part (or -1), factor arities, factor parts, and t.
struct Elem {
  int root;
  std::vector<int> ar;
  std::vector<int> part;
  P tau;
  bool operator<(const Elem& o) const {
    return std::tie(root, ar, part, tau) < std::tie(o.root, o.ar, o.part, o.tau);
  }
};

// r factors drawn from l (or from factors[j]), total arity n.
void enumerate(const std::vector<const PlainSeq*>& factors, int n, int root, std::vector<Elem>& out) {
  int r = static_cast<int>(factors.size());
  std::vector<int> ar(r), part(r);
  auto perms = perms_of(n);
  std::function<void(int, int)> rec_ar = [&](int j, int left) {
    if (j == r) {
      if (left != 0) return;
      std::function<void(int)> rec_part = [&](int q) {
        if (q == r) {
          for (const auto& t : perms) out.push_back({root, ar, part, t});
          return;
        }
        for (int x = 0; x < size_at(*factors[q], ar[q]); ++x) {
          part[q] = x;
          rec_part(q + 1);
        }
      };
      rec_part(0);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      if (size_at(*factors[j], m) == 0) continue;
      ar[j] = m;
      rec_ar(j + 1, left - m);
    }
  };
  rec_ar(0, n);
}

int block_start(const std::vector<int>& ar, int j) {
  int s = 0;
  for (int q = 0; q < j; ++q) s += ar[q];
  return s;
}

// Inner relations: (x_j . a, t) ~ (x_j, (id + a + id) t) for a = (i i+1).
void inner_relations(const std::vector<const PlainSeq*>& factors, const std::vector<Elem>& elems,
                     const std::map<Elem, int>& index, UnionFind& uf) {
  for (std::size_t e = 0; e < elems.size(); ++e) {
    const Elem& x = elems[e];
    for (std::size_t j = 0; j < x.ar.size(); ++j) {
      int s = block_start(x.ar, static_cast<int>(j));
      for (int i = 0; i + 1 < x.ar[j]; ++i) {
        Elem y = x;
        y.part[j] = gen_act(*factors[j], x.ar[j], x.part[j], i);
        Elem z = x;
        for (auto& v : z.tau) {
          if (v == s + i)
            v = s + i + 1;
          else if (v == s + i + 1)
            v = s + i;
        }
        uf.unite(index.at(y), index.at(z));
      }
    }
  }
}

PlainSeq collect(const std::map<int, std::vector<Elem>>& elems_by_n,
                 std::map<int, std::map<Elem, int>>& index_by_n, std::map<int, UnionFind>& uf_by_n) {
  PlainSeq out;
  for (auto& [n, elems] : elems_by_n) {
    auto& uf = uf_by_n.at(n);
    auto& index = index_by_n.at(n);
    std::map<int, int> cls;
    for (std::size_t e = 0; e < elems.size(); ++e) {
      int root = uf.find(static_cast<int>(e));
      if (!cls.count(root)) {
        int id = static_cast<int>(cls.size());
        cls[root] = id;
      }
    }
    if (cls.empty()) continue;
    out.size[n] = static_cast<int>(cls.size());
    std::vector<int> rep(cls.size());
    for (std::size_t e = 0; e < elems.size(); ++e) rep[cls[uf.find(static_cast<int>(e))]] = static_cast<int>(e);
    auto& gens = out.gens[n];
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<int> row;
      for (int c : rep) {
        Elem y = elems[c];
        std::swap(y.tau[i], y.tau[i + 1]);
        row.push_back(cls.at(uf.find(index.at(y))));
      }
      gens.push_back(row);
    }
  }
  return out;
}

}  // namespace

PlainSeq tensor(const PlainSeq& k, const PlainSeq& l, int bound) {
  std::vector<const PlainSeq*> factors{&k, &l};
  std::map<int, std::vector<Elem>> elems;
  std::map<int, std::map<Elem, int>> index;
  std::map<int, UnionFind> ufs;
  for (int n = 0; n <= bound; ++n) {
    enumerate(factors, n, -1, elems[n]);
    for (std::size_t e = 0; e < elems[n].size(); ++e) index[n][elems[n][e]] = static_cast<int>(e);
    ufs.emplace(n, UnionFind(static_cast<int>(elems[n].size())));
    inner_relations(factors, elems[n], index[n], ufs.at(n));
  }
  return collect(elems, index, ufs);
}

PlainSeq circle(const PlainSeq& k, const PlainSeq& l, int bound) {
  std::map<int, std::vector<Elem>> elems;
  std::map<int, std::map<Elem, int>> index;
  std::map<int, UnionFind> ufs;
  int top = top_arity(k);
  for (int n = 0; n <= bound; ++n) {
    auto& es = elems[n];
    std::map<int, std::pair<std::size_t, std::size_t>> range;
    for (int r = 0; r <= top; ++r) {
      std::vector<const PlainSeq*> factors(r, &l);
      for (int x = 0; x < size_at(k, r); ++x) enumerate(factors, n, x, es);
    }
    auto& idx = index[n];
    for (std::size_t e = 0; e < es.size(); ++e) idx[es[e]] = static_cast<int>(e);
    ufs.emplace(n, UnionFind(static_cast<int>(es.size())));
    auto& uf = ufs.at(n);
    // Inner relations grouped by the number of factors.
    for (std::size_t e = 0; e < es.size(); ++e) {
      const Elem& x = es[e];
      int r = static_cast<int>(x.ar.size());
      std::vector<const PlainSeq*> factors(r, &l);
      for (int j = 0; j < r; ++j) {
        int s = block_start(x.ar, j);
        for (int i = 0; i + 1 < x.ar[j]; ++i) {
          Elem y = x;
          y.part[j] = gen_act(l, x.ar[j], x.part[j], i);
          Elem z = x;
          for (auto& v : z.tau) {
            if (v == s + i)
              v = s + i + 1;
            else if (v == s + i + 1)
              v = s + i;
          }
          uf.unite(index[n].at(y), index[n].at(z));
        }
      }
      // Outer relations: (k . (i i+1), y) ~ (k, (i i+1) . y), the latter
      // swapping factors i and i+1 and the two blocks of positions.
      for (int i = 0; i + 1 < r; ++i) {
        Elem y = x;
        y.root = gen_act(k, r, x.root, i);
        Elem z = x;
        std::swap(z.ar[i], z.ar[i + 1]);
        std::swap(z.part[i], z.part[i + 1]);
        int s = block_start(x.ar, i), a = x.ar[i], b = x.ar[i + 1];
        for (auto& v : z.tau) {
          if (v >= s && v < s + a)
            v = v + b;
          else if (v >= s + a && v < s + a + b)
            v = v - a;
        }
        uf.unite(index[n].at(y), index[n].at(z));
      }
    }
  }
  return collect(elems, index, ufs);
}

std::vector<long> marks(const PlainSeq& k, int n) {
  auto perms = perms_of(n);
  int np = static_cast<int>(perms.size());
  std::map<P, int> where;
  for (int i = 0; i < np; ++i) where[perms[i]] = i;
  auto mul = [](const P& a, const P& b) {
    P c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  // Subgroups generated by at most two elements cover every subgroup of
  // Sigma_n for n <= 4.
  std::set<std::vector<int>> subgroups;
  for (int a = 0; a < np; ++a)
    for (int b = a; b < np; ++b) {
      std::set<int> h{0, a, b};
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<int> cur(h.begin(), h.end());
        for (int x : cur)
          for (int y : cur)
            if (h.insert(where[mul(perms[x], perms[y])]).second) grew = true;
      }
      subgroups.insert(std::vector<int>(h.begin(), h.end()));
    }
  int size = size_at(k, n);
  // Right action of an arbitrary permutation through adjacent transpositions.
  auto act = [&](int x, const P& p) {
    // Bubble-sort p into the identity, recording swaps: p = t_{i1} ... t_{im}.
    P q = p;
    std::vector<int> word;
    for (int pass = 0; pass < n; ++pass)
      for (int i = 0; i + 1 < n; ++i)
        if (q[i] > q[i + 1]) {
          std::swap(q[i], q[i + 1]);
          word.push_back(i);
        }
    // q = p t_{w1} ... t_{wm} = id, so p = t_{wm} ... t_{w1}.
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = gen_act(k, n, x, *it);
    return x;
  };
  std::vector<long> out;
  for (const auto& h : subgroups) {
    long fixed = 0;
    for (int x = 0; x < size; ++x) {
      bool ok = true;
      for (int g : h)
        if (act(x, perms[g]) != x) ok = false;
      if (ok) ++fixed;
    }
    out.push_back(fixed);
  }
  return out;
}

}  // namespace opkit::oracle
