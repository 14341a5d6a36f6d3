#include "opkit/enrich/sset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "opkit/error.hpp"

namespace opkit::enrich {

namespace {

bool is_surjection(const std::vector<int>& s, int m) {
  if (s.empty() || s.front() != 0 || s.back() != m) return false;
  for (std::size_t t = 1; t < s.size(); ++t)
    if (s[t] != s[t - 1] && s[t] != s[t - 1] + 1) return false;
  return true;
}

std::vector<int> compose_values(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> r(inner.size());
  for (std::size_t t = 0; t < inner.size(); ++t) r[t] = outer[inner[t]];
  return r;
}

// All order-preserving surjections [n] -> [m], lexicographic.
std::vector<std::vector<int>> surjections(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m > n) return out;
  std::vector<int> cur(n + 1, 0);
  std::function<void(int, int)> rec = [&](int t, int v) {
    if (t == n) {
      if (v == m) out.push_back(cur);
      return;
    }
    // stay
    if (m - v <= n - t - 1) {
      cur[t + 1] = v;
      rec(t + 1, v);
    }
    if (v < m) {
      cur[t + 1] = v + 1;
      rec(t + 1, v + 1);
    }
  };
  cur[0] = 0;
  rec(0, 0);
  return out;
}

}  // namespace

bool Simplex::nondegenerate() const {
  for (std::size_t t = 0; t < surj.size(); ++t)
    if (surj[t] != static_cast<int>(t)) return false;
  return true;
}

std::vector<int> degen_to_surj(const std::vector<int>& degen, int base_dim) {
  int n = base_dim + static_cast<int>(degen.size());
  for (std::size_t k = 0; k + 1 < degen.size(); ++k)
    if (degen[k] <= degen[k + 1]) throw ValidationError("degeneracy word must be strictly decreasing");
  std::set<int> rep(degen.begin(), degen.end());
  for (int i : rep)
    if (i < 0 || i >= n) throw ValidationError("degeneracy index out of range");
  std::vector<int> s(n + 1, 0);
  for (int t = 0; t < n; ++t) s[t + 1] = s[t] + (rep.count(t) ? 0 : 1);
  return s;
}

std::vector<int> surj_to_degen(const std::vector<int>& surj) {
  std::vector<int> d;
  for (int t = static_cast<int>(surj.size()) - 2; t >= 0; --t)
    if (surj[t] == surj[t + 1]) d.push_back(t);
  return d;
}

Simplex SSet::nd(int id, int dim) {
  Simplex s{id, std::vector<int>(dim + 1)};
  std::iota(s.surj.begin(), s.surj.end(), 0);
  return s;
}

int SSet::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int SSet::max_dim() const {
  int m = -1;
  for (int d : dims_) m = std::max(m, d);
  return m;
}

std::vector<int> SSet::nondegenerate(int d) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (dims_[i] == d) out.push_back(i);
  return out;
}

Simplex SSet::face(const Simplex& s, int i) const {
  int n = s.dim();
  if (n < 1 || i < 0 || i > n) throw ValidationError("face index out of range");
  int m = dims_[s.id];
  std::vector<int> c(n);
  for (int t = 0; t < n; ++t) c[t] = s.surj[t < i ? t : t + 1];
  std::vector<char> hit(m + 1, 0);
  for (int v : c) hit[v] = 1;
  int missing = -1;
  for (int v = 0; v <= m; ++v)
    if (!hit[v]) missing = v;
  if (missing < 0) return {s.id, c};
  for (int& v : c)
    if (v > missing) --v;
  const Simplex& f = faces_[s.id][missing];
  return {f.id, compose_values(f.surj, c)};
}

Simplex SSet::degeneracy(const Simplex& s, int i) const {
  int n = s.dim();
  if (i < 0 || i > n) throw ValidationError("degeneracy index out of range");
  std::vector<int> sigma(n + 2);
  for (int t = 0; t <= n + 1; ++t) sigma[t] = t <= i ? t : t - 1;
  return {s.id, compose_values(s.surj, sigma)};
}

Simplex SSet::vertex(const Simplex& s, int k) const {
  Simplex cur = s;
  for (int j = cur.dim(); j > k; --j) cur = face(cur, j);
  for (int j = 0; j < k; ++j) cur = face(cur, 0);
  return cur;
}

int SSet::add(const std::string& name, int dim, const std::vector<Simplex>& faces) {
  if (dim < 0) throw ValidationError("negative dimension");
  if (std::find(names_.begin(), names_.end(), name) != names_.end())
    throw ValidationError("duplicate simplex name '" + name + "'");
  if (static_cast<int>(faces.size()) != (dim == 0 ? 0 : dim + 1))
    throw ValidationError("simplex '" + name + "' needs " + std::to_string(dim + 1) + " faces");
  for (const auto& f : faces) {
    if (f.id < 0 || f.id >= size()) throw ValidationError("face of '" + name + "' references unknown simplex");
    if (f.dim() != dim - 1 || !is_surjection(f.surj, dims_[f.id]))
      throw ValidationError("face of '" + name + "' has wrong dimension");
  }
  for (int j = 1; j <= dim && dim >= 2; ++j)
    for (int i = 0; i < j; ++i)
      if (face(faces[j], i) != face(faces[i], j - 1))
        throw ValidationError("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) +
                              " fails on '" + name + "'");
  names_.push_back(name);
  dims_.push_back(dim);
  faces_.push_back(faces);
  return size() - 1;
}

std::vector<Simplex> SSet::simplices(int n) const {
  std::vector<Simplex> out;
  for (int id = 0; id < size(); ++id)
    for (auto& s : surjections(n, dims_[id])) out.push_back({id, std::move(s)});
  return out;
}

std::string SSet::simplex_name(const Simplex& s) const {
  if (s.nondegenerate()) return names_[s.id];
  std::string r;
  for (int i : surj_to_degen(s.surj)) r += "s" + std::to_string(i);
  return r + "(" + names_[s.id] + ")";
}

Simplex SMap::apply(const Simplex& s) const {
  const Simplex& img = on[s.id];
  return {img.id, compose_values(img.surj, s.surj)};
}

void validate(const SMap& f) {
  if (static_cast<int>(f.on.size()) != f.source.size()) throw ValidationError("simplicial map is not total");
  for (int x = 0; x < f.source.size(); ++x) {
    const Simplex& y = f.on[x];
    if (y.id < 0 || y.id >= f.target.size() || y.dim() != f.source.dim(x) ||
        !is_surjection(y.surj, f.target.dim(y.id)))
      throw ValidationError("image of '" + f.source.name(x) + "' is not a simplex of matching dimension");
  }
  for (int x = 0; x < f.source.size(); ++x) {
    int d = f.source.dim(x);
    if (d == 0) continue;
    for (int i = 0; i <= d; ++i)
      if (f.apply(f.source.face(f.source.nd(x), i)) != f.target.face(f.on[x], i))
        throw ValidationError("map does not commute with d" + std::to_string(i) + " on '" +
                              f.source.name(x) + "'");
  }
}

SMap identity_map(const SSet& x) {
  SMap f{x, x, {}};
  for (int i = 0; i < x.size(); ++i) f.on.push_back(x.nd(i));
  return f;
}

SMap compose(const SMap& g, const SMap& f) {
  SMap r{f.source, g.target, {}};
  for (const auto& s : f.on) r.on.push_back(g.apply(s));
  return r;
}

bool is_isomorphism(const SMap& f) {
  if (f.source.size() != f.target.size()) return false;
  std::vector<char> hit(f.target.size(), 0);
  for (const auto& s : f.on) {
    if (!s.nondegenerate() || hit[s.id]) return false;
    hit[s.id] = 1;
  }
  return true;
}

SimplexIndex::SimplexIndex(const SSet& x, int max_n) {
  for (int n = 0; n <= max_n; ++n) {
    levels_.push_back(x.simplices(n));
    std::map<Simplex, int> idx;
    for (std::size_t i = 0; i < levels_.back().size(); ++i) idx.emplace(levels_.back()[i], static_cast<int>(i));
    index_.push_back(std::move(idx));
  }
}

int SimplexIndex::index(const Simplex& s) const {
  int n = s.dim();
  if (n < 0 || n > max_n()) return -1;
  auto it = index_[n].find(s);
  return it == index_[n].end() ? -1 : it->second;
}

namespace {

// Simplicial complex on vertex set [n] spanned by the subsets accepted by keep.
SSet subset_complex(int n, const std::function<bool(const std::vector<int>&)>& keep) {
  SSet x;
  std::map<std::vector<int>, int> id;
  for (int size = 1; size <= n + 1; ++size) {
    std::vector<std::vector<int>> subsets;
    std::vector<int> mask(n + 1, 0);
    std::fill(mask.begin(), mask.begin() + size, 1);
    do {
      std::vector<int> s;
      for (int v = 0; v <= n; ++v)
        if (mask[v]) s.push_back(v);
      subsets.push_back(s);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    std::sort(subsets.begin(), subsets.end());
    for (const auto& s : subsets) {
      if (!keep(s)) continue;
      std::string name;
      for (int v : s) name += std::to_string(v);
      std::vector<Simplex> faces;
      if (size > 1)
        for (int i = 0; i < size; ++i) {
          auto f = s;
          f.erase(f.begin() + i);
          faces.push_back(SSet::nd(id.at(f), size - 2));
        }
      id[s] = x.add(name, size - 1, faces);
    }
  }
  return x;
}

}  // namespace

SSet point() { return standard_simplex(0); }

SSet standard_simplex(int n) {
  return subset_complex(n, [](const std::vector<int>&) { return true; });
}

SSet boundary(int n) {
  return subset_complex(n, [n](const std::vector<int>& s) { return static_cast<int>(s.size()) <= n; });
}

SSet horn(int n, int k) {
  if (k < 0 || k > n) throw ValidationError("horn index out of range");
  return subset_complex(n, [n, k](const std::vector<int>& s) {
    if (static_cast<int>(s.size()) == n + 1) return false;
    if (static_cast<int>(s.size()) == n && std::find(s.begin(), s.end(), k) == s.end()) return false;
    return true;
  });
}

SMap inclusion_into_simplex(const SSet& sub, int n) {
  SSet full = standard_simplex(n);
  SMap f{sub, full, {}};
  for (int i = 0; i < sub.size(); ++i) {
    int j = full.find(sub.name(i));
    if (j < 0) throw ValidationError("simplex '" + sub.name(i) + "' not in the standard simplex");
    f.on.push_back(full.nd(j));
  }
  validate(f);
  return f;
}

SSet discrete(const FinSet& s) {
  SSet x;
  for (const auto& e : s.elements()) x.add_vertex(e);
  return x;
}

SSet coproduct(const SSet& x, const SSet& y) {
  SSet r;
  for (int i = 0; i < x.size(); ++i) r.add("0:" + x.name(i), x.dim(i), x.faces_of(i));
  int off = x.size();
  for (int i = 0; i < y.size(); ++i) {
    auto faces = y.faces_of(i);
    for (auto& f : faces) f.id += off;
    r.add("1:" + y.name(i), y.dim(i), faces);
  }
  return r;
}

Product product(const SSet& x, const SSet& y, int bound) {
  Product p;
  std::map<std::pair<Simplex, Simplex>, int> id;
  int top = std::min(bound, std::max(0, x.max_dim()) + std::max(0, y.max_dim()));
  std::vector<Simplex> first, second;
  for (int n = 0; n <= top; ++n) {
    auto xs = x.simplices(n);
    auto ys = y.simplices(n);
    for (const auto& a : xs)
      for (const auto& b : ys) {
        bool degenerate = false;
        for (int t = 0; t < n && !degenerate; ++t)
          degenerate = a.surj[t] == a.surj[t + 1] && b.surj[t] == b.surj[t + 1];
        if (degenerate) continue;
        std::vector<Simplex> faces;
        for (int i = 0; i <= n && n > 0; ++i) {
          Simplex fa = x.face(a, i), fb = y.face(b, i);
          // Factor out the common degeneracies of the pair.
          std::vector<int> gamma(n, 0);
          for (int t = 1; t < n; ++t)
            gamma[t] = gamma[t - 1] +
                       ((fa.surj[t] == fa.surj[t - 1] && fb.surj[t] == fb.surj[t - 1]) ? 0 : 1);
          int k = gamma.back();
          Simplex ra{fa.id, std::vector<int>(k + 1)}, rb{fb.id, std::vector<int>(k + 1)};
          for (int t = 0; t < n; ++t) {
            ra.surj[gamma[t]] = fa.surj[t];
            rb.surj[gamma[t]] = fb.surj[t];
          }
          faces.push_back({id.at({ra, rb}), gamma});
        }
        int nid = p.object.add("(" + x.simplex_name(a) + "," + y.simplex_name(b) + ")", n, faces);
        id[{a, b}] = nid;
        first.push_back(a);
        second.push_back(b);
      }
  }
  p.first = {p.object, x, first};
  p.second = {p.object, y, second};
  return p;
}

SMap map_to_point(const SSet& x) {
  SMap f{x, point(), {}};
  for (int i = 0; i < x.size(); ++i) f.on.push_back({0, std::vector<int>(x.dim(i) + 1, 0)});
  return f;
}

SSet nerve(const CategoryTable& c, int bound) {
  SSet x;
  // Key: (start object, string of non-identity morphisms).
  std::map<std::pair<int, std::vector<int>>, int> id;
  auto is_identity = [&](int f) {
    return std::find(c.identities.begin(), c.identities.end(), f) != c.identities.end();
  };
  auto mname = [&](int f) {
    return f < static_cast<int>(c.morphism_names.size()) ? c.morphism_names[f] : "m" + std::to_string(f);
  };
  // Simplex of a (possibly degenerate) string.
  auto lookup = [&](int start, const std::vector<int>& str) -> Simplex {
    std::vector<int> nd;
    std::vector<int> surj(str.size() + 1, 0);
    for (std::size_t t = 0; t < str.size(); ++t) {
      bool idm = is_identity(str[t]);
      surj[t + 1] = surj[t] + (idm ? 0 : 1);
      if (!idm) nd.push_back(str[t]);
    }
    return {id.at({start, nd}), surj};
  };
  for (int o = 0; o < c.objects; ++o) id[{o, {}}] = x.add_vertex("o" + std::to_string(o));
  std::vector<std::pair<int, std::vector<int>>> prev;
  for (int o = 0; o < c.objects; ++o) prev.push_back({o, {}});
  for (int n = 1; n <= bound; ++n) {
    std::vector<std::pair<int, std::vector<int>>> cur;
    for (const auto& [start, str] : prev) {
      int end = str.empty() ? start : c.morphisms[str.back()].second;
      for (int f = 0; f < static_cast<int>(c.morphisms.size()); ++f) {
        if (is_identity(f) || c.morphisms[f].first != end) continue;
        auto s = str;
        s.push_back(f);
        std::vector<Simplex> faces;
        for (int i = 0; i <= n; ++i) {
          if (i == 0) {
            std::vector<int> rest(s.begin() + 1, s.end());
            faces.push_back(lookup(c.morphisms[s[0]].second, rest));
          } else if (i == n) {
            std::vector<int> rest(s.begin(), s.end() - 1);
            faces.push_back(lookup(start, rest));
          } else {
            std::vector<int> rest;
            for (int t = 0; t < n; ++t) {
              if (t == i - 1) {
                rest.push_back(c.compose[s[i]][s[i - 1]]);
                ++t;
              } else {
                rest.push_back(s[t]);
              }
            }
            faces.push_back(lookup(start, rest));
          }
        }
        std::string name;
        for (std::size_t t = 0; t < s.size(); ++t) name += (t ? "|" : "") + mname(s[t]);
        id[{start, s}] = x.add(name, n, faces);
        cur.push_back({start, s});
      }
    }
    prev = std::move(cur);
  }
  return x;
}

CategoryTable codiscrete_groupoid(int objects) {
  CategoryTable c;
  c.objects = objects;
  std::map<std::pair<int, int>, int> mid;
  for (int a = 0; a < objects; ++a)
    for (int b = 0; b < objects; ++b) {
      mid[{a, b}] = static_cast<int>(c.morphisms.size());
      c.morphisms.push_back({a, b});
      c.morphism_names.push_back(std::to_string(a) + std::to_string(b));
    }
  for (int a = 0; a < objects; ++a) c.identities.push_back(mid[{a, a}]);
  int m = static_cast<int>(c.morphisms.size());
  c.compose.assign(m, std::vector<int>(m, -1));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      if (c.morphisms[g].second == c.morphisms[f].first)
        c.compose[f][g] = mid[{c.morphisms[g].first, c.morphisms[f].second}];
  return c;
}

}  // namespace opkit::enrich
