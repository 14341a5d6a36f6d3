#include "opkit/enrich/oracles.hpp"

#include <map>
#include <numeric>
#include <set>

#include "opkit/enrich/homology.hpp"
#include "opkit/error.hpp"

namespace opkit::enrich {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "inconclusive";
  }
}

bool enumerate_smaps(const SSet& x, const SSet& y, const std::vector<std::optional<Simplex>>& fixed,
                     const std::function<bool(const SMap&)>& visit, SearchBudget& budget) {
  int top = std::max(0, x.max_dim());
  std::vector<std::vector<Simplex>> levels;
  for (int n = 0; n <= top; ++n) levels.push_back(y.simplices(n));
  SMap f{x, y, std::vector<Simplex>(x.size())};
  bool stopped = false;
  std::function<void(int)> rec = [&](int id) {
    if (stopped) return;
    if (id == x.size()) {
      if (!visit(f)) stopped = true;
      return;
    }
    int n = x.dim(id);
    auto fits = [&](const Simplex& cand) {
      for (int i = 0; i <= n && n > 0; ++i)
        if (y.face(cand, i) != f.apply(x.faces_of(id)[i])) return false;
      return true;
    };
    if (id < static_cast<int>(fixed.size()) && fixed[id]) {
      if (!budget.spend()) {
        stopped = true;
        return;
      }
      if (fits(*fixed[id])) {
        f.on[id] = *fixed[id];
        rec(id + 1);
      }
      return;
    }
    for (const auto& cand : levels[n]) {
      if (!budget.spend()) {
        stopped = true;
        return;
      }
      if (!fits(cand)) continue;
      f.on[id] = cand;
      rec(id + 1);
      if (stopped) return;
    }
  };
  rec(0);
  return !stopped;
}

std::vector<int> components(const SSet& x, int* count) {
  std::vector<int> parent(x.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int e = 0; e < x.size(); ++e) {
    if (x.dim(e) != 1) continue;
    int a = find(x.vertex(x.nd(e), 0).id), b = find(x.vertex(x.nd(e), 1).id);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> comp(x.size(), -1), label(x.size(), -1);
  int k = 0;
  for (int v = 0; v < x.size(); ++v) {
    if (x.dim(v) != 0) continue;
    int r = find(v);
    if (label[r] < 0) label[r] = k++;
    comp[v] = label[r];
  }
  if (count) *count = k;
  return comp;
}

std::vector<int> pi0_map(const SMap& f) {
  int ns = 0, nt = 0;
  auto cs = components(f.source, &ns);
  auto ct = components(f.target, &nt);
  std::vector<int> out(ns, -1);
  for (int v = 0; v < f.source.size(); ++v)
    if (f.source.dim(v) == 0) out[cs[v]] = ct[f.on[v].id];
  return out;
}

KanResult kan_fibration_check(const SMap& f, int bound) {
  if (bound < 1) throw ValidationError("Kan check needs dimension bound >= 1");
  const SSet& x = f.source;
  const SSet& y = f.target;
  SimplexIndex ix(x, bound), iy(y, bound);
  for (int n = 1; n <= bound; ++n) {
    const auto& xl = ix.level(n - 1);
    const auto& xn = ix.level(n);
    const auto& yn = iy.level(n);
    for (int k = 0; k <= n; ++k) {
      // Fillable (horn faces, image) pairs and targets grouped by their horn.
      std::set<std::pair<std::vector<int>, int>> fillable;
      for (const auto& z : xn) {
        std::vector<int> key;
        for (int i = 0; i <= n; ++i)
          if (i != k) key.push_back(ix.index(x.face(z, i)));
        fillable.insert({key, iy.index(f.apply(z))});
      }
      std::map<std::vector<int>, std::vector<int>> targets;
      for (std::size_t yi = 0; yi < yn.size(); ++yi) {
        std::vector<int> key;
        for (int i = 0; i <= n; ++i)
          if (i != k) key.push_back(iy.index(y.face(yn[yi], i)));
        targets[key].push_back(static_cast<int>(yi));
      }
      std::vector<int> horn(n + 1, -1);
      KanResult failure;
      std::function<bool(int)> rec = [&](int i) -> bool {
        if (i > n) {
          std::vector<int> key, img;
          for (int j = 0; j <= n; ++j)
            if (j != k) {
              key.push_back(horn[j]);
              img.push_back(iy.index(f.apply(xl[horn[j]])));
            }
          auto it = targets.find(img);
          if (it == targets.end()) return true;
          for (int yi : it->second)
            if (!fillable.count({key, yi})) {
              failure.ok = false;
              failure.witness = "Lambda^" + std::to_string(n) + "_" + std::to_string(k) + " faces";
              for (int j = 0; j <= n; ++j)
                if (j != k) failure.witness += " " + x.simplex_name(xl[horn[j]]);
              failure.witness += " over " + y.simplex_name(yn[yi]);
              return false;
            }
          return true;
        }
        if (i == k) return rec(i + 1);
        for (std::size_t c = 0; c < xl.size(); ++c) {
          bool ok = true;
          // d_j x_i = d_{i-1} x_j for assigned j < i.
          for (int j = 0; j < i && ok && n >= 2; ++j) {
            if (j == k) continue;
            ok = x.face(xl[c], j) == x.face(xl[horn[j]], i - 1);
          }
          if (!ok) continue;
          horn[i] = static_cast<int>(c);
          if (!rec(i + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) return failure;
    }
  }
  return {};
}

std::optional<SMap> find_homotopy(const SMap& a, const SMap& b, SearchBudget& budget) {
  const SSet& x = a.source;
  SSet interval = standard_simplex(1);
  Product p = product(x, interval, std::max(0, x.max_dim()) + 1);
  int v0 = interval.find("0"), v1 = interval.find("1");
  std::vector<std::optional<Simplex>> fixed(p.object.size());
  for (int s = 0; s < p.object.size(); ++s) {
    const Simplex& t = p.second.on[s];
    if (t.id == v0) fixed[s] = a.apply(p.first.on[s]);
    if (t.id == v1) fixed[s] = b.apply(p.first.on[s]);
  }
  std::optional<SMap> found;
  enumerate_smaps(p.object, a.target, fixed,
                  [&](const SMap& h) {
                    found = h;
                    return false;
                  },
                  budget);
  return found;
}

namespace {

// Greedy elementary collapses of the nondegenerate simplices outside keep.
bool collapses_onto(const SSet& y, std::vector<bool> keep) {
  int n = y.size();
  std::vector<bool> alive(n, true);
  int left = 0;
  for (int i = 0; i < n; ++i)
    if (!keep[i]) ++left;
  bool progress = true;
  while (left > 0 && progress) {
    progress = false;
    std::vector<int> uses(n, 0);
    for (int r = 0; r < n; ++r)
      if (alive[r])
        for (const auto& f : y.faces_of(r)) ++uses[f.id];
    for (int s = 0; s < n && !progress; ++s) {
      if (!alive[s] || keep[s] || uses[s] != 0 || y.dim(s) == 0) continue;
      for (const auto& f : y.faces_of(s)) {
        if (!f.nondegenerate() || keep[f.id] || uses[f.id] != 1) continue;
        alive[s] = alive[f.id] = false;
        left -= 2;
        progress = true;
        break;
      }
    }
  }
  return left == 0;
}

std::vector<bool> one_vertex_per_component(const SSet& x) {
  int nc = 0;
  auto comp = components(x, &nc);
  std::vector<bool> keep(x.size(), false), seen(nc, false);
  for (int v : x.nondegenerate(0))
    if (!seen[comp[v]]) {
      seen[comp[v]] = true;
      keep[v] = true;
    }
  return keep;
}

}  // namespace

WeqResult weq_oracle(const SMap& f, int bound, long budget) {
  if (is_isomorphism(f)) return {Verdict::Yes, "isomorphism"};
  int ns = 0, nt = 0;
  components(f.source, &ns);
  components(f.target, &nt);
  auto pm = pi0_map(f);
  std::set<int> hit(pm.begin(), pm.end());
  if (ns != nt || static_cast<int>(hit.size()) != nt)
    return {Verdict::No, "pi_0 not bijective (" + std::to_string(ns) + " vs " + std::to_string(nt) + ")"};
  auto cone = cone_homology(f, bound);
  for (std::size_t k = 0; k < cone.size(); ++k)
    if (!cone[k].zero()) return {Verdict::No, "mapping cone has H_" + std::to_string(k) + " != 0"};

  bool mono = true;
  std::vector<bool> image(f.target.size(), false);
  for (const auto& s : f.on) {
    if (!s.nondegenerate() || image[s.id]) mono = false;
    if (s.nondegenerate()) image[s.id] = true;
  }
  if (mono && collapses_onto(f.target, image)) return {Verdict::Yes, "target collapses onto the image"};
  if (collapses_onto(f.source, one_vertex_per_component(f.source)) &&
      collapses_onto(f.target, one_vertex_per_component(f.target)))
    return {Verdict::Yes, "source and target collapse to their components"};

  SearchBudget b{budget};
  const SSet& x = f.source;
  const SSet& y = f.target;
  // Section g with f g = id and a homotopy between id_X and g f.
  std::optional<SMap> witness;
  bool go = true;
  enumerate_smaps(y, x, {},
                  [&](const SMap& g) {
                    if (compose(f, g) != identity_map(y)) return true;
                    SMap gf = compose(g, f);
                    SMap id = identity_map(x);
                    if (find_homotopy(id, gf, b) || find_homotopy(gf, id, b)) {
                      witness = g;
                      go = false;
                    }
                    return go;
                  },
                  b);
  if (witness) return {Verdict::Yes, "deformation retraction onto a section"};
  // Retraction r with r f = id and a homotopy between id_Y and f r.
  enumerate_smaps(y, x, {},
                  [&](const SMap& r) {
                    if (compose(r, f) != identity_map(x)) return true;
                    SMap fr = compose(f, r);
                    SMap id = identity_map(y);
                    if (find_homotopy(id, fr, b) || find_homotopy(fr, id, b)) {
                      witness = r;
                      return false;
                    }
                    return true;
                  },
                  b);
  if (witness) return {Verdict::Yes, "deformation retraction onto the image"};
  return {Verdict::Inconclusive, b.exhausted ? "certificate search budget exhausted" : "no certificate found"};
}

}  // namespace opkit::enrich
