#include "opkit/multicat/multicategory.hpp"

#include <algorithm>
#include <sstream>

#include "opkit/error.hpp"

namespace opkit {

using enrich::Simplex;

bool CompKey::operator<(const CompKey& o) const {
  if (!(outer == o.outer)) return outer < o.outer;
  if (slot != o.slot) return slot < o.slot;
  return inner < o.inner;
}

Signature composite_signature(const Signature& outer, int slot, const Signature& inner) {
  if (slot < 0 || slot >= outer.arity()) throw SignatureError("slot out of range");
  if (outer.inputs[slot] != inner.output) throw SignatureError("output color does not match the input slot");
  Signature r{{}, outer.output};
  for (int t = 0; t < outer.arity(); ++t) {
    if (t == slot)
      r.inputs.insert(r.inputs.end(), inner.inputs.begin(), inner.inputs.end());
    else
      r.inputs.push_back(outer.inputs[t]);
  }
  return r;
}

std::vector<std::vector<Simplex>> level_simplices(const SSet& x, int dim_bound) {
  std::vector<std::vector<Simplex>> out;
  for (int n = 0; n <= dim_bound; ++n) out.push_back(x.simplices(n));
  return out;
}

Multicategory::Multicategory(MultiData d, Unchecked) : d_(std::move(d)) { index(); }

Multicategory::Multicategory(MultiData d) : d_(std::move(d)) {
  auto report = validate(d_, 5);
  if (!report.ok) {
    std::string msg = "invalid multicategory";
    for (const auto& f : report.failures) msg += "; " + f;
    throw ValidationError(msg);
  }
  index();
}

MultiPtr make_multi(MultiData d) { return std::make_shared<const Multicategory>(std::move(d)); }

void Multicategory::index() {
  sigs_.clear();
  ids_.clear();
  for (const auto& [s, v] : d_.entries)
    if (!enrich::is_empty(v)) {
      ids_[s] = static_cast<int>(sigs_.size());
      sigs_.push_back(s);
    }
  int ns = num_sigs(), nl = levels();
  sizes_.assign(nl, std::vector<int>(ns, 0));
  simplices_.assign(ns, {});
  simplex_ids_.assign(ns, {});
  for (int id = 0; id < ns; ++id) {
    const EnrichValue& v = d_.entries.at(sigs_[id]);
    if (auto* f = std::get_if<FinSet>(&v)) {
      sizes_[0][id] = static_cast<int>(f->size());
    } else {
      simplices_[id] = level_simplices(std::get<SSet>(v), d_.dim_bound);
      simplex_ids_[id].resize(nl);
      for (int n = 0; n < nl; ++n) {
        sizes_[n][id] = static_cast<int>(simplices_[id][n].size());
        for (int x = 0; x < sizes_[n][id]; ++x) simplex_ids_[id][n][simplices_[id][n][x]] = x;
      }
    }
  }
  comp_.clear();
  for (const auto& [key, table] : d_.comp) {
    int o = sig_id(key.outer), i = sig_id(key.inner);
    if (o < 0 || i < 0) continue;
    int r = -1;
    try {
      r = sig_id(composite_signature(key.outer, key.slot, key.inner));
    } catch (const SignatureError&) {
      continue;
    }
    comp_[{o, key.slot, i}] = CompEntry{r, &table};
  }
  sigma_.assign(ns, {});
  if (d_.symmetric) {
    for (int id = 0; id < ns; ++id) {
      const auto& perms = all_perms(sigs_[id].arity());
      sigma_[id].assign(perms.size(), {-1, nullptr});
      for (std::size_t p = 0; p < perms.size(); ++p) {
        auto it = d_.sigma.find({sigs_[id], static_cast<int>(p)});
        if (it == d_.sigma.end()) continue;
        sigma_[id][p] = {sig_id(opkit::act(sigs_[id], perms[p])), &it->second};
      }
    }
  }
}

int Multicategory::sig_id(const Signature& s) const {
  auto it = ids_.find(s);
  return it == ids_.end() ? -1 : it->second;
}

EnrichValue Multicategory::entry(const Signature& s) const {
  auto it = d_.entries.find(s);
  if (it == d_.entries.end()) return enrich::initial(d_.backend);
  return it->second;
}

std::string Multicategory::element_name(int sig, int x, int level) const {
  const EnrichValue& v = d_.entries.at(sigs_[sig]);
  if (auto* f = std::get_if<FinSet>(&v)) return (*f)[x];
  return std::get<SSet>(v).simplex_name(simplices_[sig][level][x]);
}

int Multicategory::element_index(int sig, const std::string& name, int level) const {
  for (int x = 0; x < size(sig, level); ++x)
    if (element_name(sig, x, level) == name) return x;
  return -1;
}

int Multicategory::compose(int outer, int slot, int inner, int a, int b, int level, int* result) const {
  auto it = comp_.find({outer, slot, inner});
  if (it == comp_.end()) {
    if (result) *result = -1;
    return -1;
  }
  if (result) *result = it->second.result;
  const auto& t = (*it->second.table)[level];
  return t[static_cast<std::size_t>(a) * size(inner, level) + b];
}

int Multicategory::act(int sig, const Perm& s, int a, int level, int* result) const {
  if (!d_.symmetric) throw NotApplicable("action on a non-symmetric multicategory");
  const auto& e = sigma_[sig][perm_index(s)];
  if (result) *result = e.first;
  if (!e.second) return -1;
  return (*e.second)[level][a];
}

int Multicategory::unit_sig(int object) const { return sig_id(unary(object, object)); }

int Multicategory::unit(int object, int level) const {
  if (d_.backend == Backend::FinSet) return d_.units[object];
  int sig = unit_sig(object);
  Simplex s{d_.units[object], std::vector<int>(level + 1, 0)};
  return simplex_ids_[sig][level].at(s);
}

int Multicategory::face(int sig, int level, int x, int i) const {
  const SSet& e = std::get<SSet>(d_.entries.at(sigs_[sig]));
  return simplex_ids_[sig][level - 1].at(e.face(simplices_[sig][level][x], i));
}

int Multicategory::degeneracy(int sig, int level, int x, int i) const {
  const SSet& e = std::get<SSet>(d_.entries.at(sigs_[sig]));
  return simplex_ids_[sig][level + 1].at(e.degeneracy(simplices_[sig][level][x], i));
}

Simplex Multicategory::simplex(int sig, int level, int x) const {
  if (d_.backend == Backend::FinSet) return Simplex{x, {0}};
  return simplices_[sig][level][x];
}

int Multicategory::simplex_index(int sig, const Simplex& s) const {
  if (d_.backend == Backend::FinSet) return s.id;
  return simplex_ids_[sig][s.dim()].at(s);
}

namespace {

struct Checker {
  ValidationReport& r;
  int max_failures;
  std::map<std::string, long> counts;
  void pass(const std::string& axiom) {
    ++r.checked;
    ++counts[axiom];
  }
  void fail(const std::string& axiom, const std::string& where) {
    ++r.checked;
    ++counts[axiom];
    r.ok = false;
    if (static_cast<int>(r.failures.size()) < max_failures) r.failures.push_back(axiom + " fails at " + where);
  }
  void check(bool ok, const std::string& axiom, const std::function<std::string()>& where) {
    if (ok)
      pass(axiom);
    else
      fail(axiom, where());
  }
};

}  // namespace

ValidationReport validate(const MultiData& d, int max_failures) {
  ValidationReport r;
  Checker c{r, max_failures, {}};
  auto structural = [&](const std::string& msg) { c.fail("structure", msg); };
  int nobj = static_cast<int>(d.objects.size());
  int nl = d.dim_bound + 1;
  if (d.backend == Backend::FinSet && d.dim_bound != 0) structural("finite-set entries need dim_bound 0");
  if (d.dim_bound < 0) structural("negative dim_bound");
  if (static_cast<int>(d.units.size()) != nobj) structural("one unit per object required");
  for (const auto& [s, v] : d.entries) {
    if (enrich::backend_of(v) != d.backend) structural("entry from another backend");
    if (s.output < 0 || s.output >= nobj) structural("signature output out of range");
    for (int x : s.inputs)
      if (x < 0 || x >= nobj) structural("signature input out of range");
    if (s.arity() > d.arity_bound) structural("entry above the arity bound");
  }
  if (!r.ok) return r;
  Multicategory m(d, Multicategory::Unchecked{});
  auto key = [&](int sig) { return signature_key(m.sig(sig), d.objects); };
  auto el = [&](int sig, int x, int lv) {
    std::string s = key(sig) + ":" + m.element_name(sig, x, lv);
    if (nl > 1) s += "@" + std::to_string(lv);
    return s;
  };
  // Units.
  for (int x = 0; x < nobj; ++x) {
    int us = m.unit_sig(x);
    if (us < 0) {
      structural("no unit for object " + d.objects[x]);
      continue;
    }
    int u = d.units[x];
    if (d.backend == Backend::FinSet) {
      if (u < 0 || u >= m.size(us)) structural("unit out of range for " + d.objects[x]);
    } else {
      const SSet& e = std::get<SSet>(d.entries.at(unary(x, x)));
      if (u < 0 || u >= e.size() || e.dim(u) != 0) structural("unit of " + d.objects[x] + " is not a vertex");
    }
  }
  // Tables present and in range.
  if (!d.symmetric && !d.sigma.empty()) structural("action data on a non-symmetric multicategory");
  if (d.symmetric) {
    for (int s = 0; s < m.num_sigs(); ++s) {
      const auto& perms = all_perms(m.sig(s).arity());
      for (std::size_t p = 0; p < perms.size(); ++p) {
        auto it = d.sigma.find({m.sig(s), static_cast<int>(p)});
        int t = m.sig_id(act(m.sig(s), perms[p]));
        std::string where = key(s) + " by " + perm_to_string(perms[p]);
        if (it == d.sigma.end() || t < 0 || static_cast<int>(it->second.size()) != nl) {
          structural("missing action table at " + where);
          continue;
        }
        for (int lv = 0; lv < nl; ++lv) {
          const auto& tab = it->second[lv];
          if (static_cast<int>(tab.size()) != m.size(s, lv) || m.size(t, lv) != m.size(s, lv)) {
            structural("action table of the wrong size at " + where);
            continue;
          }
          std::vector<char> hit(tab.size(), 0);
          for (int y : tab) {
            if (y < 0 || y >= m.size(t, lv) || hit[y]) {
              structural("action is not a bijection at " + where);
              break;
            }
            hit[y] = 1;
          }
        }
      }
    }
  }
  for (const auto& [k, tab] : d.comp) {
    int o = m.sig_id(k.outer), i = m.sig_id(k.inner);
    if (o < 0 || i < 0) {
      structural("composition table for an empty signature");
      continue;
    }
    if (k.slot < 0 || k.slot >= k.outer.arity() || k.outer.inputs[k.slot] != k.inner.output) {
      structural("composition table with mismatched colors");
      continue;
    }
  }
  for (int o = 0; o < m.num_sigs(); ++o)
    for (int slot = 0; slot < m.sig(o).arity(); ++slot)
      for (int i = 0; i < m.num_sigs(); ++i) {
        if (m.sig(i).output != m.sig(o).inputs[slot]) continue;
        if (m.sig(o).arity() - 1 + m.sig(i).arity() > d.arity_bound) continue;
        std::string where = key(o) + " o_" + std::to_string(slot + 1) + " " + key(i);
        auto it = d.comp.find(CompKey{m.sig(o), slot, m.sig(i)});
        if (it == d.comp.end() || static_cast<int>(it->second.size()) != nl) {
          structural("missing composition table " + where);
          continue;
        }
        int res = m.sig_id(composite_signature(m.sig(o), slot, m.sig(i)));
        for (int lv = 0; lv < nl; ++lv) {
          const auto& t = it->second[lv];
          if (t.size() != static_cast<std::size_t>(m.size(o, lv)) * m.size(i, lv)) {
            structural("composition table of the wrong size " + where);
            break;
          }
          for (int v : t) {
            if (v == -1 && d.partial) continue;
            if (res < 0 || v < 0 || v >= m.size(res, lv)) {
              structural("composite out of range " + where);
              break;
            }
          }
        }
      }
  if (!r.ok) return r;

  auto comp = [&](int o, int slot, int i, int a, int b, int lv, int* res) { return m.compose(o, slot, i, a, b, lv, res); };
  for (int lv = 0; lv < nl; ++lv) {
    // Unit laws.
    for (int o = 0; o < m.num_sigs(); ++o) {
      const Signature& so = m.sig(o);
      for (int a = 0; a < m.size(o, lv); ++a) {
        for (int slot = 0; slot < so.arity(); ++slot) {
          int col = so.inputs[slot];
          int us = m.unit_sig(col);
          int v = comp(o, slot, us, a, m.unit(col, lv), lv, nullptr);
          c.check(v == a, "right unit", [&] { return el(o, a, lv) + " o_" + std::to_string(slot + 1) + " 1"; });
        }
        int us = m.unit_sig(so.output);
        if (so.arity() <= d.arity_bound) {
          int v = comp(us, 0, o, m.unit(so.output, lv), a, lv, nullptr);
          c.check(v == a, "left unit", [&] { return "1 o_1 " + el(o, a, lv); });
        }
      }
    }
    // Associativity.
    for (int o = 0; o < m.num_sigs(); ++o) {
      const Signature& so = m.sig(o);
      int n = so.arity();
      for (int i = 0; i < n; ++i)
        for (int p = 0; p < m.num_sigs(); ++p) {
          const Signature& sp = m.sig(p);
          if (sp.output != so.inputs[i]) continue;
          int mm = sp.arity();
          if (n - 1 + mm > d.arity_bound) continue;
          for (int q = 0; q < m.num_sigs(); ++q) {
            const Signature& sq = m.sig(q);
            int k = sq.arity();
            if (n + mm + k - 2 > d.arity_bound) continue;
            // Nested: (a o_i b) o_{i+j} c = a o_i (b o_j c).
            for (int j = 0; j < mm; ++j) {
              if (sq.output != sp.inputs[j]) continue;
              if (mm - 1 + k > d.arity_bound) continue;
              for (int a = 0; a < m.size(o, lv); ++a)
                for (int b = 0; b < m.size(p, lv); ++b)
                  for (int cc = 0; cc < m.size(q, lv); ++cc) {
                    int r1, r2;
                    int ab = comp(o, i, p, a, b, lv, &r1);
                    int bc = comp(p, j, q, b, cc, lv, &r2);
                    if (ab < 0 || bc < 0) continue;
                    int lhs = comp(r1, i + j, q, ab, cc, lv, nullptr);
                    int rhs = comp(o, i, r2, a, bc, lv, nullptr);
                    if (lhs < 0 && rhs < 0) continue;
                    c.check(lhs == rhs, "associativity (nested)", [&] {
                      return "(" + el(o, a, lv) + " o_" + std::to_string(i + 1) + " " + el(p, b, lv) + ") o_" +
                             std::to_string(i + j + 1) + " " + el(q, cc, lv);
                    });
                  }
            }
            // Parallel: (a o_t c) o_i b = (a o_i b) o_{t+m-1} c for i < t.
            for (int t = i + 1; t < n; ++t) {
              if (sq.output != so.inputs[t]) continue;
              if (n - 1 + k > d.arity_bound) continue;
              for (int a = 0; a < m.size(o, lv); ++a)
                for (int b = 0; b < m.size(p, lv); ++b)
                  for (int cc = 0; cc < m.size(q, lv); ++cc) {
                    int r1, r2;
                    int ac = comp(o, t, q, a, cc, lv, &r1);
                    int ab = comp(o, i, p, a, b, lv, &r2);
                    if (ac < 0 || ab < 0) continue;
                    int lhs = comp(r1, i, p, ac, b, lv, nullptr);
                    int rhs = comp(r2, t + mm - 1, q, ab, cc, lv, nullptr);
                    if (lhs < 0 && rhs < 0) continue;
                    c.check(lhs == rhs, "associativity (parallel)", [&] {
                      return "(" + el(o, a, lv) + " o_" + std::to_string(t + 1) + " " + el(q, cc, lv) + ") o_" +
                             std::to_string(i + 1) + " " + el(p, b, lv);
                    });
                  }
            }
          }
        }
    }
    if (!d.symmetric) continue;
    // Action laws.
    for (int s = 0; s < m.num_sigs(); ++s) {
      const Signature& ss = m.sig(s);
      const auto& perms = all_perms(ss.arity());
      for (int a = 0; a < m.size(s, lv); ++a) {
        c.check(m.act(s, perms[0], a, lv) == a, "identity action", [&] { return el(s, a, lv); });
        for (const auto& pi : perms)
          for (const auto& t : adjacent_transpositions(ss.arity())) {
            int r1;
            int x = m.act(s, pi, a, lv, &r1);
            int lhs = m.act(s, opkit::compose(pi, t), a, lv);
            int rhs = m.act(r1, t, x, lv);
            c.check(lhs == rhs, "(st)* = t* s*", [&] {
              return el(s, a, lv) + " s=" + perm_to_string(pi) + " t=" + perm_to_string(t);
            });
          }
      }
    }
    // Equivariance of composition.
    for (int o = 0; o < m.num_sigs(); ++o) {
      const Signature& so = m.sig(o);
      int n = so.arity();
      const auto& perms = all_perms(n);
      for (int p = 0; p < m.num_sigs(); ++p) {
        const Signature& sp = m.sig(p);
        int k = sp.arity();
        if (n - 1 + k > d.arity_bound) continue;
        for (const auto& pi : perms) {
          Signature spi = act(so, pi);
          for (int i = 0; i < n; ++i) {
            // (a . pi) o_i b = (a o_{pi(i)} b) . rho
            if (spi.inputs[i] != sp.output) continue;
            std::vector<int> sizes(n, 1);
            sizes[pi[i]] = k;
            Perm rho = block_perm(pi, sizes);
            for (int a = 0; a < m.size(o, lv); ++a)
              for (int b = 0; b < m.size(p, lv); ++b) {
                int r1, r2;
                int ap = m.act(o, pi, a, lv, &r1);
                int lhs = comp(r1, i, p, ap, b, lv, nullptr);
                int ab = comp(o, pi[i], p, a, b, lv, &r2);
                if (lhs < 0 && ab < 0) continue;
                int rhs = ab < 0 ? -1 : m.act(r2, rho, ab, lv);
                c.check(lhs == rhs, "equivariance (outer)", [&] {
                  return "(" + el(o, a, lv) + " . " + perm_to_string(pi) + ") o_" + std::to_string(i + 1) + " " +
                         el(p, b, lv);
                });
              }
          }
        }
        for (int i = 0; i < n; ++i) {
          if (so.inputs[i] != sp.output) continue;
          for (const auto& alpha : all_perms(k)) {
            std::vector<Perm> blocks;
            for (int t = 0; t < n; ++t) blocks.push_back(t == i ? alpha : identity_perm(1));
            Perm shifted = block_sum(blocks);
            for (int a = 0; a < m.size(o, lv); ++a)
              for (int b = 0; b < m.size(p, lv); ++b) {
                int r1, r2;
                int ba = m.act(p, alpha, b, lv, &r1);
                int lhs = comp(o, i, r1, a, ba, lv, nullptr);
                int ab = comp(o, i, p, a, b, lv, &r2);
                if (lhs < 0 && ab < 0) continue;
                int rhs = ab < 0 ? -1 : m.act(r2, shifted, ab, lv);
                c.check(lhs == rhs, "equivariance (inner)", [&] {
                  return el(o, a, lv) + " o_" + std::to_string(i + 1) + " (" + el(p, b, lv) + " . " +
                         perm_to_string(alpha) + ")";
                });
              }
          }
        }
      }
    }
  }
  // Compatibility with faces and degeneracies.
  if (d.backend == Backend::FinSSet) {
    for (int lv = 1; lv < nl; ++lv) {
      for (int s = 0; s < m.num_sigs(); ++s)
        if (s == m.unit_sig(m.sig(s).output) && m.sig(s).inputs[0] == m.sig(s).output) {
          int x = m.sig(s).output;
          for (int i = 0; i <= lv; ++i)
            c.check(m.face(s, lv, m.unit(x, lv), i) == m.unit(x, lv - 1), "simplicial unit",
                    [&] { return d.objects[x]; });
        }
      for (const auto& [k, tab] : d.comp) {
        int o = m.sig_id(k.outer), i = m.sig_id(k.inner);
        int res = m.sig_id(composite_signature(k.outer, k.slot, k.inner));
        for (int a = 0; a < m.size(o, lv); ++a)
          for (int b = 0; b < m.size(i, lv); ++b) {
            int v = m.compose(o, k.slot, i, a, b, lv);
            for (int f = 0; f <= lv; ++f) {
              int lhs = v < 0 ? -1 : m.face(res, lv, v, f);
              int rhs = m.compose(o, k.slot, i, m.face(o, lv, a, f), m.face(i, lv, b, f), lv - 1);
              c.check(lhs == rhs, "composition commutes with faces", [&] {
                return el(o, a, lv) + " o_" + std::to_string(k.slot + 1) + " " + el(i, b, lv) + " d" +
                       std::to_string(f);
              });
            }
          }
        for (int a = 0; a < m.size(o, lv - 1); ++a)
          for (int b = 0; b < m.size(i, lv - 1); ++b) {
            int v = m.compose(o, k.slot, i, a, b, lv - 1);
            for (int f = 0; f < lv; ++f) {
              int lhs = v < 0 ? -1 : m.degeneracy(res, lv - 1, v, f);
              int rhs = m.compose(o, k.slot, i, m.degeneracy(o, lv - 1, a, f), m.degeneracy(i, lv - 1, b, f), lv);
              c.check(lhs == rhs, "composition commutes with degeneracies", [&] {
                return el(o, a, lv - 1) + " o_" + std::to_string(k.slot + 1) + " " + el(i, b, lv - 1) + " s" +
                       std::to_string(f);
              });
            }
          }
      }
      if (!d.symmetric) continue;
      for (int s = 0; s < m.num_sigs(); ++s)
        for (const auto& pi : all_perms(m.sig(s).arity())) {
          int t = m.sig_id(act(m.sig(s), pi));
          for (int a = 0; a < m.size(s, lv); ++a)
            for (int f = 0; f <= lv; ++f)
              c.check(m.face(t, lv, m.act(s, pi, a, lv), f) == m.act(s, pi, m.face(s, lv, a, f), lv - 1),
                      "action commutes with faces", [&] { return el(s, a, lv); });
          for (int a = 0; a < m.size(s, lv - 1); ++a)
            for (int f = 0; f < lv; ++f)
              c.check(m.degeneracy(t, lv - 1, m.act(s, pi, a, lv - 1), f) ==
                          m.act(s, pi, m.degeneracy(s, lv - 1, a, f), lv),
                      "action commutes with degeneracies", [&] { return el(s, a, lv - 1); });
        }
    }
  }
  for (const auto& [axiom, n] : c.counts) r.axioms.push_back(axiom + ": " + std::to_string(n) + " instances");
  return r;
}

MultiBuilder::MultiBuilder(FinSet objects, int arity_bound, bool symmetric) {
  d_.objects = std::move(objects);
  d_.arity_bound = arity_bound;
  d_.symmetric = symmetric;
  d_.units.assign(d_.objects.size(), -1);
}

int MultiBuilder::add(const Signature& sig, const std::string& label) {
  auto& l = labels_[sig];
  l.push_back(label);
  return static_cast<int>(l.size()) - 1;
}

void MultiBuilder::set_unit(int object, int element) { d_.units[object] = element; }

void MultiBuilder::set_sigma(const Signature& sig, const Perm& s, const std::vector<int>& on) {
  sigma_[{sig, perm_index(s)}] = on;
}

void MultiBuilder::set_comp(const Signature& outer, int slot, const Signature& inner, int a, int b, int value) {
  comp_[CompKey{outer, slot, inner}][{a, b}] = value;
}

const std::vector<std::string>& MultiBuilder::labels(const Signature& sig) const {
  static const std::vector<std::string> none;
  auto it = labels_.find(sig);
  return it == labels_.end() ? none : it->second;
}

MultiData MultiBuilder::data() const {
  MultiData d = d_;
  for (const auto& [sig, l] : labels_) d.entries[sig] = FinSet(l);
  for (const auto& [key, vals] : comp_) {
    std::size_t nb = labels(key.inner).size();
    std::vector<int> t(labels(key.outer).size() * nb, -1);
    for (const auto& [ab, v] : vals) t[ab.first * nb + ab.second] = v;
    d.comp[key] = {t};
  }
  for (const auto& [key, on] : sigma_) d.sigma[key] = {on};
  return d;
}

Collection underlying_collection(const Multicategory& p) {
  Collection k;
  k.backend = p.backend();
  k.colors = p.objects();
  k.arity_bound = p.arity_bound();
  k.symmetric = p.symmetric();
  k.pointed = true;
  for (int x = 0; x < p.num_objects(); ++x) k.points[x] = p.data().units[x];
  for (int s = 0; s < p.num_sigs(); ++s) k.entries[p.sig(s)] = p.entry(p.sig(s));
  if (p.symmetric()) {
    for (int s = 0; s < p.num_sigs(); ++s) {
      const auto& perms = all_perms(p.sig(s).arity());
      for (std::size_t i = 0; i < perms.size(); ++i) {
        Signature t = act(p.sig(s), perms[i]);
        if (p.backend() == Backend::FinSet) {
          FinMap f{std::get<FinSet>(k.entries[p.sig(s)]), std::get<FinSet>(k.entries[t]),
                   p.data().sigma.at({p.sig(s), static_cast<int>(i)})[0]};
          k.sigma[{p.sig(s), static_cast<int>(i)}] = f;
        } else {
          const SSet& src = std::get<SSet>(k.entries[p.sig(s)]);
          SMap f{src, std::get<SSet>(k.entries[t]), {}};
          int tid = p.sig_id(t);
          auto lv = level_simplices(std::get<SSet>(k.entries[t]), p.dim_bound());
          auto slv = level_simplices(src, p.dim_bound());
          for (int id = 0; id < src.size(); ++id) {
            int dim = src.dim(id);
            if (dim > p.dim_bound()) throw BoundExceeded("entry dimension above the dimension bound");
            int x = static_cast<int>(std::find(slv[dim].begin(), slv[dim].end(), src.nd(id)) - slv[dim].begin());
            f.on.push_back(lv[dim][p.act(s, perms[i], x, dim)]);
          }
          (void)tid;
          k.sigma[{p.sig(s), static_cast<int>(i)}] = f;
        }
      }
    }
  }
  return k;
}

int compose_at(const Multicategory& p, const Signature& outer, int a, int slot, const Signature& inner, int b,
               int level) {
  Signature r = composite_signature(outer, slot, inner);
  if (r.arity() > p.arity_bound()) throw BoundExceeded("composite above the arity bound");
  int o = p.sig_id(outer), i = p.sig_id(inner);
  if (o < 0 || i < 0) throw SignatureError("composition with an empty signature");
  if (a < 0 || a >= p.size(o, level) || b < 0 || b >= p.size(i, level)) throw SignatureError("element out of range");
  int v = p.compose(o, slot, i, a, b, level);
  if (v < 0) throw BoundExceeded("composite not materialized (beyond the tree bound)");
  return v;
}

Operation full_composition(const Multicategory& p, const Operation& outer, const std::vector<Operation>& inner,
                           int level) {
  if (static_cast<int>(inner.size()) != outer.sig.arity()) throw SignatureError("need one operation per input");
  for (std::size_t j = 0; j < inner.size(); ++j)
    if (inner[j].sig.output != outer.sig.inputs[j]) throw SignatureError("input color mismatch");
  // From the last slot down, so that earlier slots keep their positions.
  Operation down = outer;
  for (int j = static_cast<int>(inner.size()) - 1; j >= 0; --j) {
    int v = compose_at(p, down.sig, down.element, j, inner[j].sig, inner[j].element, level);
    down = {composite_signature(down.sig, j, inner[j].sig), v};
  }
  // From the first slot up, shifting by the arities already inserted.
  Operation up = outer;
  int offset = 0;
  for (std::size_t j = 0; j < inner.size(); ++j) {
    int slot = static_cast<int>(j) + offset;
    int v = compose_at(p, up.sig, up.element, slot, inner[j].sig, inner[j].element, level);
    up = {composite_signature(up.sig, slot, inner[j].sig), v};
    offset += inner[j].sig.arity() - 1;
  }
  if (!(up == down)) throw ValidationError("full composition depends on the order of partial composites");
  return down;
}

}  // namespace opkit
