#include "opkit/collection/sequence.hpp"

#include <algorithm>
#include <functional>

#include "opkit/error.hpp"

namespace opkit {

namespace {

constexpr int kMaxSequenceArity = 6;

void require_finset(const Collection& k, const char* op) {
  if (k.backend != Backend::FinSet) throw NotImplemented(std::string(op) + " is implemented for finite sets only");
  if (k.colors.size() != 1) throw SignatureError(std::string(op) + " needs a one-color sequence");
}

// Compositions of n into r parts, part j at most bounds[j].
std::vector<std::vector<int>> compositions(int n, const std::vector<int>& bounds) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == static_cast<int>(bounds.size())) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int m = 0; m <= std::min(left, bounds[j]); ++m) {
      cur.push_back(m);
      rec(j + 1, left - m);
      cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

std::string tensor_label(const std::vector<Collection>& factors, const TensorElement& e) {
  std::string s = "[(";
  for (std::size_t j = 0; j < e.parts.size(); ++j) {
    if (j) s += ",";
    s += seq_entry(factors[j], e.arities[j])[e.parts[j]];
  }
  return s + ")" + perm_to_string(e.tau) + "]";
}

}  // namespace

int top_arity(const Collection& k) {
  int t = -1;
  for (const auto& [sig, v] : k.entries)
    if (!enrich::is_empty(v)) t = std::max(t, sig.arity());
  return t;
}

int circle_intermediate_bound(const Collection& k, const Collection& l, const Collection& m, int bound) {
  if (seq_entry(m, 0).empty()) return bound;
  int tk = top_arity(k), tl = top_arity(l);
  if (tk < 0 || tl < 0) return bound;
  return std::max(bound, tk * tl);
}

Signature arity_signature(int n) { return Signature{std::vector<int>(n, 0), 0}; }

Collection make_sequence(const std::map<int, SeqEntry>& entries, int arity_bound) {
  Collection k;
  k.colors = FinSet({"*"});
  k.arity_bound = arity_bound;
  k.symmetric = true;
  for (const auto& [n, e] : entries) {
    if (n > arity_bound) throw BoundExceeded("sequence entry at arity " + std::to_string(n) + " exceeds the bound");
    if (e.set.empty()) continue;
    Signature sig = arity_signature(n);
    k.entries[sig] = e.set;
    const auto& perms = all_perms(n);
    for (std::size_t p = 0; p < perms.size(); ++p) {
      FinMap m{e.set, e.set, {}};
      if (p < e.action.size())
        m.on = e.action[p];
      else if (n <= 1)
        m = identity_map(e.set);
      else
        throw InvalidAction("missing action at arity " + std::to_string(n));
      k.sigma[{sig, static_cast<int>(p)}] = m;
    }
  }
  validate(k);
  return k;
}

FinSet seq_entry(const Collection& k, int n) { return std::get<FinSet>(k.entry(arity_signature(n))); }

int seq_act(const Collection& k, int n, int x, const Perm& s) {
  return std::get<FinMap>(k.sigma_map(arity_signature(n), s)).on[x];
}

Collection tensor_unit(int arity_bound) { return make_sequence({{0, {enrich::singleton(), {}}}}, arity_bound); }

Collection circle_unit(int arity_bound) { return make_sequence({{1, {enrich::singleton(), {}}}}, arity_bound); }

Collection generating_sequence(int n, int arity_bound) {
  std::vector<std::string> labels;
  for (const auto& p : all_perms(n)) labels.push_back(perm_to_string(p));
  SeqEntry e{FinSet(labels), {}};
  for (const auto& s : all_perms(n)) {
    std::vector<int> row;
    for (const auto& t : all_perms(n)) row.push_back(perm_index(opkit::compose(t, s)));
    e.action.push_back(row);
  }
  return make_sequence({{n, e}}, arity_bound);
}

Collection coset_sequence(int n, const std::vector<Perm>& subgroup, int arity_bound) {
  const auto& perms = all_perms(n);
  std::vector<int> coset(perms.size(), -1);
  std::vector<std::string> labels;
  std::vector<int> rep;
  for (std::size_t t = 0; t < perms.size(); ++t) {
    if (coset[t] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(static_cast<int>(t));
    labels.push_back("H" + perm_to_string(perms[t]));
    for (const auto& h : subgroup) coset[perm_index(opkit::compose(h, perms[t]))] = id;
  }
  SeqEntry e{FinSet(labels), {}};
  for (const auto& s : perms) {
    std::vector<int> row;
    for (int r : rep) row.push_back(coset[perm_index(opkit::compose(perms[r], s))]);
    e.action.push_back(row);
  }
  return make_sequence({{n, e}}, arity_bound);
}

Collection seq_coproduct(const std::vector<Collection>& parts, int arity_bound) {
  std::map<int, SeqEntry> entries;
  for (int n = 0; n <= arity_bound; ++n) {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> action(all_perms(n).size());
    for (std::size_t k = 0; k < parts.size(); ++k) {
      require_finset(parts[k], "seq_coproduct");
      FinSet e = seq_entry(parts[k], n);
      int base = static_cast<int>(labels.size());
      for (const auto& x : e.elements()) labels.push_back(std::to_string(k) + ":" + x);
      for (const auto& s : all_perms(n))
        for (int x = 0; x < static_cast<int>(e.size()); ++x)
          action[perm_index(s)].push_back(base + seq_act(parts[k], n, x, s));
    }
    if (!labels.empty()) entries[n] = SeqEntry{FinSet(labels), action};
  }
  return make_sequence(entries, arity_bound);
}

DetailedTensor tensor_product(const std::vector<Collection>& factors, int arity_bound) {
  if (arity_bound > kMaxSequenceArity)
    throw BoundExceeded("tensor products are computed up to arity " + std::to_string(kMaxSequenceArity));
  for (const auto& k : factors) require_finset(k, "tensor_seq");
  DetailedTensor out;
  std::map<int, SeqEntry> entries;
  std::vector<int> bounds;
  for (const auto& k : factors) bounds.push_back(k.arity_bound);
  int r = static_cast<int>(factors.size());
  for (int n = 0; n <= arity_bound; ++n) {
    std::vector<std::string> labels;
    auto& reps = out.reps[n];
    auto& index = out.index[n];
    for (const auto& arities : compositions(n, bounds)) {
      std::vector<FinSet> sets;
      bool empty = false;
      for (int j = 0; j < r; ++j) {
        sets.push_back(seq_entry(factors[j], arities[j]));
        if (sets.back().empty()) empty = true;
      }
      if (empty) continue;
      // Triples ((x_j), t), enumerated with t outermost.
      std::vector<TensorElement> triples;
      std::vector<int> parts(r, 0);
      for (const auto& t : all_perms(n)) {
        std::fill(parts.begin(), parts.end(), 0);
        while (true) {
          triples.push_back({arities, parts, t});
          int j = r - 1;
          while (j >= 0 && parts[j] == static_cast<int>(sets[j].size()) - 1) parts[j--] = 0;
          if (j < 0) break;
          ++parts[j];
        }
      }
      std::map<TensorElement, int> pos;
      for (std::size_t i = 0; i < triples.size(); ++i) pos[triples[i]] = static_cast<int>(i);
      // (a_j) . ((x_j), t) = ((x_j . a_j^-1), (+a_j) t), generated by
      // adjacent transpositions inside each block.
      std::vector<std::vector<int>> gens;
      for (int j = 0; j < r; ++j)
        for (const auto& a : adjacent_transpositions(arities[j])) {
          std::vector<Perm> blocks;
          for (int q = 0; q < r; ++q) blocks.push_back(q == j ? a : identity_perm(arities[q]));
          Perm g = block_sum(blocks);
          std::vector<int> row;
          for (const auto& e : triples) {
            TensorElement h{arities, e.parts, opkit::compose(g, e.tau)};
            h.parts[j] = seq_act(factors[j], arities[j], e.parts[j], a);
            row.push_back(pos.at(h));
          }
          gens.push_back(row);
        }
      int norbits = 0;
      auto orbit = enrich::orbits_by_generators(triples.size(), gens, &norbits);
      struct {
        FinSet object;
        FinMap projection;
      } q{enrich::numbered(norbits), FinMap{{}, {}, orbit}};
      int base = static_cast<int>(reps.size());
      std::vector<bool> seen(q.object.size(), false);
      for (std::size_t i = 0; i < triples.size(); ++i) {
        int c = q.projection.on[i];
        index[triples[i]] = base + c;
        if (!seen[c]) {
          seen[c] = true;
          reps.push_back(triples[i]);
        }
      }
    }
    if (reps.empty()) continue;
    for (const auto& e : reps) labels.push_back(tensor_label(factors, e));
    SeqEntry entry{FinSet(labels), {}};
    for (const auto& s : all_perms(n)) {
      std::vector<int> row;
      for (const auto& e : reps) {
        TensorElement f = e;
        f.tau = opkit::compose(e.tau, s);
        row.push_back(index.at(f));
      }
      entry.action.push_back(row);
    }
    entries[n] = entry;
  }
  out.result = make_sequence(entries, arity_bound);
  return out;
}

Collection tensor_seq(const Collection& k, const Collection& l) {
  return tensor_seq(k, l, std::min(k.arity_bound, l.arity_bound));
}

Collection tensor_seq(const Collection& k, const Collection& l, int arity_bound) {
  return tensor_product({k, l}, arity_bound).result;
}

Collection tensor_power(const Collection& l, int r, int arity_bound) {
  return tensor_product(std::vector<Collection>(r, l), arity_bound).result;
}

int tensor_class(const DetailedTensor& t, const TensorElement& e) {
  int n = static_cast<int>(e.tau.size());
  auto it = t.index.find(n);
  if (it == t.index.end()) throw SignatureError("arity not present in tensor product");
  auto jt = it->second.find(e);
  if (jt == it->second.end()) throw SignatureError("not an element of the tensor product");
  return jt->second;
}

TensorElement permute_factors(const TensorElement& e, const Perm& pi) {
  int r = static_cast<int>(pi.size());
  Perm inv = inverse(pi);
  TensorElement out;
  for (int j = 0; j < r; ++j) {
    out.arities.push_back(e.arities[inv[j]]);
    out.parts.push_back(e.parts[inv[j]]);
  }
  out.tau = opkit::compose(block_perm(pi, out.arities), e.tau);
  return out;
}

DetailedCircle circle_detailed(const Collection& k, const Collection& l, int arity_bound) {
  require_finset(k, "circle");
  require_finset(l, "circle");
  if (arity_bound > kMaxSequenceArity)
    throw BoundExceeded("circle products are computed up to arity " + std::to_string(kMaxSequenceArity));
  DetailedCircle out;
  std::map<int, SeqEntry> entries;
  std::map<int, std::vector<std::string>> labels;
  std::vector<std::string> dummy;
  for (int r = 0; r <= k.arity_bound; ++r) {
    FinSet kr = seq_entry(k, r);
    if (kr.empty()) continue;
    std::vector<Collection> factors(r, l);
    DetailedTensor pw = tensor_product(factors, arity_bound);
    out.powers[r];
    for (int n = 0; n <= arity_bound; ++n) {
      auto rit = pw.reps.find(n);
      if (rit == pw.reps.end() || rit->second.empty()) continue;
      const auto& ys = rit->second;
      int ny = static_cast<int>(ys.size());
      int size = static_cast<int>(kr.size()) * ny;
      // pi . (k, y) = (k . pi^-1, pi . y), generated by adjacent transpositions.
      std::vector<std::vector<int>> gens;
      for (const auto& pi : adjacent_transpositions(r)) {
        std::vector<int> row(size);
        std::vector<int> on_y(ny);
        for (int y = 0; y < ny; ++y) on_y[y] = tensor_class(pw, permute_factors(ys[y], pi));
        for (int x = 0; x < static_cast<int>(kr.size()); ++x) {
          int kx = seq_act(k, r, x, pi);
          for (int y = 0; y < ny; ++y) row[x * ny + y] = kx * ny + on_y[y];
        }
        gens.push_back(row);
      }
      int norbits = 0;
      auto orbit = enrich::orbits_by_generators(size, gens, &norbits);
      struct {
        FinSet object;
        FinMap projection;
      } q{enrich::numbered(norbits), FinMap{{}, {}, orbit}};
      auto& reps = out.reps[n];
      auto& index = out.index[n];
      int base = static_cast<int>(reps.size());
      std::vector<bool> seen(q.object.size(), false);
      for (int i = 0; i < size; ++i) {
        int c = q.projection.on[i];
        CircleElement e{i / ny, ys[i % ny]};
        index[e] = base + c;
        if (!seen[c]) {
          seen[c] = true;
          reps.push_back(e);
          labels[n].push_back(kr[e.k] + "{" + tensor_label(factors, e.inner) + "}");
        }
      }
    }
    out.powers[r] = std::move(pw);
  }
  for (auto& [n, reps] : out.reps) {
    if (reps.empty()) continue;
    SeqEntry entry{FinSet(labels[n]), {}};
    for (const auto& s : all_perms(n)) {
      std::vector<int> row;
      for (const auto& e : reps) {
        CircleElement f = e;
        f.inner.tau = opkit::compose(e.inner.tau, s);
        row.push_back(circle_class(out, f));
      }
      entry.action.push_back(row);
    }
    entries[n] = entry;
  }
  out.result = make_sequence(entries, arity_bound);
  return out;
}

int circle_class(const DetailedCircle& c, const CircleElement& e) {
  int r = static_cast<int>(e.inner.arities.size());
  int n = static_cast<int>(e.inner.tau.size());
  auto pt = c.powers.find(r);
  if (pt == c.powers.end()) throw SignatureError("not an element of the circle product");
  int cls = tensor_class(pt->second, e.inner);
  auto it = c.index.find(n);
  if (it == c.index.end()) throw SignatureError("arity not present in the circle product");
  auto jt = it->second.find(CircleElement{e.k, pt->second.reps.at(n)[cls]});
  if (jt == it->second.end()) throw SignatureError("not an element of the circle product");
  return jt->second;
}

Collection circle(const Collection& k, const Collection& l) {
  return circle(k, l, std::min(std::max(k.arity_bound, l.arity_bound), kMaxSequenceArity));
}

Collection circle(const Collection& k, const Collection& l, int arity_bound) {
  return circle_detailed(k, l, arity_bound).result;
}

bool is_equivariant(const Collection& a, const Collection& b, const SeqMap& f) {
  for (const auto& [n, m] : f)
    for (const auto& s : all_perms(n))
      for (std::size_t x = 0; x < m.source.size(); ++x)
        if (m.on[seq_act(a, n, static_cast<int>(x), s)] != seq_act(b, n, m.on[x], s)) return false;
  return true;
}

bool is_iso(const Collection& a, const Collection& b, const SeqMap& f) {
  int top = std::max(a.arity_bound, b.arity_bound);
  for (int n = 0; n <= top; ++n) {
    FinSet x = seq_entry(a, n), y = seq_entry(b, n);
    auto it = f.find(n);
    if (it == f.end()) {
      if (!x.empty() || !y.empty()) return false;
      continue;
    }
    if (!(it->second.source == x) || !(it->second.target == y) || !enrich::is_bijective(it->second)) return false;
  }
  return true;
}

SeqMap tensor_unit_iso(const Collection& k) {
  Collection u = tensor_unit(k.arity_bound);
  DetailedTensor t = tensor_product({k, u}, k.arity_bound);
  SeqMap f;
  for (const auto& [sig, v] : k.entries) {
    int n = sig.arity();
    FinMap m{std::get<FinSet>(v), seq_entry(t.result, n), {}};
    for (int x = 0; x < static_cast<int>(m.source.size()); ++x)
      m.on.push_back(tensor_class(t, {{n, 0}, {x, 0}, identity_perm(n)}));
    f[n] = m;
  }
  return f;
}

SeqMap tensor_symmetry_iso(const Collection& k, const Collection& l) {
  int bound = std::min(k.arity_bound, l.arity_bound);
  DetailedTensor kl = tensor_product({k, l}, bound), lk = tensor_product({l, k}, bound);
  SeqMap f;
  for (const auto& [n, reps] : kl.reps) {
    if (reps.empty()) continue;
    FinMap m{seq_entry(kl.result, n), seq_entry(lk.result, n), {}};
    for (const auto& e : reps) m.on.push_back(tensor_class(lk, permute_factors(e, {1, 0})));
    f[n] = m;
  }
  return f;
}

SeqMap circle_right_unit_iso(const Collection& k) {
  Collection j = circle_unit(k.arity_bound);
  DetailedCircle c = circle_detailed(k, j, k.arity_bound);
  SeqMap f;
  for (const auto& [sig, v] : k.entries) {
    int n = sig.arity();
    FinMap m{std::get<FinSet>(v), seq_entry(c.result, n), {}};
    for (int x = 0; x < static_cast<int>(m.source.size()); ++x)
      m.on.push_back(circle_class(c, CircleElement{x, {std::vector<int>(n, 1), std::vector<int>(n, 0), identity_perm(n)}}));
    f[n] = m;
  }
  return f;
}

SeqMap circle_left_unit_iso(const Collection& k) {
  Collection j = circle_unit(k.arity_bound);
  DetailedCircle c = circle_detailed(j, k, k.arity_bound);
  SeqMap f;
  for (const auto& [sig, v] : k.entries) {
    int n = sig.arity();
    FinMap m{std::get<FinSet>(v), seq_entry(c.result, n), {}};
    for (int x = 0; x < static_cast<int>(m.source.size()); ++x)
      m.on.push_back(circle_class(c, CircleElement{0, {{n}, {x}, identity_perm(n)}}));
    f[n] = m;
  }
  return f;
}

CircleAssociator circle_associator(const Collection& k, const Collection& l, const Collection& m, int bound) {
  int mid = circle_intermediate_bound(k, l, m, bound);
  return circle_associator(k, circle_detailed(k, l, mid), circle_detailed(l, m, bound), m, bound);
}

CircleAssociator circle_associator(const Collection& k, const DetailedCircle& kl, const DetailedCircle& lm,
                                   const Collection& m, int bound) {
  DetailedCircle left = circle_detailed(kl.result, m, bound);
  DetailedCircle right = circle_detailed(k, lm.result, bound);
  CircleAssociator out{left.result, right.result, {}, 0};
  for (const auto& [n, index] : left.index) {
    if (left.reps[n].empty()) continue;
    FinMap f{seq_entry(left.result, n), seq_entry(right.result, n),
             std::vector<int>(left.reps[n].size(), -1)};
    for (const auto& [e, cls] : index) {
      // e = [c ; Y] with c = [k ; X] . tau'
      const CircleElement& c = kl.reps.at(static_cast<int>(e.inner.arities.size())).at(e.k);
      TensorElement y = permute_factors(e.inner, c.inner.tau);
      TensorElement outer;
      outer.tau = y.tau;
      std::size_t at = 0;
      for (std::size_t i = 0; i < c.inner.arities.size(); ++i) {
        int a = c.inner.arities[i];
        TensorElement block;
        int b = 0;
        for (int q = 0; q < a; ++q, ++at) {
          block.arities.push_back(y.arities[at]);
          block.parts.push_back(y.parts[at]);
          b += y.arities[at];
        }
        block.tau = identity_perm(b);
        outer.arities.push_back(b);
        outer.parts.push_back(circle_class(lm, CircleElement{c.inner.parts[i], block}));
      }
      int image = circle_class(right, CircleElement{c.k, outer});
      if (f.on[cls] >= 0 && f.on[cls] != image)
        throw ValidationError("associator depends on the representative at arity " + std::to_string(n));
      f.on[cls] = image;
      ++out.representatives;
    }
    out.map[n] = f;
  }
  return out;
}

HomSeq hom_seq(const Collection& k, const Collection& l) {
  require_finset(k, "hom_seq");
  require_finset(l, "hom_seq");
  HomSeq out;
  for (const auto& [sig, v] : k.entries)
    if (!enrich::is_empty(v) && sig.arity() > l.arity_bound) {
      out.object = FinSet();
      return out;
    }
  for (const auto& m : all_collection_maps(k, l, std::vector<int>{0})) {
    SeqMap fam;
    for (const auto& [sig, g] : m.on) fam[sig.arity()] = std::get<FinMap>(g);
    out.families.push_back(fam);
  }
  out.object = enrich::numbered(out.families.size(), "f");
  return out;
}

Representability representability(int n, const Collection& y) {
  Collection g = generating_sequence(n, std::max(n, y.arity_bound));
  Representability out;
  out.hom = hom_seq(g, y);
  auto key = [](const SeqMap& f) {
    std::vector<std::vector<int>> v;
    for (const auto& [a, m] : f) v.push_back(m.on);
    return v;
  };
  std::map<std::vector<std::vector<int>>, int> where;
  for (std::size_t i = 0; i < out.hom.families.size(); ++i) where[key(out.hom.families[i])] = static_cast<int>(i);
  const auto& perms = all_perms(n);
  for (const auto& s : perms) {
    std::vector<int> row;
    for (const auto& f : out.hom.families) {
      SeqMap h = f;
      for (std::size_t t = 0; t < perms.size(); ++t)
        h[n].on[t] = f.at(n).on[perm_index(opkit::compose(s, perms[t]))];
      row.push_back(where.at(key(h)));
    }
    out.action.push_back(row);
  }
  out.omega = FinMap{out.hom.object, seq_entry(y, n), {}};
  for (const auto& f : out.hom.families) out.omega.on.push_back(f.at(n).on[0]);
  return out;
}

}  // namespace opkit
