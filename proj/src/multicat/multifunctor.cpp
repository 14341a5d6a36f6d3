#include "opkit/multicat/multifunctor.hpp"

#include <sstream>

#include "opkit/error.hpp"

namespace opkit {

Signature image_signature(const Multifunctor& f, const Signature& s) {
  Signature r{{}, f.on_objects.at(s.output)};
  for (int x : s.inputs) r.inputs.push_back(f.on_objects.at(x));
  return r;
}

int image_sig_id(const Multifunctor& f, int sig) {
  return f.target->sig_id(image_signature(f, f.source->sig(sig)));
}

FunctorReport check_multifunctor(const Multifunctor& f, int max_failures) {
  FunctorReport r;
  auto fail = [&](const std::string& m) {
    r.ok = false;
    if (static_cast<int>(r.failures.size()) < max_failures) r.failures.push_back(m);
  };
  const Multicategory& p = *f.source;
  const Multicategory& q = *f.target;
  if (p.backend() != q.backend()) {
    fail("backends differ");
    return r;
  }
  if (static_cast<int>(f.on_objects.size()) != p.num_objects()) {
    fail("object map has the wrong size");
    return r;
  }
  for (int y : f.on_objects)
    if (y < 0 || y >= q.num_objects()) {
      fail("object map out of range");
      return r;
    }
  if (q.dim_bound() < p.dim_bound()) {
    fail("target truncated below the source");
    return r;
  }
  int nl = p.levels();
  if (static_cast<int>(f.on_ops.size()) != p.num_sigs()) {
    fail("operation map has the wrong number of signatures");
    return r;
  }
  std::vector<int> tsig(p.num_sigs());
  for (int s = 0; s < p.num_sigs(); ++s) {
    tsig[s] = image_sig_id(f, s);
    std::string key = signature_key(p.sig(s), p.objects());
    if (tsig[s] < 0) {
      fail("nonempty " + key + " maps to an empty signature");
      continue;
    }
    if (static_cast<int>(f.on_ops[s].size()) != nl) {
      fail("wrong number of levels at " + key);
      continue;
    }
    for (int lv = 0; lv < nl; ++lv) {
      if (static_cast<int>(f.on_ops[s][lv].size()) != p.size(s, lv)) fail("wrong component size at " + key);
      for (int v : f.on_ops[s][lv])
        if (v < 0 || v >= q.size(tsig[s], lv)) fail("component out of range at " + key);
    }
  }
  if (!r.ok) return r;
  auto el = [&](int s, int x, int lv) {
    return signature_key(p.sig(s), p.objects()) + ":" + p.element_name(s, x, lv);
  };
  for (int lv = 0; lv < nl; ++lv) {
    for (int x = 0; x < p.num_objects(); ++x) {
      int us = p.unit_sig(x);
      if (f.on_ops[us][lv][p.unit(x, lv)] != q.unit(f.on_objects[x], lv))
        fail("unit of " + p.objects()[x] + " not preserved");
    }
    if (p.symmetric() && q.symmetric()) {
      for (int s = 0; s < p.num_sigs(); ++s)
        for (const auto& t : adjacent_transpositions(p.sig(s).arity()))
          for (int a = 0; a < p.size(s, lv); ++a) {
            int rs;
            int lhs_x = p.act(s, t, a, lv, &rs);
            int lhs = f.on_ops[rs][lv][lhs_x];
            int rhs = q.act(tsig[s], t, f.on_ops[s][lv][a], lv);
            if (lhs != rhs) fail("action not preserved at " + el(s, a, lv) + " by " + perm_to_string(t));
          }
    }
    for (int o = 0; o < p.num_sigs(); ++o)
      for (int slot = 0; slot < p.sig(o).arity(); ++slot)
        for (int i = 0; i < p.num_sigs(); ++i) {
          if (p.sig(i).output != p.sig(o).inputs[slot]) continue;
          for (int a = 0; a < p.size(o, lv); ++a)
            for (int b = 0; b < p.size(i, lv); ++b) {
              int rs;
              int c = p.compose(o, slot, i, a, b, lv, &rs);
              if (c < 0) continue;
              int lhs = f.on_ops[rs][lv][c];
              int rhs = q.compose(tsig[o], slot, tsig[i], f.on_ops[o][lv][a], f.on_ops[i][lv][b], lv);
              if (lhs != rhs)
                fail("composition not preserved at " + el(o, a, lv) + " o_" + std::to_string(slot + 1) + " " +
                     el(i, b, lv));
            }
        }
  }
  if (p.backend() == Backend::FinSSet) {
    for (int lv = 1; lv < nl; ++lv)
      for (int s = 0; s < p.num_sigs(); ++s)
        for (int a = 0; a < p.size(s, lv); ++a)
          for (int k = 0; k <= lv; ++k) {
            if (f.on_ops[s][lv - 1][p.face(s, lv, a, k)] != q.face(tsig[s], lv, f.on_ops[s][lv][a], k))
              fail("faces not preserved at " + el(s, a, lv));
          }
    for (int lv = 0; lv + 1 < nl; ++lv)
      for (int s = 0; s < p.num_sigs(); ++s)
        for (int a = 0; a < p.size(s, lv); ++a)
          for (int k = 0; k <= lv; ++k) {
            if (f.on_ops[s][lv + 1][p.degeneracy(s, lv, a, k)] != q.degeneracy(tsig[s], lv, f.on_ops[s][lv][a], k))
              fail("degeneracies not preserved at " + el(s, a, lv));
          }
  }
  return r;
}

bool is_multifunctor(const Multifunctor& f) { return check_multifunctor(f, 1).ok; }

Multifunctor identity_functor(const MultiPtr& p) {
  Multifunctor f{p, p, {}, {}};
  for (int x = 0; x < p->num_objects(); ++x) f.on_objects.push_back(x);
  f.on_ops.resize(p->num_sigs());
  for (int s = 0; s < p->num_sigs(); ++s)
    for (int lv = 0; lv < p->levels(); ++lv) {
      std::vector<int> on(p->size(s, lv));
      for (int a = 0; a < p->size(s, lv); ++a) on[a] = a;
      f.on_ops[s].push_back(on);
    }
  return f;
}

Multifunctor compose_functors(const Multifunctor& g, const Multifunctor& f) {
  if (!(*f.target == *g.source)) throw SignatureError("functors are not composable");
  Multifunctor h{f.source, g.target, {}, {}};
  for (int y : f.on_objects) h.on_objects.push_back(g.on_objects[y]);
  h.on_ops.resize(f.source->num_sigs());
  for (int s = 0; s < f.source->num_sigs(); ++s) {
    int mid = image_sig_id(f, s);
    for (int lv = 0; lv < f.source->levels(); ++lv) {
      std::vector<int> on;
      for (int v : f.on_ops[s][lv]) on.push_back(g.on_ops[mid][lv][v]);
      h.on_ops[s].push_back(on);
    }
  }
  return h;
}

bool same_functor(const Multifunctor& a, const Multifunctor& b) {
  return *a.source == *b.source && *a.target == *b.target && a.on_objects == b.on_objects && a.on_ops == b.on_ops;
}

EnrichMap component(const Multifunctor& f, const Signature& s) {
  const Multicategory& p = *f.source;
  const Multicategory& q = *f.target;
  Signature t = image_signature(f, s);
  EnrichValue src = p.entry(s), tgt = q.entry(t);
  int sid = p.sig_id(s);
  if (p.backend() == Backend::FinSet) {
    FinMap m{std::get<FinSet>(src), std::get<FinSet>(tgt), {}};
    if (sid >= 0) m.on = f.on_ops[sid][0];
    return m;
  }
  const SSet& a = std::get<SSet>(src);
  const SSet& b = std::get<SSet>(tgt);
  SMap m{a, b, {}};
  if (sid < 0) return m;
  auto la = level_simplices(a, p.dim_bound());
  auto lb = level_simplices(b, q.dim_bound());
  for (int id = 0; id < a.size(); ++id) {
    int d = a.dim(id);
    if (d > p.dim_bound()) throw BoundExceeded("simplex above the dimension bound");
    int x = static_cast<int>(std::find(la[d].begin(), la[d].end(), a.nd(id)) - la[d].begin());
    m.on.push_back(lb[d][f.on_ops[sid][d][x]]);
  }
  return m;
}

Multifunctor functor_from_components(const MultiPtr& p, const MultiPtr& q, const std::vector<int>& on_objects,
                                     const std::map<Signature, EnrichMap>& components) {
  Multifunctor f{p, q, on_objects, {}};
  f.on_ops.resize(p->num_sigs());
  for (int s = 0; s < p->num_sigs(); ++s) {
    auto it = components.find(p->sig(s));
    if (it == components.end())
      throw ValidationError("no component at " + signature_key(p->sig(s), p->objects()));
    if (p->backend() == Backend::FinSet) {
      f.on_ops[s] = {std::get<FinMap>(it->second).on};
      continue;
    }
    const SMap& m = std::get<SMap>(it->second);
    Signature t = image_signature(f, p->sig(s));
    auto la = level_simplices(m.source, p->dim_bound());
    auto lb = level_simplices(std::get<SSet>(q->entry(t)), q->dim_bound());
    for (int lv = 0; lv < p->levels(); ++lv) {
      std::map<enrich::Simplex, int> idx;
      for (int y = 0; y < static_cast<int>(lb[lv].size()); ++y) idx[lb[lv][y]] = y;
      std::vector<int> on;
      for (const auto& x : la[lv]) on.push_back(idx.at(m.apply(x)));
      f.on_ops[s].push_back(on);
    }
  }
  auto rep = check_multifunctor(f);
  if (!rep.ok) throw ValidationError("not a multifunctor: " + rep.failures.front());
  return f;
}

std::string functor_summary(const Multifunctor& f) {
  std::ostringstream os;
  os << "objects:";
  for (int x = 0; x < f.source->num_objects(); ++x)
    os << " " << f.source->objects()[x] << "->" << f.target->objects()[f.on_objects[x]];
  for (int s = 0; s < f.source->num_sigs(); ++s) {
    int t = image_sig_id(f, s);
    os << "; " << signature_key(f.source->sig(s), f.source->objects()) << ":";
    for (int a = 0; a < f.source->size(s); ++a)
      os << " " << f.source->element_name(s, a) << "->" << f.target->element_name(t, f.on_ops[s][0][a]);
  }
  return os.str();
}

}  // namespace opkit
