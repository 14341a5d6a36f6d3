#include "opkit/enrich/enrich.hpp"

#include <algorithm>
#include <map>

#include "opkit/error.hpp"

namespace opkit::enrich {

std::string to_string(Backend b) { return b == Backend::FinSet ? "finset" : "finsset"; }

Backend parse_backend(const std::string& s) {
  if (s == "finset") return Backend::FinSet;
  if (s == "finsset") return Backend::FinSSet;
  throw ParseError("unknown backend '" + s + "'");
}

Backend backend_of(const EnrichValue& v) {
  return std::holds_alternative<FinSet>(v) ? Backend::FinSet : Backend::FinSSet;
}

Backend backend_of(const EnrichMap& f) {
  return std::holds_alternative<FinMap>(f) ? Backend::FinSet : Backend::FinSSet;
}

EnrichMap identity_map(const EnrichValue& v) {
  if (auto* x = std::get_if<FinSet>(&v)) return identity_map(*x);
  return identity_map(std::get<SSet>(v));
}

EnrichMap compose(const EnrichMap& g, const EnrichMap& f) {
  if (backend_of(g) != backend_of(f)) throw BackendMismatch("composite of maps from different backends");
  if (auto* x = std::get_if<FinMap>(&g)) return compose(*x, std::get<FinMap>(f));
  return compose(std::get<SMap>(g), std::get<SMap>(f));
}

void validate(const EnrichMap& f) {
  if (auto* x = std::get_if<FinMap>(&f)) return validate(*x);
  validate(std::get<SMap>(f));
}

const EnrichValue source_of(const EnrichMap& f) {
  if (auto* x = std::get_if<FinMap>(&f)) return x->source;
  return std::get<SMap>(f).source;
}

const EnrichValue target_of(const EnrichMap& f) {
  if (auto* x = std::get_if<FinMap>(&f)) return x->target;
  return std::get<SMap>(f).target;
}

bool is_empty(const EnrichValue& v) { return size_of(v) == 0; }

int size_of(const EnrichValue& v) {
  if (auto* x = std::get_if<FinSet>(&v)) return static_cast<int>(x->size());
  return std::get<SSet>(v).size();
}

EnrichCoproduct coproduct(Backend b, const std::vector<EnrichValue>& summands, const std::vector<std::string>& tags) {
  for (const auto& v : summands)
    if (backend_of(v) != b) throw BackendMismatch("coproduct summand from another backend");
  EnrichCoproduct out;
  if (b == Backend::FinSet) {
    std::vector<FinSet> parts;
    for (const auto& v : summands) parts.push_back(std::get<FinSet>(v));
    auto c = coproduct(parts, tags);
    out.object = c.object;
    for (auto& i : c.injections) out.injections.push_back(i);
    return out;
  }
  SSet x;
  std::vector<SMap> inj;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const SSet& part = std::get<SSet>(summands[k]);
    int offset = x.size();
    SMap m{part, {}, {}};
    for (int id = 0; id < part.size(); ++id) {
      std::vector<Simplex> faces;
      for (auto f : part.faces_of(id)) {
        f.id += offset;
        faces.push_back(f);
      }
      int nid = x.add(tags[k] + part.name(id), part.dim(id), faces);
      m.on.push_back(x.nd(nid));
    }
    inj.push_back(m);
  }
  for (auto& m : inj) {
    m.target = x;
    out.injections.push_back(m);
  }
  out.object = x;
  return out;
}

EnrichValue unit(Backend b) {
  if (b == Backend::FinSet) return singleton();
  return point();
}

EnrichValue initial(Backend b) {
  if (b == Backend::FinSet) return FinSet();
  return SSet();
}

EnrichValue tensor(const EnrichValue& a, const EnrichValue& b, int dim_bound) {
  if (backend_of(a) != backend_of(b)) throw BackendMismatch("tensor of values from different backends");
  if (auto* x = std::get_if<FinSet>(&a)) return tensor(*x, std::get<FinSet>(b));
  return product(std::get<SSet>(a), std::get<SSet>(b), dim_bound).object;
}

EnrichMap tensor_symmetry(const EnrichValue& a, const EnrichValue& b, int dim_bound) {
  if (backend_of(a) != backend_of(b)) throw BackendMismatch("tensor of values from different backends");
  if (auto* x = std::get_if<FinSet>(&a)) {
    const FinSet& y = std::get<FinSet>(b);
    FinMap f{tensor(*x, y), tensor(y, *x), {}};
    for (std::size_t i = 0; i < x->size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) f.on.push_back(static_cast<int>(j * x->size() + i));
    return f;
  }
  const SSet& x = std::get<SSet>(a);
  const SSet& y = std::get<SSet>(b);
  Product ab = product(x, y, dim_bound), ba = product(y, x, dim_bound);
  std::map<std::pair<Simplex, Simplex>, int> index;
  for (int s = 0; s < ba.object.size(); ++s) index[{ba.first.on[s], ba.second.on[s]}] = s;
  SMap f{ab.object, ba.object, {}};
  for (int s = 0; s < ab.object.size(); ++s) f.on.push_back(ba.object.nd(index.at({ab.second.on[s], ab.first.on[s]})));
  return f;
}

SQuotient coinvariants(const SSet& x, const std::vector<Perm>& group, const std::vector<SMap>& acts,
                       ActionSide side) {
  if (group.size() != acts.size() || group.empty()) throw InvalidAction("one automorphism per group element required");
  for (const auto& a : acts) {
    if (!(a.source == x) || !(a.target == x)) throw InvalidAction("action map not an endomorphism");
    validate(a);
    if (!is_isomorphism(a)) throw InvalidAction("group element does not act by an automorphism");
  }
  auto find = [&](const Perm& p) -> int {
    for (std::size_t i = 0; i < group.size(); ++i)
      if (group[i] == p) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (is_identity(group[g]) && acts[g] != identity_map(x)) throw InvalidAction("identity acts nontrivially");
    for (std::size_t h = 0; h < group.size(); ++h) {
      int gh = find(opkit::compose(group[g], group[h]));
      if (gh < 0) throw InvalidAction("group is not closed under composition");
      SMap expect = side == ActionSide::Left ? compose(acts[g], acts[h]) : compose(acts[h], acts[g]);
      if (acts[gh] != expect) throw InvalidAction("action does not respect composition");
    }
  }
  // Orbits of nondegenerate simplices, represented by their least id.
  std::vector<int> rep(x.size());
  for (int s = 0; s < x.size(); ++s) {
    int r = s;
    for (const auto& a : acts) r = std::min(r, a.on[s].id);
    rep[s] = r;
  }
  SQuotient q;
  std::vector<int> qid(x.size(), -1);
  for (int s = 0; s < x.size(); ++s) {
    if (rep[s] != s) continue;
    std::vector<Simplex> faces;
    for (const auto& f : x.faces_of(s)) faces.push_back({qid[rep[f.id]], f.surj});
    qid[s] = q.object.add("[" + x.name(s) + "]", x.dim(s), faces);
  }
  q.projection = {x, q.object, {}};
  for (int s = 0; s < x.size(); ++s) q.projection.on.push_back(q.object.nd(qid[rep[s]]));
  validate(q.projection);
  return q;
}

std::vector<EnrichMap> hom_set(const EnrichValue& a, const EnrichValue& b, long budget) {
  if (backend_of(a) != backend_of(b)) throw BackendMismatch("hom between different backends");
  std::vector<EnrichMap> out;
  if (auto* x = std::get_if<FinSet>(&a)) {
    for (auto& f : all_maps(*x, std::get<FinSet>(b))) out.push_back(std::move(f));
    return out;
  }
  SearchBudget sb{budget};
  enumerate_smaps(std::get<SSet>(a), std::get<SSet>(b), {},
                  [&](const SMap& f) {
                    out.push_back(f);
                    return true;
                  },
                  sb);
  if (sb.exhausted) throw BoundExceeded("hom-set enumeration exceeded its budget");
  return out;
}

KanResult kan_fibration_check(const EnrichMap& f, int bound) {
  if (std::holds_alternative<FinMap>(f))
    throw NotApplicable("finite-set maps are always fibrations in the discrete structure");
  return kan_fibration_check(std::get<SMap>(f), bound);
}

WeqResult weq_oracle(const EnrichMap& f, int bound) {
  if (auto* m = std::get_if<FinMap>(&f))
    return is_bijective(*m) ? WeqResult{Verdict::Yes, "bijection"} : WeqResult{Verdict::No, "not a bijection"};
  return weq_oracle(std::get<SMap>(f), bound);
}

bool is_cofibration(const EnrichMap& f) {
  if (auto* m = std::get_if<FinMap>(&f)) return is_injective(*m);
  const SMap& s = std::get<SMap>(f);
  std::vector<char> hit(s.target.size(), 0);
  for (const auto& img : s.on) {
    if (!img.nondegenerate() || hit[img.id]) return false;
    hit[img.id] = 1;
  }
  return true;
}

std::vector<GeneratingMap> generating_cofibrations(Backend b, int dim_bound) {
  std::vector<GeneratingMap> out;
  if (b == Backend::FinSet) {
    FinSet one = singleton();
    out.push_back({"empty->point", FinMap{FinSet(), one, {}}});
    out.push_back({"fold", FinMap{FinSet({"a", "b"}), one, {0, 0}}});
    return out;
  }
  out.push_back({"empty->Delta0", SMap{SSet(), point(), {}}});
  for (int n = 1; n <= dim_bound; ++n)
    out.push_back({"boundary" + std::to_string(n), inclusion_into_simplex(boundary(n), n)});
  return out;
}

std::vector<GeneratingMap> generating_acyclic_cofibrations(Backend b, int dim_bound) {
  std::vector<GeneratingMap> out;
  if (b == Backend::FinSet) {
    out.push_back({"id_point", identity_map(singleton())});
    return out;
  }
  for (int n = 1; n <= dim_bound; ++n)
    for (int k = 0; k <= n; ++k)
      out.push_back({"horn" + std::to_string(n) + "_" + std::to_string(k), inclusion_into_simplex(horn(n, k), n)});
  return out;
}

}  // namespace opkit::enrich
