#include <set>

#include "opkit/error.hpp"
#include "opkit/model/model.hpp"

namespace opkit::model {

std::string verdict_string(const std::optional<bool>& v) {
  if (!v) return "undecided";
  return *v ? "true" : "false";
}

std::vector<Iso> isomorphisms(const Multicategory& q) {
  std::vector<Iso> out;
  for (int s = 0; s < q.num_sigs(); ++s) {
    const Signature& sg = q.sig(s);
    if (sg.arity() != 1) continue;
    int back = q.sig_id(unary(sg.output, sg.inputs[0]));
    if (back < 0) continue;
    int a = sg.inputs[0], b = sg.output;
    for (int f = 0; f < q.size(s); ++f)
      for (int g = 0; g < q.size(back); ++g) {
        if (q.compose(back, 0, s, g, f) != q.unit(a)) continue;
        if (q.compose(s, 0, back, f, g) != q.unit(b)) continue;
        out.push_back({s, f, g});
        break;
      }
  }
  return out;
}

std::vector<int> iso_class(const Multicategory& q, int x) {
  std::vector<int> out;
  for (const auto& i : isomorphisms(q))
    if (q.sig(i.sig).inputs[0] == x) out.push_back(q.sig(i.sig).output);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void require_finset(const Multifunctor& f) {
  if (f.source->backend() != Backend::FinSet) throw NotApplicable("finite-set predicate on a simplicial functor");
}

// Component sizes and images over every source signature within the bound.
template <class Fn>
bool every_signature(const Multifunctor& f, Fn fn) {
  const Multicategory& p = *f.source;
  bool ok = true;
  for (const auto& s : all_signatures(p.num_objects(), p.arity_bound())) ok = fn(s) && ok;
  return ok;
}

}  // namespace

bool is_full(const Multifunctor& f, std::vector<Evidence>* ev) {
  require_finset(f);
  const Multicategory& p = *f.source;
  const Multicategory& q = *f.target;
  return every_signature(f, [&](const Signature& s) {
    Signature t = image_signature(f, s);
    int ts = q.sig_id(t);
    if (ts < 0) return true;
    std::vector<char> hit(q.size(ts), 0);
    int sid = p.sig_id(s);
    if (sid >= 0)
      for (int v : f.on_ops[sid][0]) hit[v] = 1;
    bool ok = std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
    if (!ok && ev) ev->push_back({"full", signature_key(s, p.objects()), "no"});
    return ok;
  });
}

bool is_faithful(const Multifunctor& f, std::vector<Evidence>* ev) {
  require_finset(f);
  const Multicategory& p = *f.source;
  return every_signature(f, [&](const Signature& s) {
    int sid = p.sig_id(s);
    if (sid < 0) return true;
    std::set<int> seen(f.on_ops[sid][0].begin(), f.on_ops[sid][0].end());
    bool ok = static_cast<int>(seen.size()) == p.size(sid);
    if (!ok && ev) ev->push_back({"faithful", signature_key(s, p.objects()), "no"});
    return ok;
  });
}

bool is_essentially_surjective(const Multifunctor& f, std::vector<Evidence>* ev) {
  const Multicategory& q = *f.target;
  std::vector<char> reached(q.num_objects(), 0);
  for (int y : f.on_objects) {
    reached[y] = 1;
    for (int z : iso_class(q, y)) reached[z] = 1;
  }
  bool ok = true;
  for (int y = 0; y < q.num_objects(); ++y)
    if (!reached[y]) {
      ok = false;
      if (ev) ev->push_back({"essentially surjective", "", "object " + q.objects()[y] + " missed"});
    }
  return ok;
}

ModelVerdict is_equivalence_set(const Multifunctor& f) {
  ModelVerdict v;
  bool full = is_full(f, &v.evidence);
  bool faithful = is_faithful(f, &v.evidence);
  bool es = is_essentially_surjective(f, &v.evidence);
  v.evidence.push_back({"full", "", full ? "yes" : "no"});
  v.evidence.push_back({"faithful", "", faithful ? "yes" : "no"});
  v.evidence.push_back({"essentially surjective", "", es ? "yes" : "no"});
  v.weq = full && faithful && es;
  return v;
}

bool is_fibration_set(const Multifunctor& f, std::vector<Evidence>* ev) {
  require_finset(f);
  const Multicategory& p = *f.source;
  const Multicategory& q = *f.target;
  auto qi = isomorphisms(q);
  auto pi = isomorphisms(p);
  bool ok = true;
  for (int x = 0; x < p.num_objects(); ++x)
    for (const auto& phi : qi) {
      if (q.sig(phi.sig).inputs[0] != f.on_objects[x]) continue;
      bool lifted = false;
      for (const auto& psi : pi) {
        if (p.sig(psi.sig).inputs[0] != x) continue;
        if (image_sig_id(f, psi.sig) == phi.sig && f.on_ops[psi.sig][0][psi.elem] == phi.elem) lifted = true;
      }
      if (!lifted) {
        ok = false;
        if (ev)
          ev->push_back({"iso lifting", signature_key(q.sig(phi.sig), q.objects()),
                         "no lift of " + q.element_name(phi.sig, phi.elem) + " at " + p.objects()[x]});
      }
    }
  return ok;
}

bool is_cofibration_set(const Multifunctor& f) {
  std::set<int> seen(f.on_objects.begin(), f.on_objects.end());
  return seen.size() == f.on_objects.size();
}

bool is_trivial_fibration_set(const Multifunctor& f) {
  std::set<int> seen(f.on_objects.begin(), f.on_objects.end());
  if (static_cast<int>(seen.size()) != f.target->num_objects()) return false;
  return is_full(f) && is_faithful(f);
}

ModelVerdict classify_set(const Multifunctor& f) {
  ModelVerdict v = is_equivalence_set(f);
  bool fib = is_fibration_set(f, &v.evidence);
  v.fib = fib;
  v.cofib = is_cofibration_set(f);
  v.trivfib = is_trivial_fibration_set(f);
  v.evidence.push_back({"iso lifting", "", fib ? "yes" : "no"});
  v.evidence.push_back({"injective on objects", "", *v.cofib ? "yes" : "no"});
  return v;
}

}  // namespace opkit::model
