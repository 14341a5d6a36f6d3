#include <set>

#include "opkit/error.hpp"
#include "opkit/model/model.hpp"

namespace opkit::model {

std::string to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::Found:
      return "found";
    case LiftStatus::None:
      return "none";
    default:
      return "budget_exhausted";
  }
}

namespace {

// Constraints on h: Y -> R.
struct Constraints {
  FunctorSearch search;
  bool infeasible = false;
  std::vector<std::function<bool(int, int, int, int)>> allows;

  explicit Constraints(const Multicategory& y, const Multicategory& r) {
    std::vector<int> all;
    for (int z = 0; z < r.num_objects(); ++z) all.push_back(z);
    search.object_candidates = std::vector<std::vector<int>>(y.num_objects(), all);
  }

  void restrict_object(int yobj, const std::function<bool(int)>& ok) {
    auto& c = (*search.object_candidates)[yobj];
    std::vector<int> keep;
    for (int z : c)
      if (ok(z)) keep.push_back(z);
    c = keep;
    if (c.empty()) infeasible = true;
  }

  // h along = value, for along: X -> Y and value: X -> R.
  void factor(const Multifunctor& along, const Multifunctor& value) {
    for (int x = 0; x < along.source->num_objects(); ++x) {
      int want = value.on_objects[x];
      restrict_object(along.on_objects[x], [&](int z) { return z == want; });
    }
    for (int s = 0; s < along.source->num_sigs(); ++s) {
      int ys = image_sig_id(along, s);
      for (int e = 0; e < along.source->size(s); ++e) {
        std::pair<int, int> key{ys, along.on_ops[s][0][e]};
        int v = value.on_ops[s][0][e];
        auto [it, fresh] = search.fixed.emplace(key, v);
        if (!fresh && it->second != v) infeasible = true;
      }
    }
  }

  // p h = g, for p: R -> Q and g: Y -> Q.
  void over(const Multifunctor& p, const Multifunctor& g) {
    for (int y = 0; y < g.source->num_objects(); ++y) {
      int want = g.on_objects[y];
      restrict_object(y, [&](int z) { return p.on_objects[z] == want; });
    }
    const Multifunctor* pp = &p;
    const Multifunctor* gg = &g;
    allows.push_back([pp, gg](int sig, int x, int tsig, int val) {
      return pp->on_ops[tsig][0][val] == gg->on_ops[sig][0][x];
    });
  }

  FunctorSearch finish(SearchBudget* budget, long limit) {
    FunctorSearch s = search;
    s.budget = budget;
    s.limit = limit;
    auto list = allows;
    if (!list.empty())
      s.allow = [list](int sig, int x, int tsig, int val) {
        for (const auto& a : list)
          if (!a(sig, x, tsig, val)) return false;
        return true;
      };
    return s;
  }
};

}  // namespace

bool commutes(const LiftingProblem& l) {
  if (!(*l.i.source == *l.f.source) || !(*l.i.target == *l.g.source) || !(*l.f.target == *l.p.source) ||
      !(*l.p.target == *l.g.target))
    return false;
  auto a = compose_functors(l.p, l.f);
  auto b = compose_functors(l.g, l.i);
  return a.on_objects == b.on_objects && a.on_ops == b.on_ops;
}

LiftResult solve_lift(const LiftingProblem& l, long budget) {
  if (!commutes(l)) throw ValidationError("lifting square does not commute");
  LiftResult r;
  Constraints c(*l.i.target, *l.f.target);
  c.factor(l.i, l.f);
  c.over(l.p, l.g);
  if (c.infeasible) return r;
  SearchBudget b{budget, false};
  auto res = enumerate_multifunctors(l.i.target, l.f.target, c.finish(&b, 1));
  r.steps = budget - b.remaining;
  if (!res.functors.empty()) {
    r.status = LiftStatus::Found;
    r.lift = res.functors.front();
  } else if (res.exhausted) {
    r.status = LiftStatus::BudgetExhausted;
  }
  return r;
}

Multifunctor xi_i_to_h(int arity_bound, Backend b, int dim_bound) {
  auto i = xi(*discrete_category(FinSet({"0"})), arity_bound);
  auto h = contractible_groupoid(2, arity_bound);
  if (b == Backend::FinSSet) {
    i = discrete_enrichment(*i, dim_bound);
    h = discrete_enrichment(*h, dim_bound);
  }
  Multifunctor f{i, h, {0}, {}};
  std::vector<std::vector<int>> levels;
  for (int lv = 0; lv < i->levels(); ++lv) levels.push_back({h->unit(0, lv)});
  f.on_ops = {levels};
  return f;
}

GeneratingSet generating_cofibrations(int max_n, int arity_bound) {
  GeneratingSet out;
  for (int n = 0; n <= max_n; ++n)
    for (const auto& g : enrich::generating_cofibrations(Backend::FinSet))
      out.push_back({"C1", "G" + std::to_string(n) + "[" + g.name + "]", corolla_map(n, g.map, arity_bound)});
  auto unit = xi(*discrete_category(FinSet({"0"})), arity_bound);
  out.push_back({"C2", "Xi(empty)->Xi(I)", Multifunctor{empty_multicategory(Backend::FinSet, arity_bound), unit, {}, {}}});
  return out;
}

GeneratingSet generating_acyclic_cofibrations(int max_n, int arity_bound) {
  GeneratingSet out;
  for (int n = 0; n <= max_n; ++n)
    for (const auto& g : enrich::generating_acyclic_cofibrations(Backend::FinSet))
      out.push_back({"A1", "G" + std::to_string(n) + "[" + g.name + "]", corolla_map(n, g.map, arity_bound)});
  out.push_back({"A2", "Xi(I)->Xi(H)", xi_i_to_h(arity_bound)});
  return out;
}

RlpResult rlp_against(const Multifunctor& f, const GeneratingSet& family, long budget) {
  RlpResult r;
  const MultiPtr& p = f.source;
  const MultiPtr& q = f.target;
  for (const auto& gm : family) {
    const Multifunctor& j = gm.map;
    SearchBudget b1{budget, false};
    FunctorSearch all;
    all.budget = &b1;
    auto bottoms = enumerate_multifunctors(j.target, q, all);
    if (bottoms.exhausted) r.exhausted = true;
    for (const auto& v : bottoms.functors) {
      auto vj = compose_functors(v, j);
      Constraints c(*j.source, *p);
      c.over(f, vj);
      if (c.infeasible) continue;
      SearchBudget b2{budget, false};
      auto tops = enumerate_multifunctors(j.source, p, c.finish(&b2, -1));
      if (tops.exhausted) r.exhausted = true;
      for (const auto& u : tops.functors) {
        ++r.squares;
        LiftingProblem lp{j, u, f, v};
        auto res = solve_lift(lp, budget);
        if (res.status == LiftStatus::BudgetExhausted) r.exhausted = true;
        if (res.status == LiftStatus::None && r.holds) {
          r.holds = false;
          r.counterexample = lp;
          r.failing_map = gm.tag + " " + gm.name;
          return r;
        }
      }
    }
  }
  return r;
}

CoconeCheck check_pushout(const Multifunctor& a, const Multifunctor& b, const Multifunctor& g, const Multifunctor& k,
                          const std::vector<MultiPtr>& targets, long budget) {
  CoconeCheck out;
  auto ga = compose_functors(g, a);
  auto kb = compose_functors(k, b);
  if (ga.on_objects != kb.on_objects || ga.on_ops != kb.on_ops) {
    out.failures.push_back("square does not commute");
    return out;
  }
  const MultiPtr& bm = a.target;
  const MultiPtr& cm = b.target;
  const MultiPtr& qm = g.target;
  for (const auto& r : targets) {
    SearchBudget b1{budget, false};
    FunctorSearch all;
    all.budget = &b1;
    auto lefts = enumerate_multifunctors(bm, r, all);
    for (const auto& f1 : lefts.functors) {
      auto f1a = compose_functors(f1, a);
      Constraints c(*cm, *r);
      c.factor(b, f1a);
      if (c.infeasible) continue;
      SearchBudget b2{budget, false};
      auto rights = enumerate_multifunctors(cm, r, c.finish(&b2, -1));
      for (const auto& f2 : rights.functors) {
        ++out.cocones;
        Constraints m(*qm, *r);
        m.factor(g, f1);
        m.factor(k, f2);
        long n = 0;
        if (!m.infeasible) {
          SearchBudget b3{budget, false};
          auto med = enumerate_multifunctors(qm, r, m.finish(&b3, 2));
          n = static_cast<long>(med.functors.size());
          if (med.exhausted) out.failures.push_back("budget exhausted");
        }
        if (n == 1)
          ++out.unique;
        else if (out.failures.size() < 5)
          out.failures.push_back(std::to_string(n) + " mediating maps into a " + std::to_string(r->num_objects()) +
                                 "-object target");
      }
    }
  }
  return out;
}

}  // namespace opkit::model
