#include <functional>

#include "opkit/error.hpp"
#include "opkit/multicat/multifunctor.hpp"

namespace opkit {

namespace {

struct CompConstraint {
  int o, slot, i, a, b;  // a o_slot b
  int out;               // variable of the composite
};

class Search {
 public:
  Search(const MultiPtr& p, const MultiPtr& q, const FunctorSearch& opts, FunctorSearchResult& out)
      : p_(p), q_(q), P(*p), Q(*q), opts_(opts), out_(out) {
    offset_.resize(P.num_sigs() + 1, 0);
    for (int s = 0; s < P.num_sigs(); ++s) offset_[s + 1] = offset_[s] + P.size(s);
    int nv = offset_.back();
    sig_of_.resize(nv);
    for (int s = 0; s < P.num_sigs(); ++s)
      for (int x = 0; x < P.size(s); ++x) sig_of_[offset_[s] + x] = s;
    by_var_.resize(nv);
    for (int o = 0; o < P.num_sigs(); ++o)
      for (int slot = 0; slot < P.sig(o).arity(); ++slot)
        for (int i = 0; i < P.num_sigs(); ++i) {
          if (P.sig(i).output != P.sig(o).inputs[slot]) continue;
          for (int a = 0; a < P.size(o); ++a)
            for (int b = 0; b < P.size(i); ++b) {
              int rs;
              int c = P.compose(o, slot, i, a, b, 0, &rs);
              if (c < 0) continue;
              int id = static_cast<int>(comps_.size());
              comps_.push_back({o, slot, i, a, b, var(rs, c)});
              by_var_[var(o, a)].push_back(id);
              if (var(i, b) != var(o, a)) by_var_[var(i, b)].push_back(id);
            }
        }
    if (P.symmetric() && Q.symmetric())
      for (int s = 0; s < P.num_sigs(); ++s) gens_.push_back(adjacent_transpositions(P.sig(s).arity()));
    value_.assign(nv, -1);
  }

  void run() {
    std::vector<std::vector<int>> cands;
    for (int x = 0; x < P.num_objects(); ++x) {
      if (opts_.object_candidates) {
        cands.push_back((*opts_.object_candidates)[x]);
      } else {
        std::vector<int> all;
        for (int y = 0; y < Q.num_objects(); ++y) all.push_back(y);
        cands.push_back(all);
      }
    }
    objects_.assign(P.num_objects(), -1);
    objects(0, cands);
  }

 private:
  MultiPtr p_, q_;
  const Multicategory& P;
  const Multicategory& Q;
  const FunctorSearch& opts_;
  FunctorSearchResult& out_;
  std::vector<int> offset_, sig_of_;
  std::vector<CompConstraint> comps_;
  std::vector<std::vector<int>> by_var_;
  std::vector<std::vector<Perm>> gens_;
  std::vector<int> objects_, tsig_, value_, trail_;
  bool stop_ = false;

  int var(int s, int x) const { return offset_[s] + x; }

  bool spend() {
    if (!opts_.budget) return true;
    if (!opts_.budget->spend()) {
      out_.exhausted = true;
      stop_ = true;
      return false;
    }
    return true;
  }

  void objects(int k, const std::vector<std::vector<int>>& cands) {
    if (stop_) return;
    if (k == P.num_objects()) {
      with_objects();
      return;
    }
    for (int y : cands[k]) {
      objects_[k] = y;
      objects(k + 1, cands);
      if (stop_) return;
    }
  }

  Signature image(const Signature& s) const {
    Signature r{{}, objects_[s.output]};
    for (int x : s.inputs) r.inputs.push_back(objects_[x]);
    return r;
  }

  void with_objects() {
    if (!spend()) return;
    tsig_.assign(P.num_sigs(), -1);
    for (int s = 0; s < P.num_sigs(); ++s) {
      tsig_[s] = Q.sig_id(image(P.sig(s)));
      if (tsig_[s] < 0) return;
    }
    std::fill(value_.begin(), value_.end(), -1);
    trail_.clear();
    for (int x = 0; x < P.num_objects(); ++x)
      if (!assign(var(P.unit_sig(x), P.unit(x)), Q.unit(objects_[x]))) return;
    for (const auto& [k, v] : opts_.fixed)
      if (!assign(var(k.first, k.second), v)) return;
    descend(0);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  bool assign(int v0, int val0) {
    std::vector<std::pair<int, int>> work{{v0, val0}};
    while (!work.empty()) {
      auto [v, val] = work.back();
      work.pop_back();
      if (value_[v] >= 0) {
        if (value_[v] != val) return false;
        continue;
      }
      int s = sig_of_[v];
      int x = v - offset_[s];
      if (val < 0 || val >= Q.size(tsig_[s])) return false;
      if (opts_.allow && !opts_.allow(s, x, tsig_[s], val)) return false;
      value_[v] = val;
      trail_.push_back(v);
      if (!gens_.empty())
        for (const auto& t : gens_[s]) {
          int rs;
          int y = P.act(s, t, x, 0, &rs);
          work.push_back({var(rs, y), Q.act(tsig_[s], t, val)});
        }
      for (int c : by_var_[v]) {
        const auto& k = comps_[c];
        int va = value_[var(k.o, k.a)], vb = value_[var(k.i, k.b)];
        if (va < 0 || vb < 0) continue;
        int r = Q.compose(tsig_[k.o], k.slot, tsig_[k.i], va, vb);
        if (r < 0) return false;
        work.push_back({k.out, r});
      }
    }
    return true;
  }

  void descend(int from) {
    if (stop_) return;
    int nv = static_cast<int>(value_.size());
    int v = from;
    while (v < nv && value_[v] >= 0) ++v;
    if (v == nv) {
      emit();
      return;
    }
    int s = sig_of_[v];
    for (int val = 0; val < Q.size(tsig_[s]); ++val) {
      if (!spend()) return;
      std::size_t mark = trail_.size();
      if (assign(v, val)) descend(v + 1);
      undo(mark);
      if (stop_) return;
    }
  }

  void emit() {
    Multifunctor f{p_, q_, objects_, {}};
    f.on_ops.resize(P.num_sigs());
    for (int s = 0; s < P.num_sigs(); ++s)
      f.on_ops[s] = {std::vector<int>(value_.begin() + offset_[s], value_.begin() + offset_[s + 1])};
    out_.functors.push_back(std::move(f));
    if (opts_.limit >= 0 && static_cast<long>(out_.functors.size()) >= opts_.limit) stop_ = true;
  }
};

}  // namespace

FunctorSearchResult enumerate_multifunctors(const MultiPtr& p, const MultiPtr& q, const FunctorSearch& opts) {
  if (p->backend() != Backend::FinSet || q->backend() != Backend::FinSet)
    throw NotImplemented("functor search runs on finite-set multicategories");
  if (opts.object_candidates && static_cast<int>(opts.object_candidates->size()) != p->num_objects())
    throw SignatureError("one candidate list per source object required");
  FunctorSearchResult out;
  if (opts.limit == 0) return out;
  Search s(p, q, opts, out);
  s.run();
  return out;
}

long count_multifunctors(const MultiPtr& p, const MultiPtr& q, const FunctorSearch& opts) {
  return static_cast<long>(enumerate_multifunctors(p, q, opts).functors.size());
}

}  // namespace opkit
