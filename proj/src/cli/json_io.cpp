#include "opkit/cli/json_io.hpp"

#include <fstream>
#include <sstream>

#include "opkit/error.hpp"

namespace opkit::io {

namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string sigma_key(const Signature& s, const FinSet& colors, int perm) {
  return signature_key(s, colors) + "|" + std::to_string(perm);
}

std::pair<Signature, int> parse_sigma_key(const std::string& k, const FinSet& colors) {
  auto bar = k.rfind('|');
  if (bar == std::string::npos) throw ParseError("action key '" + k + "' lacks '|'");
  return {parse_signature(k.substr(0, bar), colors), std::stoi(k.substr(bar + 1))};
}

std::string comp_key(const CompKey& c, const FinSet& colors) {
  return signature_key(c.outer, colors) + "|" + std::to_string(c.slot) + "|" + signature_key(c.inner, colors);
}

CompKey parse_comp_key(const std::string& k, const FinSet& colors) {
  auto a = k.find('|');
  auto b = k.rfind('|');
  if (a == std::string::npos || a == b) throw ParseError("composition key '" + k + "' needs outer|slot|inner");
  return {parse_signature(k.substr(0, a), colors), std::stoi(k.substr(a + 1, b - a - 1)),
          parse_signature(k.substr(b + 1), colors)};
}

json map_on(const EnrichMap& f) {
  json on = json::array();
  if (auto* m = std::get_if<FinMap>(&f))
    for (int x : m->on) on.push_back(x);
  else
    for (const auto& s : std::get<SMap>(f).on) on.push_back(to_json(s));
  return on;
}

EnrichMap map_between(const EnrichValue& a, const EnrichValue& b, const json& on) {
  if (auto* x = std::get_if<FinSet>(&a)) {
    FinMap f{*x, std::get<FinSet>(b), on.get<std::vector<int>>()};
    enrich::validate(f);
    return f;
  }
  SMap f{std::get<SSet>(a), std::get<SSet>(b), {}};
  for (const auto& s : on) f.on.push_back(simplex_from_json(s));
  enrich::validate(f);
  return f;
}

}  // namespace

json to_json(const FinSet& s) { return s.elements(); }

FinSet finset_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("a finite set is an array of labels");
  try {
    return FinSet(j.get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("finite set: ") + e.what());
  }
}

json to_json(const enrich::Simplex& s) { return json::array({s.id, s.surj}); }

enrich::Simplex simplex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a simplex is [id, [surjection]]");
  return {j[0].get<int>(), j[1].get<std::vector<int>>()};
}

json to_json(const SSet& x) {
  json out = json::array();
  for (int i = 0; i < x.size(); ++i) {
    json faces = json::array();
    for (const auto& f : x.faces_of(i)) faces.push_back(to_json(f));
    out.push_back({{"name", x.name(i)}, {"dim", x.dim(i)}, {"faces", faces}});
  }
  return {{"simplices", out}};
}

SSet sset_from_json(const json& j) {
  SSet x;
  for (const auto& s : field(j, "simplices")) {
    std::vector<enrich::Simplex> faces;
    for (const auto& f : field(s, "faces")) faces.push_back(simplex_from_json(f));
    x.add(get<std::string>(s, "name"), get<int>(s, "dim"), faces);
  }
  return x;
}

json to_json(const EnrichValue& v) {
  if (auto* s = std::get_if<FinSet>(&v)) return to_json(*s);
  return to_json(std::get<SSet>(v));
}

EnrichValue value_from_json(const json& j, Backend b) {
  if (b == Backend::FinSet) return finset_from_json(j);
  return sset_from_json(j);
}

json to_json(const EnrichMap& f) {
  if (auto* m = std::get_if<FinMap>(&f)) return {{"source", to_json(m->source)}, {"target", to_json(m->target)}, {"on", m->on}};
  const auto& s = std::get<SMap>(f);
  return {{"source", to_json(s.source)}, {"target", to_json(s.target)}, {"on", map_on(f)}};
}

EnrichMap map_from_json(const json& j, Backend b) {
  return map_between(value_from_json(field(j, "source"), b), value_from_json(field(j, "target"), b), field(j, "on"));
}

std::string backend_name(Backend b) { return b == Backend::FinSet ? "finset" : "finsset"; }

Backend backend_from_name(const std::string& s) {
  if (s == "finset") return Backend::FinSet;
  if (s == "finsset") return Backend::FinSSet;
  throw ParseError("unknown backend '" + s + "'");
}

json to_json(const Collection& k) {
  json out{{"backend", backend_name(k.backend)},
           {"colors", to_json(k.colors)},
           {"arity_bound", k.arity_bound},
           {"symmetric", k.symmetric}};
  json entries = json::object();
  for (const auto& [s, v] : k.entries) entries[signature_key(s, k.colors)] = to_json(v);
  out["entries"] = entries;
  if (k.symmetric) {
    json sigma = json::object();
    for (const auto& [key, f] : k.sigma) sigma[sigma_key(key.first, k.colors, key.second)] = map_on(f);
    out["sigma"] = sigma;
  }
  if (k.pointed) {
    json pts = json::object();
    for (auto [x, e] : k.points) pts[k.colors[x]] = e;
    out["points"] = pts;
  }
  return out;
}

Collection collection_from_json(const json& j) {
  Collection k;
  k.backend = backend_from_name(get<std::string>(j, "backend"));
  k.colors = finset_from_json(field(j, "colors"));
  k.arity_bound = get<int>(j, "arity_bound");
  k.symmetric = j.value("symmetric", false);
  for (const auto& [key, v] : field(j, "entries").items())
    k.entries[parse_signature(key, k.colors)] = value_from_json(v, k.backend);
  if (j.contains("sigma"))
    for (const auto& [key, on] : j.at("sigma").items()) {
      auto [s, p] = parse_sigma_key(key, k.colors);
      const auto& perms = all_perms(s.arity());
      if (p < 0 || p >= static_cast<int>(perms.size())) throw ParseError("bad permutation index in '" + key + "'");
      k.sigma[{s, p}] = map_between(k.entry(s), k.entry(act(s, perms[p])), on);
    }
  if (j.contains("points")) {
    k.pointed = true;
    for (const auto& [x, e] : j.at("points").items()) {
      int c = k.colors.index_of(x);
      if (c < 0) throw ParseError("unknown color '" + x + "' in points");
      k.points[c] = e.get<int>();
    }
  }
  validate(k);
  return k;
}

json to_json(const MultiData& d) {
  json entries = json::object(), sigma = json::object(), comp = json::object();
  for (const auto& [s, v] : d.entries) entries[signature_key(s, d.objects)] = to_json(v);
  for (const auto& [key, t] : d.sigma) sigma[sigma_key(key.first, d.objects, key.second)] = t;
  for (const auto& [key, t] : d.comp) comp[comp_key(key, d.objects)] = t;
  json units = json::object();
  for (std::size_t x = 0; x < d.units.size(); ++x) units[d.objects[x]] = d.units[x];
  return {{"backend", backend_name(d.backend)},
          {"objects", to_json(d.objects)},
          {"bounds", {{"arity", d.arity_bound}, {"dim", d.dim_bound}}},
          {"symmetric", d.symmetric},
          {"partial", d.partial},
          {"ops", {{"entries", entries}, {"sigma", sigma}}},
          {"comp", comp},
          {"units", units}};
}

MultiData multidata_from_json(const json& j) {
  MultiData d;
  d.backend = backend_from_name(get<std::string>(j, "backend"));
  d.objects = finset_from_json(field(j, "objects"));
  const json& b = field(j, "bounds");
  d.arity_bound = get<int>(b, "arity");
  d.dim_bound = b.value("dim", 0);
  d.symmetric = j.value("symmetric", true);
  d.partial = j.value("partial", false);
  const json& ops = field(j, "ops");
  for (const auto& [key, v] : field(ops, "entries").items())
    d.entries[parse_signature(key, d.objects)] = value_from_json(v, d.backend);
  if (ops.contains("sigma"))
    for (const auto& [key, t] : ops.at("sigma").items())
      d.sigma[parse_sigma_key(key, d.objects)] = t.get<std::vector<std::vector<int>>>();
  for (const auto& [key, t] : field(j, "comp").items())
    d.comp[parse_comp_key(key, d.objects)] = t.get<std::vector<std::vector<int>>>();
  const json& u = field(j, "units");
  d.units.assign(d.objects.size(), -1);
  for (const auto& [x, e] : u.items()) {
    int c = d.objects.index_of(x);
    if (c < 0) throw ParseError("unknown object '" + x + "' in units");
    d.units[c] = e.get<int>();
  }
  return d;
}

json to_json(const Multicategory& p) { return to_json(p.data()); }

MultiPtr multicategory_from_json(const json& j) { return make_multi(multidata_from_json(j)); }

json to_json(const Multifunctor& f) {
  json objs = json::array();
  for (int x : f.on_objects) objs.push_back(f.target->objects()[x]);
  json ops = json::object();
  for (int s = 0; s < f.source->num_sigs(); ++s) ops[signature_key(f.source->sig(s), f.source->objects())] = f.on_ops[s];
  return {{"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"on_objects", objs}, {"on_ops", ops}};
}

Multifunctor functor_from_json(const json& j) {
  Multifunctor f{multicategory_from_json(field(j, "source")), multicategory_from_json(field(j, "target")), {}, {}};
  for (const auto& x : field(j, "on_objects")) {
    int c = f.target->objects().index_of(x.get<std::string>());
    if (c < 0) throw ParseError("unknown target object '" + x.get<std::string>() + "'");
    f.on_objects.push_back(c);
  }
  if (f.on_objects.size() != f.source->objects().size()) throw ParseError("on_objects has the wrong length");
  f.on_ops.assign(f.source->num_sigs(), {});
  const json& ops = field(j, "on_ops");
  for (const auto& [key, t] : ops.items()) {
    int s = f.source->sig_id(parse_signature(key, f.source->objects()));
    if (s < 0) throw ParseError("signature '" + key + "' is empty in the source");
    f.on_ops[s] = t.get<std::vector<std::vector<int>>>();
  }
  for (int s = 0; s < f.source->num_sigs(); ++s)
    if (f.on_ops[s].empty())
      throw ParseError("on_ops lacks '" + signature_key(f.source->sig(s), f.source->objects()) + "'");
  auto rep = check_multifunctor(f);
  if (!rep.ok) throw ValidationError("not a multifunctor: " + rep.failures.front());
  return f;
}

bool same_json_functor(const Multifunctor& a, const Multifunctor& b) {
  return a.source->data() == b.source->data() && a.target->data() == b.target->data() && same_functor(a, b);
}

json to_json(const FreeMulticategory& f, const TreeNode& t) {
  const FinSet& colors = f.generators().colors;
  if (t.gen < 0) return {{"leaf", t.leaf}, {"color", colors[t.color]}};
  const Signature& s = f.generator_signatures()[t.gen];
  json kids = json::array();
  for (const auto& c : t.children) kids.push_back(to_json(f, c));
  return {{"op", signature_key(s, colors)},
          {"elem", std::get<FinSet>(f.generators().entry(s))[t.elem]},
          {"children", kids}};
}

TreeNode tree_from_json(const Collection& k, const std::vector<Signature>& gsigs, const json& j) {
  if (j.contains("leaf")) {
    int c = k.colors.index_of(get<std::string>(j, "color"));
    if (c < 0) throw ParseError("unknown leaf color");
    return TreeNode{-1, 0, c, get<int>(j, "leaf"), {}};
  }
  Signature s = parse_signature(get<std::string>(j, "op"), k.colors);
  auto it = std::find(gsigs.begin(), gsigs.end(), s);
  if (it == gsigs.end()) throw ParseError("no generators at '" + j.at("op").get<std::string>() + "'");
  FinSet e = std::get<FinSet>(k.entry(s));
  int x = e.index_of(get<std::string>(j, "elem"));
  if (x < 0) throw ParseError("unknown generator '" + j.at("elem").get<std::string>() + "'");
  TreeNode t{static_cast<int>(it - gsigs.begin()), x, s.output, -1, {}};
  for (const auto& c : field(j, "children")) t.children.push_back(tree_from_json(k, gsigs, c));
  if (static_cast<int>(t.children.size()) != s.arity()) throw ParseError("vertex has the wrong number of children");
  return t;
}

FreeMulticategory free_from_json(const json& j) {
  Collection k = collection_from_json(field(j, "generators"));
  int bound = get<int>(j, "bound");
  std::vector<std::pair<TreeNode, TreeNode>> rel;
  if (j.contains("relations") && !j.at("relations").empty()) {
    FreeMulticategory probe(k, 0);
    const auto& gs = probe.generator_signatures();
    for (const auto& r : j.at("relations")) {
      if (!r.is_array() || r.size() != 2) throw ParseError("a relation is a pair of trees");
      rel.push_back({tree_from_json(probe.generators(), gs, r[0]), tree_from_json(probe.generators(), gs, r[1])});
    }
  }
  return FreeMulticategory(k, bound, rel);
}

json to_json(const Bounds& b) {
  return {{"arity", b.arity}, {"dim", b.dim}, {"tree", b.tree}, {"lift_budget", b.lift_budget}};
}

json verdict_json(const model::ModelVerdict& v) {
  auto tri = [](const std::optional<bool>& x) -> json { return x ? json(*x) : json(nullptr); };
  return {{"weq", tri(v.weq)}, {"fib", tri(v.fib)}, {"cofib", tri(v.cofib)}, {"trivfib", tri(v.trivfib)}};
}

json report(const model::ModelVerdict& v, const Bounds& b, const json& counterexample) {
  json ev = json::array();
  for (const auto& e : v.evidence) ev.push_back({{"condition", e.condition}, {"signature", e.signature}, {"result", e.result}});
  return {{"verdict", verdict_json(v)}, {"evidence", ev}, {"counterexample", counterexample}, {"bounds", to_json(b)}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // byte offset -> line
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
    std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    long line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace opkit::io
