#include "opkit/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "opkit/cli/catalog.hpp"
#include "opkit/cli/suites.hpp"
#include "opkit/error.hpp"
#include "opkit/oracle/orbit_oracle.hpp"

namespace opkit::cli {

namespace fs = std::filesystem;
using io::json;
using namespace opkit::model;

namespace {

enum class Kind { Functor, Multicat, Presentation, Collection };

Kind kind_of(const json& j) {
  if (j.is_object() && j.contains("source") && j.contains("target")) return Kind::Functor;
  if (j.is_object() && j.contains("comp")) return Kind::Multicat;
  if (j.is_object() && j.contains("generators")) return Kind::Presentation;
  if (j.is_object() && j.contains("colors") && j.contains("entries")) return Kind::Collection;
  throw ParseError("cannot tell what this document describes");
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Functor: return "multifunctor";
    case Kind::Multicat: return "multicategory";
    case Kind::Presentation: return "presentation";
    case Kind::Collection: return "collection";
  }
  return "?";
}

struct TaskResult {
  std::string status = "pass";  // pass | fail | input_error | budget_exhausted
  json body = json::object();
  std::string line;
  std::vector<std::pair<std::string, json>> artifacts;
  double seconds = 0;
};

struct Context {
  const Manifest& m;
  const Overrides& o;
  std::map<std::string, json> docs;  // loaded lazily per task

  const json& doc(const std::string& name) {
    auto it = docs.find(name);
    if (it != docs.end()) return it->second;
    throw ParseError("no input named '" + name + "'");
  }
};

json functor_body(const Multifunctor& f) {
  json objs = json::array();
  for (int x : f.on_objects) objs.push_back(f.target->objects()[x]);
  json ops = json::object();
  for (int s = 0; s < f.source->num_sigs(); ++s) ops[signature_key(f.source->sig(s), f.source->objects())] = f.on_ops[s];
  return {{"on_objects", objs}, {"on_ops", ops}};
}

json square_json(const RlpResult& r) {
  if (!r.counterexample) return nullptr;
  const auto& l = *r.counterexample;
  return {{"generating_map", r.failing_map},
          {"top", functor_body(l.f)},
          {"bottom", functor_body(l.g)},
          {"note", "no lift B -> P with h i = top and p h = bottom"}};
}

void fail(TaskResult& r, const std::string& why) {
  r.status = "fail";
  r.body["failures"].push_back(why);
}

Multifunctor load_functor(const json& j, Backend expect) {
  auto f = io::functor_from_json(j);
  if (f.source->backend() != expect)
    throw BackendMismatch("input is " + io::backend_name(f.source->backend()) + ", manifest says " +
                          io::backend_name(expect));
  return f;
}

// ---- check ----

void check_multicat(TaskResult& r, const json& j) {
  MultiData d = io::multidata_from_json(j);
  auto rep = validate(d);
  r.body["valid"] = rep.ok;
  r.body["instances_checked"] = rep.checked;
  r.body["axioms"] = rep.axioms;
  if (!rep.ok)
    for (const auto& f : rep.failures) fail(r, f);
  r.line = rep.ok ? "valid multicategory, " + std::to_string(d.objects.size()) + " objects"
                  : "invalid: " + rep.failures.front();
}

void check_functor(TaskResult& r, const json& j, const json& task, const Context& c) {
  // Localize bad tables before building anything.
  for (const char* side : {"source", "target"}) {
    auto rep = validate(io::multidata_from_json(j.at(side)));
    if (!rep.ok) {
      for (const auto& f : rep.failures) fail(r, std::string(side) + ": " + f);
      r.line = std::string("invalid ") + side + ": " + rep.failures.front();
      return;
    }
  }
  Multifunctor f = load_functor(j, c.m.backend);
  ModelVerdict v;
  json counter = nullptr;
  if (f.source->backend() == Backend::FinSet) {
    v = classify_set(f);
    if (v.trivfib && !*v.trivfib) counter = square_json(rlp_against(f, generating_cofibrations(), c.m.bounds.lift_budget));
    else if (v.fib && !*v.fib)
      counter = square_json(rlp_against(f, generating_acyclic_cofibrations(), c.m.bounds.lift_budget));
  } else {
    v = classify_simplicial(f, c.m.bounds.lift_budget);
  }
  r.body = io::report(v, c.m.bounds, counter);
  if (task.contains("expect"))
    for (const auto& [key, want] : task.at("expect").items()) {
      const json& got = r.body["verdict"].value(key, json(nullptr));
      if (got != want) fail(r, key + ": expected " + want.dump() + ", got " + got.dump());
    }
  std::ostringstream s;
  s << "weq=" << verdict_string(v.weq) << " fib=" << verdict_string(v.fib) << " cofib=" << verdict_string(v.cofib)
    << " trivfib=" << verdict_string(v.trivfib);
  r.line = s.str();
}

// ---- constructions ----

void factorize(TaskResult& r, const json& j, const Context& c) {
  Multifunctor f = load_functor(j, c.m.backend);
  if (f.source->backend() != Backend::FinSet) throw NotImplemented("factorize runs on finite-set multicategories");
  auto m = factorize_mc5(f);
  bool composite = same_functor(compose_functors(m.pfib, m.i), f);
  bool cof = is_cofibration_set(m.i);
  bool triv = is_trivial_fibration_set(m.pfib);
  r.body["evidence"] = {{"Pfib o I = F", composite}, {"I cofibration", cof}, {"Pfib trivial fibration", triv}};
  r.body["qprime_objects"] = io::to_json(m.qprime->objects());
  if (!composite) fail(r, "Pfib o I differs from F");
  if (!cof) fail(r, "I is not a cofibration");
  if (!triv) fail(r, "Pfib is not a trivial fibration");
  r.artifacts.push_back({"qprime", io::to_json(*m.qprime)});
  r.artifacts.push_back({"i", io::to_json(m.i)});
  r.artifacts.push_back({"pfib", io::to_json(m.pfib)});
  r.line = "Q' has " + std::to_string(m.qprime->num_objects()) + " objects";
}

void pushout(TaskResult& r, const json& j, const json& task, Context& c) {
  Multifunctor f = load_functor(j, c.m.backend);
  auto po = pushout_xi_h(f);
  std::vector<MultiPtr> targets;
  if (task.contains("targets")) {
    for (const auto& t : task.at("targets")) targets.push_back(io::multicategory_from_json(c.doc(t.get<std::string>())));
  } else {
    for (const auto& [n, p] : catalog::multicategories())
      if (p->num_objects() <= 3) targets.push_back(p);
  }
  auto cc = check_pushout(po.j, f, po.k, po.g, targets, c.m.bounds.lift_budget);
  bool full = is_full(po.g), faithful = is_faithful(po.g);
  r.body["evidence"] = {{"cocones", cc.cocones},
                        {"unique_mediating", cc.unique},
                        {"G full", full},
                        {"G faithful", faithful},
                        {"targets", targets.size()}};
  for (const auto& x : cc.failures) fail(r, x);
  if (cc.unique != cc.cocones && cc.failures.empty()) fail(r, "a cocone lacks a unique mediating map");
  if (!full || !faithful) fail(r, "G is not fully faithful");
  r.artifacts.push_back({"q", io::to_json(*po.q)});
  r.artifacts.push_back({"g", io::to_json(po.g)});
  r.artifacts.push_back({"k", io::to_json(po.k)});
  r.line = std::to_string(cc.cocones) + " cocones, " + std::to_string(cc.unique) + " with a unique mediating map";
}

void free_task(TaskResult& r, const json& j, const Context& c) {
  int bound = c.m.bounds.tree;
  json pres = j;
  if (kind_of(j) == Kind::Collection) pres = json{{"generators", j}, {"bound", bound}};
  if (c.o.tree) pres["bound"] = *c.o.tree;
  FreeMulticategory fr = io::free_from_json(pres);
  auto p = fr.multicategory();
  json sizes = json::object(), terms = json::object();
  for (const auto& [sig, ts] : fr.terms()) {
    std::string key = signature_key(sig, p->objects());
    sizes[key] = ts.size();
    json list = json::array();
    for (std::size_t i = 0; i < ts.size() && i < 20; ++i) list.push_back(fr.to_string(ts[i]));
    terms[key] = list;
  }
  r.body["tree_bound"] = fr.bound();
  r.body["partial"] = p->partial();
  r.body["sizes"] = sizes;
  r.body["terms"] = terms;
  r.artifacts.push_back({"free", io::to_json(*p)});
  r.line = std::to_string(p->num_sigs()) + " signatures" + (p->partial() ? ", cut at the tree bound" : "");
}

oracle::PlainSeq plain(const Collection& k) {
  oracle::PlainSeq p;
  for (const auto& [sig, v] : k.entries) {
    int n = sig.arity();
    p.size[n] = static_cast<int>(std::get<FinSet>(v).size());
    for (const auto& t : adjacent_transpositions(n)) p.gens[n].push_back(std::get<FinMap>(k.sigma_map(sig, t)).on);
  }
  return p;
}

std::pair<Collection, Collection> pair_of(const json& task, Context& c) {
  std::vector<std::string> names;
  if (task.contains("inputs")) names = task.at("inputs").get<std::vector<std::string>>();
  if (names.size() != 2) throw ParseError("this task needs two inputs");
  return {io::collection_from_json(c.doc(names[0])), io::collection_from_json(c.doc(names[1]))};
}

void circle_task(TaskResult& r, const json& task, Context& c) {
  auto [k, l] = pair_of(task, c);
  int bound = c.o.arity ? *c.o.arity : std::min(k.arity_bound, l.arity_bound);
  Collection kl = circle(k, l, bound);
  auto ref = oracle::circle(plain(k), plain(l), bound);
  auto mine = plain(kl);
  json rows = json::array();
  for (int n = 0; n <= bound; ++n) {
    int a = mine.size.count(n) ? mine.size[n] : 0;
    int b = ref.size.count(n) ? ref.size.at(n) : 0;
    bool same = a == b && (a == 0 || oracle::marks(mine, n) == oracle::marks(ref, n));
    rows.push_back({{"arity", n}, {"size", a}, {"oracle_size", b}, {"same_sigma_set", same}});
    if (!same) fail(r, "arity " + std::to_string(n) + ": " + std::to_string(a) + " vs oracle " + std::to_string(b));
  }
  r.body["bound"] = bound;
  r.body["entries"] = rows;
  r.artifacts.push_back({"circle", io::to_json(kl)});
  r.line = "K o L checked against the orbit oracle up to arity " + std::to_string(bound);
}

void hom_task(TaskResult& r, const json& task, Context& c) {
  std::vector<std::string> names;
  if (task.contains("inputs")) names = task.at("inputs").get<std::vector<std::string>>();
  if (names.size() != 2) throw ParseError("hom needs two inputs");
  const json& a = c.doc(names[0]);
  const json& b = c.doc(names[1]);
  if (kind_of(a) == Kind::Collection && kind_of(b) == Kind::Collection) {
    auto k = io::collection_from_json(a), l = io::collection_from_json(b);
    auto h = hom_seq(k, l);
    json fams = json::array();
    for (const auto& f : h.families) {
      json one = json::object();
      for (const auto& [n, m] : f) one[std::to_string(n)] = m.on;
      fams.push_back(one);
    }
    r.body["size"] = h.object.size();
    r.body["families"] = fams;
    r.line = std::to_string(h.object.size()) + " equivariant families";
    return;
  }
  auto p = io::multicategory_from_json(a), q = io::multicategory_from_json(b);
  FunctorSearch s;
  s.limit = 1000;
  auto res = enumerate_multifunctors(p, q, s);
  json list = json::array();
  for (const auto& f : res.functors) list.push_back(functor_body(f));
  r.body["count"] = res.functors.size();
  r.body["complete"] = res.functors.size() < 1000;
  r.body["functors"] = list;
  if (res.functors.size() >= 1000) r.status = "budget_exhausted";
  r.line = std::to_string(res.functors.size()) + " multifunctors";
}

void suite_task(TaskResult& r, const json& task, Context& c) {
  std::vector<suites::Result> results;
  if (task.contains("catalog")) {
    catalog::Named<MultiData> in;
    for (const auto& n : task.at("catalog")) in.push_back({n.get<std::string>(), io::multidata_from_json(c.doc(n))});
    results.push_back(suites::validate_all(in));
  } else {
    std::string name = task.value("name", "all");
    suites::Options o{c.o.seed, c.m.bounds.tree, c.m.bounds.lift_budget};
    for (const auto& s : suites::all())
      if (name == "all" || name == s.id) results.push_back(suites::run(s.id, o));
    if (results.empty()) throw ParseError("unknown suite '" + name + "'");
  }
  json list = json::array();
  int passed = 0;
  for (const auto& x : results) {
    list.push_back({{"id", x.id},
                    {"title", x.title},
                    {"pass", x.pass()},
                    {"instances", x.instances},
                    {"failures", x.failures},
                    {"budget_exhausted", x.budget_exhausted},
                    {"counterexamples", x.counterexamples},
                    {"warnings", x.warnings},
                    {"notes", x.notes}});
    passed += x.pass();
    if (!x.pass()) {
      if (x.failures) fail(r, x.id + ": " + (x.counterexamples.empty() ? "" : x.counterexamples.front()));
      else if (r.status == "pass") r.status = "budget_exhausted";
    }
    r.seconds += x.seconds;
  }
  r.body["suites"] = list;
  r.line = std::to_string(passed) + "/" + std::to_string(results.size()) + " suites pass";
}

// ---- task plumbing ----

std::vector<json> tasks_for(const std::string& cmd, const Manifest& m, const std::map<std::string, json>& docs) {
  std::vector<json> out;
  for (const auto& t : m.tasks)
    if (t.value("op", "") == cmd) out.push_back(t);
  if (m.has_tasks) return out;
  if (cmd == "suite") return {json{{"op", "suite"}, {"name", "all"}}};
  if (cmd == "circle" || cmd == "hom") {
    if (m.inputs.size() != 2) throw ParseError(cmd + " needs exactly two inputs");
    return {json{{"op", cmd}, {"inputs", {m.inputs[0].first, m.inputs[1].first}}}};
  }
  for (const auto& [name, path] : m.inputs) {
    Kind k = kind_of(docs.at(name));
    bool fits = cmd == "check" || (cmd == "free" && (k == Kind::Presentation || k == Kind::Collection)) ||
                ((cmd == "factorize" || cmd == "pushout") && k == Kind::Functor);
    if (fits) out.push_back(json{{"op", cmd}, {"input", name}});
  }
  return out;
}

TaskResult run_task(const std::string& cmd, const json& task, Context& c) {
  TaskResult r;
  auto t0 = std::chrono::steady_clock::now();
  try {
    std::string input = task.value("input", "");
    if (cmd == "check") {
      const json& j = c.doc(input);
      Kind k = kind_of(j);
      r.body["kind"] = kind_name(k);
      if (k == Kind::Multicat) check_multicat(r, j);
      else if (k == Kind::Functor) check_functor(r, j, task, c);
      else if (k == Kind::Collection) {
        auto col = io::collection_from_json(j);
        r.body["valid"] = true;
        r.line = "valid collection, " + std::to_string(col.entries.size()) + " nonempty entries";
      } else {
        auto fr = io::free_from_json(j);
        r.body["valid"] = true;
        r.line = "valid presentation";
      }
    } else if (cmd == "factorize") {
      factorize(r, c.doc(input), c);
    } else if (cmd == "pushout") {
      pushout(r, c.doc(input), task, c);
    } else if (cmd == "free") {
      free_task(r, c.doc(input), c);
    } else if (cmd == "circle") {
      circle_task(r, task, c);
    } else if (cmd == "hom") {
      hom_task(r, task, c);
    } else if (cmd == "suite") {
      suite_task(r, task, c);
    }
  } catch (const BoundExceeded& e) {
    r.status = "budget_exhausted";
    r.body["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    r.line = e.what();
  } catch (const ValidationError& e) {
    r.status = cmd == "check" ? "fail" : "input_error";
    r.body["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    r.line = e.what();
  } catch (const Error& e) {
    r.status = "input_error";
    r.body["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    r.line = e.what();
  } catch (const json::exception& e) {
    r.status = "input_error";
    r.body["error"] = {{"kind", "ParseError"}, {"message", e.what()}};
    r.line = e.what();
  }
  if (r.seconds == 0) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"check", "factorize", "pushout", "free", "circle", "hom", "suite"};
  return c;
}

Manifest load_manifest(const std::vector<std::string>& paths, const Overrides& o) {
  Manifest m;
  std::set<std::string> names;
  auto add_input = [&](std::string name, const std::string& path) {
    std::string base = name;
    for (int k = 2; names.count(name); ++k) name = base + "_" + std::to_string(k);
    names.insert(name);
    m.inputs.push_back({name, path});
  };
  for (const auto& path : paths) {
    json j = io::read_file(path);
    bool manifest = j.is_object() && (j.contains("tasks") || j.contains("inputs"));
    if (!manifest) {
      add_input(fs::path(path).stem().string(), path);
      continue;
    }
    fs::path dir = fs::path(path).parent_path();
    if (j.contains("backend")) m.backend = io::backend_from_name(j.at("backend").get<std::string>());
    if (j.contains("bounds")) {
      const json& b = j.at("bounds");
      m.bounds.arity = b.value("arity", m.bounds.arity);
      m.bounds.dim = b.value("dim", m.bounds.dim);
      m.bounds.tree = b.value("tree", m.bounds.tree);
      m.bounds.lift_budget = b.value("lift_budget", m.bounds.lift_budget);
    }
    if (j.contains("inputs"))
      for (const auto& [name, p] : j.at("inputs").items()) {
        fs::path q = p.get<std::string>();
        if (q.is_relative()) q = dir / q;
        if (!fs::exists(q)) throw ParseError(path + ": input '" + name + "' refers to missing file " + q.string());
        add_input(name, q.string());
      }
    if (j.contains("tasks")) {
      if (!j.at("tasks").is_array()) throw ParseError(path + ": tasks must be an array");
      for (const auto& t : j.at("tasks")) {
        if (!t.contains("op")) throw ParseError(path + ": a task lacks 'op'");
        m.tasks.push_back(t);
      }
      m.has_tasks = true;
    }
  }
  if (o.backend) m.backend = *o.backend;
  if (o.arity) m.bounds.arity = *o.arity;
  if (o.dim) m.bounds.dim = *o.dim;
  if (o.tree) m.bounds.tree = *o.tree;
  if (o.lift_budget) m.bounds.lift_budget = *o.lift_budget;
  if (m.bounds.arity <= 0 || m.bounds.dim <= 0 || m.bounds.tree < 0 || m.bounds.lift_budget <= 0)
    throw ParseError("bounds must be positive");
  return m;
}

Outcome run(const std::string& cmd, const Manifest& m, const Overrides& o) {
  if (std::find(commands().begin(), commands().end(), cmd) == commands().end())
    throw ParseError("unknown command '" + cmd + "'");
  Context c{m, o, {}};
  for (const auto& [name, path] : m.inputs) c.docs[name] = io::read_file(path);
  auto tasks = tasks_for(cmd, m, c.docs);

  std::vector<TaskResult> results(tasks.size());
  if (o.jobs == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_task(cmd, tasks[i], c);
  } else {
    std::vector<std::future<TaskResult>> futs;
    for (const auto& t : tasks) futs.push_back(std::async(std::launch::async, [&, t] { return run_task(cmd, t, c); }));
    for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  }

  Outcome out;
  json list = json::array(), timing = json::array();
  std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"input_error", 0}, {"budget_exhausted", 0}};
  std::ostringstream summary;
  if (tasks.empty()) summary << "warning: no tasks for '" << cmd << "'\n";
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    auto& r = results[i];
    ++counts[r.status];
    std::string label = tasks[i].value("input", tasks[i].contains("inputs") ? tasks[i]["inputs"].dump() : cmd);
    json artifacts = json::array();
    for (const auto& [name, doc] : r.artifacts) {
      std::string file = std::to_string(i) + "_" + cmd + "_" + name + ".json";
      if (!o.out_dir.empty()) {
        io::write_file((fs::path(o.out_dir) / file).string(), doc);
        artifacts.push_back(file);
      }
    }
    list.push_back({{"index", i}, {"op", cmd}, {"task", tasks[i]}, {"status", r.status}, {"result", r.body},
                    {"artifacts", artifacts}});
    timing.push_back({{"index", i}, {"seconds", r.seconds}});
    summary << "[" << r.status << "] " << cmd << " " << label << ": " << r.line << "\n";
  }
  out.report = {{"command", cmd},
                {"backend", io::backend_name(m.backend)},
                {"bounds", io::to_json(m.bounds)},
                {"seed", o.seed},
                {"tasks", list},
                {"summary", counts}};
  if (!o.out_dir.empty()) io::write_file((fs::path(o.out_dir) / "timing.json").string(), timing);
  out.summary = summary.str();
  if (counts["input_error"]) out.exit_code = kInputError;
  else if (counts["fail"]) out.exit_code = kFail;
  else if (counts["budget_exhausted"]) out.exit_code = kBudget;
  return out;
}

}  // namespace opkit::cli
