#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "opkit/cli/catalog.hpp"
#include "opkit/cli/json_io.hpp"
#include "opkit/error.hpp"

using namespace opkit;
using namespace opkit::io;

TEST_CASE("round trip of enrichment values") {
  FinSet a({"p", "q"});
  CHECK(finset_from_json(json::parse(to_json(a).dump())) == a);
  auto d = enrich::nerve(enrich::codiscrete_groupoid(2), 2);
  CHECK(sset_from_json(json::parse(to_json(d).dump())) == d);
  EnrichMap f = enrich::map_to_point(d);
  CHECK(map_from_json(to_json(f), Backend::FinSSet) == f);
  CHECK_THROWS_AS(finset_from_json(json::parse("{\"a\":1}")), ParseError);
  CHECK_THROWS_AS(finset_from_json(json::parse("[\"a\",\"a\"]")), ValidationError);
}

TEST_CASE("round trip of sequences and collections") {
  for (const auto& [name, k] : catalog::sequences()) {
    INFO(name);
    CHECK(collection_from_json(json::parse(to_json(k).dump())) == k);
  }
}

TEST_CASE("round trip of multicategories and functors") {
  auto cat = catalog::multicategories();
  cat.push_back({"CatS", cat_s(FinSet({"a", "b"}), 2)});
  cat.push_back({"simplicial", discrete_enrichment(*contractible_groupoid(2, 2), 2)});
  for (const auto& [name, p] : cat) {
    INFO(name);
    auto q = multicategory_from_json(json::parse(to_json(*p).dump()));
    CHECK(q->data() == p->data());
  }
  auto sim = cat.back().second;
  CHECK(same_json_functor(functor_from_json(to_json(identity_functor(sim))), identity_functor(sim)));
  cat.pop_back();
  for (const auto& [name, f] : catalog::multifunctors(cat, 1)) {
    INFO(name);
    CHECK(same_json_functor(functor_from_json(to_json(f)), f));
  }
}

TEST_CASE("corrupted input is rejected with a localized message") {
  auto j = to_json(*associative_operad(3));
  auto& t = j["comp"]["*,*;*|0|*,*;*"][0];
  std::swap(t[0], t[1]);
  try {
    multicategory_from_json(j);
    FAIL("accepted a corrupted table");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find(" at ") != std::string::npos);
  }
  j = to_json(*associative_operad(2));
  j["units"] = json::object();
  CHECK_THROWS_AS(multicategory_from_json(j), Error);
  CHECK_THROWS_AS(multidata_from_json(json::parse("{}")), ParseError);
}

TEST_CASE("free multicategories from presentations") {
  Collection g;
  g.colors = FinSet({"x"});
  g.arity_bound = 2;
  g.entries[Signature{{0}, 0}] = FinSet({"f"});
  json pres{{"generators", to_json(g)}, {"bound", 3}};
  auto f = free_from_json(pres);
  CHECK(f.multicategory()->size(0) == 4);
  TreeNode ff = f.graft(f.generator(Signature{{0}, 0}, 0), 0, f.generator(Signature{{0}, 0}, 0));
  json tj = to_json(f, ff);
  CHECK(tree_from_json(f.generators(), f.generator_signatures(), tj) == ff);
  pres["relations"] = json::array({json::array({tj, to_json(f, f.leaf(0))})});
  auto r = free_from_json(pres);
  CHECK(r.multicategory()->size(0) == 2);
}

TEST_CASE("file errors carry a line number") {
  std::string path = "opkit_io_bad.json";
  {
    std::ofstream out(path);
    out << "{\n  \"a\": 1,\n  oops\n}\n";
  }
  try {
    read_file(path);
    FAIL("parsed invalid json");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(path + ":3") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("reports") {
  model::ModelVerdict v;
  v.weq = true;
  v.evidence.push_back({"W1", "x;x", "yes"});
  auto r = report(v, Bounds{});
  CHECK(r["verdict"]["weq"] == true);
  CHECK(r["verdict"]["fib"].is_null());
  CHECK(r["evidence"][0]["signature"] == "x;x");
  CHECK(r["bounds"]["tree"] == 4);
}
