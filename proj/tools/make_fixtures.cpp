// Writes the JSON fixtures used by the CLI tests and README examples.
#include <filesystem>
#include <iostream>

#include "opkit/cli/catalog.hpp"
#include "opkit/cli/json_io.hpp"
#include "opkit/multicat/construct.hpp"

using namespace opkit;
using io::json;

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const json& j) { io::write_file((dir / (name + ".json")).string(), j); };

  auto cat = catalog::multicategories();
  auto by = [&](const std::string& n) {
    for (const auto& [k, p] : cat)
      if (k == n) return p;
    throw std::runtime_error("no catalog entry " + n);
  };
  put("H", io::to_json(*by("H")));
  put("Z2", io::to_json(*by("Z2")));
  put("identity_H", io::to_json(identity_functor(by("H"))));
  put("identity_I", io::to_json(identity_functor(by("I"))));
  put("xi_i_to_h", io::to_json(model::xi_i_to_h()));
  {
    FunctorSearch s;
    auto f = enumerate_multifunctors(by("I"), by("Z2"), s).functors.at(0);
    put("point_Z2", io::to_json(f));
    auto g = enumerate_multifunctors(by("H"), by("I"), s).functors.at(0);
    put("H_to_I", io::to_json(g));
  }
  {
    json j = io::to_json(*associative_operad(3));
    auto& t = j["comp"]["*,*;*|0|*,*;*"][0];
    std::swap(t[0], t[1]);
    put("corrupt_ass", j);
  }
  {
    // a valid Sigma_2 action that no longer matches composition
    json j = io::to_json(*associative_operad(3));
    auto& t = j["ops"]["sigma"]["*,*;*|1"][0];
    std::swap(t[0], t[1]);
    put("equivariance_bug", j);
  }
  Collection empty;
  empty.colors = FinSet({"x"});
  empty.arity_bound = 2;
  put("empty_collection", io::to_json(empty));
  Collection f;
  f.colors = FinSet({"x"});
  f.arity_bound = 2;
  f.entries[Signature{{0}, 0}] = FinSet({"f"});
  put("free_monoid", json{{"generators", io::to_json(f)}, {"bound", 3}});
  for (const auto& [name, k] : catalog::sequences())
    if (name == "com" || name == "free2" || name == "J") put("seq_" + name, io::to_json(k));

  json manifest{{"backend", "finset"},
                {"bounds", {{"arity", 2}, {"dim", 2}, {"tree", 3}, {"lift_budget", 1000000}}},
                {"inputs",
                 {{"inc", "xi_i_to_h.json"}, {"id", "identity_H"}, {"proj", "H_to_I.json"}, {"J", "seq_J.json"}}},
                {"tasks", json::array()}};
  manifest["inputs"]["id"] = "identity_H.json";
  manifest["tasks"].push_back({{"op", "check"}, {"input", "inc"}, {"expect", {{"weq", true}, {"fib", false}, {"cofib", true}}}});
  manifest["tasks"].push_back({{"op", "check"}, {"input", "id"}, {"expect", {{"weq", true}, {"fib", true}, {"cofib", true}, {"trivfib", true}}}});
  manifest["tasks"].push_back({{"op", "check"}, {"input", "proj"}, {"expect", {{"fib", true}, {"trivfib", true}}}});
  manifest["tasks"].push_back({{"op", "factorize"}, {"input", "inc"}});
  manifest["tasks"].push_back({{"op", "circle"}, {"inputs", {"J", "J"}}});
  put("manifest", manifest);
  put("sweep_bad", json{{"inputs", {{"ass", "corrupt_ass.json"}, {"bug", "equivariance_bug.json"}, {"H", "H.json"}}},
                        {"tasks", json::array({json{{"op", "suite"}, {"catalog", {"H", "bug"}}}})}});
  put("sweep_empty", json{{"inputs", json::object()},
                          {"tasks", json::array({json{{"op", "suite"}, {"catalog", json::array()}}})}});
  std::cout << "fixtures written to " << dir.string() << "\n";
}
