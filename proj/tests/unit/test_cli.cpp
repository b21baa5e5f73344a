#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/runner/cli.hpp"
#include "gfp/runner/io.hpp"
#include "gfp/runner/report.hpp"
#include "gfp/runner/runner.hpp"

using namespace gfp;
using namespace gfp::runner;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("gfp_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "gfp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

fs::path write_json(const fs::path& dir, const std::string& name, const json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

json halfspace_sweep(const std::string& output) {
  return {{"experiment", "sweep"},
          {"set", {{"type", "halfspace"}, {"normal", {1.0}}, {"offset", 0.0}}},
          {"domain", {{"type", "whole"}, {"dim", 1}}},
          {"s", {0.9, 0.95, 0.99, 0.999}},
          {"engine", "semi-analytic"},
          {"output", output},
          {"acceptance", {{"max_relative_gap", 0.01}}}};
}

json small_mc_perimeter(const std::string& output) {
  return {{"experiment", "perimeter"},
          {"set", {{"type", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
          {"domain", {{"type", "ball"}, {"center", {0.0, 0.0}}, {"radius", 2.0}}},
          {"s", {0.3, 0.7}},
          {"engine", "heat-mc"},
          {"monte_carlo", {{"samples", 20000}, {"t_nodes", 24}}},
          {"seed", 17},
          {"output", output}};
}

}  // namespace

TEST_CASE("fnv1a and csv quoting") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const auto recs = parse_csv("x,y\r\n\"a,b\",\"q\"\"\"\r\n,3\r\n");
  REQUIRE(recs.size() == 3);
  CHECK(recs[1] == std::vector<std::string>{"a,b", "q\""});
  CHECK(recs[2] == std::vector<std::string>{"", "3"});
}

TEST_CASE("set and domain descriptors round-trip") {
  const std::vector<SetExpr> sets{
      SetExpr::halfspace({0.6, 0.8}, 0.25),
      SetExpr::ball({0.1, -0.2}, 1.5),
      SetExpr::box({-1.0, -0.5}, {1.0, 0.5}),
      SetExpr::polytope({{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 2.0}}),
      SetExpr::complement(SetExpr::ball({0.0, 0.0}, 0.3)),
      SetExpr::union_of(2, {SetExpr::ball({1.0, 0.0}, 0.5), SetExpr::box({-1.0, -1.0}, {0.0, 0.0})}),
      SetExpr::empty(2),
  };
  for (const auto& e : sets) {
    const json j = to_json(e);
    const SetExpr back = set_from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.dim() == e.dim());
  }
  for (const Domain& d : {Domain::whole(3), Domain::ball({0.0, 0.0}, 2.0), Domain::box({-1.0}, {1.0})}) {
    const json j = to_json(d);
    CHECK(to_json(domain_from_json(json::parse(j.dump()))) == j);
  }
  CHECK_THROWS_AS(set_from_json(json{{"type", "ball"}, {"center", {0.0}}, {"radius", 1.0}, {"color", "red"}}),
                  ConfigError);
  CHECK_THROWS_AS(set_from_json(json{{"type", "ball"}, {"center", {0.0}}, {"radius", -1.0}}), ConfigError);
  CHECK_THROWS_AS(domain_from_json(json{{"type", "torus"}}), ConfigError);
}

TEST_CASE("validation failures exit 2 and write nothing") {
  TempDir tmp;
  json bad = halfspace_sweep((tmp.path / "out").string());
  bad["s"] = {1.2};
  const auto cfg = write_json(tmp.path, "bad.json", bad);
  std::string err;
  CHECK(cli({"run", cfg.string()}, nullptr, &err) == kExitInvalid);
  CHECK(err.find("(0, 1)") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "out"));
  CHECK(cli({"validate", cfg.string()}) == kExitInvalid);

  json unknown = halfspace_sweep("x");
  unknown["colour"] = "blue";
  CHECK(cli({"validate", write_json(tmp.path, "u1.json", unknown).string()}) == kExitInvalid);
  unknown = small_mc_perimeter("x");
  unknown["monte_carlo"]["sampels"] = 10;
  CHECK(cli({"validate", write_json(tmp.path, "u2.json", unknown).string()}) == kExitInvalid);
  unknown = halfspace_sweep("x");
  unknown["levels"] = 8;  // valid key, wrong experiment
  CHECK(cli({"validate", write_json(tmp.path, "u3.json", unknown).string()}) == kExitInvalid);
  unknown = halfspace_sweep("x");
  unknown["acceptance"] = {{"monotone", true}};
  CHECK(cli({"validate", write_json(tmp.path, "u4.json", unknown).string()}) == kExitInvalid);

  std::ofstream(tmp.path / "garbage.json") << "{ not json";
  CHECK(cli({"validate", (tmp.path / "garbage.json").string()}) == kExitInvalid);
  CHECK(cli({"validate", (tmp.path / "missing.json").string()}) == kExitInvalid);
  CHECK(cli({"frobnicate"}) == kExitInvalid);
  CHECK(cli({"validate", write_json(tmp.path, "ok.json", halfspace_sweep("x")).string()}) == kExitOk);

  // sweeps must reach s >= 0.99
  json shallow = halfspace_sweep("x");
  shallow["s"] = {0.5, 0.9};
  CHECK(cli({"validate", write_json(tmp.path, "shallow.json", shallow).string()}) == kExitInvalid);
}

TEST_CASE("engine failures map to exit codes") {
  TempDir tmp;
  // semi-analytic does not cover balls: an engine-level rejection
  json unsupported = small_mc_perimeter((tmp.path / "u").string());
  unsupported["engine"] = "semi-analytic";
  CHECK(cli({"run", write_json(tmp.path, "u.json", unsupported).string()}) == kExitInvalid);
  CHECK_FALSE(fs::exists(tmp.path / "u"));

  json starved = {{"experiment", "kernel-identity"},
                  {"dims", {2}},
                  {"s", {0.5}},
                  {"r", {1.0}},
                  {"quadrature", {{"rel_tol", 1e-15}, {"max_evals", 16}}},
                  {"output", (tmp.path / "k").string()}};
  std::string err;
  CHECK(cli({"run", write_json(tmp.path, "k.json", starved).string()}, nullptr, &err) == kExitNonConvergence);
  CHECK(err.find("non-convergence") != std::string::npos);
}

TEST_CASE("sweep summary carries the reference and the relative gap") {
  TempDir tmp;
  const fs::path out = tmp.path / "h0";
  const auto cfg = write_json(tmp.path, "h0.json", halfspace_sweep(out.string()));
  REQUIRE(cli({"run", cfg.string()}) == kExitOk);
  const json summary = json::parse(read_file(out / "summary.json"));
  const json& frag = summary.at("results").at("all");
  CHECK(frag.at("reference").get<double>() == doctest::Approx(0.450158).epsilon(1e-6));
  CHECK(frag.at("relative_gap").get<double>() < 0.01);
  CHECK(frag.at("model").get<std::string>() == "linear in (1-s), least squares");
  CHECK(summary.at("passed").get<bool>());
  CHECK(summary.at("config").at("engine") == "semi-analytic");

  const json manifest = json::parse(read_file(out / "manifest.json"));
  CHECK(manifest.at("config_hash") == summary.at("config_hash"));
  CHECK(manifest.at("evals").at("gamma_limit_sweep").get<std::uint64_t>() > 0);
  CHECK_FALSE(fs::exists(out / "manifest.json.tmp"));

  const auto records = parse_csv(read_file(out / "results.csv"));
  REQUIRE(records.size() == 5);
  CHECK(records[0] == kCsvColumns);
  CHECK(records[1][0] == "sweep");
  CHECK(records[1][3].empty());

  // report: ascending (1 - s)
  std::string text;
  REQUIRE(cli({"report", out.string()}, &text) == kExitOk);
  std::ifstream dat(out / "plots" / "sweep.dat");
  std::string line;
  std::vector<double> gaps;
  while (std::getline(dat, line)) {
    if (line.empty() || line[0] == '#') continue;
    gaps.push_back(std::stod(line));
  }
  REQUIRE(gaps.size() == 4);
  CHECK(std::is_sorted(gaps.begin(), gaps.end()));
  CHECK(gaps.front() == doctest::Approx(0.001));
  CHECK(fs::exists(out / "plots" / "sweep.svg"));
}

TEST_CASE("reruns are byte-identical and reuse the cache") {
  TempDir tmp;
  const fs::path out = tmp.path / "p";
  const auto cfg = write_json(tmp.path, "p.json", small_mc_perimeter(out.string()));
  REQUIRE(cli({"run", cfg.string()}) == kExitOk);
  const std::string first = read_file(out / "results.csv");
  const std::string first_summary = read_file(out / "summary.json");
  CHECK(json::parse(read_file(out / "manifest.json")).at("cache_hits") == 0);

  REQUIRE(cli({"run", cfg.string()}) == kExitOk);
  CHECK(read_file(out / "results.csv") == first);
  CHECK(read_file(out / "summary.json") == first_summary);
  CHECK(json::parse(read_file(out / "manifest.json")).at("cache_hits") == 1);

  // fresh directory, no cache
  const fs::path other = tmp.path / "p2";
  REQUIRE(cli({"run", cfg.string(), "--output", other.string()}) == kExitOk);
  CHECK(read_file(other / "results.csv") == first);

  // the embedded config reproduces the run
  const fs::path third = tmp.path / "p3";
  REQUIRE(cli({"run", (out / "summary.json").string(), "--output", third.string()}) == kExitOk);
  CHECK(read_file(third / "results.csv") == first);

  // a different seed changes the hash and invalidates the cache
  json changed = small_mc_perimeter(out.string());
  changed["seed"] = 18;
  REQUIRE(cli({"run", write_json(tmp.path, "p_seed.json", changed).string()}) == kExitOk);
  CHECK(json::parse(read_file(out / "manifest.json")).at("cache_hits") == 0);
  CHECK(read_file(out / "results.csv") != first);
}

TEST_CASE("CSV bytes do not depend on the worker count") {
  TempDir tmp;
  const auto cfg_path = write_json(tmp.path, "w.json", small_mc_perimeter("unused"));
  const ExperimentConfig cfg = load_config(cfg_path.string());
  std::string one, eight;
  {
    ScopedWorkers w(1);
    run_to_directory(cfg, tmp.path / "w1");
    one = read_file(tmp.path / "w1" / "results.csv");
  }
  {
    ScopedWorkers w(8);
    run_to_directory(cfg, tmp.path / "w8");
    eight = read_file(tmp.path / "w8" / "results.csv");
  }
  CHECK(one == eight);
}

TEST_CASE("output root from the environment") {
  TempDir tmp;
  ::setenv("GFP_OUTPUT_ROOT", tmp.path.c_str(), 1);
  const ExperimentConfig cfg = parse_config(halfspace_sweep("rel/run"));
  CHECK(resolve_output(cfg) == tmp.path / "rel" / "run");
  CHECK(resolve_output(cfg, "/abs/dir") == fs::path("/abs/dir"));
  ::unsetenv("GFP_OUTPUT_ROOT");
  CHECK(resolve_output(cfg) == fs::path("rel/run"));
}

TEST_CASE("report preconditions and per-x0 cube files") {
  TempDir tmp;
  fs::create_directories(tmp.path / "empty");
  CHECK(cli({"report", (tmp.path / "empty").string()}) == kExitInvalid);
  CHECK(cli({"report", (tmp.path / "nowhere").string()}) == kExitInvalid);

  json cube = {{"experiment", "cube-density"},
               {"x0", {{0.0, 0.0}, {1.0, 0.0}}},
               {"r", {0.2, 0.1}},
               {"s", {0.999}},
               {"monte_carlo", {{"samples", 20000}, {"t_nodes", 16}}},
               {"seed", 3},
               {"output", (tmp.path / "cube").string()}};
  REQUIRE(cli({"run", write_json(tmp.path, "cube.json", cube).string()}) == kExitOk);
  REQUIRE(cli({"report", (tmp.path / "cube").string()}) == kExitOk);
  std::set<std::string> dats;
  for (const auto& f : fs::directory_iterator(tmp.path / "cube" / "plots"))
    if (f.path().extension() == ".dat") dats.insert(f.path().filename().string());
  CHECK(dats.size() == 2);
  CHECK(fs::exists(tmp.path / "cube" / "plots" / "cube_density.svg"));

  fs::remove(tmp.path / "cube" / "manifest.json");
  CHECK(cli({"report", (tmp.path / "cube").string()}) == kExitInvalid);
}

TEST_CASE("shipped configs validate and their keys are in the schema") {
  const fs::path root = GFP_SOURCE_DIR;
  const json schema = json::parse(read_file(root / "tools" / "schema" / "experiment.schema.json"));
  const json& props = schema.at("properties");
  int seen = 0;
  for (const auto& f : fs::directory_iterator(root / "tools" / "configs")) {
    const ExperimentConfig cfg = load_config(f.path().string());
    const json resolved = to_json(cfg);
    for (const auto& [key, value] : resolved.items()) {
      CHECK_MESSAGE(props.contains(key), key);
      if (value.is_object() && props.at(key).contains("properties")) {
        for (const auto& [sub, _] : value.items()) CHECK_MESSAGE(props.at(key).at("properties").contains(sub), sub);
      }
    }
    ++seen;
  }
  CHECK(seen >= 7);
}
