#include "doctest.h"

#include "choquet/corpus.hpp"

#include <cstdlib>
#include <set>

#include "choquet/errors.hpp"

using namespace choquet;

namespace {

std::string failures_of(const Report& r) {
  std::string out;
  for (const auto& [name, f] : r.body["fixtures"].items())
    if (f["status"] == "fail") out += name + ": " + f.dump() + "\n";
  return out;
}

Report run(const std::string& fixture_name, CommandRequest req) {
  return run_command(fixture_problem(fixture(fixture_name)), req);
}

void set_threads(const char* v) { setenv("CHOQUET_THREADS", v, 1); }

}  // namespace

TEST_CASE("fixture list") {
  std::set<std::string> names;
  for (const auto& f : fixtures()) names.insert(f.name);
  for (const char* required :
       {"nezachovani", "renorm1", "renorm2", "wsnevs-const", "renorm-const-linf", "renorm-const-lp",
        "chH-protipr-linf", "chH-protipr-l1", "half-norm", "normyevaluaci1", "normyevaluaci2", "sec2-ex1", "sec2-ex3",
        "sec2-two-point", "nonrepresentable", "square", "simplexoid-l1-3", "simplexoid-linf-3", "vsnews",
        "normyevaluaci3"})
    CHECK_MESSAGE(names.count(required) == 1, required);
  CHECK_FALSE(fixture("vsnews").in_scope);
  CHECK_FALSE(fixture("normyevaluaci3").in_scope);
  CHECK_FALSE(fixture("vsnews").note.empty());
  CHECK(fixture("nezachovani.json").name == "nezachovani");
  CHECK_THROWS_AS(fixture("no-such-fixture"), Error);
  try {
    fixture("no-such-fixture");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownFixture);
  }
}

TEST_CASE("every expectation names its source") {
  for (const auto& f : fixtures()) {
    if (!f.in_scope) continue;
    ProblemSpec spec = fixture_problem(f);
    CHECK_MESSAGE(!spec.expectations.empty(), f.name);
    for (const auto& e : spec.expectations) {
      const std::string origin = e.value("origin", "");
      const bool sourced = (origin == "worked-example" && !e.value("where", "").empty()) ||
                           (origin == "oracle" && !e.value("oracle", "").empty());
      CHECK_MESSAGE(sourced, (f.name + ": " + e.dump()));
    }
  }
}

TEST_CASE("full corpus agrees and is byte-identical across thread counts") {
  set_threads("1");
  Report serial = verify_corpus();
  set_threads("3");
  Report parallel = verify_corpus();
  unsetenv("CHOQUET_THREADS");
  CHECK_MESSAGE(serial.exit_code == 0, failures_of(serial));
  CHECK(serial.body["summary"]["failed"] == 0);
  CHECK(serial.body["summary"]["out_of_scope"] == 2);
  CHECK(render(serial, true) == render(parallel, true));
  CHECK(render(serial, false) == render(parallel, false));
}

TEST_CASE("single-fixture verification") {
  Report r = verify_corpus("sec2-ex3");
  CHECK(r.exit_code == 0);
  CHECK(r.body["fixtures"].size() == 1);
  CHECK(r.body["fixtures"]["sec2-ex3"]["status"] == "pass");
  CHECK_THROWS_AS(verify_corpus("unknown"), Error);
}

TEST_CASE("mismatches are reported with expected and computed values") {
  ProblemSpec spec = fixture_problem(fixture("wsnevs-const"));
  spec.expectations = Json::array(
      {Json{{"check", "boundary"}, {"expected", Json::array({"0"})}, {"origin", "oracle"}, {"oracle", "hull-extreme"}}});
  auto out = run_expectations(spec);
  REQUIRE(out.size() == 1);
  CHECK_FALSE(out[0].passed);
  CHECK(out[0].computed == Json::array({"0", "1"}));
}

TEST_CASE("boundary command on nezachovani") {
  Report r = run("nezachovani", {.command = "boundary"});
  CHECK(r.exit_code == 0);
  CHECK(r.body["boundary"] == Json::array({"-2", "-1", "1", "2"}));
  CHECK(r.body["conditions"]["0"]["cond1"] == false);
}

TEST_CASE("vector simpliciality of wsnevs-const exits 1 with the witness pair") {
  Report r = run("wsnevs-const", {.command = "simplicial", .mode = "vector"});
  CHECK(r.exit_code == 1);
  const Json& w = r.body["vector"]["witness"];
  CHECK(w["point"] == "0");
  CHECK(w["x_star"] == Json::array({"0", "1"}));
  CHECK(w["measures"] == Json::parse(R"([[["0","1"],["0","0"]],[["0","0"],["0","1"]]])"));
}

TEST_CASE("represent returns the two endpoint measures") {
  Report r = run("nezachovani", {.command = "represent", .point = "0", .functional = Vec{1, 1}});
  CHECK(r.exit_code == 0);
  CHECK(r.body["norm"] == "3/2");
  CHECK(r.body["vertices"].size() == 2);
  CHECK(r.body["boundary_vertices"] == Json::array({false, true}));
}

TEST_CASE("Fails witnesses re-verify through represent") {
  for (const char* name : {"wsnevs-const", "renorm-const-linf", "renorm2"}) {
    ProblemSpec spec = fixture_problem(fixture(name));
    Report s = run_command(spec, {.command = "simplicial", .mode = "vector"});
    REQUIRE(s.exit_code == 1);
    const Json& w = s.body["vector"]["witness"];
    Report rep = run_command(spec, {.command = "represent",
                                    .point = w["point"].get<std::string>(),
                                    .functional = json_vec(w["x_star"])});
    for (const auto& m : w["measures"]) {
      bool found = false;
      for (std::size_t i = 0; i < rep.body["vertices"].size(); ++i)
        if (rep.body["vertices"][i] == m) {
          found = true;
          CHECK(rep.body["boundary_vertices"][i] == true);
        }
      CHECK_MESSAGE(found, name);
    }
    CHECK(rep.body["norm"] == w["mass"]);
  }
}

TEST_CASE("every command runs and reports are reproducible") {
  const std::vector<std::pair<std::string, CommandRequest>> cases{
      {"nezachovani", {.command = "analyze"}},
      {"nezachovani", {.command = "affine"}},
      {"nezachovani", {.command = "dilate"}},
      {"nezachovani", {.command = "order", .measures = {"delta_0", "pair_1"}}},
      {"nezachovani", {.command = "nmu", .measures = {"boundary_rep"}}},
      {"nezachovani", {.command = "product-rep", .point = "0", .functional = Vec{1, 1}}},
      {"square", {.command = "represent", .point = "0"}},
      {"sec2-ex3", {.command = "simplicial"}},
  };
  for (const auto& [name, req] : cases) {
    Report a = run(name, req), b = run(name, req);
    CHECK_MESSAGE(render(a, false) == render(b, false), req.command);
    CHECK(render(a, true) == render(b, true));
    CHECK(a.input_digest.size() == 64);
  }
  Report p = run("nezachovani", {.command = "product-rep", .point = "0", .functional = Vec{1, 1}});
  CHECK(p.body["mass"] == "3/2");
  CHECK(p.body["atoms"].size() == 4);
  Report o = run("nezachovani", {.command = "order", .measures = {"delta_0", "pair_1"}});
  CHECK(o.body["leq"] == true);
  CHECK(o.body["geq"] == false);
  Report d = run("nezachovani", {.command = "dilate"});
  CHECK(d.exit_code == 0);
  Report sq = run("square", {.command = "simplicial", .mode = "weak"});
  CHECK(sq.exit_code == 1);
}

TEST_CASE("digests depend on arguments") {
  Report a = run("nezachovani", {.command = "represent", .point = "0", .functional = Vec{1, 1}});
  Report b = run("nezachovani", {.command = "represent", .point = "0", .functional = Vec{1, 0}});
  CHECK(a.input_digest != b.input_digest);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("input errors") {
  try {
    parse_json_text("{\n  \"points\": [\"a\" \"b\"]\n}", "bad.json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("bad.json:2:") != std::string::npos);
  }
  auto doc = Json::parse(R"({"points": ["a"], "target": {"kind": "linf", "dim": 2}, "full": true})");
  CHECK_NOTHROW(parse_problem(doc));
  doc["target"]["kind"] = "hexagon";
  CHECK_THROWS_AS(parse_problem(doc), Error);
  auto bad_rational = Json::parse(R"({"points": ["a"], "target": {"kind": "linf", "dim": 1}, "basis": [[["x"]]]})");
  CHECK_THROWS_AS(parse_problem(bad_rational), Error);
  auto lp = fixture_problem(fixture("renorm1"));
  try {
    run_command(lp, {.command = "boundary"});
    run_command(lp, {.command = "dilate"});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SmoothNormUnsupported);
    CHECK(std::string(e.what()).find("SmoothNormUnsupported") != std::string::npos);
  }
  CHECK_THROWS_AS(run("nezachovani", {.command = "represent"}), Error);
  CHECK_THROWS_AS(run("nezachovani", {.command = "frobnicate"}), Error);
}
