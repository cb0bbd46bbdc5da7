#pragma once

#include <optional>
#include <string>
#include <vector>

#include "choquet/commands.hpp"

namespace choquet {

// A worked example encoded as a problem document with its expectation table.
struct Fixture {
  std::string name;
  std::string document;  // JSON text as shipped in corpus/
  bool in_scope = true;
  std::string note;      // reason when out of scope
};

const std::vector<Fixture>& fixtures();
// Accepts "name" or "name.json"; UnknownFixture otherwise.
const Fixture& fixture(const std::string& name);
ProblemSpec fixture_problem(const Fixture& f);

// The computed value of one expectation's check on a problem.
Json evaluate_check(const ProblemSpec& spec, const std::string& check, const Json& args);
// Objects match when every expected key matches; everything else compares exactly.
bool json_matches(const Json& expected, const Json& computed);

struct ExpectationOutcome {
  std::string check;
  Json args;
  Json expected;
  Json computed;
  std::string origin;  // "worked-example" or "oracle"
  std::string where;   // step of the worked example, or the oracle name
  bool passed = false;
  std::string error;
};

std::vector<ExpectationOutcome> run_expectations(const ProblemSpec& spec);

// Runs every in-scope fixture (or just `filter`) in parallel; exit 0 only when all agree.
Report verify_corpus(const std::optional<std::string>& filter = std::nullopt);

}  // namespace choquet
