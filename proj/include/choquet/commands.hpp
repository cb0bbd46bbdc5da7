#pragma once

#include <optional>
#include <string>

#include "choquet/boundary.hpp"
#include "choquet/problem.hpp"

namespace choquet {

// JSON views shared by the command line and the corpus checks. Rationals are canonical strings.
Json labels_json(const FiniteCompact& K, const std::vector<std::size_t>& idx);
Json subspace_json(const Subspace& S);
Json product_json(const FiniteCompact& K, ProductMeasure nu);
Json verdict_json(const FunctionSpace& H, const SimplicialityVerdict& v);
Json boundary_conditions_json(const BoundaryConditions& c);
Json structure_json(const FunctionSpace& H);
Json collapses_json(const FunctionSpace& H);
Json evaluation_norms_json(const FunctionSpace& H, std::size_t t, const std::optional<Vec>& x_star);
// Sorted by flattened coordinates.
Json vector_measures_json(std::vector<VectorMeasure> ms);

struct CommandRequest {
  std::string command;
  std::optional<std::string> point;
  std::optional<Vec> functional;
  std::string mode;
  std::vector<Probe> extra_probes;
  std::vector<std::string> measures;
};

struct Report {
  std::string command;
  std::string input_digest;
  Json body;
  int exit_code = 0;  // 0 computed, 1 a Fails verdict or failed check, 2 error
};

std::string sha256_hex(const std::string& data);
Report run_command(const ProblemSpec& spec, const CommandRequest& req);
// Aligned text tables, or the JSON document when as_json is set.
std::string render(const Report& r, bool as_json);

}  // namespace choquet
