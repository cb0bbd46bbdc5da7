#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "choquet/corpus.hpp"
#include "choquet/errors.hpp"

using namespace choquet;

namespace {

Vec parse_functional(const std::string& text) {
  Vec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (v.empty()) throw Error(ErrorCode::InvalidInput, "--functional is a comma-separated list of rationals");
  return v;
}

// A path on disk, or else the name of an embedded fixture.
ProblemSpec load(const std::string& path) {
  if (std::ifstream(path).good()) return load_problem_file(path);
  return fixture_problem(fixture(path));
}

std::vector<Probe> load_probes(const std::string& path, const ProblemSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc = parse_json_text(ss.str(), path);
  std::vector<Probe> out;
  try {
    for (const auto& p : doc) {
      Probe probe{spec.space.points().index(p.at("point").get<std::string>()), json_vec(p.at("x_star"))};
      if (probe.x_star.size() != spec.space.d()) throw Error(ErrorCode::DimensionMismatch, "probe x_star length");
      out.push_back(std::move(probe));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": probes are [{\"point\", \"x_star\"}]: " + e.what());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Choquet-theory analyses of finite vector-valued function spaces"};
  app.require_subcommand(1);

  std::string file, point, functional, mode, probes_file, fixture_name;
  std::vector<std::string> measures;
  bool as_json = false;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "structure, boundary, evaluation norms and simpliciality verdicts"},
      {"boundary", "Choquet boundary and the boundary conditions at every point"},
      {"represent", "vertices of the representing-measure polytope at --point"},
      {"simplicial", "weak, functional-weak and vector simpliciality (--mode)"},
      {"affine", "the spaces A_c^w(H) and the A_c^v(H) upper bound"},
      {"dilate", "the dilation matrix and its checks"},
      {"order", "maximality and the Choquet order for named --measure entries"},
      {"nmu", "the minimal element of N(mu) for a named vector --measure"},
      {"product-rep", "minimal representation over Ch x ext B_E* at --point, --functional"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "problem JSON file or corpus fixture name")->required();
    sub->add_option("--point", point, "point label");
    sub->add_option("--functional", functional, "x* as comma-separated rationals, e.g. 1,-1/2");
    sub->add_option("--mode", mode, "represent: scalar|vector; simplicial: weak|functional-weak|vector|all");
    sub->add_option("--probes", probes_file, "JSON list of extra {point, x_star} probes");
    sub->add_option("--measure", measures, "named measure from the problem file (repeatable)");
    sub->add_flag("--json", as_json, "machine-readable report");
  }
  auto* verify = app.add_subcommand("verify-corpus", "check every fixture's expectation table");
  verify->add_option("--fixture", fixture_name, "only this fixture");
  verify->add_flag("--json", as_json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "verify-corpus") {
      report = verify_corpus(fixture_name.empty() ? std::nullopt : std::optional<std::string>(fixture_name));
    } else {
      ProblemSpec spec = load(file);
      CommandRequest req;
      req.command = sub->get_name();
      if (!point.empty()) req.point = point;
      if (!functional.empty()) req.functional = parse_functional(functional);
      req.mode = mode;
      req.measures = measures;
      if (!probes_file.empty()) req.extra_probes = load_probes(probes_file, spec);
      report = run_command(spec, req);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << render(report, as_json);
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "time: " << ms << " ms\n";
  return report.exit_code;
}
