#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

#include "choquet/corpus.hpp"
#include "choquet/errors.hpp"

namespace py = pybind11;
using namespace choquet;

namespace {

// JSON text, a path on disk, or the name of an embedded fixture.
ProblemSpec load(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_problem(parse_json_text(source, "<string>"));
  if (std::filesystem::exists(source)) return load_problem_file(source);
  return fixture_problem(fixture(source));
}

Vec rationals(const std::vector<std::string>& items) {
  Vec v;
  for (const auto& s : items) v.push_back(parse_rational(s));
  return v;
}

std::string run(const std::string& command, const std::string& source, const std::optional<std::string>& point,
                const std::optional<std::vector<std::string>>& functional, const std::string& mode,
                const std::vector<std::string>& measures,
                const std::vector<std::pair<std::string, std::vector<std::string>>>& probes, bool text) {
  ProblemSpec spec = load(source);
  CommandRequest req;
  req.command = command;
  req.point = point;
  if (functional) req.functional = rationals(*functional);
  req.mode = mode;
  req.measures = measures;
  for (const auto& [label, x] : probes) req.extra_probes.push_back({spec.space.points().index(label), rationals(x)});
  return render(run_command(spec, req), !text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Choquet-theory analyses of finite vector-valued function spaces";
  py::register_exception<Error>(m, "ChoquetError", PyExc_ValueError);

  m.def("run", &run, py::arg("command"), py::arg("source"), py::kw_only(), py::arg("point") = std::nullopt,
        py::arg("functional") = std::nullopt, py::arg("mode") = "", py::arg("measures") = std::vector<std::string>{},
        py::arg("probes") = std::vector<std::pair<std::string, std::vector<std::string>>>{}, py::arg("text") = false,
        py::call_guard<py::gil_scoped_release>(),
        "Run one analysis; returns the report as JSON text (or the text rendering).");
  m.def(
      "verify_corpus",
      [](const std::optional<std::string>& name, bool text) { return render(verify_corpus(name), !text); },
      py::arg("fixture") = std::nullopt, py::arg("text") = false, py::call_guard<py::gil_scoped_release>());
  m.def("fixtures", [] {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& f : fixtures()) out.emplace_back(f.name, f.in_scope, f.note);
    return out;
  });
  m.def("fixture_document", [](const std::string& name) { return fixture(name).document; });
}
