#include "curvkit/error.hpp"
#include "curvkit/expression.hpp"
#include "curvkit/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <map>

namespace py = pybind11;
using nlohmann::json;
using namespace curvkit;

namespace {

ClassifyOptions options(std::uint64_t seed, int instantiations, int points) {
  ClassifyOptions o;
  o.seed = seed;
  o.instantiations = instantiations;
  o.points = points;
  return o;
}

CatalogEntry entry(const std::string& metric) {
  if (metric.size() > 5 && metric.substr(metric.size() - 5) == ".json") return load_file(metric);
  return load(metric);
}

SymbolTable table(const std::vector<std::string>& coordinates, const std::vector<std::string>& parameters,
                  const std::map<std::string, std::vector<std::string>>& functions) {
  std::vector<FunctionDecl> fs;
  for (const auto& [name, deps] : functions) fs.push_back({name, deps});
  return SymbolTable(coordinates, parameters, fs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact curvature tensors and curvature-structure checks";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  static py::handle input_error = m.attr("InputError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    }
  });

  m.def("catalog_ids", &catalog_ids);

  m.def("definition", [](const std::string& metric) { return to_json(entry(metric).definition).dump(); });

  m.def(
      "compute",
      [](const std::string& metric, const std::vector<std::string>& tensors, std::uint64_t seed) {
        CatalogEntry e = entry(metric);
        Classifier c = e.classifier(options(seed, 5, 3));
        json out = json::object();
        for (const auto& t : tensors) out[t] = tensor_components(c, tensor_name(t));
        return out.dump();
      },
      py::arg("metric"), py::arg("tensors"), py::arg("seed") = 7);

  m.def(
      "check",
      [](const std::string& metric, const std::string& suite, bool tables_only, bool corrected, std::uint64_t seed,
         int instantiations, int points) {
        CatalogEntry e = entry(metric);
        Classifier c = e.classifier(options(seed, instantiations, points));
        return check_report(e, c, {suite, tables_only, corrected}).dump();
      },
      py::arg("metric"), py::arg("suite") = "", py::arg("tables_only") = false, py::arg("corrected") = false,
      py::arg("seed") = 7, py::arg("instantiations") = 5, py::arg("points") = 3);

  m.def(
      "run",
      [](const std::string& metric, const std::string& check, std::uint64_t seed) {
        CatalogEntry e = entry(metric);
        Classifier c = e.classifier(options(seed, 5, 3));
        return c.report(c.run("check", json::parse(check))).dump();
      },
      py::arg("metric"), py::arg("check"), py::arg("seed") = 7);

  m.def(
      "compare",
      [](const std::string& first, const std::string& second, std::uint64_t seed) {
        return compare_report(first, second, options(seed, 5, 3)).dump();
      },
      py::arg("first"), py::arg("second"), py::arg("seed") = 7);

  m.def(
      "normalize",
      [](const std::string& text, const std::vector<std::string>& coordinates,
         const std::vector<std::string>& parameters, const std::map<std::string, std::vector<std::string>>& functions) {
        SymbolTable s = table(coordinates, parameters, functions);
        return print(normalize(parse(text, s)), s);
      },
      py::arg("text"), py::arg("coordinates"), py::arg("parameters") = std::vector<std::string>{},
      py::arg("functions") = std::map<std::string, std::vector<std::string>>{});

  m.def(
      "differentiate",
      [](const std::string& text, const std::string& coordinate, const std::vector<std::string>& coordinates,
         const std::vector<std::string>& parameters, const std::map<std::string, std::vector<std::string>>& functions) {
        SymbolTable s = table(coordinates, parameters, functions);
        auto r = s.resolve(coordinate);
        if (!r || std::find(coordinates.begin(), coordinates.end(), coordinate) == coordinates.end())
          throw InputError("'" + coordinate + "' is not a coordinate");
        return print(normalize(differentiate(parse(text, s), r->atom)), s);
      },
      py::arg("text"), py::arg("coordinate"), py::arg("coordinates"),
      py::arg("parameters") = std::vector<std::string>{},
      py::arg("functions") = std::map<std::string, std::vector<std::string>>{});
}
