#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "temporalis/entail.hpp"
#include "temporalis/parser.hpp"
#include "temporalis/semantics.hpp"

namespace py = pybind11;
using namespace temporalis;

namespace {

Program parse_program_py(const std::string &text) {
  return parse_program(text);
}

Dataset parse_dataset_py(const std::string &text) {
  return parse_dataset(text);
}

bool check_py(const std::string &program_text, const std::string &data_text,
              const std::string &mode) {
  Program program = parse_program(program_text);
  Dataset dataset = parse_dataset(data_text);
  Program normalized = normalize(program).output;
  StableChecker checker(normalized, dataset);
  if (mode == "fp" ||
      (mode == "auto" && is_forward_propagating(normalized)))
    return checker.has_stable_model_fp().has_value();
  return checker.has_stable_model_general().has_value();
}

bool entail_py(const std::string &program_text, const std::string &data_text,
               const std::string &fact_text, bool cautious) {
  Program program = parse_program(program_text);
  Dataset dataset = parse_dataset(data_text);
  Fact fact = parse_fact(fact_text);
  EntailmentQuery q;
  q.fact_atom = fact.atom;
  q.rho = fact.rho;
  q.mode = cautious ? EntailmentMode::Cautious : EntailmentMode::Brave;
  return entails(program, dataset, q);
}

std::vector<std::string> oracle_py(const std::string &program_text,
                                   const std::string &data_text) {
  Program program = parse_program(program_text);
  Dataset dataset = parse_dataset(data_text);
  SearchBox box = default_search_box(program, dataset);
  std::vector<std::string> out;
  for (const Interpretation &m :
       oracle_stable_models(program, dataset, box))
    out.push_back(m.to_string());
  return out;
}

std::string normalize_py(const std::string &program_text) {
  return normalize(parse_program(program_text)).output.to_string();
}

} // namespace

PYBIND11_MODULE(_temporalis, m) {
  m.doc() = "DatalogMTL reasoning with stable-model negation over the "
            "integer timeline";

  py::register_exception<GuardError>(m, "GuardError");
  py::register_exception<InputError>(m, "InputError");

  py::class_<Program>(m, "Program")
      .def("__str__", &Program::to_string)
      .def_property_readonly("t_pi", &Program::t_pi);
  py::class_<Dataset>(m, "Dataset")
      .def("__str__", &Dataset::to_string)
      .def_property_readonly("t_min", &Dataset::t_min)
      .def_property_readonly("t_max", &Dataset::t_max);

  m.def("parse_program", &parse_program_py, py::arg("text"),
        "Parse a .dmtl program");
  m.def("parse_dataset", &parse_dataset_py, py::arg("text"),
        "Parse a .dfacts dataset");
  m.def("normalize", &normalize_py, py::arg("program_text"),
        "Normal form of a program, as .dmtl text");
  m.def("has_stable_model", &check_py, py::arg("program_text"),
        py::arg("data_text"), py::arg("mode") = "auto",
        "Decide stable-model existence (mode: auto, fp, general)");
  m.def("entails", &entail_py, py::arg("program_text"), py::arg("data_text"),
        py::arg("fact"), py::arg("cautious") = false,
        "Brave (default) or cautious fact entailment");
  m.def("oracle_stable_models", &oracle_py, py::arg("program_text"),
        py::arg("data_text"),
        "All tail-constant stable models over the default search box, as "
        ".dfacts texts");
}
