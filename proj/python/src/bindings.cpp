#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "modal/acceptance.hpp"
#include "modal/decide.hpp"
#include "modal/formula.hpp"
#include "modal/kripke.hpp"
#include "modal/onevar.hpp"
#include "modal/qbf.hpp"

namespace py = pybind11;

namespace {

modal::Budget make_budget(int max_worlds, std::uint64_t max_nodes, std::uint64_t wall_ms) {
  modal::Budget b;
  b.max_worlds = max_worlds;
  b.max_nodes = max_nodes;
  b.wall_ms = wall_ms;
  return b;
}

py::dict sat(const std::string& formula, const std::string& frame_class, int max_worlds,
             std::uint64_t max_nodes, std::uint64_t wall_ms) {
  const modal::SatResult r =
      modal::sat_decide(modal::parse_formula(formula), modal::parse_frame_class(frame_class),
                        make_budget(max_worlds, max_nodes, wall_ms));
  py::dict out;
  if (modal::is_sat(r)) {
    const auto& w = std::get<modal::SatWitness>(r);
    out["status"] = "sat";
    out["world"] = w.world;
    out["model"] = modal::format_model(w.model);
  } else if (modal::is_unsat(r)) {
    out["status"] = "unsat";
  } else {
    out["status"] = "inconclusive";
  }
  return out;
}

py::dict valid(const std::string& formula, const std::string& frame_class, int max_worlds,
               std::uint64_t max_nodes, std::uint64_t wall_ms) {
  const modal::ValidityResult r =
      modal::decide_validity(modal::parse_formula(formula), modal::parse_frame_class(frame_class),
                             make_budget(max_worlds, max_nodes, wall_ms));
  py::dict out;
  if (r.valid) {
    out["status"] = "valid";
  } else if (r.conclusive) {
    const auto& w = std::get<modal::SatWitness>(r.counterexample);
    out["status"] = "invalid";
    out["world"] = w.world;
    out["countermodel"] = modal::format_model(w.model);
  } else {
    out["status"] = "inconclusive";
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_modalkit, m) {
  m.doc() = "Kripke-semantics toolkit: modal satisfiability, quantified boolean "
            "translations and single-variable embeddings";

  py::register_exception<modal::ParseError>(m, "FormulaParseError", PyExc_ValueError);

  m.def(
      "fmt",
      [](const std::string& text) { return modal::print_formula(modal::parse_formula(text)); },
      py::arg("formula"), "Parse a formula and return its canonical form.");

  m.def(
      "model_check",
      [](const std::string& model, int world, const std::string& formula) {
        return modal::model_check(modal::parse_model(model), world,
                                  modal::parse_formula(formula));
      },
      py::arg("model"), py::arg("world"), py::arg("formula"),
      "Evaluate a formula at a world of a model given in the text format.");

  m.def("sat", &sat, py::arg("formula"), py::arg("frame_class") = "K",
        py::arg("max_worlds") = modal::Budget{}.max_worlds,
        py::arg("max_nodes") = modal::Budget{}.max_nodes,
        py::arg("wall_ms") = modal::Budget{}.wall_ms,
        "Decide satisfiability; returns a dict with status and, when satisfiable, a "
        "witness model and world.");

  m.def("valid", &valid, py::arg("formula"), py::arg("frame_class") = "K",
        py::arg("max_worlds") = modal::Budget{}.max_worlds,
        py::arg("max_nodes") = modal::Budget{}.max_nodes,
        py::arg("wall_ms") = modal::Budget{}.wall_ms,
        "Decide validity; returns a dict with status and, when invalid, a countermodel.");

  m.def(
      "qbf_eval",
      [](const std::string& text) { return modal::evaluate_qbf(modal::parse_qbf(text)); },
      py::arg("qbf"), "Evaluate a closed quantified boolean formula.");

  m.def(
      "qbf_translate",
      [](const std::string& text, bool negated) {
        const modal::Qbf q = modal::parse_qbf(text);
        return modal::print_formula(negated ? modal::negated_translate_qbf(q)
                                            : modal::translate_qbf(q));
      },
      py::arg("qbf"), py::arg("negated") = false,
      "Return the modal translation of a quantified boolean formula.");

  m.def(
      "qbf_witness",
      [](const std::string& text) {
        const modal::Qbf q = modal::parse_qbf(text);
        if (!modal::evaluate_qbf(q))
          throw std::invalid_argument("the quantified formula is false; no witness model exists");
        const auto [model, root] = modal::witness_model(q);
        return std::make_pair(modal::format_model(model), root);
      },
      py::arg("qbf"),
      "Return (model_text, root_world) for a true quantified boolean formula.");

  m.def(
      "star",
      [](const std::string& text) {
        const modal::Formula f = modal::parse_formula(text);
        return modal::print_formula(modal::star(f, modal::EmbeddingContext::for_formula(f)));
      },
      py::arg("formula"), "Return the single-variable form of a formula.");

  m.def(
      "embed",
      [](const std::string& text) {
        return modal::print_formula(modal::embed(modal::parse_formula(text)));
      },
      py::arg("formula"),
      "Return the validity-preserving single-variable embedding of a formula.");

  m.def(
      "chain_model",
      [](int k) {
        if (k < 1) throw std::invalid_argument("k must be at least 1");
        return modal::format_model(modal::build_chain(k).model);
      },
      py::arg("k"), "Return the k-th chain model in the text format.");

  m.def(
      "attach",
      [](const std::string& model, int n, const std::string& frame_class) {
        if (n < 0) throw std::invalid_argument("n must be non-negative");
        return modal::format_model(modal::attach(modal::parse_model(model),
                                                 modal::EmbeddingContext{n},
                                                 modal::parse_frame_class(frame_class)));
      },
      py::arg("model"), py::arg("n"), py::arg("frame_class") = "K",
      "Attach the chain models for p1..p(n+1) to a model and return the result.");

  m.def(
      "selftest",
      [](std::uint32_t seed, const std::string& suite) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : modal::run_acceptance({seed, suite}))
          out.emplace_back(r.name, r.passed, r.detail);
        return out;
      },
      py::arg("seed") = 0, py::arg("suite") = std::string(),
      "Run the verification suites; returns a list of (name, passed, detail).");
}
