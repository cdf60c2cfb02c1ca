#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "modal/acceptance.hpp"
#include "modal/decide.hpp"
#include "modal/formula.hpp"
#include "modal/kripke.hpp"
#include "modal/onevar.hpp"
#include "modal/qbf.hpp"

namespace {

// Unsatisfied request on well-formed input: exit code 1.
struct DomainFailure {
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainFailure{"cannot read " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainFailure{"cannot write " + path};
  out << text;
}

/// Shared option pair: literal text or a file to read it from.
struct TextSource {
  std::string text;
  std::string path;

  std::string resolve(const char* what) const {
    if (!text.empty() && !path.empty())
      throw CLI::ValidationError(std::string(what) + " given both inline and as a file");
    if (!text.empty()) return text;
    if (!path.empty()) return slurp(path);
    throw CLI::ValidationError(std::string("missing ") + what);
  }
};

modal::Formula formula_arg(const TextSource& source) {
  return modal::parse_formula(source.resolve("formula"));
}

modal::Qbf qbf_arg(const TextSource& source) {
  return modal::parse_qbf(source.resolve("quantified formula"));
}

modal::FrameClass class_arg(const std::string& name) {
  return modal::parse_frame_class(name);
}

void emit_model(const modal::Model& model, const std::string& out_path) {
  const std::string text = modal::format_model(model);
  if (out_path.empty())
    std::cout << text;
  else
    spill(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kripke-semantics toolkit: modal satisfiability, quantified "
               "boolean translations and single-variable embeddings"};
  app.require_subcommand(1);

  TextSource formula_source, qbf_source;
  std::string class_name = "K", model_path, out_path, suite;
  int world = 0, chain_k = 1, context_n = 0;
  modal::Budget budget;
  std::uint32_t seed = 0;
  bool negated = false;

  auto add_formula = [&](CLI::App* cmd) {
    cmd->add_option("--formula", formula_source.text, "formula text");
    cmd->add_option("--in", formula_source.path, "file containing the formula");
  };
  auto add_qbf = [&](CLI::App* cmd) {
    cmd->add_option("--qbf", qbf_source.text, "quantified formula text");
    cmd->add_option("--in", qbf_source.path, "file containing the quantified formula");
  };
  auto add_class = [&](CLI::App* cmd) {
    cmd->add_option("--class", class_name,
                    "frame class: K, KD, T, KB, KDB or KTB (case-insensitive)");
  };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--max-worlds", budget.max_worlds, "world budget for the search");
    cmd->add_option("--max-nodes", budget.max_nodes, "node budget for the search");
    cmd->add_option("--wall-ms", budget.wall_ms, "wall-clock budget in milliseconds");
  };

  CLI::App* fmt = app.add_subcommand("fmt", "parse a formula and print it canonically");
  add_formula(fmt);

  CLI::App* check = app.add_subcommand("check", "evaluate a formula at a world of a model");
  add_formula(check);
  check->add_option("--model", model_path, "model file")->required();
  check->add_option("--world", world, "world id")->required();

  CLI::App* sat = app.add_subcommand("sat", "decide satisfiability over a frame class");
  add_formula(sat);
  add_class(sat);
  add_budget(sat);
  sat->add_option("--witness", out_path, "write the witness model to this file");

  CLI::App* valid = app.add_subcommand("valid", "decide validity over a frame class");
  add_formula(valid);
  add_class(valid);
  add_budget(valid);
  valid->add_option("--countermodel", out_path, "write a countermodel to this file");

  CLI::App* qbf_eval = app.add_subcommand("qbf-eval", "evaluate a quantified boolean formula");
  add_qbf(qbf_eval);

  CLI::App* qbf_translate =
      app.add_subcommand("qbf-translate", "print the modal translation of a quantified formula");
  add_qbf(qbf_translate);
  qbf_translate->add_flag("--negated", negated, "print the negated translation instead");

  CLI::App* qbf_witness = app.add_subcommand(
      "qbf-witness", "emit the strategy-tree model of a true quantified formula (root world 0)");
  add_qbf(qbf_witness);
  qbf_witness->add_option("--out", out_path, "write the model here instead of stdout");

  CLI::App* onevar_star =
      app.add_subcommand("onevar-star", "print the single-variable form of a formula");
  add_formula(onevar_star);

  CLI::App* onevar_embed = app.add_subcommand(
      "onevar-embed", "print the single-variable embedding (negated star of the negation)");
  add_formula(onevar_embed);

  CLI::App* onevar_chain = app.add_subcommand("onevar-chain", "emit a chain model");
  onevar_chain->add_option("--k", chain_k, "chain index (>= 1)")->required();
  onevar_chain->add_option("--out", out_path, "write the model here instead of stdout");

  CLI::App* onevar_attach = app.add_subcommand(
      "onevar-attach", "attach the chain models for p1..p(n+1) to a model");
  onevar_attach->add_option("--model", model_path, "model file")->required();
  onevar_attach->add_option("--n", context_n, "number of source variables")->required();
  add_class(onevar_attach);
  onevar_attach->add_option("--out", out_path, "write the model here instead of stdout");

  CLI::App* selftest = app.add_subcommand("selftest", "run the verification suites");
  selftest->add_option("--suite", suite, "run a single suite by name");
  selftest->add_option("--seed", seed, "seed for the randomized corpora");

  try {
    app.parse(argc, argv);

    if (*fmt) {
      std::cout << modal::print_formula(formula_arg(formula_source)) << "\n";
    } else if (*check) {
      const modal::Model model = modal::parse_model(slurp(model_path));
      const modal::Formula f = formula_arg(formula_source);
      if (world < 0 || world >= model.frame().world_count())
        throw DomainFailure{"world out of range"};
      std::cout << (modal::model_check(model, world, f) ? "true" : "false") << "\n";
    } else if (*sat) {
      const modal::SatResult r =
          modal::sat_decide(formula_arg(formula_source), class_arg(class_name), budget);
      if (modal::is_sat(r)) {
        const auto& w = std::get<modal::SatWitness>(r);
        std::cout << "SAT\nworld " << w.world << "\n";
        if (!out_path.empty()) spill(out_path, modal::format_model(w.model));
      } else {
        std::cout << (modal::is_unsat(r) ? "UNSAT" : "INCONCLUSIVE") << "\n";
        if (!out_path.empty()) throw DomainFailure{"no witness model available"};
      }
    } else if (*valid) {
      const modal::ValidityResult r =
          modal::decide_validity(formula_arg(formula_source), class_arg(class_name), budget);
      if (r.valid) {
        std::cout << "VALID\n";
        if (!out_path.empty()) throw DomainFailure{"no countermodel available"};
      } else if (r.conclusive) {
        const auto& w = std::get<modal::SatWitness>(r.counterexample);
        std::cout << "INVALID\nworld " << w.world << "\n";
        if (!out_path.empty()) spill(out_path, modal::format_model(w.model));
      } else {
        std::cout << "INCONCLUSIVE\n";
        if (!out_path.empty()) throw DomainFailure{"no countermodel available"};
      }
    } else if (*qbf_eval) {
      std::cout << (modal::evaluate_qbf(qbf_arg(qbf_source)) ? "true" : "false") << "\n";
    } else if (*qbf_translate) {
      const modal::Qbf q = qbf_arg(qbf_source);
      std::cout << modal::print_formula(negated ? modal::negated_translate_qbf(q)
                                                : modal::translate_qbf(q))
                << "\n";
    } else if (*qbf_witness) {
      const modal::Qbf q = qbf_arg(qbf_source);
      if (!modal::evaluate_qbf(q))
        throw DomainFailure{"the quantified formula is false; no witness model exists"};
      emit_model(modal::witness_model(q).first, out_path);
    } else if (*onevar_star) {
      const modal::Formula f = formula_arg(formula_source);
      std::cout << modal::print_formula(
                       modal::star(f, modal::EmbeddingContext::for_formula(f)))
                << "\n";
    } else if (*onevar_embed) {
      std::cout << modal::print_formula(modal::embed(formula_arg(formula_source))) << "\n";
    } else if (*onevar_chain) {
      if (chain_k < 1) throw CLI::ValidationError("--k must be at least 1");
      emit_model(modal::build_chain(chain_k).model, out_path);
    } else if (*onevar_attach) {
      if (context_n < 0) throw CLI::ValidationError("--n must be non-negative");
      const modal::Model model = modal::parse_model(slurp(model_path));
      emit_model(modal::attach(model, modal::EmbeddingContext{context_n},
                               class_arg(class_name)),
                 out_path);
    } else if (*selftest) {
      bool all_passed = true;
      for (const auto& r : modal::run_acceptance({seed, suite})) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail
                  << ")\n";
        all_passed = all_passed && r.passed;
      }
      if (!all_passed) return 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const modal::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
