#include "modal/acceptance.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modal/decide.hpp"
#include "modal/formula.hpp"
#include "modal/kripke.hpp"
#include "modal/onevar.hpp"
#include "modal/qbf.hpp"

namespace modal {

namespace {

SuiteResult pass(std::string name, std::string detail) {
  return SuiteResult{std::move(name), true, std::move(detail)};
}

SuiteResult fail(std::string name, std::string detail) {
  return SuiteResult{std::move(name), false, std::move(detail)};
}

// ---- corpora ------------------------------------------------------------

Formula random_formula(std::mt19937& rng, int budget) {
  if (budget <= 1) {
    switch (rng() % 4) {
      case 0:
        return Formula::falsum();
      case 1:
        return Formula::top();
      default:
        return Formula::var(1 + static_cast<int>(rng() % 2));
    }
  }
  if (budget == 2) {
    Formula body = random_formula(rng, 1);
    switch (rng() % 3) {
      case 0:
        return Formula::neg(std::move(body));
      case 1:
        return Formula::box(std::move(body));
      default:
        return Formula::diamond(std::move(body));
    }
  }
  switch (rng() % 6) {
    case 0:
      return Formula::neg(random_formula(rng, budget - 1));
    case 1:
      return Formula::box(random_formula(rng, budget - 1));
    case 2:
      return Formula::diamond(random_formula(rng, budget - 1));
    case 3: {
      const int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget - 2));
      Formula a = random_formula(rng, left);
      Formula b = random_formula(rng, budget - 1 - left);
      return Formula::implies(std::move(a), std::move(b));
    }
    case 4: {
      const int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget - 2));
      Formula a = random_formula(rng, left);
      Formula b = random_formula(rng, budget - 1 - left);
      return Formula::conj({std::move(a), std::move(b)});
    }
    default: {
      const int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget - 2));
      Formula a = random_formula(rng, left);
      Formula b = random_formula(rng, budget - 1 - left);
      return Formula::disj({std::move(a), std::move(b)});
    }
  }
}

std::vector<Formula> build_random_corpus(std::uint32_t seed, int count, int max_size) {
  std::mt19937 rng(seed);
  std::vector<Formula> out;
  std::set<std::string> seen;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 1000000)
      throw std::logic_error("random corpus generation stalled");
    Formula f = random_formula(rng, 2 + static_cast<int>(rng() % 7));
    if (f.size() > max_size) continue;
    if (seen.insert(print_formula(f)).second) out.push_back(std::move(f));
  }
  return out;
}

std::vector<Qbf> build_qbf_corpus() {
  const std::vector<std::string> one = {"p1",    "~p1",   "p1 | ~p1", "p1 & ~p1",
                                        "true",  "false", "p1 -> p1", "~~p1"};
  const std::vector<std::string> two = {"(p1 -> p2) & (p2 -> p1)",
                                        "p1 & p2",
                                        "p1 | p2",
                                        "p1 -> p2",
                                        "p2 -> p1",
                                        "p1 & ~p2",
                                        "(p1 | p2) & (~p1 | ~p2)",
                                        "p2",
                                        "~p1 | p2",
                                        "true",
                                        "false",
                                        "~(p1 & p2)"};
  std::vector<Qbf> out;
  for (const char* prefix : {"E p1 . ", "A p1 . "})
    for (const std::string& m : one) out.push_back(parse_qbf(prefix + m));
  for (const char* prefix : {"E p1 E p2 . ", "E p1 A p2 . ", "A p1 E p2 . ",
                             "A p1 A p2 . "})
    for (const std::string& m : two) out.push_back(parse_qbf(prefix + m));
  return out;
}

struct AttachCase {
  Formula phi;
  FrameClass cls;
  Model attached;
  int w0;
  int base_worlds;
  int chains;  // chains 1..chains are attached
};

struct Shared {
  explicit Shared(const AcceptanceOptions& options) : opt(options) {}

  const std::vector<Formula>& formulas() {
    if (!corpus) corpus = build_random_corpus(opt.seed, 200, 8);
    return *corpus;
  }

  const std::vector<AttachCase>& attached() {
    if (!cases) {
      cases.emplace();
      for (const Formula& phi : formulas()) {
        for (FrameClass cls : {FrameClass::K, FrameClass::KB, FrameClass::KTB}) {
          SatResult r = sat_bruteforce(phi, cls, 3);
          if (!is_sat(r)) continue;
          const SatWitness& w = std::get<SatWitness>(r);
          auto [prime, w0] = star_witness(w.model, w.world, phi, cls);
          const EmbeddingContext ctx = EmbeddingContext::for_formula(phi);
          cases->push_back(AttachCase{phi, cls, std::move(prime), w0,
                                      w.model.frame().world_count(), ctx.fresh()});
        }
      }
    }
    return *cases;
  }

  const std::vector<Qbf>& qbfs() {
    if (!qbf_corpus) qbf_corpus = build_qbf_corpus();
    return *qbf_corpus;
  }

  AcceptanceOptions opt;
  std::optional<std::vector<Formula>> corpus;
  std::optional<std::vector<AttachCase>> cases;
  std::optional<std::vector<Qbf>> qbf_corpus;
};

// ---- suites -------------------------------------------------------------

SuiteResult marker_uniqueness(Shared&) {
  const std::string name = "marker-uniqueness";
  int checks = 0;
  for (int k = 1; k <= 5; ++k) {
    const ChainModel chain = build_chain(k);
    for (int i = 1; i <= k; ++i) {
      const Formula marker = center_marker(i);
      const int centre = chain.c_world(i);
      for (int x = chain.root_world; x <= centre; ++x) {
        const bool got = model_check(chain.model, x, marker);
        if (got != (x == centre)) {
          std::ostringstream why;
          why << "k=" << k << " i=" << i << " world " << x << ": marker "
              << (got ? "held unexpectedly" : "missing at the centre");
          return fail(name, why.str());
        }
        ++checks;
      }
    }
  }
  std::ostringstream detail;
  detail << checks << " world checks across k <= 5";
  return pass(name, detail.str());
}

SuiteResult chain_structure(Shared&) {
  const std::string name = "chain-structure";
  for (int k = 1; k <= 10; ++k) {
    const ChainModel chain = build_chain(k);
    const int expected = k * k + 3 * k + 3;
    if (chain.model.frame().world_count() != expected) {
      std::ostringstream why;
      why << "k=" << k << ": " << chain.model.frame().world_count()
          << " worlds, expected " << expected;
      return fail(name, why.str());
    }
    if (!is_in_class(chain.model.frame(), FrameClass::KTB)) {
      std::ostringstream why;
      why << "k=" << k << ": frame is not reflexive and symmetric";
      return fail(name, why.str());
    }
  }
  return pass(name, "world counts and frame properties for k <= 10");
}

SuiteResult guard_faithfulness(Shared& shared) {
  const std::string name = "guard-faithfulness";
  long comparisons = 0;
  for (const Formula& phi : shared.formulas()) {
    const EmbeddingContext ctx = EmbeddingContext::for_formula(phi);
    Substitution erase_guard;
    erase_guard.set(ctx.fresh(), Formula::top());
    const Formula reduced = substitute(guarded(phi, ctx), erase_guard);
    const detail::MaskEvaluator left(phi), right(reduced);
    const int nv = ctx.n;
    std::vector<std::uint64_t> val(std::max(nv, 1), 0);
    std::uint64_t succ[3];
    for (int n = 1; n <= 3; ++n) {
      const std::uint64_t row = (std::uint64_t{1} << n) - 1;
      const std::uint64_t rel_space = std::uint64_t{1} << (n * n);
      const std::uint64_t val_space = std::uint64_t{1} << (nv * n);
      for (std::uint64_t r = 0; r < rel_space; ++r) {
        for (int w = 0; w < n; ++w) succ[w] = (r >> (w * n)) & row;
        for (std::uint64_t v = 0; v < val_space; ++v) {
          for (int a = 0; a < nv; ++a) val[a] = (v >> (a * n)) & row;
          ++comparisons;
          if (left.evaluate(n, succ, val) != right.evaluate(n, succ, val)) {
            std::ostringstream why;
            why << "'" << print_formula(phi) << "' and its reduced guard differ on a "
                << n << "-world model";
            return fail(name, why.str());
          }
        }
      }
    }
  }
  std::ostringstream detail;
  detail << shared.formulas().size() << " formulas, " << comparisons
         << " model comparisons";
  return pass(name, detail.str());
}

SuiteResult witness_embedding(Shared& shared) {
  const std::string name = "witness-embedding";
  int verified = 0;
  for (const AttachCase& c : shared.attached()) {
    const EmbeddingContext ctx = EmbeddingContext::for_formula(c.phi);
    if (!model_check(c.attached, c.w0, star(c.phi, ctx))) {
      std::ostringstream why;
      why << "'" << print_formula(c.phi) << "' over " << to_string(c.cls)
          << ": star formula fails at the carried world";
      return fail(name, why.str());
    }
    if (!is_in_class(c.attached.frame(), c.cls)) {
      std::ostringstream why;
      why << "'" << print_formula(c.phi) << "' over " << to_string(c.cls)
          << ": attached frame left the class";
      return fail(name, why.str());
    }
    ++verified;
  }
  std::ostringstream detail;
  detail << verified << " witnesses across K, KB, KTB";
  return pass(name, detail.str());
}

SuiteResult root_linking(Shared& shared) {
  const std::string name = "root-linking";
  long checks = 0;
  for (const AttachCase& c : shared.attached()) {
    int root = c.base_worlds;
    for (int k = 1; k <= c.chains; ++k) {
      const Formula probe = Formula::diamond(root_marker(k));
      for (int x = 0; x < c.base_worlds; ++x) {
        const bool sees = model_check(c.attached, x, probe);
        const bool linked = c.attached.frame().has_edge(x, root);
        ++checks;
        if (sees != linked) {
          std::ostringstream why;
          why << "'" << print_formula(c.phi) << "' over " << to_string(c.cls)
              << ": world " << x << " vs chain " << k << " (probe "
              << (sees ? "true" : "false") << ", edge "
              << (linked ? "present" : "absent") << ")";
          return fail(name, why.str());
        }
      }
      root += k * k + 3 * k + 3;
    }
  }
  std::ostringstream detail;
  detail << checks << " probe/edge equivalences over " << shared.attached().size()
         << " attachments";
  return pass(name, detail.str());
}

SuiteResult star_substitution(Shared& shared) {
  const std::string name = "star-substitution";
  for (const Formula& phi : shared.formulas()) {
    const EmbeddingContext ctx = EmbeddingContext::for_formula(phi);
    Substitution sigma;
    for (int i = 1; i <= ctx.fresh(); ++i) sigma.set(i, var_proxy(i));
    if (star(phi, ctx) != substitute(guarded(phi, ctx), sigma)) {
      std::ostringstream why;
      why << "'" << print_formula(phi) << "': star differs from the substituted form";
      return fail(name, why.str());
    }
  }
  std::ostringstream detail;
  detail << shared.formulas().size() << " node-for-node identities";
  return pass(name, detail.str());
}

SuiteResult qbf_translation(Shared& shared) {
  const std::string name = "qbf-translation";
  int true_count = 0, false_count = 0;
  Budget per_instance;
  per_instance.wall_ms = 60000;
  for (const Qbf& q : shared.qbfs()) {
    const Formula f = translate_qbf(q);
    if (evaluate_qbf(q)) {
      const auto [model, root] = witness_model(q);
      if (!is_in_class(model.frame(), FrameClass::KTB))
        return fail(name, "witness frame is not reflexive and symmetric");
      if (!model_check(model, root, f))
        return fail(name, "translation fails at the witness root for a true instance");
      ++true_count;
    } else {
      const SatResult r = sat_decide(f, FrameClass::K, per_instance);
      if (!is_unsat(r))
        return fail(name,
                    "translation of a false instance was not refuted over K");
      ++false_count;
    }
  }
  std::ostringstream detail;
  detail << true_count << " true and " << false_count
         << " false instances (corpus of " << shared.qbfs().size() << ")";
  return pass(name, detail.str());
}

SuiteResult single_variable_pipeline(Shared& shared) {
  const std::string name = "single-variable-pipeline";
  int verified = 0;
  for (const Qbf& q : shared.qbfs()) {
    if (q.variable_count() != 1 || !evaluate_qbf(q)) continue;
    const Formula t = negated_translate_qbf(q);
    const Formula target = Formula::neg(t);
    const auto [model, root] = witness_model(q);
    const auto [prime, w0] = star_witness(model, root, target, FrameClass::KTB);
    const EmbeddingContext ctx = EmbeddingContext::for_formula(target);
    if (!model_check(prime, w0, star(target, ctx)))
      return fail(name, "star of the negated translation fails on the attached model");
    if (vars(embed(t)) != std::set<int>{1})
      return fail(name, "embedding is not single-variable");
    ++verified;
  }
  std::ostringstream detail;
  detail << verified << " true single-quantifier instances";
  return pass(name, detail.str());
}

SuiteResult oracle_agreement(Shared&) {
  const std::string name = "oracle-agreement";
  std::vector<std::vector<Formula>> by_size(7);
  by_size[1] = {Formula::var(1), Formula::var(2), Formula::falsum()};
  for (int s = 2; s <= 6; ++s) {
    for (const Formula& f : by_size[s - 1]) by_size[s].push_back(Formula::box(f));
    for (int l = 1; l <= s - 2; ++l)
      for (const Formula& a : by_size[l])
        for (const Formula& b : by_size[s - 1 - l])
          by_size[s].push_back(Formula::implies(a, b));
  }
  std::vector<Formula> all;
  for (int s = 1; s <= 6; ++s)
    all.insert(all.end(), by_size[s].begin(), by_size[s].end());
  if (all.size() != 522) {
    std::ostringstream why;
    why << "enumeration drifted: " << all.size() << " formulas instead of 522";
    return fail(name, why.str());
  }

  const FrameClass classes[] = {FrameClass::K,  FrameClass::KD,  FrameClass::T,
                                FrameClass::KB, FrameClass::KDB, FrameClass::KTB};
  long conclusive_pairs = 0;
  for (const Formula& phi : all) {
    const int cap = static_cast<int>(std::min<std::uint64_t>(filtration_bound(phi), 3));
    for (FrameClass c : classes) {
      const SatResult fast = sat_decide(phi, c);
      const SatResult slow = sat_bruteforce(phi, c, cap);
      const bool disagree = (is_sat(fast) && is_unsat(slow)) ||
                            (is_unsat(fast) && is_sat(slow));
      if (disagree) {
        std::ostringstream why;
        why << "'" << print_formula(phi) << "' over " << to_string(c) << ": decide says "
            << (is_sat(fast) ? "SAT" : "UNSAT") << ", brute force says "
            << (is_sat(slow) ? "SAT" : "UNSAT");
        return fail(name, why.str());
      }
      if ((is_sat(fast) || is_unsat(fast)) && (is_sat(slow) || is_unsat(slow)))
        ++conclusive_pairs;
    }
  }
  std::ostringstream detail;
  detail << "522 formulas x 6 classes, " << conclusive_pairs
         << " conclusive comparisons";
  return pass(name, detail.str());
}

}  // namespace

std::vector<std::string> acceptance_suite_names() {
  return {"marker-uniqueness",  "chain-structure",    "guard-faithfulness",
          "witness-embedding",  "root-linking",       "star-substitution",
          "qbf-translation",    "single-variable-pipeline", "oracle-agreement"};
}

std::vector<SuiteResult> run_acceptance(const AcceptanceOptions& options) {
  using Runner = SuiteResult (*)(Shared&);
  const std::pair<const char*, Runner> table[] = {
      {"marker-uniqueness", marker_uniqueness},
      {"chain-structure", chain_structure},
      {"guard-faithfulness", guard_faithfulness},
      {"witness-embedding", witness_embedding},
      {"root-linking", root_linking},
      {"star-substitution", star_substitution},
      {"qbf-translation", qbf_translation},
      {"single-variable-pipeline", single_variable_pipeline},
      {"oracle-agreement", oracle_agreement},
  };
  if (!options.suite.empty()) {
    bool known = false;
    for (const auto& entry : table) known = known || options.suite == entry.first;
    if (!known) throw std::invalid_argument("unknown suite: " + options.suite);
  }
  Shared shared(options);
  std::vector<SuiteResult> out;
  for (const auto& [suite_name, runner] : table) {
    if (!options.suite.empty() && options.suite != suite_name) continue;
    try {
      out.push_back(runner(shared));
    } catch (const std::exception& e) {
      out.push_back(fail(suite_name, std::string("exception: ") + e.what()));
    }
  }
  return out;
}

}  // namespace modal
