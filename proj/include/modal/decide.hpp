#pragma once

#include <cstdint>
#include <variant>

#include "modal/formula.hpp"
#include "modal/kripke.hpp"

namespace modal {

/// Resource limits for the satisfiability procedures. A zero `wall_ms`
/// disables the wall-clock check; `max_nodes` bounds the total number of
/// tableau nodes or candidate types a search may allocate.
struct Budget {
  int max_worlds = 200'000;
  std::uint64_t max_nodes = 20'000'000;
  std::uint64_t wall_ms = 0;
};

/// A model together with a world where the query formula holds. Witnesses
/// are re-checked before being returned, so they can be trusted blindly.
struct SatWitness {
  Model model;
  int world = 0;
};

enum class UnsatMethod {
  TableauClosed,
  BoundExhaustedComplete,
};

struct UnsatCertificate {
  UnsatMethod method = UnsatMethod::TableauClosed;
};

/// The search gave up before either finding a witness or covering every
/// model up to the completeness bound for the formula.
struct InconclusiveSearch {
  int worlds_searched = 0;
  std::uint64_t complete_bound = 0;
};

using SatResult = std::variant<SatWitness, UnsatCertificate, InconclusiveSearch>;

bool is_sat(const SatResult& r);
bool is_unsat(const SatResult& r);
bool is_inconclusive(const SatResult& r);

/// 2^|sub(f)|, saturating at the maximum representable value. Every
/// satisfiable formula has a model with at most this many worlds in each
/// of the supported frame classes.
std::uint64_t filtration_bound(const Formula& f);

/// Exhaustive enumeration of pointed models in a fixed deterministic order:
/// world counts ascending, relations as integers with bit i*n+j for the
/// edge (i, j), valuations with bit a*n+w for variable index a at world w,
/// then the designated world. Only frames in `c` are evaluated. Rejects
/// `max_worlds` outside 1..7; the state space is hopeless beyond that.
SatResult sat_bruteforce(const Formula& f, FrameClass c, int max_worlds);

/// Decision procedure for satisfiability of `f` over the frame class `c`.
/// K, KD and T use a signed labelled tableau; KB, KDB and KTB use type
/// elimination over the closure of `f`. Both directions return verified
/// witnesses, and both are complete, so Inconclusive only appears when the
/// budget runs out first.
SatResult sat_decide(const Formula& f, FrameClass c, const Budget& budget = {});

struct ValidityResult {
  bool valid = false;
  bool conclusive = true;
  /// Countermodel when invalid: a pointed model where the formula fails.
  std::variant<std::monostate, SatWitness> counterexample;
};

/// Validity over a frame class, by deciding satisfiability of the negation.
ValidityResult decide_validity(const Formula& f, FrameClass c,
                               const Budget& budget = {});

namespace detail {

/// Compiled form of a formula for bulk evaluation over models with at most
/// 64 worlds: each subformula maps to the bitmask of worlds where it holds.
/// Used by the exhaustive searches, where the same formula is evaluated
/// against millions of candidate models.
class MaskEvaluator {
 public:
  explicit MaskEvaluator(const Formula& f);

  /// Bitmask of worlds satisfying the root formula. `succ[w]` is the
  /// bitmask of successors of world w; `val[a]` the mask for variable
  /// index a+1 (entries beyond the known variables read as 0).
  std::uint64_t evaluate(int world_count, const std::uint64_t* succ,
                         const std::vector<std::uint64_t>& val) const;

  int max_var() const { return max_var_; }

 private:
  enum class Op : std::uint8_t { Var, Falsum, Top, Implies, Box, Diamond, Not, And, Or };
  struct Step {
    Op op;
    int a = 0;  // variable index, single operand, or operand range start
    int b = 0;  // second operand or operand range end
  };
  std::vector<Step> steps_;
  std::vector<int> operands_;
  int max_var_ = 0;
  mutable std::vector<std::uint64_t> slots_;
};

}  // namespace detail

}  // namespace modal
