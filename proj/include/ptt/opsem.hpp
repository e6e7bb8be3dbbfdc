#ifndef PTT_OPSEM_HPP
#define PTT_OPSEM_HPP

#include <functional>
#include <string>

#include "ptt/term.hpp"

namespace ptt {

struct StepResult {
  enum class Kind : uint8_t { Value, Steps, Stuck };
  Kind kind;
  Term next;          // Steps
  std::string rule;   // Steps: rule name
  std::string path;   // Steps: redex path ("" = root)
  std::string reason; // Stuck
  static StepResult value() { return {Kind::Value, nullptr, "", "", ""}; }
  static StepResult steps(Term t, std::string rule, std::string path = "") {
    return {Kind::Steps, std::move(t), std::move(rule), std::move(path), ""};
  }
  static StepResult stuck(std::string why) {
    return {Kind::Stuck, nullptr, "", "", std::move(why)};
  }
};

using TraceFn = std::function<void(const std::string& rule, const std::string& path)>;

// Extent-β fires only when its principal argument does not depend on term
// variables introduced after the bridge index. On term-variable-closed input
// this is automatic; conversion supplies a context-aware guard.
struct StepOpts {
  std::function<bool(const Term& principal, int bridge_var)> extent_ok;
};

bool isval(const Term& t);

// One deterministic step of the small-step semantics on a term-variable-closed
// term over the interval context psi. Leftmost-outermost, principal argument
// first.
StepResult step(const DefEnv* env, const IntervalCtx& psi, const Term& t,
                const StepOpts* opts = nullptr);

// Iterates step to a value; throws TypeError{StuckTerm} on stuck terms and
// FuelExhausted when the budget runs out.
Term eval(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
          const TraceFn& trace = nullptr);

// Iterates step until value or stuck, returning the final term either way.
Term head_normal(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
                 const TraceFn& trace = nullptr, const StepOpts* opts = nullptr);

// Head-normalizes and then recurses into all subterms (binders opened with
// fresh variables).
Term deep_normalize(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
                    const TraceFn& trace = nullptr);

// Heterogeneous composition, expanded syntactically into hcom of coerced cap
// and tubes. `line` and every tube body bind the same path dimension.
Term com(const Term& line, PathTerm r, PathTerm s, Term cap, const System& tubes);

}  // namespace ptt

#endif
