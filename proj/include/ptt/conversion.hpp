#ifndef PTT_CONVERSION_HPP
#define PTT_CONVERSION_HPP

#include <optional>

#include "ptt/context.hpp"
#include "ptt/opsem.hpp"

namespace ptt {

// A checking session: the definition environment plus the evaluation budget.
struct Session {
  DefEnv defs;
  long long fuel_limit = 1000000;
  Fuel fuel{1000000};
  void reset_fuel() { fuel = Fuel(fuel_limit); }
};

// Head normalization under a context: the context's constraint valuation is
// applied first (a bridge variable constrained to ε is replaced by ε), then
// the stepper runs; Path-∂ and Bridge-∂ boundaries of neutral spines are
// resolved from their types.
Term whnf(Session& s, const Context& ctx, Term t);

// Definitional equality, directed by the type.
bool conv(Session& s, const Context& ctx, const Term& type, const Term& l, const Term& r);
bool conv_type(Session& s, const Context& ctx, const Term& l, const Term& r);

// Equality under constraint hypotheses; vacuously true when inconsistent.
bool conv_under(Session& s, const Context& ctx, const std::vector<Constraint>& cs,
                const Term& type, const Term& l, const Term& r);

// Synthesizes the type of a neutral term (a variable-headed spine). Returns
// nullopt when the term is not neutral.
std::optional<Term> neutral_type(Session& s, const Context& ctx, const Term& t);

// Σ(f : A → B). isiso — the type of isomorphisms used by V types.
Term iso_type(const Term& a, const Term& b);
Term arrow(const Term& a, const Term& b);
Term path_in(const Term& a, const Term& m, const Term& n);

// Dimension equality under the context's constraint closure.
bool path_dims_eq(const Context& ctx, PathTerm a, PathTerm b);
bool bridge_dims_eq(const Context& ctx, BridgeTerm a, BridgeTerm b);

}  // namespace ptt

#endif
