#ifndef PTT_CHECKER_HPP
#define PTT_CHECKER_HPP

#include "ptt/conversion.hpp"

namespace ptt {

// Bidirectional checking. All failures are reported as TypeError carrying a
// Diagnostic with one of the codes in diagnostics.hpp.

// Synthesizes a type for t (syntax-directed on eliminators, Kan operations,
// annotated eliminator motives, and variables).
Term infer(Session& s, const Context& ctx, const Term& t);

// Checks t against the type `type` (which must be a type in ctx).
void check(Session& s, const Context& ctx, const Term& t, const Term& type);

// Checks that t is a type (U itself, a structural former over types, or an
// element of U).
void check_type(Session& s, const Context& ctx, const Term& t);

// Kan-operation premises for coe/hcom (and fhcom values); returns the type.
Term check_kan(Session& s, const Context& ctx, const Term& t);

// The seven premises of the extent rule; returns the type.
Term check_extent(Session& s, const Context& ctx, const Term& t);

// Cap-tube and tube-tube adjacency for a system over type `type`.
void check_system(Session& s, const Context& ctx, const Term& type, const System& sys,
                  const Term& cap, PathTerm r);

// Dimension well-formedness.
void check_path_dim(const Context& ctx, const PathTerm& p);
void check_bridge_dim(const Context& ctx, const BridgeTerm& b);

}  // namespace ptt

#endif
