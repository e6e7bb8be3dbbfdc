#ifndef PTT_CONTEXT_HPP
#define PTT_CONTEXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ptt/term.hpp"

namespace ptt {

// An ordered telescope of term variables, path/bridge dimensions, and
// constraints. Dropped entries are kept as tombstones so that a lookup of a
// restricted-away variable is reported as a NotApart failure rather than a
// silent miscapture.
struct CtxEntry {
  enum class Kind : uint8_t { TermVar, PathDim, BridgeDim, Constr, Tombstone };
  Kind kind;
  int id = 0;           // variable entries
  std::string hint;
  Term type;            // TermVar
  Constraint constr;    // Constr
  Kind dropped_kind = Kind::TermVar;  // Tombstone: what the entry used to be
  int dropped_by = 0;                 // Tombstone: blamed bridge variable
};

struct Renaming {
  // Identity embedding of the restricted context back into the original:
  // the ids that survive restriction.
  std::vector<int> kept;
  bool contains(int id) const {
    for (int k : kept)
      if (k == id) return true;
    return false;
  }
};

struct Context {
  std::vector<CtxEntry> entries;

  int add_term(Term type, std::string hint = "a") {
    int id = fresh_id();
    CtxEntry e;
    e.kind = CtxEntry::Kind::TermVar;
    e.id = id;
    e.hint = std::move(hint);
    e.type = std::move(type);
    entries.push_back(std::move(e));
    return id;
  }
  int add_path(std::string hint = "x") {
    int id = fresh_id();
    CtxEntry e;
    e.kind = CtxEntry::Kind::PathDim;
    e.id = id;
    e.hint = std::move(hint);
    entries.push_back(std::move(e));
    return id;
  }
  int add_bridge(std::string hint = "x") {
    int id = fresh_id();
    CtxEntry e;
    e.kind = CtxEntry::Kind::BridgeDim;
    e.id = id;
    e.hint = std::move(hint);
    entries.push_back(std::move(e));
    return id;
  }
  void add_constraint(Constraint c) {
    CtxEntry e;
    e.kind = CtxEntry::Kind::Constr;
    e.constr = std::move(c);
    entries.push_back(std::move(e));
  }

  const CtxEntry* lookup(int id) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if ((it->kind == CtxEntry::Kind::TermVar || it->kind == CtxEntry::Kind::PathDim ||
           it->kind == CtxEntry::Kind::BridgeDim || it->kind == CtxEntry::Kind::Tombstone) &&
          it->id == id)
        return &*it;
    return nullptr;
  }

  // Interval context of the live dimension entries, in order.
  IntervalCtx dims() const;
  std::vector<Constraint> constraints() const;
};

// Context restriction Γ|𝐫 (identity for constants). Walks from the right:
// drops term variables and constraints mentioning 𝐱 until 𝐱 itself is
// reached and dropped; the prefix before 𝐱 is kept whole.
std::pair<Context, Renaming> restrict_ctx(const Context& ctx, const BridgeTerm& r);

// Truth of a constraint under the equivalence closure of the context's
// constraints (union-find over path terms, valuation of bridge variables).
Status constraint_status(const Context& ctx, const Constraint& c);

// True when the context's constraints are inconsistent (decide 0 = 1).
bool ctx_inconsistent(const Context& ctx);

// The dimension valuation induced by the constraints: substitutes constrained
// variables away (bridge variables pinned to endpoints, path variables
// oriented variable-to-term). Returns the substituted term.
Term apply_ctx_valuation(const Context& ctx, Term t);
PathTerm apply_ctx_valuation(const Context& ctx, PathTerm p);
BridgeTerm apply_ctx_valuation(const Context& ctx, BridgeTerm b);

}  // namespace ptt

#endif
