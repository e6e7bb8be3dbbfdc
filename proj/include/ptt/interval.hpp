#ifndef PTT_INTERVAL_HPP
#define PTT_INTERVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptt/diagnostics.hpp"

namespace ptt {

// Binder sorts. The path interval is structural, the bridge interval affine.
enum class Sort : uint8_t { Term, Path, Bridge };

// Fresh identifiers for free variables of all three sorts.
int fresh_id();
// Forces the counter past `floor`; used by tests that need reproducible ids.
void bump_fresh_ids(int floor);

// A path interval term: 0, 1, a bound index, or a free name.
struct PathTerm {
  enum class Kind : uint8_t { C0, C1, Bound, Free };
  Kind kind = Kind::C0;
  int var = 0;  // bound index or free id

  static PathTerm c0() { return {Kind::C0, 0}; }
  static PathTerm c1() { return {Kind::C1, 0}; }
  static PathTerm bound(int i) { return {Kind::Bound, i}; }
  static PathTerm free(int id) { return {Kind::Free, id}; }
  bool is_const() const { return kind == Kind::C0 || kind == Kind::C1; }
  bool is_free() const { return kind == Kind::Free; }
  int endpoint() const { return kind == Kind::C1 ? 1 : 0; }
  bool operator==(const PathTerm& o) const { return kind == o.kind && var == o.var; }
  bool operator!=(const PathTerm& o) const { return !(*this == o); }
};

struct BridgeTerm {
  enum class Kind : uint8_t { C0, C1, Bound, Free };
  Kind kind = Kind::C0;
  int var = 0;

  static BridgeTerm c0() { return {Kind::C0, 0}; }
  static BridgeTerm c1() { return {Kind::C1, 0}; }
  static BridgeTerm cn(int eps) { return eps ? c1() : c0(); }
  static BridgeTerm bound(int i) { return {Kind::Bound, i}; }
  static BridgeTerm free(int id) { return {Kind::Free, id}; }
  bool is_const() const { return kind == Kind::C0 || kind == Kind::C1; }
  bool is_free() const { return kind == Kind::Free; }
  int endpoint() const { return kind == Kind::C1 ? 1 : 0; }
  bool operator==(const BridgeTerm& o) const { return kind == o.kind && var == o.var; }
  bool operator!=(const BridgeTerm& o) const { return !(*this == o); }
};

inline PathTerm path_const(int eps) { return eps ? PathTerm::c1() : PathTerm::c0(); }

// Constraints: path equations are unrestricted; bridge equations identify a
// bridge term with a constant only (the affine discipline forbids equating
// two bridge variables).
struct Constraint {
  enum class Kind : uint8_t { PathEq, BridgeEq };
  Kind kind = Kind::PathEq;
  PathTerm pl, pr;
  BridgeTerm bl;
  int beps = 0;

  static Constraint path_eq(PathTerm l, PathTerm r) {
    Constraint c;
    c.kind = Kind::PathEq;
    c.pl = l;
    c.pr = r;
    return c;
  }
  static Constraint bridge_eq(BridgeTerm l, int eps) {
    Constraint c;
    c.kind = Kind::BridgeEq;
    c.bl = l;
    c.beps = eps ? 1 : 0;
    return c;
  }
  bool operator==(const Constraint& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::PathEq) return pl == o.pl && pr == o.pr;
    return bl == o.bl && beps == o.beps;
  }
  bool operator!=(const Constraint& o) const { return !(*this == o); }
};

// The ∀𝐱 operator on constraints:
//   ∀𝐱.(r = s)   = (r = s)
//   ∀𝐱.(𝐱 = ε)   = (𝟎 = 𝟏)
//   ∀𝐱.(𝐫 = ε)   = (𝐫 = ε)   when 𝐫 ≠ 𝐱
Constraint forall_x(int bridge_id, const Constraint& c);

enum class Status { True, False, Undetermined };

// Status of a constraint with no hypotheses: decided syntactically.
Status constraint_status_closed(const Constraint& c);

// A context of interval variables only (Ψ).
struct IntervalCtx {
  struct Entry {
    Sort sort;  // Path or Bridge
    int id;
    std::string hint;
  };
  std::vector<Entry> entries;

  int add_path(std::string hint = "x") {
    int id = fresh_id();
    entries.push_back({Sort::Path, id, std::move(hint)});
    return id;
  }
  int add_bridge(std::string hint = "x") {
    int id = fresh_id();
    entries.push_back({Sort::Bridge, id, std::move(hint)});
    return id;
  }
  const Entry* lookup(int id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
};

// Restriction Ψ|𝐫: identity for constants; for a variable 𝐱, drops 𝐱 and
// keeps every other dimension (an interval context has no term variables or
// constraints to drop).
IntervalCtx restrict_ictx(const IntervalCtx& psi, const BridgeTerm& r);

// An interval substitution ψ : source ⊢ target. Path entries may be sent to
// any path term; bridge entries go to constants or to pairwise-distinct
// bridge variables (no contraction).
struct IntervalSubst {
  struct Assign {
    Sort sort;
    int target_id;
    PathTerm p;
    BridgeTerm b;
  };
  IntervalCtx target;
  IntervalCtx source;
  std::vector<Assign> map;  // parallel to target.entries

  static IntervalSubst identity(const IntervalCtx& psi);
  // Builds and validates; throws TypeError{DiagonalSubstitution} if two
  // bridge entries share a variable image.
  static IntervalSubst make(IntervalCtx target, IntervalCtx source,
                            std::vector<Assign> map);

  PathTerm apply(const PathTerm& p) const;
  BridgeTerm apply(const BridgeTerm& b) const;
  Constraint apply(const Constraint& c) const;
};

// outer ∘ inner: action equals applying inner first, then outer.
IntervalSubst compose_subst(const IntervalSubst& outer, const IntervalSubst& inner);

}  // namespace ptt

#endif
