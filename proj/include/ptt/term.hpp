#ifndef PTT_TERM_HPP
#define PTT_TERM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ptt/interval.hpp"

namespace ptt {

enum class Tag : uint8_t {
  // universe and base type codes
  U, Bool, Int, Z2, Unit, Empty,
  // variables and definition references
  FreeVar, BoundVar, DefRef,
  // functions
  Pi, Lam, App,
  // dependent pairs
  Sigma, Pair, Fst, Snd,
  // paths
  Path, PLam, PApp,
  // bridges
  Bridge, BLam, BApp,
  // Gel types
  Gel, GelTm, Ungel,
  // extent
  Extent,
  // Kan operations; FHCom is the value form of base-type composites
  Coe, HCom, FHCom,
  // V types
  V, Vin, Vproj,
  // booleans
  TT, FF, If,
  // integers (hosting Z2's constructor arguments)
  IntLit, IntAdd,
  // Z/2Z higher inductive type
  Zin, Zmod, Z2Elim,
  // unit and empty
  Star, Abort,
};

const char* tag_name(Tag t);

struct Node;
using Term = std::shared_ptr<const Node>;

struct Tube {
  Constraint cof;
  Term body;  // binds one path dimension
};
using System = std::vector<Tube>;

struct Node {
  Tag tag;
  long long lit = 0;            // IntLit payload
  int var = 0;                  // FreeVar id / BoundVar index
  std::string hint;             // display name / DefRef name
  std::vector<PathTerm> ps;     // path dimension operands
  std::vector<BridgeTerm> bs;   // bridge dimension operands
  std::vector<Term> kids;       // subterms, binder shape fixed per tag/slot
  System sys;                   // HCom/FHCom tubes
};

// Binder telescope of kids[slot] for the given tag (innermost binder last).
const std::vector<Sort>& arg_binders(Tag t, size_t slot);

// ---- constructors -------------------------------------------------------

Term mk_u();
Term mk_bool();
Term mk_int();
Term mk_z2();
Term mk_unit();
Term mk_empty();
Term mk_free(int id, std::string hint = "");
Term mk_bound(int index);
Term mk_defref(std::string name);
Term mk_pi(Term a, Term b);          // b binds one term var
Term mk_lam(Term body);              // binds one term var
Term mk_app(Term f, Term x);
Term mk_sigma(Term a, Term b);
Term mk_pair(Term l, Term r);
Term mk_fst(Term p);
Term mk_snd(Term p);
Term mk_path(Term a, Term m0, Term m1);  // a binds one path dim
Term mk_plam(Term body);
Term mk_papp(Term p, PathTerm r);
Term mk_bridge(Term a, Term m0, Term m1);  // a binds one bridge dim
Term mk_blam(Term body);
Term mk_bapp(Term p, BridgeTerm r);
Term mk_gel(BridgeTerm r, Term a0, Term a1, Term rel);   // rel binds a0,a1
Term mk_geltm(BridgeTerm r, Term m0, Term m1, Term p);
Term mk_ungel(Term q);  // binds one bridge dim
Term mk_extent(BridgeTerm r, Term m, Term a, Term b, Term n0, Term n1, Term nbar);
// a binds [bridge]; b binds [bridge, term]; n0/n1 bind [term]; nbar binds 3 terms
Term mk_coe(Term line, PathTerm r, PathTerm s, Term m);  // line binds one path dim
Term mk_hcom(Term ty, PathTerm r, PathTerm s, Term cap, System sys);
Term mk_fhcom(Term ty, PathTerm r, PathTerm s, Term cap, System sys);
Term mk_v(PathTerm r, Term a, Term b, Term iso);
Term mk_vin(PathTerm r, Term m, Term n);
Term mk_vproj(PathTerm r, Term p, Term iso);
Term mk_tt();
Term mk_ff();
Term mk_if(Term motive, Term scrut, Term t, Term f);  // motive binds one term var
Term mk_intlit(long long n);
Term mk_intadd(Term l, Term r);
Term mk_zin(Term n);
Term mk_zmod(Term n, PathTerm r);
Term mk_z2elim(Term motive, Term scrut, Term qin, Term qmod);
// motive binds [term]; qin binds [term]; qmod binds [term, path]
Term mk_star();
Term mk_abort(Term motive, Term m);

// ---- structural helpers -------------------------------------------------

bool alpha_eq(const Term& a, const Term& b);
bool constraint_eq(const Constraint& a, const Constraint& b);

// Occurrence checks on free variables.
bool occurs_term(const Term& t, int id);
bool occurs_path(const Term& t, int id);
bool occurs_bridge(const Term& t, int id);
// apart(t, 𝐱): the bridge variable 𝐱 does not occur free in t.
inline bool apart(const Term& t, int bridge_id) { return !occurs_bridge(t, bridge_id); }
bool occurs_bridge(const Constraint& c, int id);

void collect_free_term_vars(const Term& t, std::vector<int>& out);

// ---- substitution (capture is impossible: replacements are locally closed)

Term subst_term(const Term& m, int id, const Term& n);
Term subst_path(const Term& m, int id, const PathTerm& r);
// Fresh substitution. Throws TypeError{DiagonalSubstitution} when 𝐫 is a
// variable other than 𝐱 occurring free in m (an attempted contraction).
Term subst_bridge(const Term& m, int id, const BridgeTerm& r);

// Simultaneous interval substitution (bridge images are pairwise distinct by
// IntervalSubst's invariant, so no contraction can arise).
Term apply_subst(const Term& m, const IntervalSubst& psi);

// ---- binder manipulation -------------------------------------------------

// Instantiates the outermost binder group of `body` (whose telescope is
// `sig`) with the given replacements. Each replacement must match its sort.
struct BinderArg {
  Sort sort;
  Term t;        // Sort::Term
  PathTerm p;    // Sort::Path
  BridgeTerm b;  // Sort::Bridge
  static BinderArg term(Term x) { return {Sort::Term, std::move(x), {}, {}}; }
  static BinderArg path(PathTerm x) { return {Sort::Path, nullptr, x, {}}; }
  static BinderArg bridge(BridgeTerm x) { return {Sort::Bridge, nullptr, {}, x}; }
};
Term instantiate(const Term& body, const std::vector<Sort>& sig,
                 const std::vector<BinderArg>& args);
// Abstracts the given free variables (matched to `sig` positionally) into
// bound indices, producing a binder body. For a bridge variable this is the
// capturing operation used by Extent-β.
Term abstract(const Term& t, const std::vector<Sort>& sig, const std::vector<int>& ids);

// Convenience single-binder forms.
Term open_term(const Term& body, const Term& v);
Term open_path(const Term& body, const PathTerm& r);
Term open_bridge(const Term& body, const BridgeTerm& r);
Term close_term(const Term& t, int id);
Term close_path(const Term& t, int id);
Term close_bridge(const Term& t, int id);
// abstract_bridge(M, 𝐱) = 𝐱.M with free occurrences of 𝐱 captured.
inline Term abstract_bridge(const Term& m, int id) { return close_bridge(m, id); }

// ---- definition environment ----------------------------------------------

struct Definition {
  std::string name;
  Term type;   // full (telescope-wrapped) type; null for dim-telescoped defs
  Term body;   // term-variable-closed body
  bool referenceable = true;
  IntervalCtx dims;  // ambient interval context for dim-telescoped defs
};

struct DefEnv {
  std::map<std::string, Definition> defs;
  std::vector<std::string> order;
  const Definition* lookup(const std::string& n) const {
    auto it = defs.find(n);
    return it == defs.end() ? nullptr : &it->second;
  }
  void add(Definition d) {
    order.push_back(d.name);
    defs[d.name] = std::move(d);
  }
};

}  // namespace ptt

#endif
