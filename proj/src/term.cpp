#include "ptt/term.hpp"

#include <array>
#include <cassert>

namespace ptt {

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::U: return "U";
    case Tag::Bool: return "bool";
    case Tag::Int: return "int";
    case Tag::Z2: return "z2";
    case Tag::Unit: return "unit";
    case Tag::Empty: return "empty";
    case Tag::FreeVar: return "var";
    case Tag::BoundVar: return "bvar";
    case Tag::DefRef: return "def";
    case Tag::Pi: return "Pi";
    case Tag::Lam: return "lam";
    case Tag::App: return "app";
    case Tag::Sigma: return "Sig";
    case Tag::Pair: return "pair";
    case Tag::Fst: return "fst";
    case Tag::Snd: return "snd";
    case Tag::Path: return "Path";
    case Tag::PLam: return "plam";
    case Tag::PApp: return "papp";
    case Tag::Bridge: return "Bridge";
    case Tag::BLam: return "blam";
    case Tag::BApp: return "bapp";
    case Tag::Gel: return "Gel";
    case Tag::GelTm: return "gel";
    case Tag::Ungel: return "ungel";
    case Tag::Extent: return "extent";
    case Tag::Coe: return "coe";
    case Tag::HCom: return "hcom";
    case Tag::FHCom: return "fhcom";
    case Tag::V: return "V";
    case Tag::Vin: return "Vin";
    case Tag::Vproj: return "Vproj";
    case Tag::TT: return "tt";
    case Tag::FF: return "ff";
    case Tag::If: return "if";
    case Tag::IntLit: return "intlit";
    case Tag::IntAdd: return "add";
    case Tag::Zin: return "zin";
    case Tag::Zmod: return "zmod";
    case Tag::Z2Elim: return "z2elim";
    case Tag::Star: return "star";
    case Tag::Abort: return "abort";
  }
  return "?";
}

namespace {
const std::vector<Sort> kNone{};
const std::vector<Sort> kT{Sort::Term};
const std::vector<Sort> kP{Sort::Path};
const std::vector<Sort> kB{Sort::Bridge};
const std::vector<Sort> kTT{Sort::Term, Sort::Term};
const std::vector<Sort> kBT{Sort::Bridge, Sort::Term};
const std::vector<Sort> kTTT{Sort::Term, Sort::Term, Sort::Term};
const std::vector<Sort> kTP{Sort::Term, Sort::Path};
}  // namespace

const std::vector<Sort>& arg_binders(Tag t, size_t slot) {
  switch (t) {
    case Tag::Pi:
    case Tag::Sigma:
      return slot == 1 ? kT : kNone;
    case Tag::Lam:
      return kT;
    case Tag::Path:
      return slot == 0 ? kP : kNone;
    case Tag::PLam:
      return kP;
    case Tag::Bridge:
      return slot == 0 ? kB : kNone;
    case Tag::BLam:
      return kB;
    case Tag::Gel:
      return slot == 2 ? kTT : kNone;
    case Tag::Ungel:
      return kB;
    case Tag::Extent:
      // M, x.A, x.a.B, a0.N0, a1.N1, a0.a1.ab.Nbar
      switch (slot) {
        case 1: return kB;
        case 2: return kBT;
        case 3: return kT;
        case 4: return kT;
        case 5: return kTTT;
        default: return kNone;
      }
    case Tag::Coe:
      return slot == 0 ? kP : kNone;
    case Tag::If:
      return slot == 0 ? kT : kNone;
    case Tag::Z2Elim:
      switch (slot) {
        case 0: return kT;
        case 2: return kT;
        case 3: return kTP;
        default: return kNone;
      }
    default:
      return kNone;
  }
}

namespace {

Term make(Tag tag, std::vector<Term> kids = {}, std::vector<PathTerm> ps = {},
          std::vector<BridgeTerm> bs = {}, System sys = {}) {
  auto n = std::make_shared<Node>();
  n->tag = tag;
  n->kids = std::move(kids);
  n->ps = std::move(ps);
  n->bs = std::move(bs);
  n->sys = std::move(sys);
  return n;
}

}  // namespace

Term mk_u() { return make(Tag::U); }
Term mk_bool() { return make(Tag::Bool); }
Term mk_int() { return make(Tag::Int); }
Term mk_z2() { return make(Tag::Z2); }
Term mk_unit() { return make(Tag::Unit); }
Term mk_empty() { return make(Tag::Empty); }

Term mk_free(int id, std::string hint) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::FreeVar;
  n->var = id;
  n->hint = std::move(hint);
  return n;
}

Term mk_bound(int index) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::BoundVar;
  n->var = index;
  return n;
}

Term mk_defref(std::string name) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::DefRef;
  n->hint = std::move(name);
  return n;
}

Term mk_pi(Term a, Term b) { return make(Tag::Pi, {std::move(a), std::move(b)}); }
Term mk_lam(Term body) { return make(Tag::Lam, {std::move(body)}); }
Term mk_app(Term f, Term x) { return make(Tag::App, {std::move(f), std::move(x)}); }
Term mk_sigma(Term a, Term b) { return make(Tag::Sigma, {std::move(a), std::move(b)}); }
Term mk_pair(Term l, Term r) { return make(Tag::Pair, {std::move(l), std::move(r)}); }
Term mk_fst(Term p) { return make(Tag::Fst, {std::move(p)}); }
Term mk_snd(Term p) { return make(Tag::Snd, {std::move(p)}); }

Term mk_path(Term a, Term m0, Term m1) {
  return make(Tag::Path, {std::move(a), std::move(m0), std::move(m1)});
}
Term mk_plam(Term body) { return make(Tag::PLam, {std::move(body)}); }
Term mk_papp(Term p, PathTerm r) { return make(Tag::PApp, {std::move(p)}, {r}); }

Term mk_bridge(Term a, Term m0, Term m1) {
  return make(Tag::Bridge, {std::move(a), std::move(m0), std::move(m1)});
}
Term mk_blam(Term body) { return make(Tag::BLam, {std::move(body)}); }
Term mk_bapp(Term p, BridgeTerm r) { return make(Tag::BApp, {std::move(p)}, {}, {r}); }

Term mk_gel(BridgeTerm r, Term a0, Term a1, Term rel) {
  return make(Tag::Gel, {std::move(a0), std::move(a1), std::move(rel)}, {}, {r});
}
Term mk_geltm(BridgeTerm r, Term m0, Term m1, Term p) {
  return make(Tag::GelTm, {std::move(m0), std::move(m1), std::move(p)}, {}, {r});
}
Term mk_ungel(Term q) { return make(Tag::Ungel, {std::move(q)}); }

Term mk_extent(BridgeTerm r, Term m, Term a, Term b, Term n0, Term n1, Term nbar) {
  return make(Tag::Extent,
              {std::move(m), std::move(a), std::move(b), std::move(n0), std::move(n1),
               std::move(nbar)},
              {}, {r});
}

Term mk_coe(Term line, PathTerm r, PathTerm s, Term m) {
  return make(Tag::Coe, {std::move(line), std::move(m)}, {r, s});
}
Term mk_hcom(Term ty, PathTerm r, PathTerm s, Term cap, System sys) {
  return make(Tag::HCom, {std::move(ty), std::move(cap)}, {r, s}, {}, std::move(sys));
}
Term mk_fhcom(Term ty, PathTerm r, PathTerm s, Term cap, System sys) {
  return make(Tag::FHCom, {std::move(ty), std::move(cap)}, {r, s}, {}, std::move(sys));
}

Term mk_v(PathTerm r, Term a, Term b, Term iso) {
  return make(Tag::V, {std::move(a), std::move(b), std::move(iso)}, {r});
}
Term mk_vin(PathTerm r, Term m, Term n) {
  return make(Tag::Vin, {std::move(m), std::move(n)}, {r});
}
Term mk_vproj(PathTerm r, Term p, Term iso) {
  return make(Tag::Vproj, {std::move(p), std::move(iso)}, {r});
}

Term mk_tt() { return make(Tag::TT); }
Term mk_ff() { return make(Tag::FF); }
Term mk_if(Term motive, Term scrut, Term t, Term f) {
  return make(Tag::If, {std::move(motive), std::move(scrut), std::move(t), std::move(f)});
}

Term mk_intlit(long long v) {
  auto n = std::make_shared<Node>();
  n->tag = Tag::IntLit;
  n->lit = v;
  return n;
}
Term mk_intadd(Term l, Term r) { return make(Tag::IntAdd, {std::move(l), std::move(r)}); }
Term mk_zin(Term n) { return make(Tag::Zin, {std::move(n)}); }
Term mk_zmod(Term n, PathTerm r) { return make(Tag::Zmod, {std::move(n)}, {r}); }
Term mk_z2elim(Term motive, Term scrut, Term qin, Term qmod) {
  return make(Tag::Z2Elim,
              {std::move(motive), std::move(scrut), std::move(qin), std::move(qmod)});
}
Term mk_star() { return make(Tag::Star); }
Term mk_abort(Term motive, Term m) {
  return make(Tag::Abort, {std::move(motive), std::move(m)});
}

// ---- generic traversal ----------------------------------------------------

namespace {

struct Depth {
  int t = 0, p = 0, b = 0;
  int& of(Sort s) { return s == Sort::Term ? t : (s == Sort::Path ? p : b); }
  Depth inside(const std::vector<Sort>& sig) const {
    Depth d = *this;
    for (Sort s : sig) d.of(s)++;
    return d;
  }
};

struct Xform {
  // Leaf hooks; each may return the input unchanged.
  std::function<Term(const Term&, const Depth&)> on_var;  // FreeVar / BoundVar nodes
  std::function<PathTerm(const PathTerm&, const Depth&)> on_path;
  std::function<BridgeTerm(const BridgeTerm&, const Depth&)> on_bridge;
};

Term transform(const Term& t, Depth d, const Xform& x) {
  if (t->tag == Tag::FreeVar || t->tag == Tag::BoundVar)
    return x.on_var ? x.on_var(t, d) : t;
  bool changed = false;
  auto n = std::make_shared<Node>(*t);
  if (x.on_path) {
    for (auto& p : n->ps) {
      PathTerm q = x.on_path(p, d);
      if (q != p) {
        p = q;
        changed = true;
      }
    }
  }
  if (x.on_bridge) {
    for (auto& b : n->bs) {
      BridgeTerm q = x.on_bridge(b, d);
      if (q != b) {
        b = q;
        changed = true;
      }
    }
  }
  for (size_t i = 0; i < n->kids.size(); i++) {
    Depth di = d.inside(arg_binders(t->tag, i));
    Term k = transform(n->kids[i], di, x);
    if (k != n->kids[i]) {
      n->kids[i] = k;
      changed = true;
    }
  }
  for (auto& tube : n->sys) {
    if (tube.cof.kind == Constraint::Kind::PathEq) {
      if (x.on_path) {
        PathTerm l = x.on_path(tube.cof.pl, d), r = x.on_path(tube.cof.pr, d);
        if (l != tube.cof.pl || r != tube.cof.pr) {
          tube.cof = Constraint::path_eq(l, r);
          changed = true;
        }
      }
    } else if (x.on_bridge) {
      BridgeTerm l = x.on_bridge(tube.cof.bl, d);
      if (l != tube.cof.bl) {
        tube.cof = Constraint::bridge_eq(l, tube.cof.beps);
        changed = true;
      }
    }
    Depth dt = d;
    dt.p++;
    Term body = transform(tube.body, dt, x);
    if (body != tube.body) {
      tube.body = body;
      changed = true;
    }
  }
  return changed ? Term(n) : t;
}

bool scan(const Term& t, Depth d, const std::function<bool(const Term&, const Depth&)>& fv,
          const std::function<bool(const PathTerm&, const Depth&)>& fp,
          const std::function<bool(const BridgeTerm&, const Depth&)>& fb) {
  if (t->tag == Tag::FreeVar || t->tag == Tag::BoundVar) return fv && fv(t, d);
  if (fp)
    for (const auto& p : t->ps)
      if (fp(p, d)) return true;
  if (fb)
    for (const auto& b : t->bs)
      if (fb(b, d)) return true;
  for (size_t i = 0; i < t->kids.size(); i++)
    if (scan(t->kids[i], d.inside(arg_binders(t->tag, i)), fv, fp, fb)) return true;
  for (const auto& tube : t->sys) {
    if (tube.cof.kind == Constraint::Kind::PathEq) {
      if (fp && (fp(tube.cof.pl, d) || fp(tube.cof.pr, d))) return true;
    } else {
      if (fb && fb(tube.cof.bl, d)) return true;
    }
    Depth dt = d;
    dt.p++;
    if (scan(tube.body, dt, fv, fp, fb)) return true;
  }
  return false;
}

}  // namespace

bool occurs_term(const Term& t, int id) {
  return scan(
      t, {},
      [&](const Term& v, const Depth&) { return v->tag == Tag::FreeVar && v->var == id; },
      nullptr, nullptr);
}

bool occurs_path(const Term& t, int id) {
  return scan(t, {}, nullptr,
              [&](const PathTerm& p, const Depth&) { return p.is_free() && p.var == id; },
              nullptr);
}

bool occurs_bridge(const Term& t, int id) {
  return scan(t, {}, nullptr, nullptr, [&](const BridgeTerm& b, const Depth&) {
    return b.is_free() && b.var == id;
  });
}

bool occurs_bridge(const Constraint& c, int id) {
  return c.kind == Constraint::Kind::BridgeEq && c.bl.is_free() && c.bl.var == id;
}

void collect_free_term_vars(const Term& t, std::vector<int>& out) {
  scan(
      t, {},
      [&](const Term& v, const Depth&) {
        if (v->tag == Tag::FreeVar) out.push_back(v->var);
        return false;
      },
      nullptr, nullptr);
}

Term subst_term(const Term& m, int id, const Term& n) {
  Xform x;
  x.on_var = [&](const Term& v, const Depth&) -> Term {
    if (v->tag == Tag::FreeVar && v->var == id) return n;
    return v;
  };
  return transform(m, {}, x);
}

Term subst_path(const Term& m, int id, const PathTerm& r) {
  Xform x;
  x.on_path = [&](const PathTerm& p, const Depth&) {
    return (p.is_free() && p.var == id) ? r : p;
  };
  return transform(m, {}, x);
}

Term subst_bridge(const Term& m, int id, const BridgeTerm& r) {
  if (r.is_free()) {
    if (r.var == id) return m;
    if (occurs_bridge(m, r.var))
      throw TypeError(Code::DiagonalSubstitution,
                      "substituting a bridge variable that already occurs in the term");
  }
  Xform x;
  x.on_bridge = [&](const BridgeTerm& b, const Depth&) {
    return (b.is_free() && b.var == id) ? r : b;
  };
  return transform(m, {}, x);
}

Term apply_subst(const Term& m, const IntervalSubst& psi) {
  Xform x;
  x.on_path = [&](const PathTerm& p, const Depth&) { return psi.apply(p); };
  x.on_bridge = [&](const BridgeTerm& b, const Depth&) { return psi.apply(b); };
  return transform(m, {}, x);
}

Term instantiate(const Term& body, const std::vector<Sort>& sig,
                 const std::vector<BinderArg>& args) {
  assert(sig.size() == args.size());
  int nt = 0, np = 0, nb = 0;
  for (Sort s : sig) (s == Sort::Term ? nt : s == Sort::Path ? np : nb)++;
  // position of sig entry i within its own sort, innermost (last) = 0
  auto sort_index = [&](size_t i) {
    int k = 0;
    for (size_t j = i + 1; j < sig.size(); j++)
      if (sig[j] == sig[i]) k++;
    return k;
  };
  Xform x;
  x.on_var = [&](const Term& v, const Depth& d) -> Term {
    if (v->tag != Tag::BoundVar) return v;
    int j = v->var;
    if (j < d.t) return v;
    int rel = j - d.t;
    if (rel < nt) {
      for (size_t i = 0; i < sig.size(); i++)
        if (sig[i] == Sort::Term && sort_index(i) == rel) return args[i].t;
      assert(false);
    }
    return mk_bound(j - nt);
  };
  x.on_path = [&](const PathTerm& p, const Depth& d) {
    if (p.kind != PathTerm::Kind::Bound) return p;
    int j = p.var;
    if (j < d.p) return p;
    int rel = j - d.p;
    if (rel < np) {
      for (size_t i = 0; i < sig.size(); i++)
        if (sig[i] == Sort::Path && sort_index(i) == rel) return args[i].p;
      assert(false);
    }
    return PathTerm::bound(j - np);
  };
  x.on_bridge = [&](const BridgeTerm& b, const Depth& d) {
    if (b.kind != BridgeTerm::Kind::Bound) return b;
    int j = b.var;
    if (j < d.b) return b;
    int rel = j - d.b;
    if (rel < nb) {
      for (size_t i = 0; i < sig.size(); i++)
        if (sig[i] == Sort::Bridge && sort_index(i) == rel) return args[i].b;
      assert(false);
    }
    return BridgeTerm::bound(j - nb);
  };
  return transform(body, {}, x);
}

Term abstract(const Term& t, const std::vector<Sort>& sig, const std::vector<int>& ids) {
  assert(sig.size() == ids.size());
  int nt = 0, np = 0, nb = 0;
  for (Sort s : sig) (s == Sort::Term ? nt : s == Sort::Path ? np : nb)++;
  auto sort_index = [&](size_t i) {
    int k = 0;
    for (size_t j = i + 1; j < sig.size(); j++)
      if (sig[j] == sig[i]) k++;
    return k;
  };
  Xform x;
  x.on_var = [&](const Term& v, const Depth& d) -> Term {
    if (v->tag == Tag::FreeVar) {
      for (size_t i = 0; i < sig.size(); i++)
        if (sig[i] == Sort::Term && ids[i] == v->var)
          return mk_bound(d.t + sort_index(i));
      return v;
    }
    // existing bound indices that escape this depth shift up
    if (v->var >= d.t) return mk_bound(v->var + nt);
    return v;
  };
  x.on_path = [&](const PathTerm& p, const Depth& d) {
    if (p.is_free()) {
      for (size_t i = 0; i < sig.size(); i++)
        if (sig[i] == Sort::Path && ids[i] == p.var)
          return PathTerm::bound(d.p + sort_index(i));
      return p;
    }
    if (p.kind == PathTerm::Kind::Bound && p.var >= d.p) return PathTerm::bound(p.var + np);
    return p;
  };
  x.on_bridge = [&](const BridgeTerm& b, const Depth& d) {
    if (b.is_free()) {
      for (size_t i = 0; i < sig.size(); i++)
        if (sig[i] == Sort::Bridge && ids[i] == b.var)
          return BridgeTerm::bound(d.b + sort_index(i));
      return b;
    }
    if (b.kind == BridgeTerm::Kind::Bound && b.var >= d.b)
      return BridgeTerm::bound(b.var + nb);
    return b;
  };
  return transform(t, {}, x);
}

Term open_term(const Term& body, const Term& v) {
  return instantiate(body, kT, {BinderArg::term(v)});
}
Term open_path(const Term& body, const PathTerm& r) {
  return instantiate(body, kP, {BinderArg::path(r)});
}
Term open_bridge(const Term& body, const BridgeTerm& r) {
  return instantiate(body, kB, {BinderArg::bridge(r)});
}
Term close_term(const Term& t, int id) { return abstract(t, kT, {id}); }
Term close_path(const Term& t, int id) { return abstract(t, kP, {id}); }
Term close_bridge(const Term& t, int id) { return abstract(t, kB, {id}); }

bool constraint_eq(const Constraint& a, const Constraint& b) { return a == b; }

bool alpha_eq(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::FreeVar:
    case Tag::BoundVar:
      return a->var == b->var;
    case Tag::DefRef:
      return a->hint == b->hint;
    case Tag::IntLit:
      return a->lit == b->lit;
    default:
      break;
  }
  if (a->ps.size() != b->ps.size() || a->bs.size() != b->bs.size() ||
      a->kids.size() != b->kids.size() || a->sys.size() != b->sys.size())
    return false;
  for (size_t i = 0; i < a->ps.size(); i++)
    if (a->ps[i] != b->ps[i]) return false;
  for (size_t i = 0; i < a->bs.size(); i++)
    if (a->bs[i] != b->bs[i]) return false;
  for (size_t i = 0; i < a->kids.size(); i++)
    if (!alpha_eq(a->kids[i], b->kids[i])) return false;
  for (size_t i = 0; i < a->sys.size(); i++) {
    if (a->sys[i].cof != b->sys[i].cof) return false;
    if (!alpha_eq(a->sys[i].body, b->sys[i].body)) return false;
  }
  return true;
}

}  // namespace ptt
