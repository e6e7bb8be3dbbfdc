#include "ptt/conversion.hpp"

#include <algorithm>

namespace ptt {

Term arrow(const Term& a, const Term& b) { return mk_pi(a, b); }

Term path_in(const Term& a, const Term& m, const Term& n) { return mk_path(a, m, n); }

Term iso_type(const Term& a, const Term& b) {
  // linv f = Σ(g : B→A). Π(x:A). Path A (g (f x)) x
  // rinv f = Σ(g : B→A). Π(y:B). Path B (f (g y)) y
  // iso    = Σ(f : A→B). linv f × rinv f
  int f = fresh_id(), g = fresh_id(), x = fresh_id();
  Term fv = mk_free(f, "f"), gv = mk_free(g, "g"), xv = mk_free(x, "x");
  Term linv = mk_sigma(
      arrow(b, a),
      close_term(mk_pi(a, close_term(path_in(a, mk_app(gv, mk_app(fv, xv)), xv), x)), g));
  Term rinv = mk_sigma(
      arrow(b, a),
      close_term(mk_pi(b, close_term(path_in(b, mk_app(fv, mk_app(gv, xv)), xv), x)), g));
  Term isiso = mk_sigma(linv, rinv);
  return mk_sigma(arrow(a, b), close_term(isiso, f));
}

bool path_dims_eq(const Context& ctx, PathTerm a, PathTerm b) {
  return constraint_status(ctx, Constraint::path_eq(a, b)) == Status::True;
}

bool bridge_dims_eq(const Context& ctx, BridgeTerm a, BridgeTerm b) {
  a = apply_ctx_valuation(ctx, a);
  b = apply_ctx_valuation(ctx, b);
  if (a == b) return true;
  if (a.is_const() && b.is_const()) return a.endpoint() == b.endpoint();
  return false;
}

namespace {

// Resolves a Path-∂ / Bridge-∂ boundary at the innermost stuck position of
// the principal spine, if any. Returns the rewritten term on progress.
std::optional<Term> resolve_boundary(Session& s, const Context& ctx, const Term& t) {
  auto rebuild = [&](size_t slot, const Term& k) {
    auto n = std::make_shared<Node>(*t);
    n->kids[slot] = k;
    return Term(n);
  };
  switch (t->tag) {
    case Tag::PApp: {
      if (auto k = resolve_boundary(s, ctx, t->kids[0])) return rebuild(0, *k);
      if (t->ps[0].is_const()) {
        auto ty = neutral_type(s, ctx, t->kids[0]);
        if (ty) {
          Term pt = whnf(s, ctx, *ty);
          if (pt->tag == Tag::Path) return pt->kids[1 + t->ps[0].endpoint()];
        }
      }
      return std::nullopt;
    }
    case Tag::BApp: {
      if (auto k = resolve_boundary(s, ctx, t->kids[0])) return rebuild(0, *k);
      if (t->bs[0].is_const()) {
        auto ty = neutral_type(s, ctx, t->kids[0]);
        if (ty) {
          Term bt = whnf(s, ctx, *ty);
          if (bt->tag == Tag::Bridge) return bt->kids[1 + t->bs[0].endpoint()];
        }
      }
      return std::nullopt;
    }
    case Tag::App:
    case Tag::Fst:
    case Tag::Snd:
    case Tag::Vproj: {
      if (auto k = resolve_boundary(s, ctx, t->kids[0])) return rebuild(0, *k);
      return std::nullopt;
    }
    case Tag::If:
    case Tag::Z2Elim:
    case Tag::Abort: {
      if (auto k = resolve_boundary(s, ctx, t->kids[1])) return rebuild(1, *k);
      return std::nullopt;
    }
    case Tag::IntAdd: {
      if (auto k = resolve_boundary(s, ctx, t->kids[0])) return rebuild(0, *k);
      if (auto k = resolve_boundary(s, ctx, t->kids[1])) return rebuild(1, *k);
      return std::nullopt;
    }
    case Tag::Ungel: {
      Context cx = ctx;
      int bx = cx.add_bridge("x");
      Term q = open_bridge(t->kids[0], BridgeTerm::free(bx));
      if (auto k = resolve_boundary(s, cx, q)) return mk_ungel(close_bridge(*k, bx));
      return std::nullopt;
    }
    case Tag::Coe: {
      Context cx = ctx;
      int x = cx.add_path("x");
      Term a = open_path(t->kids[0], PathTerm::free(x));
      if (auto k = resolve_boundary(s, cx, a)) {
        auto n = std::make_shared<Node>(*t);
        n->kids[0] = close_path(*k, x);
        return Term(n);
      }
      return std::nullopt;
    }
    case Tag::HCom:
    case Tag::FHCom: {
      if (auto k = resolve_boundary(s, ctx, t->kids[0])) return rebuild(0, *k);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

Term whnf(Session& s, const Context& ctx, Term t) {
  t = apply_ctx_valuation(ctx, t);
  IntervalCtx psi = ctx.dims();
  // Extent-β on open terms only fires when the principal argument depends on
  // no term variable introduced after the bridge index.
  StepOpts opts;
  opts.extent_ok = [&ctx](const Term& m, int x) {
    std::vector<int> fv;
    collect_free_term_vars(m, fv);
    if (fv.empty()) return true;
    size_t xpos = ctx.entries.size();
    for (size_t i = 0; i < ctx.entries.size(); i++)
      if (ctx.entries[i].kind == CtxEntry::Kind::BridgeDim && ctx.entries[i].id == x)
        xpos = i;
    for (int id : fv) {
      bool before = false;
      for (size_t i = 0; i < xpos && i < ctx.entries.size(); i++)
        if (ctx.entries[i].kind == CtxEntry::Kind::TermVar && ctx.entries[i].id == id)
          before = true;
      if (!before) return false;
    }
    return true;
  };
  for (;;) {
    t = head_normal(&s.defs, psi, t, s.fuel, nullptr, &opts);
    if (isval(t)) return t;
    if (auto k = resolve_boundary(s, ctx, t)) {
      s.fuel.tick();
      t = *k;
      continue;
    }
    return t;
  }
}

std::optional<Term> neutral_type(Session& s, const Context& ctx, const Term& t) {
  switch (t->tag) {
    case Tag::FreeVar: {
      const CtxEntry* e = ctx.lookup(t->var);
      if (!e || e->kind != CtxEntry::Kind::TermVar) return std::nullopt;
      return e->type;
    }
    case Tag::App: {
      auto ft = neutral_type(s, ctx, t->kids[0]);
      if (!ft) return std::nullopt;
      Term pi = whnf(s, ctx, *ft);
      if (pi->tag != Tag::Pi) return std::nullopt;
      return open_term(pi->kids[1], t->kids[1]);
    }
    case Tag::PApp: {
      auto ft = neutral_type(s, ctx, t->kids[0]);
      if (!ft) return std::nullopt;
      Term pt = whnf(s, ctx, *ft);
      if (pt->tag != Tag::Path) return std::nullopt;
      return open_path(pt->kids[0], t->ps[0]);
    }
    case Tag::BApp: {
      auto ft = neutral_type(s, ctx, t->kids[0]);
      if (!ft) return std::nullopt;
      Term bt = whnf(s, ctx, *ft);
      if (bt->tag != Tag::Bridge) return std::nullopt;
      return open_bridge(bt->kids[0], t->bs[0]);
    }
    case Tag::Fst: {
      auto ft = neutral_type(s, ctx, t->kids[0]);
      if (!ft) return std::nullopt;
      Term st = whnf(s, ctx, *ft);
      if (st->tag != Tag::Sigma) return std::nullopt;
      return st->kids[0];
    }
    case Tag::Snd: {
      auto ft = neutral_type(s, ctx, t->kids[0]);
      if (!ft) return std::nullopt;
      Term st = whnf(s, ctx, *ft);
      if (st->tag != Tag::Sigma) return std::nullopt;
      return open_term(st->kids[1], mk_fst(t->kids[0]));
    }
    case Tag::If:
      return open_term(t->kids[0], t->kids[1]);
    case Tag::Z2Elim:
      return open_term(t->kids[0], t->kids[1]);
    case Tag::Abort:
      return t->kids[0];
    case Tag::Ungel: {
      Term q0 = open_bridge(t->kids[0], BridgeTerm::c0());
      Term q1 = open_bridge(t->kids[0], BridgeTerm::c1());
      int bx = fresh_id();
      Context cx = ctx;
      cx.entries.push_back(
          {CtxEntry::Kind::BridgeDim, bx, "x", nullptr, Constraint{}, CtxEntry::Kind::TermVar, 0});
      Term q = open_bridge(t->kids[0], BridgeTerm::free(bx));
      auto qt = neutral_type(s, cx, q);
      if (!qt) return std::nullopt;
      Term gt = whnf(s, cx, *qt);
      if (gt->tag != Tag::Gel) return std::nullopt;
      return instantiate(gt->kids[2], {Sort::Term, Sort::Term},
                         {BinderArg::term(q0), BinderArg::term(q1)});
    }
    case Tag::HCom:
    case Tag::FHCom:
      return t->kids[0];
    case Tag::Coe:
      return open_path(t->kids[0], t->ps[1]);
    case Tag::Vproj: {
      auto ft = neutral_type(s, ctx, t->kids[0]);
      if (!ft) return std::nullopt;
      Term vt = whnf(s, ctx, *ft);
      if (vt->tag != Tag::V) return std::nullopt;
      return vt->kids[1];
    }
    default:
      return std::nullopt;
  }
}

namespace {

struct Conv {
  Session& s;

  bool dims_eq(const Context& ctx, PathTerm a, PathTerm b) { return path_dims_eq(ctx, a, b); }

  bool cof_eq(const Context& ctx, const Constraint& a, const Constraint& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Constraint::Kind::PathEq)
      return dims_eq(ctx, a.pl, b.pl) && dims_eq(ctx, a.pr, b.pr);
    return bridge_dims_eq(ctx, a.bl, b.bl) && a.beps == b.beps;
  }

  bool sys_eq(const Context& ctx, const Term& type, const System& l, const System& r) {
    if (l.size() != r.size()) return false;
    for (size_t i = 0; i < l.size(); i++) {
      if (!cof_eq(ctx, l[i].cof, r[i].cof)) return false;
      Context cx = ctx;
      int z = cx.add_path("z");
      if (!under(cx, {l[i].cof}, type, open_path(l[i].body, PathTerm::free(z)),
                 open_path(r[i].body, PathTerm::free(z))))
        return false;
    }
    return true;
  }

  // Integers: flatten sums of literals and neutral atoms, compare the literal
  // total and match the atoms pairwise.
  void int_leaves(const Context& ctx, Term t, long long& lit, std::vector<Term>& atoms) {
    t = whnf(s, ctx, t);
    if (t->tag == Tag::IntLit) {
      lit += t->lit;
      return;
    }
    if (t->tag == Tag::IntAdd) {
      int_leaves(ctx, t->kids[0], lit, atoms);
      int_leaves(ctx, t->kids[1], lit, atoms);
      return;
    }
    atoms.push_back(t);
  }

  bool int_eq(const Context& ctx, const Term& l, const Term& r) {
    long long la = 0, lb = 0;
    std::vector<Term> aa, ab;
    int_leaves(ctx, l, la, aa);
    int_leaves(ctx, r, lb, ab);
    if (la != lb || aa.size() != ab.size()) return false;
    std::vector<bool> used(ab.size(), false);
    for (const auto& x : aa) {
      bool found = false;
      for (size_t i = 0; i < ab.size(); i++) {
        if (used[i]) continue;
        if (alpha_eq(x, ab[i]) || neutrals(ctx, x, ab[i]).has_value()) {
          used[i] = true;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  bool terms(const Context& ctx, const Term& type, const Term& l, const Term& r);
  bool types(const Context& ctx, const Term& l, const Term& r);
  std::optional<Term> neutrals(const Context& ctx, const Term& l, const Term& r);
  bool under(const Context& ctx, const std::vector<Constraint>& cs, const Term& type,
             const Term& l, const Term& r);
};

bool Conv::under(const Context& ctx, const std::vector<Constraint>& cs, const Term& type,
                 const Term& l, const Term& r) {
  Context cx = ctx;
  for (const auto& c : cs) cx.add_constraint(c);
  if (ctx_inconsistent(cx)) return true;
  return terms(cx, type, l, r);
}

bool Conv::types(const Context& ctx, const Term& l0, const Term& r0) {
  s.fuel.tick();
  Term l = whnf(s, ctx, l0);
  Term r = whnf(s, ctx, r0);
  if (l->tag != r->tag) {
    auto nl = neutral_type(s, ctx, l), nr = neutral_type(s, ctx, r);
    if (nl && nr) return neutrals(ctx, l, r).has_value();
    return false;
  }
  switch (l->tag) {
    case Tag::U:
    case Tag::Bool:
    case Tag::Int:
    case Tag::Z2:
    case Tag::Unit:
    case Tag::Empty:
      return true;
    case Tag::Pi:
    case Tag::Sigma: {
      if (!types(ctx, l->kids[0], r->kids[0])) return false;
      Context cx = ctx;
      int a = cx.add_term(l->kids[0], "a");
      Term v = mk_free(a, "a");
      return types(cx, open_term(l->kids[1], v), open_term(r->kids[1], v));
    }
    case Tag::Path: {
      Context cx = ctx;
      int x = cx.add_path("x");
      if (!types(cx, open_path(l->kids[0], PathTerm::free(x)),
                 open_path(r->kids[0], PathTerm::free(x))))
        return false;
      for (int e = 0; e < 2; e++)
        if (!terms(ctx, open_path(l->kids[0], path_const(e)), l->kids[1 + e], r->kids[1 + e]))
          return false;
      return true;
    }
    case Tag::Bridge: {
      Context cx = ctx;
      int x = cx.add_bridge("x");
      if (!types(cx, open_bridge(l->kids[0], BridgeTerm::free(x)),
                 open_bridge(r->kids[0], BridgeTerm::free(x))))
        return false;
      for (int e = 0; e < 2; e++)
        if (!terms(ctx, open_bridge(l->kids[0], BridgeTerm::cn(e)), l->kids[1 + e],
                   r->kids[1 + e]))
          return false;
      return true;
    }
    case Tag::Gel: {
      if (!bridge_dims_eq(ctx, l->bs[0], r->bs[0])) return false;
      if (!types(ctx, l->kids[0], r->kids[0])) return false;
      if (!types(ctx, l->kids[1], r->kids[1])) return false;
      Context cx = ctx;
      int a0 = cx.add_term(l->kids[0], "a0");
      int a1 = cx.add_term(l->kids[1], "a1");
      std::vector<BinderArg> args{BinderArg::term(mk_free(a0, "a0")),
                                  BinderArg::term(mk_free(a1, "a1"))};
      return types(cx, instantiate(l->kids[2], {Sort::Term, Sort::Term}, args),
                   instantiate(r->kids[2], {Sort::Term, Sort::Term}, args));
    }
    case Tag::V: {
      if (!dims_eq(ctx, l->ps[0], r->ps[0])) return false;
      if (!types(ctx, l->kids[1], r->kids[1])) return false;
      std::vector<Constraint> r0{Constraint::path_eq(l->ps[0], PathTerm::c0())};
      Context cx = ctx;
      cx.add_constraint(r0[0]);
      if (ctx_inconsistent(cx)) return true;
      if (!types(cx, l->kids[0], r->kids[0])) return false;
      return terms(cx, iso_type(l->kids[0], l->kids[1]), l->kids[2], r->kids[2]);
    }
    default: {
      auto n = neutrals(ctx, l, r);
      return n.has_value();
    }
  }
}

std::optional<Term> Conv::neutrals(const Context& ctx, const Term& l, const Term& r) {
  if (l->tag != r->tag) return std::nullopt;
  switch (l->tag) {
    case Tag::FreeVar: {
      if (l->var != r->var) return std::nullopt;
      const CtxEntry* e = ctx.lookup(l->var);
      if (!e || e->kind != CtxEntry::Kind::TermVar) return std::nullopt;
      return e->type;
    }
    case Tag::App: {
      auto ft = neutrals(ctx, l->kids[0], r->kids[0]);
      if (!ft) return std::nullopt;
      Term pi = whnf(s, ctx, *ft);
      if (pi->tag != Tag::Pi) return std::nullopt;
      if (!terms(ctx, pi->kids[0], l->kids[1], r->kids[1])) return std::nullopt;
      return open_term(pi->kids[1], l->kids[1]);
    }
    case Tag::PApp: {
      if (!dims_eq(ctx, l->ps[0], r->ps[0])) return std::nullopt;
      auto ft = neutrals(ctx, l->kids[0], r->kids[0]);
      if (!ft) return std::nullopt;
      Term pt = whnf(s, ctx, *ft);
      if (pt->tag != Tag::Path) return std::nullopt;
      return open_path(pt->kids[0], l->ps[0]);
    }
    case Tag::BApp: {
      if (!bridge_dims_eq(ctx, l->bs[0], r->bs[0])) return std::nullopt;
      auto ft = neutrals(ctx, l->kids[0], r->kids[0]);
      if (!ft) return std::nullopt;
      Term bt = whnf(s, ctx, *ft);
      if (bt->tag != Tag::Bridge) return std::nullopt;
      return open_bridge(bt->kids[0], l->bs[0]);
    }
    case Tag::Fst: {
      auto ft = neutrals(ctx, l->kids[0], r->kids[0]);
      if (!ft) return std::nullopt;
      Term st = whnf(s, ctx, *ft);
      if (st->tag != Tag::Sigma) return std::nullopt;
      return st->kids[0];
    }
    case Tag::Snd: {
      auto ft = neutrals(ctx, l->kids[0], r->kids[0]);
      if (!ft) return std::nullopt;
      Term st = whnf(s, ctx, *ft);
      if (st->tag != Tag::Sigma) return std::nullopt;
      return open_term(st->kids[1], mk_fst(l->kids[0]));
    }
    case Tag::If: {
      Context cx = ctx;
      int b = cx.add_term(mk_bool(), "b");
      Term bv = mk_free(b, "b");
      if (!types(cx, open_term(l->kids[0], bv), open_term(r->kids[0], bv)))
        return std::nullopt;
      if (!terms(ctx, mk_bool(), l->kids[1], r->kids[1])) return std::nullopt;
      if (!terms(ctx, open_term(l->kids[0], mk_tt()), l->kids[2], r->kids[2]))
        return std::nullopt;
      if (!terms(ctx, open_term(l->kids[0], mk_ff()), l->kids[3], r->kids[3]))
        return std::nullopt;
      return open_term(l->kids[0], l->kids[1]);
    }
    case Tag::Z2Elim: {
      Context cx = ctx;
      int a = cx.add_term(mk_z2(), "a");
      Term av = mk_free(a, "a");
      if (!types(cx, open_term(l->kids[0], av), open_term(r->kids[0], av)))
        return std::nullopt;
      if (!terms(ctx, mk_z2(), l->kids[1], r->kids[1])) return std::nullopt;
      Context cn = ctx;
      int n = cn.add_term(mk_int(), "n");
      Term nv = mk_free(n, "n");
      if (!terms(cn, open_term(l->kids[0], mk_zin(nv)), open_term(l->kids[2], nv),
                 open_term(r->kids[2], nv)))
        return std::nullopt;
      Context cm = cn;
      int x = cm.add_path("x");
      std::vector<BinderArg> args{BinderArg::term(nv), BinderArg::path(PathTerm::free(x))};
      if (!terms(cm, open_term(l->kids[0], mk_zmod(nv, PathTerm::free(x))),
                 instantiate(l->kids[3], {Sort::Term, Sort::Path}, args),
                 instantiate(r->kids[3], {Sort::Term, Sort::Path}, args)))
        return std::nullopt;
      return open_term(l->kids[0], l->kids[1]);
    }
    case Tag::Abort: {
      if (!types(ctx, l->kids[0], r->kids[0])) return std::nullopt;
      if (!neutrals(ctx, l->kids[1], r->kids[1])) return std::nullopt;
      return l->kids[0];
    }
    case Tag::Ungel: {
      Context cx = ctx;
      int bx = cx.add_bridge("x");
      Term ql = open_bridge(l->kids[0], BridgeTerm::free(bx));
      Term qr = open_bridge(r->kids[0], BridgeTerm::free(bx));
      auto qt = neutrals(cx, ql, qr);
      if (!qt) return std::nullopt;
      Term gt = whnf(s, cx, *qt);
      if (gt->tag != Tag::Gel) return std::nullopt;
      return instantiate(gt->kids[2], {Sort::Term, Sort::Term},
                         {BinderArg::term(open_bridge(l->kids[0], BridgeTerm::c0())),
                          BinderArg::term(open_bridge(l->kids[0], BridgeTerm::c1()))});
    }
    case Tag::HCom: {
      if (!dims_eq(ctx, l->ps[0], r->ps[0]) || !dims_eq(ctx, l->ps[1], r->ps[1]))
        return std::nullopt;
      if (!types(ctx, l->kids[0], r->kids[0])) return std::nullopt;
      if (!terms(ctx, l->kids[0], l->kids[1], r->kids[1])) return std::nullopt;
      if (!sys_eq(ctx, l->kids[0], l->sys, r->sys)) return std::nullopt;
      return l->kids[0];
    }
    case Tag::Coe: {
      if (!dims_eq(ctx, l->ps[0], r->ps[0]) || !dims_eq(ctx, l->ps[1], r->ps[1]))
        return std::nullopt;
      Context cx = ctx;
      int x = cx.add_path("x");
      if (!types(cx, open_path(l->kids[0], PathTerm::free(x)),
                 open_path(r->kids[0], PathTerm::free(x))))
        return std::nullopt;
      if (!terms(ctx, open_path(l->kids[0], l->ps[0]), l->kids[1], r->kids[1]))
        return std::nullopt;
      return open_path(l->kids[0], l->ps[1]);
    }
    case Tag::Vproj: {
      if (!dims_eq(ctx, l->ps[0], r->ps[0])) return std::nullopt;
      auto pt = neutrals(ctx, l->kids[0], r->kids[0]);
      if (!pt) return std::nullopt;
      Term vt = whnf(s, ctx, *pt);
      if (vt->tag != Tag::V) return std::nullopt;
      if (!terms(ctx, iso_type(vt->kids[0], vt->kids[1]), l->kids[1], r->kids[1]))
        return std::nullopt;
      return vt->kids[1];
    }
    default:
      return std::nullopt;
  }
}

bool Conv::terms(const Context& ctx, const Term& type, const Term& l, const Term& r) {
  s.fuel.tick();
  Term ty = whnf(s, ctx, type);
  switch (ty->tag) {
    case Tag::U:
      return types(ctx, l, r);
    case Tag::Pi: {
      Context cx = ctx;
      int a = cx.add_term(ty->kids[0], "a");
      Term v = mk_free(a, "a");
      return terms(cx, open_term(ty->kids[1], v), mk_app(l, v), mk_app(r, v));
    }
    case Tag::Sigma: {
      if (!terms(ctx, ty->kids[0], mk_fst(l), mk_fst(r))) return false;
      return terms(ctx, open_term(ty->kids[1], mk_fst(l)), mk_snd(l), mk_snd(r));
    }
    case Tag::Path: {
      Context cx = ctx;
      int x = cx.add_path("x");
      PathTerm xv = PathTerm::free(x);
      return terms(cx, open_path(ty->kids[0], xv), mk_papp(l, xv), mk_papp(r, xv));
    }
    case Tag::Bridge: {
      Context cx = ctx;
      int x = cx.add_bridge("x");
      BridgeTerm xv = BridgeTerm::free(x);
      return terms(cx, open_bridge(ty->kids[0], xv), mk_bapp(l, xv), mk_bapp(r, xv));
    }
    case Tag::Gel: {
      BridgeTerm g = ty->bs[0];
      Term lw = whnf(s, ctx, l);
      Term rw = whnf(s, ctx, r);
      bool lg = lw->tag == Tag::GelTm, rg = rw->tag == Tag::GelTm;
      if (!lg && !rg) {
        if (alpha_eq(lw, rw)) return true;
        return neutrals(ctx, lw, rw).has_value();
      }
      if (!g.is_free()) return false;
      int bx = g.var;
      auto expand = [&](const Term& q) {
        return std::array<Term, 3>{subst_bridge(q, bx, BridgeTerm::c0()),
                                   subst_bridge(q, bx, BridgeTerm::c1()),
                                   mk_ungel(abstract_bridge(q, bx))};
      };
      std::array<Term, 3> le = lg ? std::array<Term, 3>{lw->kids[0], lw->kids[1], lw->kids[2]}
                                  : expand(lw);
      std::array<Term, 3> re = rg ? std::array<Term, 3>{rw->kids[0], rw->kids[1], rw->kids[2]}
                                  : expand(rw);
      if (!terms(ctx, ty->kids[0], le[0], re[0])) return false;
      if (!terms(ctx, ty->kids[1], le[1], re[1])) return false;
      Term rel = instantiate(ty->kids[2], {Sort::Term, Sort::Term},
                             {BinderArg::term(le[0]), BinderArg::term(le[1])});
      return terms(ctx, rel, le[2], re[2]);
    }
    default:
      break;
  }
  // Base types, V types, neutral types: compare weak-head values.
  Term lw = whnf(s, ctx, l);
  Term rw = whnf(s, ctx, r);
  if (ty->tag == Tag::Int) return int_eq(ctx, lw, rw);
  if (alpha_eq(lw, rw)) return true;
  if (lw->tag != rw->tag) return false;
  switch (lw->tag) {
    case Tag::TT:
    case Tag::FF:
    case Tag::Star:
      return true;
    case Tag::IntLit:
      return lw->lit == rw->lit;
    case Tag::Zin:
      return int_eq(ctx, lw->kids[0], rw->kids[0]);
    case Tag::Zmod:
      return dims_eq(ctx, lw->ps[0], rw->ps[0]) && int_eq(ctx, lw->kids[0], rw->kids[0]);
    case Tag::FHCom: {
      if (!dims_eq(ctx, lw->ps[0], rw->ps[0]) || !dims_eq(ctx, lw->ps[1], rw->ps[1]))
        return false;
      if (!types(ctx, lw->kids[0], rw->kids[0])) return false;
      if (!terms(ctx, lw->kids[0], lw->kids[1], rw->kids[1])) return false;
      return sys_eq(ctx, lw->kids[0], lw->sys, rw->sys);
    }
    case Tag::Vin: {
      if (!dims_eq(ctx, lw->ps[0], rw->ps[0])) return false;
      if (ty->tag == Tag::V) {
        std::vector<Constraint> c0{Constraint::path_eq(ty->ps[0], PathTerm::c0())};
        if (!under(ctx, c0, ty->kids[0], lw->kids[0], rw->kids[0])) return false;
        return terms(ctx, ty->kids[1], lw->kids[1], rw->kids[1]);
      }
      return false;
    }
    default: {
      auto n = neutrals(ctx, lw, rw);
      return n.has_value();
    }
  }
}

}  // namespace

bool conv(Session& s, const Context& ctx, const Term& type, const Term& l, const Term& r) {
  Conv c{s};
  return c.terms(ctx, type, l, r);
}

bool conv_type(Session& s, const Context& ctx, const Term& l, const Term& r) {
  Conv c{s};
  return c.types(ctx, l, r);
}

bool conv_under(Session& s, const Context& ctx, const std::vector<Constraint>& cs,
                const Term& type, const Term& l, const Term& r) {
  Conv c{s};
  return c.under(ctx, cs, type, l, r);
}

}  // namespace ptt
