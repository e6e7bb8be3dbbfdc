#include "ptt/opsem.hpp"

namespace ptt {

namespace {

bool is_canonical_type(Tag t) {
  switch (t) {
    case Tag::U:
    case Tag::Bool:
    case Tag::Int:
    case Tag::Z2:
    case Tag::Unit:
    case Tag::Empty:
    case Tag::Pi:
    case Tag::Sigma:
    case Tag::Path:
    case Tag::Bridge:
    case Tag::Gel:
    case Tag::V:
      return true;
    default:
      return false;
  }
}

Constraint subst_bridge_cof(const Constraint& c, int id, const BridgeTerm& r) {
  if (c.kind == Constraint::Kind::PathEq) return c;
  BridgeTerm l = c.bl;
  if (l.is_free() && l.var == id) l = r;
  return Constraint::bridge_eq(l, c.beps);
}

System subst_bridge_sys(const System& sys, int id, const BridgeTerm& r) {
  System out;
  out.reserve(sys.size());
  for (const auto& tb : sys)
    out.push_back({subst_bridge_cof(tb.cof, id, r), subst_bridge(tb.body, id, r)});
  return out;
}

// Maps every tube body through fn (with the tube dimension opened fresh).
System map_sys(const System& sys, const std::function<Term(const Term&)>& fn) {
  System out;
  out.reserve(sys.size());
  for (const auto& tb : sys) {
    int z = fresh_id();
    Term opened = open_path(tb.body, PathTerm::free(z));
    out.push_back({tb.cof, close_path(fn(opened), z)});
  }
  return out;
}

int first_true_tube(const System& sys) {
  for (size_t i = 0; i < sys.size(); i++)
    if (constraint_status_closed(sys[i].cof) == Status::True) return (int)i;
  return -1;
}

}  // namespace

Term com(const Term& line, PathTerm r, PathTerm s, Term cap, const System& tubes) {
  Term a_s = open_path(line, s);
  Term cap2 = mk_coe(line, r, s, std::move(cap));
  System out;
  out.reserve(tubes.size());
  for (const auto& tb : tubes) {
    int z = fresh_id();
    Term body = open_path(tb.body, PathTerm::free(z));
    body = mk_coe(line, PathTerm::free(z), s, body);
    out.push_back({tb.cof, close_path(body, z)});
  }
  return mk_hcom(a_s, r, s, cap2, std::move(out));
}

bool isval(const Term& t) {
  switch (t->tag) {
    case Tag::U:
    case Tag::Bool:
    case Tag::Int:
    case Tag::Z2:
    case Tag::Unit:
    case Tag::Empty:
    case Tag::Pi:
    case Tag::Sigma:
    case Tag::Path:
    case Tag::Bridge:
    case Tag::Lam:
    case Tag::PLam:
    case Tag::BLam:
    case Tag::Pair:
    case Tag::TT:
    case Tag::FF:
    case Tag::Star:
    case Tag::IntLit:
    case Tag::Zin:
      return true;
    case Tag::Zmod:
      return !t->ps[0].is_const();
    case Tag::Gel:
    case Tag::GelTm:
      return !t->bs[0].is_const();
    case Tag::V:
    case Tag::Vin:
      return !t->ps[0].is_const();
    case Tag::FHCom:
      return t->ps[0] != t->ps[1] && first_true_tube(t->sys) < 0;
    default:
      return false;
  }
}

namespace {

struct Stepper {
  const DefEnv* env;
  const IntervalCtx& psi;
  const StepOpts* opts;

  StepResult cong(const Term& t, size_t slot, const char* label) {
    StepResult r = run(t->kids[slot]);
    if (r.kind != StepResult::Kind::Steps) return r;
    auto n = std::make_shared<Node>(*t);
    n->kids[slot] = r.next;
    std::string path = label;
    if (!r.path.empty()) path += "." + r.path;
    return StepResult::steps(n, r.rule, path);
  }

  StepResult step_coe(const Term& t);
  StepResult step_hcom(const Term& t);
  StepResult elim_fhcom(const Term& scrut, const Term& motive,
                        const std::function<Term(const Term&)>& el, const char* rule);
  StepResult run(const Term& t);
};

StepResult Stepper::elim_fhcom(const Term& scrut, const Term& motive,
                               const std::function<Term(const Term&)>& el,
                               const char* rule) {
  // Eliminators commute with base-type composite values via com in the motive.
  PathTerm r = scrut->ps[0], s = scrut->ps[1];
  const Term& base = scrut->kids[0];
  const Term& cap = scrut->kids[1];
  int y = fresh_id();
  Term filler = mk_fhcom(base, r, PathTerm::free(y), cap, scrut->sys);
  Term line = close_path(open_term(motive, filler), y);
  System tubes = map_sys(scrut->sys, el);
  return StepResult::steps(com(line, r, s, el(cap), tubes), rule);
}

StepResult Stepper::step_coe(const Term& t) {
  PathTerm r = t->ps[0], s = t->ps[1];
  const Term& cap = t->kids[1];
  if (r == s) return StepResult::steps(cap, "coe/id");
  int x = fresh_id();
  PathTerm xv = PathTerm::free(x);
  Term a = open_path(t->kids[0], xv);
  if (!is_canonical_type(a->tag)) {
    IntervalCtx psi2 = psi;
    psi2.entries.push_back({Sort::Path, x, "x"});
    Stepper inner{env, psi2, opts};
    StepResult ir = inner.run(a);
    if (ir.kind == StepResult::Kind::Steps) {
      auto n = std::make_shared<Node>(*t);
      n->kids[0] = close_path(ir.next, x);
      std::string path = "coe.line";
      if (!ir.path.empty()) path += "." + ir.path;
      return StepResult::steps(n, ir.rule, path);
    }
    if (ir.kind == StepResult::Kind::Stuck) return ir;
    return StepResult::stuck("coe along a non-type value");
  }
  auto line_of = [&](const Term& interior) { return close_path(interior, x); };
  switch (a->tag) {
    case Tag::Bool:
    case Tag::Int:
    case Tag::Z2:
    case Tag::Unit:
    case Tag::Empty:
      return StepResult::steps(cap, "coe/base");
    case Tag::U:
      return StepResult::steps(cap, "coe/U");
    case Tag::Pi: {
      const Term& dom = a->kids[0];
      const Term& cod = a->kids[1];
      int av = fresh_id();
      Term arg_at_x = mk_coe(line_of(dom), s, xv, mk_free(av, "a"));
      Term new_line = line_of(open_term(cod, arg_at_x));
      Term arg_at_r = mk_coe(line_of(dom), s, r, mk_free(av, "a"));
      Term body = mk_coe(new_line, r, s, mk_app(cap, arg_at_r));
      return StepResult::steps(mk_lam(close_term(body, av)), "coe/Pi");
    }
    case Tag::Sigma: {
      const Term& dom = a->kids[0];
      const Term& cod = a->kids[1];
      Term fst1 = mk_coe(line_of(dom), r, s, mk_fst(cap));
      Term filler = mk_coe(line_of(dom), r, xv, mk_fst(cap));
      Term line2 = line_of(open_term(cod, filler));
      Term snd1 = mk_coe(line2, r, s, mk_snd(cap));
      return StepResult::steps(mk_pair(fst1, snd1), "coe/Sigma");
    }
    case Tag::Path: {
      int y = fresh_id();
      Term interior = open_path(a->kids[0], PathTerm::free(y));
      System tubes = {
          {Constraint::path_eq(PathTerm::free(y), PathTerm::c0()), line_of(a->kids[1])},
          {Constraint::path_eq(PathTerm::free(y), PathTerm::c1()), line_of(a->kids[2])}};
      Term body = com(line_of(interior), r, s, mk_papp(cap, PathTerm::free(y)), tubes);
      return StepResult::steps(mk_plam(close_path(body, y)), "coe/Path");
    }
    case Tag::Bridge: {
      int bx = fresh_id();
      BridgeTerm bv = BridgeTerm::free(bx);
      Term interior = open_bridge(a->kids[0], bv);
      System tubes = {{Constraint::bridge_eq(bv, 0), line_of(a->kids[1])},
                      {Constraint::bridge_eq(bv, 1), line_of(a->kids[2])}};
      Term body = com(line_of(interior), r, s, mk_bapp(cap, bv), tubes);
      return StepResult::steps(mk_blam(close_bridge(body, bx)), "coe/Bridge");
    }
    case Tag::Gel: {
      BridgeTerm g = a->bs[0];
      if (!g.is_free()) return StepResult::stuck("gel line with bound index");
      int bx = g.var;
      const Term& a0 = a->kids[0];
      const Term& a1 = a->kids[1];
      const Term& rel = a->kids[2];
      auto cap_at = [&](int eps) { return subst_bridge(cap, bx, BridgeTerm::cn(eps)); };
      auto m_eps = [&](int eps, PathTerm to) {
        return mk_coe(line_of(eps ? a1 : a0), r, to, cap_at(eps));
      };
      Term rel_at_x = instantiate(rel, {Sort::Term, Sort::Term},
                                  {BinderArg::term(m_eps(0, xv)), BinderArg::term(m_eps(1, xv))});
      Term pline = line_of(rel_at_x);
      Term ung = mk_ungel(abstract_bridge(cap, bx));
      Term p = mk_coe(pline, r, s, ung);
      return StepResult::steps(mk_geltm(g, m_eps(0, s), m_eps(1, s), p), "coe/Gel");
    }
    case Tag::V:
      return StepResult::stuck("coe across a V line with variable index");
    default:
      return StepResult::stuck("coe along a non-type value");
  }
}

StepResult Stepper::step_hcom(const Term& t) {
  PathTerm r = t->ps[0], s = t->ps[1];
  const Term& cap = t->kids[1];
  if (r == s) return StepResult::steps(cap, "hcom/id");
  int sel = first_true_tube(t->sys);
  if (sel >= 0)
    return StepResult::steps(open_path(t->sys[sel].body, s), "hcom/tube");
  const Term& a = t->kids[0];
  if (!is_canonical_type(a->tag)) return cong(t, 0, "hcom.type");
  switch (a->tag) {
    case Tag::Bool:
    case Tag::Int:
    case Tag::Z2:
    case Tag::Unit:
      return StepResult::steps(mk_fhcom(a, r, s, cap, t->sys), "hcom/base");
    case Tag::U:
      return StepResult::stuck("hcom at the universe is not supported");
    case Tag::Pi: {
      const Term& cod = a->kids[1];
      int av = fresh_id();
      Term v = mk_free(av, "a");
      System tubes = map_sys(t->sys, [&](const Term& b) { return mk_app(b, v); });
      Term body = mk_hcom(open_term(cod, v), r, s, mk_app(cap, v), tubes);
      return StepResult::steps(mk_lam(close_term(body, av)), "hcom/Pi");
    }
    case Tag::Sigma: {
      const Term& dom = a->kids[0];
      const Term& cod = a->kids[1];
      System fst_tubes = map_sys(t->sys, [](const Term& b) { return mk_fst(b); });
      Term fst_s = mk_hcom(dom, r, s, mk_fst(cap), fst_tubes);
      int y = fresh_id();
      Term filler = mk_hcom(dom, r, PathTerm::free(y), mk_fst(cap), fst_tubes);
      Term line = close_path(open_term(cod, filler), y);
      System snd_tubes = map_sys(t->sys, [](const Term& b) { return mk_snd(b); });
      Term snd_s = com(line, r, s, mk_snd(cap), snd_tubes);
      return StepResult::steps(mk_pair(fst_s, snd_s), "hcom/Sigma");
    }
    case Tag::Path: {
      int y = fresh_id();
      PathTerm yv = PathTerm::free(y);
      Term interior = open_path(a->kids[0], yv);
      System tubes = map_sys(t->sys, [&](const Term& b) { return mk_papp(b, yv); });
      tubes.push_back({Constraint::path_eq(yv, PathTerm::c0()), a->kids[1]});
      tubes.push_back({Constraint::path_eq(yv, PathTerm::c1()), a->kids[2]});
      Term body = mk_hcom(interior, r, s, mk_papp(cap, yv), tubes);
      return StepResult::steps(mk_plam(close_path(body, y)), "hcom/Path");
    }
    case Tag::Bridge: {
      int bx = fresh_id();
      BridgeTerm bv = BridgeTerm::free(bx);
      Term interior = open_bridge(a->kids[0], bv);
      System tubes = map_sys(t->sys, [&](const Term& b) { return mk_bapp(b, bv); });
      tubes.push_back({Constraint::bridge_eq(bv, 0), a->kids[1]});
      tubes.push_back({Constraint::bridge_eq(bv, 1), a->kids[2]});
      Term body = mk_hcom(interior, r, s, mk_bapp(cap, bv), tubes);
      return StepResult::steps(mk_blam(close_bridge(body, bx)), "hcom/Bridge");
    }
    case Tag::Gel: {
      BridgeTerm g = a->bs[0];
      if (!g.is_free()) return StepResult::stuck("gel type with bound index");
      int bx = g.var;
      const Term& rel = a->kids[2];
      auto m_eps = [&](int eps, PathTerm to) {
        BridgeTerm c = BridgeTerm::cn(eps);
        return mk_hcom(a->kids[eps], r, to, subst_bridge(cap, bx, c),
                       subst_bridge_sys(t->sys, bx, c));
      };
      int y = fresh_id();
      PathTerm yv = PathTerm::free(y);
      Term rel_at_y = instantiate(rel, {Sort::Term, Sort::Term},
                                  {BinderArg::term(m_eps(0, yv)), BinderArg::term(m_eps(1, yv))});
      Term pline = close_path(rel_at_y, y);
      System ptubes;
      ptubes.reserve(t->sys.size());
      for (const auto& tb : t->sys) {
        int z = fresh_id();
        Term body = open_path(tb.body, PathTerm::free(z));
        body = mk_ungel(abstract_bridge(body, bx));
        ptubes.push_back({forall_x(bx, tb.cof), close_path(body, z)});
      }
      Term p = com(pline, r, s, mk_ungel(abstract_bridge(cap, bx)), ptubes);
      return StepResult::steps(mk_geltm(g, m_eps(0, s), m_eps(1, s), p), "hcom/Gel");
    }
    case Tag::V:
      return StepResult::stuck("hcom at a V type with variable index");
    case Tag::Empty:
      return StepResult::stuck("hcom at empty");
    default:
      return StepResult::stuck("hcom at a non-type value");
  }
}

StepResult Stepper::run(const Term& t) {
  switch (t->tag) {
    case Tag::DefRef: {
      const Definition* d = env ? env->lookup(t->hint) : nullptr;
      if (!d || !d->body) return StepResult::stuck("unknown definition " + t->hint);
      return StepResult::steps(d->body, "delta");
    }
    case Tag::FreeVar:
      return StepResult::stuck("free term variable");
    case Tag::BoundVar:
      return StepResult::stuck("dangling bound variable");
    case Tag::App: {
      const Term& f = t->kids[0];
      if (!isval(f)) {
        StepResult r = cong(t, 0, "app.fn");
        if (r.kind == StepResult::Kind::Steps) return r;
        if (r.kind == StepResult::Kind::Stuck) return r;
      }
      if (f->tag == Tag::Lam)
        return StepResult::steps(open_term(f->kids[0], t->kids[1]), "app/beta");
      return StepResult::stuck("application of a non-function value");
    }
    case Tag::Fst: {
      const Term& p = t->kids[0];
      if (!isval(p)) return cong(t, 0, "fst.arg");
      if (p->tag == Tag::Pair) return StepResult::steps(p->kids[0], "fst/beta");
      return StepResult::stuck("fst of a non-pair value");
    }
    case Tag::Snd: {
      const Term& p = t->kids[0];
      if (!isval(p)) return cong(t, 0, "snd.arg");
      if (p->tag == Tag::Pair) return StepResult::steps(p->kids[1], "snd/beta");
      return StepResult::stuck("snd of a non-pair value");
    }
    case Tag::PApp: {
      const Term& p = t->kids[0];
      if (!isval(p)) return cong(t, 0, "papp.fn");
      if (p->tag == Tag::PLam)
        return StepResult::steps(open_path(p->kids[0], t->ps[0]), "papp/beta");
      return StepResult::stuck("path application of a non-path value");
    }
    case Tag::BApp: {
      const Term& p = t->kids[0];
      if (!isval(p)) return cong(t, 0, "bapp.fn");
      if (p->tag == Tag::BLam) {
        BridgeTerm r = t->bs[0];
        if (r.is_free() && occurs_bridge(p, r.var))
          return StepResult::stuck("diagonal bridge application");
        return StepResult::steps(open_bridge(p->kids[0], r), "bapp/beta");
      }
      return StepResult::stuck("bridge application of a non-bridge value");
    }
    case Tag::Ungel: {
      int x = fresh_id();
      BridgeTerm bv = BridgeTerm::free(x);
      Term q = open_bridge(t->kids[0], bv);
      IntervalCtx psi2 = psi;
      psi2.entries.push_back({Sort::Bridge, x, "x"});
      Stepper inner{env, psi2, opts};
      if (!isval(q)) {
        StepResult r = inner.run(q);
        if (r.kind == StepResult::Kind::Steps) {
          std::string path = "ungel.body";
          if (!r.path.empty()) path += "." + r.path;
          return StepResult::steps(mk_ungel(close_bridge(r.next, x)), r.rule, path);
        }
        return r;
      }
      if (q->tag == Tag::GelTm && q->bs[0] == bv) {
        if (!apart(q->kids[2], x))
          return StepResult::stuck("gel witness not apart from its bridge binder");
        return StepResult::steps(q->kids[2], "ungel/beta");
      }
      return StepResult::stuck("ungel of a non-gel value");
    }
    case Tag::Extent: {
      BridgeTerm r = t->bs[0];
      const Term& m = t->kids[0];
      if (r.is_const()) {
        const Term& clause = r.endpoint() ? t->kids[4] : t->kids[3];
        return StepResult::steps(open_term(clause, m), "extent/endpoint");
      }
      if (!r.is_free()) return StepResult::stuck("extent with bound index");
      int x = r.var;
      if (opts && opts->extent_ok && !opts->extent_ok(m, x))
        return StepResult::stuck("extent blocked by term variables bound after its index");
      Term m0 = subst_bridge(m, x, BridgeTerm::c0());
      Term m1 = subst_bridge(m, x, BridgeTerm::c1());
      Term line = mk_blam(abstract_bridge(m, x));
      Term inst =
          instantiate(t->kids[5], {Sort::Term, Sort::Term, Sort::Term},
                      {BinderArg::term(m0), BinderArg::term(m1), BinderArg::term(line)});
      return StepResult::steps(mk_bapp(inst, r), "extent/beta");
    }
    case Tag::Gel: {
      BridgeTerm r = t->bs[0];
      if (r.is_const()) return StepResult::steps(t->kids[r.endpoint()], "Gel/endpoint");
      return StepResult::value();
    }
    case Tag::GelTm: {
      BridgeTerm r = t->bs[0];
      if (r.is_const()) return StepResult::steps(t->kids[r.endpoint()], "gel/endpoint");
      return StepResult::value();
    }
    case Tag::V: {
      PathTerm r = t->ps[0];
      if (r.is_const()) return StepResult::steps(t->kids[r.endpoint()], "V/endpoint");
      return StepResult::value();
    }
    case Tag::Vin: {
      PathTerm r = t->ps[0];
      if (r.is_const()) return StepResult::steps(t->kids[r.endpoint()], "Vin/endpoint");
      return StepResult::value();
    }
    case Tag::Vproj: {
      PathTerm r = t->ps[0];
      if (r.kind == PathTerm::Kind::C0)
        return StepResult::steps(mk_app(mk_fst(t->kids[1]), t->kids[0]), "Vproj/0");
      if (r.kind == PathTerm::Kind::C1) return StepResult::steps(t->kids[0], "Vproj/1");
      const Term& p = t->kids[0];
      if (!isval(p)) return cong(t, 0, "vproj.arg");
      if (p->tag == Tag::Vin && p->ps[0] == r)
        return StepResult::steps(p->kids[1], "Vproj/beta");
      return StepResult::stuck("Vproj of a non-Vin value");
    }
    case Tag::If: {
      const Term& b = t->kids[1];
      if (!isval(b)) return cong(t, 1, "if.scrut");
      if (b->tag == Tag::TT) return StepResult::steps(t->kids[2], "if/tt");
      if (b->tag == Tag::FF) return StepResult::steps(t->kids[3], "if/ff");
      if (b->tag == Tag::FHCom) {
        auto el = [&](const Term& m) { return mk_if(t->kids[0], m, t->kids[2], t->kids[3]); };
        return elim_fhcom(b, t->kids[0], el, "if/fhcom");
      }
      return StepResult::stuck("if on a non-boolean value");
    }
    case Tag::Z2Elim: {
      const Term& m = t->kids[1];
      if (!isval(m)) return cong(t, 1, "z2elim.scrut");
      if (m->tag == Tag::Zin)
        return StepResult::steps(open_term(t->kids[2], m->kids[0]), "z2elim/zin");
      if (m->tag == Tag::Zmod) {
        Term body = instantiate(t->kids[3], {Sort::Term, Sort::Path},
                                {BinderArg::term(m->kids[0]), BinderArg::path(m->ps[0])});
        return StepResult::steps(body, "z2elim/zmod");
      }
      if (m->tag == Tag::FHCom) {
        auto el = [&](const Term& x) {
          return mk_z2elim(t->kids[0], x, t->kids[2], t->kids[3]);
        };
        return elim_fhcom(m, t->kids[0], el, "z2elim/fhcom");
      }
      return StepResult::stuck("z2elim on a non-z2 value");
    }
    case Tag::Zmod: {
      PathTerm r = t->ps[0];
      if (r.kind == PathTerm::Kind::C0)
        return StepResult::steps(mk_zin(t->kids[0]), "zmod/0");
      if (r.kind == PathTerm::Kind::C1)
        return StepResult::steps(mk_zin(mk_intadd(t->kids[0], mk_intlit(2))), "zmod/1");
      return StepResult::value();
    }
    case Tag::IntAdd: {
      const Term& l = t->kids[0];
      if (!isval(l)) return cong(t, 0, "add.lhs");
      const Term& r = t->kids[1];
      if (!isval(r)) return cong(t, 1, "add.rhs");
      if (l->tag == Tag::IntLit && r->tag == Tag::IntLit)
        return StepResult::steps(mk_intlit(l->lit + r->lit), "add/lit");
      return StepResult::stuck("addition of non-integer values");
    }
    case Tag::Abort: {
      const Term& m = t->kids[1];
      if (!isval(m)) return cong(t, 1, "abort.arg");
      return StepResult::stuck("abort applied to a value");
    }
    case Tag::Coe:
      return step_coe(t);
    case Tag::HCom:
      return step_hcom(t);
    case Tag::FHCom: {
      PathTerm r = t->ps[0], s = t->ps[1];
      if (r == s) return StepResult::steps(t->kids[1], "fhcom/id");
      int sel = first_true_tube(t->sys);
      if (sel >= 0)
        return StepResult::steps(open_path(t->sys[sel].body, s), "fhcom/tube");
      return StepResult::value();
    }
    default:
      return isval(t) ? StepResult::value() : StepResult::stuck("no rule applies");
  }
}

}  // namespace

StepResult step(const DefEnv* env, const IntervalCtx& psi, const Term& t,
                const StepOpts* opts) {
  Stepper st{env, psi, opts};
  return st.run(t);
}

Term head_normal(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
                 const TraceFn& trace, const StepOpts* opts) {
  for (;;) {
    fuel.tick();
    StepResult r = step(env, psi, t, opts);
    if (r.kind != StepResult::Kind::Steps) return t;
    if (trace) trace(r.rule, r.path);
    t = r.next;
  }
}

Term eval(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
          const TraceFn& trace) {
  Term v = head_normal(env, psi, std::move(t), fuel, trace);
  if (!isval(v)) {
    StepResult r = step(env, psi, v);
    throw TypeError(Code::StuckTerm, "evaluation stuck: " + r.reason);
  }
  return v;
}

namespace {

Term deep_rec(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
              const TraceFn& trace) {
  t = head_normal(env, psi, std::move(t), fuel, trace);
  auto n = std::make_shared<Node>(*t);
  for (size_t i = 0; i < n->kids.size(); i++) {
    const auto& sig = arg_binders(n->tag, i);
    if (sig.empty()) {
      n->kids[i] = deep_rec(env, psi, n->kids[i], fuel, trace);
      continue;
    }
    IntervalCtx psi2 = psi;
    std::vector<BinderArg> args;
    std::vector<int> ids;
    for (Sort s : sig) {
      int id = fresh_id();
      ids.push_back(id);
      if (s == Sort::Term) {
        args.push_back(BinderArg::term(mk_free(id, "v")));
      } else if (s == Sort::Path) {
        args.push_back(BinderArg::path(PathTerm::free(id)));
        psi2.entries.push_back({Sort::Path, id, "x"});
      } else {
        args.push_back(BinderArg::bridge(BridgeTerm::free(id)));
        psi2.entries.push_back({Sort::Bridge, id, "x"});
      }
    }
    Term body = instantiate(n->kids[i], sig, args);
    body = deep_rec(env, psi2, body, fuel, trace);
    n->kids[i] = abstract(body, sig, ids);
  }
  for (auto& tube : n->sys) {
    int z = fresh_id();
    IntervalCtx psi2 = psi;
    psi2.entries.push_back({Sort::Path, z, "z"});
    Term body = open_path(tube.body, PathTerm::free(z));
    body = deep_rec(env, psi2, body, fuel, trace);
    tube.body = close_path(body, z);
  }
  return n;
}

}  // namespace

Term deep_normalize(const DefEnv* env, const IntervalCtx& psi, Term t, Fuel& fuel,
                    const TraceFn& trace) {
  return deep_rec(env, psi, std::move(t), fuel, trace);
}

}  // namespace ptt
