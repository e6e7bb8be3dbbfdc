#include <algorithm>

#include "ptt/frontend.hpp"

namespace ptt {

namespace {

struct ScopeEntry {
  std::string name;
  Sort sort;
  int id;
};

struct Elab {
  Session& s;
  std::vector<ScopeEntry> scope;

  [[noreturn]] void err(const SExpP& e, Code c, const std::string& msg) {
    throw TypeError(Diagnostic{c, msg, e->span});
  }

  const ScopeEntry* resolve(const std::string& n) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == n) return &*it;
    return nullptr;
  }

  PathTerm pdim(const SExpP& e) {
    if (e->k == SExp::K::Num) return e->num ? PathTerm::c1() : PathTerm::c0();
    if (e->k != SExp::K::Var) err(e, Code::ParseError, "expected a dimension");
    const ScopeEntry* se = resolve(e->name);
    if (!se) err(e, Code::UnboundVariable, "unbound dimension " + e->name);
    if (se->sort != Sort::Path)
      err(e, Code::SortMismatch, e->name + " is not a path dimension");
    return PathTerm::free(se->id);
  }

  BridgeTerm bdim(const SExpP& e) {
    if (e->k == SExp::K::Num) return BridgeTerm::cn((int)e->num);
    if (e->k != SExp::K::Var) err(e, Code::ParseError, "expected a dimension");
    const ScopeEntry* se = resolve(e->name);
    if (!se) err(e, Code::UnboundVariable, "unbound dimension " + e->name);
    if (se->sort != Sort::Bridge)
      err(e, Code::SortMismatch, e->name + " is not a bridge dimension");
    return BridgeTerm::free(se->id);
  }

  // Elaborates a binder atom with the given telescope of sorts; returns the
  // abstracted body. A non-binder argument is accepted as a constant body.
  Term binder(const SExpP& e, const std::vector<Sort>& sig) {
    if (e->k != SExp::K::Binder) return term(e);
    if (e->names.size() != sig.size())
      err(e, Code::ParseError,
          "binder takes " + std::to_string(sig.size()) + " names, got " +
              std::to_string(e->names.size()));
    std::vector<int> ids;
    size_t base = scope.size();
    for (size_t i = 0; i < sig.size(); i++) {
      int id = fresh_id();
      ids.push_back(id);
      scope.push_back({e->names[i], sig[i], id});
    }
    Term body = term(e->kids[0]);
    scope.resize(base);
    return abstract(body, sig, ids);
  }

  Constraint cof(const STube& t) {
    auto side_sort = [&](const SExpP& e) -> int {
      if (e->k == SExp::K::Num) return 0;  // constant, sort unknown
      const ScopeEntry* se = resolve(e->name);
      if (!se) err(e, Code::UnboundVariable, "unbound dimension " + e->name);
      return se->sort == Sort::Path ? 1 : se->sort == Sort::Bridge ? 2 : 3;
    };
    int ls = side_sort(t.lhs), rs = side_sort(t.rhs);
    if (ls == 3 || rs == 3)
      err(t.lhs, Code::SortMismatch, "constraint sides must be dimensions");
    if (ls == 2 || rs == 2) {
      const SExpP& v = ls == 2 ? t.lhs : t.rhs;
      const SExpP& c = ls == 2 ? t.rhs : t.lhs;
      if (c->k != SExp::K::Num || (ls == 2 && rs == 2))
        err(v, Code::SortMismatch,
            "bridge constraints may only identify a variable with a constant");
      return Constraint::bridge_eq(bdim(v), (int)c->num);
    }
    return Constraint::path_eq(pdim(t.lhs), pdim(t.rhs));
  }

  System system(const std::vector<STube>& tubes) {
    System sys;
    for (const auto& t : tubes) {
      Constraint c = cof(t);
      int id = fresh_id();
      scope.push_back({t.name, Sort::Path, id});
      Term body = term(t.body);
      scope.pop_back();
      sys.push_back({c, close_path(body, id)});
    }
    return sys;
  }

  Term form(const SExpP& e) {
    const std::string& w = e->name;
    auto kid = [&](size_t i) { return e->kids[i]; };
    if (w == "U") return mk_u();
    if (w == "bool") return mk_bool();
    if (w == "int") return mk_int();
    if (w == "z2") return mk_z2();
    if (w == "unit") return mk_unit();
    if (w == "empty") return mk_empty();
    if (w == "tt") return mk_tt();
    if (w == "ff") return mk_ff();
    if (w == "star") return mk_star();
    if (w == "Path")
      return mk_path(binder(kid(0), {Sort::Path}), term(kid(1)), term(kid(2)));
    if (w == "Bridge")
      return mk_bridge(binder(kid(0), {Sort::Bridge}), term(kid(1)), term(kid(2)));
    if (w == "Gel")
      return mk_gel(bdim(kid(0)), term(kid(1)), term(kid(2)),
                    binder(kid(3), {Sort::Term, Sort::Term}));
    if (w == "gel")
      return mk_geltm(bdim(kid(0)), term(kid(1)), term(kid(2)), term(kid(3)));
    if (w == "ungel") return mk_ungel(binder(kid(0), {Sort::Bridge}));
    if (w == "extent")
      return mk_extent(bdim(kid(0)), term(kid(1)), binder(kid(2), {Sort::Bridge}),
                       binder(kid(3), {Sort::Bridge, Sort::Term}),
                       binder(kid(4), {Sort::Term}), binder(kid(5), {Sort::Term}),
                       binder(kid(6), {Sort::Term, Sort::Term, Sort::Term}));
    if (w == "coe")
      return mk_coe(binder(kid(0), {Sort::Path}), pdim(kid(1)), pdim(kid(2)),
                    term(kid(3)));
    if (w == "hcom")
      return mk_hcom(term(kid(0)), pdim(kid(1)), pdim(kid(2)), term(kid(3)),
                     system(e->tubes));
    if (w == "com")
      return com(binder(kid(0), {Sort::Path}), pdim(kid(1)), pdim(kid(2)), term(kid(3)),
                 system(e->tubes));
    if (w == "V")
      return mk_v(pdim(kid(0)), term(kid(1)), term(kid(2)), term(kid(3)));
    if (w == "Vin") return mk_vin(pdim(kid(0)), term(kid(1)), term(kid(2)));
    if (w == "Vproj") return mk_vproj(pdim(kid(0)), term(kid(1)), term(kid(2)));
    if (w == "if")
      return mk_if(binder(kid(0), {Sort::Term}), term(kid(1)), term(kid(2)),
                   term(kid(3)));
    if (w == "zin") return mk_zin(term(kid(0)));
    if (w == "zmod") return mk_zmod(term(kid(0)), pdim(kid(1)));
    if (w == "z2elim")
      return mk_z2elim(binder(kid(0), {Sort::Term}), term(kid(1)),
                       binder(kid(2), {Sort::Term}),
                       binder(kid(3), {Sort::Term, Sort::Path}));
    if (w == "abort") return mk_abort(term(kid(0)), term(kid(1)));
    if (w == "fst") return mk_fst(term(kid(0)));
    if (w == "snd") return mk_snd(term(kid(0)));
    err(e, Code::ParseError, "unknown form " + w);
  }

  Term term(const SExpP& e) {
    switch (e->k) {
      case SExp::K::Var: {
        const ScopeEntry* se = resolve(e->name);
        if (se) {
          if (se->sort != Sort::Term)
            err(e, Code::SortMismatch, e->name + " is a dimension, not a term");
          return mk_free(se->id, e->name);
        }
        if (s.defs.lookup(e->name)) return mk_defref(e->name);
        err(e, Code::UnboundVariable, "unbound name " + e->name);
      }
      case SExp::K::Num:
        return mk_intlit(e->num);
      case SExp::K::App:
        return mk_app(term(e->kids[0]), term(e->kids[1]));
      case SExp::K::PApp:
        return mk_papp(term(e->kids[0]), pdim(e->kids[1]));
      case SExp::K::BApp:
        return mk_bapp(term(e->kids[0]), bdim(e->kids[1]));
      case SExp::K::Pair:
        return mk_pair(term(e->kids[0]), term(e->kids[1]));
      case SExp::K::Add:
        return mk_intadd(term(e->kids[0]), term(e->kids[1]));
      case SExp::K::Lam:
      case SExp::K::PLam:
      case SExp::K::BLam: {
        Sort srt = e->k == SExp::K::Lam ? Sort::Term
                   : e->k == SExp::K::PLam ? Sort::Path
                                           : Sort::Bridge;
        std::vector<int> ids;
        size_t base = scope.size();
        for (const auto& n : e->names) {
          int id = fresh_id();
          ids.push_back(id);
          scope.push_back({n, srt, id});
        }
        Term body = term(e->kids[0]);
        scope.resize(base);
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
          if (srt == Sort::Term)
            body = mk_lam(close_term(body, *it));
          else if (srt == Sort::Path)
            body = mk_plam(close_path(body, *it));
          else
            body = mk_blam(close_bridge(body, *it));
        }
        return body;
      }
      case SExp::K::Pi:
      case SExp::K::Sig: {
        Term dom = term(e->kids[0]);
        std::vector<int> ids;
        size_t base = scope.size();
        for (const auto& n : e->names) {
          int id = fresh_id();
          ids.push_back(id);
          scope.push_back({n, Sort::Term, id});
        }
        Term cod = term(e->kids[1]);
        scope.resize(base);
        // (x y : A) desugars to nested binders over the same domain
        Term out = cod;
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
          if (e->k == SExp::K::Pi)
            out = mk_pi(dom, close_term(out, *it));
          else
            out = mk_sigma(dom, close_term(out, *it));
        }
        return out;
      }
      case SExp::K::Binder:
        err(e, Code::ParseError, "unexpected binder");
      case SExp::K::Form:
        return form(e);
    }
    err(e, Code::ParseError, "malformed term");
  }
};

}  // namespace

Term elaborate_term(Session& s, const Context& ctx, const SExpP& e) {
  Elab el{s, {}};
  for (const auto& en : ctx.entries) {
    if (en.kind == CtxEntry::Kind::TermVar)
      el.scope.push_back({en.hint, Sort::Term, en.id});
    else if (en.kind == CtxEntry::Kind::PathDim)
      el.scope.push_back({en.hint, Sort::Path, en.id});
    else if (en.kind == CtxEntry::Kind::BridgeDim)
      el.scope.push_back({en.hint, Sort::Bridge, en.id});
  }
  return el.term(e);
}

ElabResult elaborate_file(Session& s, const SourceFile& file) {
  ElabResult res;
  for (const auto& d : file.decls) {
    try {
      s.reset_fuel();
      if (s.defs.lookup(d.name))
        throw TypeError(
            Diagnostic{Code::DuplicateName, "duplicate definition " + d.name, d.span});
      Elab el{s, {}};
      Context tel;
      struct TEntry {
        Sort sort;
        int id;
        Term type;
      };
      std::vector<TEntry> wrap;
      bool has_dims = false;
      for (const auto& b : d.telescope) {
        for (const auto& n : b.names) {
          if (b.sort == 0) {
            Term ty = el.term(b.type);
            check_type(s, tel, ty);
            int id = tel.add_term(ty, n);
            el.scope.push_back({n, Sort::Term, id});
            wrap.push_back({Sort::Term, id, ty});
          } else if (b.sort == 1) {
            int id = tel.add_path(n);
            el.scope.push_back({n, Sort::Path, id});
            wrap.push_back({Sort::Path, id, nullptr});
            has_dims = true;
          } else {
            int id = tel.add_bridge(n);
            el.scope.push_back({n, Sort::Bridge, id});
            wrap.push_back({Sort::Bridge, id, nullptr});
            has_dims = true;
          }
        }
      }
      Term ty = el.term(d.type);
      check_type(s, tel, ty);
      Term body = el.term(d.body);
      check(s, tel, body, ty);

      Definition def;
      def.name = d.name;
      if (!has_dims) {
        for (auto it = wrap.rbegin(); it != wrap.rend(); ++it) {
          ty = mk_pi(it->type, close_term(ty, it->id));
          body = mk_lam(close_term(body, it->id));
        }
        def.type = ty;
        def.body = body;
        def.referenceable = true;
      } else {
        def.type = ty;
        def.body = body;
        def.referenceable = false;
        def.dims = tel.dims();
      }
      s.defs.add(std::move(def));
    } catch (TypeError& e) {
      Diagnostic diag = e.diag;
      if (!diag.span.known()) diag.span = d.span;
      res.diagnostics.push_back(diag);
    } catch (const FuelExhausted&) {
      res.diagnostics.push_back(
          Diagnostic{Code::FuelExhausted, "fuel exhausted while checking " + d.name, d.span});
    }
  }
  return res;
}

}  // namespace ptt
