#include <set>
#include <sstream>

#include "ptt/frontend.hpp"

namespace ptt {

namespace {

const std::set<std::string> kReserved = {
    "def",  "U",    "Path",   "Bridge", "Gel",  "gel",    "ungel", "extent",
    "coe",  "hcom", "com",    "V",      "Vin",  "Vproj",  "bool",  "tt",
    "ff",   "if",   "int",    "z2",     "zin",  "zmod",   "z2elim", "unit",
    "star", "empty", "abort", "lam",    "plam", "blam",   "fst",   "snd",
    "Sig",  "Pi",   "I",
};

// precedence: 0 term, 1 arrow, 2 prod, 3 add, 4 app, 5 atom
struct Printer {
  std::vector<std::pair<int, std::string>> names;
  std::set<std::string> used;

  std::string fresh_name(const std::string& hint) {
    std::string base = hint.empty() || hint == "_" ? "v" : hint;
    std::string n = base;
    int k = 1;
    while (used.count(n) || kReserved.count(n)) n = base + std::to_string(k++);
    used.insert(n);
    return n;
  }
  std::string bind(int id, const std::string& hint) {
    std::string n = fresh_name(hint);
    names.push_back({id, n});
    return n;
  }
  void unbind(size_t k) {
    while (names.size() > k) {
      used.erase(names.back().second);
      names.pop_back();
    }
  }
  std::string name_of(int id, const std::string& hint) {
    for (auto it = names.rbegin(); it != names.rend(); ++it)
      if (it->first == id) return it->second;
    return (hint.empty() ? "v" : hint) + "#" + std::to_string(id);
  }

  std::string pdim(const PathTerm& p) {
    if (p.kind == PathTerm::Kind::C0) return "0";
    if (p.kind == PathTerm::Kind::C1) return "1";
    if (p.kind == PathTerm::Kind::Bound) return "?p" + std::to_string(p.var);
    return name_of(p.var, "x");
  }
  std::string bdim(const BridgeTerm& b) {
    if (b.kind == BridgeTerm::Kind::C0) return "0";
    if (b.kind == BridgeTerm::Kind::C1) return "1";
    if (b.kind == BridgeTerm::Kind::Bound) return "?b" + std::to_string(b.var);
    return name_of(b.var, "x");
  }

  std::string wrap(const std::string& s, int have, int want) {
    return have < want ? "(" + s + ")" : s;
  }

  // Opens a binder body, printing "n1.n2. body" inside parens.
  std::string binder_atom(const Term& body, const std::vector<Sort>& sig,
                          const char* hint) {
    size_t mark = names.size();
    std::vector<BinderArg> args;
    std::string head;
    for (Sort s : sig) {
      int id = fresh_id();
      std::string n = bind(id, hint);
      head += n + ". ";
      if (s == Sort::Term)
        args.push_back(BinderArg::term(mk_free(id, n)));
      else if (s == Sort::Path)
        args.push_back(BinderArg::path(PathTerm::free(id)));
      else
        args.push_back(BinderArg::bridge(BridgeTerm::free(id)));
    }
    std::string out = "(" + head + go(instantiate(body, sig, args), 0) + ")";
    unbind(mark);
    return out;
  }

  std::string sys(const System& tubes) {
    std::string out = "[";
    bool first = true;
    for (const auto& t : tubes) {
      if (!first) out += " | ";
      first = false;
      if (t.cof.kind == Constraint::Kind::PathEq)
        out += pdim(t.cof.pl) + "=" + pdim(t.cof.pr);
      else
        out += bdim(t.cof.bl) + "=" + std::to_string(t.cof.beps);
      size_t mark = names.size();
      int id = fresh_id();
      std::string n = bind(id, "y");
      out += " -> " + n + ". " + go(open_path(t.body, PathTerm::free(id)), 0);
      unbind(mark);
    }
    return out + "]";
  }

  bool binder_used(const Term& body, const std::vector<Sort>& sig) {
    int probe = fresh_id();
    std::vector<BinderArg> args;
    for (Sort s : sig) {
      if (s == Sort::Term)
        args.push_back(BinderArg::term(mk_free(probe, "")));
      else if (s == Sort::Path)
        args.push_back(BinderArg::path(PathTerm::free(probe)));
      else
        args.push_back(BinderArg::bridge(BridgeTerm::free(probe)));
    }
    Term opened = instantiate(body, sig, args);
    return occurs_term(opened, probe) || occurs_path(opened, probe) ||
           occurs_bridge(opened, probe);
  }

  std::string line_atom(const Term& body, Sort sort, const char* hint) {
    if (!binder_used(body, {sort})) {
      Term constant = sort == Sort::Path ? open_path(body, PathTerm::c0())
                                         : open_bridge(body, BridgeTerm::c0());
      return go(constant, 5);
    }
    return binder_atom(body, {sort}, hint);
  }

  std::string go(const Term& t, int prec) {
    switch (t->tag) {
      case Tag::U: return "U";
      case Tag::Bool: return "bool";
      case Tag::Int: return "int";
      case Tag::Z2: return "z2";
      case Tag::Unit: return "unit";
      case Tag::Empty: return "empty";
      case Tag::TT: return "tt";
      case Tag::FF: return "ff";
      case Tag::Star: return "star";
      case Tag::IntLit: return std::to_string(t->lit);
      case Tag::FreeVar: return name_of(t->var, t->hint);
      case Tag::BoundVar: return "?t" + std::to_string(t->var);
      case Tag::DefRef: return t->hint;
      case Tag::Pi:
      case Tag::Sigma: {
        bool pi = t->tag == Tag::Pi;
        if (!binder_used(t->kids[1], {Sort::Term})) {
          Term cod = open_term(t->kids[1], mk_star());
          if (pi)
            return wrap(go(t->kids[0], 2) + " -> " + go(cod, 1), 1, prec);
          return wrap(go(t->kids[0], 3) + " * " + go(cod, 2), 2, prec);
        }
        size_t mark = names.size();
        int id = fresh_id();
        std::string n = bind(id, "a");
        std::string out = std::string(pi ? "Pi" : "Sig") + " (" + n + " : " +
                          go(t->kids[0], 0) + ") " +
                          go(open_term(t->kids[1], mk_free(id, n)), 0);
        unbind(mark);
        return wrap(out, 0, prec);
      }
      case Tag::Lam:
      case Tag::PLam:
      case Tag::BLam: {
        const char* kw = t->tag == Tag::Lam ? "lam" : t->tag == Tag::PLam ? "plam" : "blam";
        size_t mark = names.size();
        int id = fresh_id();
        std::string n = bind(id, t->tag == Tag::Lam ? "a" : "x");
        Term body = t->tag == Tag::Lam ? open_term(t->kids[0], mk_free(id, n))
                    : t->tag == Tag::PLam ? open_path(t->kids[0], PathTerm::free(id))
                                          : open_bridge(t->kids[0], BridgeTerm::free(id));
        std::string out = std::string(kw) + " " + n + ". " + go(body, 0);
        unbind(mark);
        return wrap(out, 0, prec);
      }
      case Tag::App:
        return wrap(go(t->kids[0], 4) + " " + go(t->kids[1], 5), 4, prec);
      case Tag::PApp:
        return wrap(go(t->kids[0], 4) + " @ " + pdim(t->ps[0]), 4, prec);
      case Tag::BApp:
        return wrap(go(t->kids[0], 4) + " @@ " + bdim(t->bs[0]), 4, prec);
      case Tag::Pair:
        return "(" + go(t->kids[0], 0) + ", " + go(t->kids[1], 0) + ")";
      case Tag::Fst:
        return wrap("fst " + go(t->kids[0], 5), 4, prec);
      case Tag::Snd:
        return wrap("snd " + go(t->kids[0], 5), 4, prec);
      case Tag::Path:
        return wrap("Path " + line_atom(t->kids[0], Sort::Path, "x") + " " +
                        go(t->kids[1], 5) + " " + go(t->kids[2], 5),
                    4, prec);
      case Tag::Bridge:
        return wrap("Bridge " + line_atom(t->kids[0], Sort::Bridge, "x") + " " +
                        go(t->kids[1], 5) + " " + go(t->kids[2], 5),
                    4, prec);
      case Tag::Gel:
        return wrap("Gel " + bdim(t->bs[0]) + " " + go(t->kids[0], 5) + " " +
                        go(t->kids[1], 5) + " " +
                        binder_atom(t->kids[2], {Sort::Term, Sort::Term}, "a"),
                    4, prec);
      case Tag::GelTm:
        return wrap("gel " + bdim(t->bs[0]) + " " + go(t->kids[0], 5) + " " +
                        go(t->kids[1], 5) + " " + go(t->kids[2], 5),
                    4, prec);
      case Tag::Ungel:
        return wrap("ungel " + binder_atom(t->kids[0], {Sort::Bridge}, "x"), 4, prec);
      case Tag::Extent:
        return wrap("extent " + bdim(t->bs[0]) + " " + go(t->kids[0], 5) + " " +
                        binder_atom(t->kids[1], {Sort::Bridge}, "x") + " " +
                        binder_atom(t->kids[2], {Sort::Bridge, Sort::Term}, "a") + " " +
                        binder_atom(t->kids[3], {Sort::Term}, "a0") + " " +
                        binder_atom(t->kids[4], {Sort::Term}, "a1") + " " +
                        binder_atom(t->kids[5], {Sort::Term, Sort::Term, Sort::Term}, "a"),
                    4, prec);
      case Tag::Coe:
        return wrap("coe " + binder_atom(t->kids[0], {Sort::Path}, "x") + " " +
                        pdim(t->ps[0]) + " " + pdim(t->ps[1]) + " " + go(t->kids[1], 5),
                    4, prec);
      case Tag::HCom:
      case Tag::FHCom:
        return wrap("hcom " + go(t->kids[0], 5) + " " + pdim(t->ps[0]) + " " +
                        pdim(t->ps[1]) + " " + go(t->kids[1], 5) + " " + sys(t->sys),
                    4, prec);
      case Tag::V:
        return wrap("V " + pdim(t->ps[0]) + " " + go(t->kids[0], 5) + " " +
                        go(t->kids[1], 5) + " " + go(t->kids[2], 5),
                    4, prec);
      case Tag::Vin:
        return wrap("Vin " + pdim(t->ps[0]) + " " + go(t->kids[0], 5) + " " +
                        go(t->kids[1], 5),
                    4, prec);
      case Tag::Vproj:
        return wrap("Vproj " + pdim(t->ps[0]) + " " + go(t->kids[0], 5) + " " +
                        go(t->kids[1], 5),
                    4, prec);
      case Tag::If:
        return wrap("if " + binder_atom(t->kids[0], {Sort::Term}, "a") + " " +
                        go(t->kids[1], 5) + " " + go(t->kids[2], 5) + " " +
                        go(t->kids[3], 5),
                    4, prec);
      case Tag::IntAdd:
        return wrap(go(t->kids[0], 4) + " + " + go(t->kids[1], 3), 3, prec);
      case Tag::Zin:
        return wrap("zin " + go(t->kids[0], 5), 4, prec);
      case Tag::Zmod:
        return wrap("zmod " + go(t->kids[0], 5) + " " + pdim(t->ps[0]), 4, prec);
      case Tag::Z2Elim:
        return wrap("z2elim " + binder_atom(t->kids[0], {Sort::Term}, "a") + " " +
                        go(t->kids[1], 5) + " " +
                        binder_atom(t->kids[2], {Sort::Term}, "n") + " " +
                        binder_atom(t->kids[3], {Sort::Term, Sort::Path}, "n"),
                    4, prec);
      case Tag::Abort:
        return wrap("abort " + go(t->kids[0], 5) + " " + go(t->kids[1], 5), 4, prec);
    }
    return "?";
  }
};

}  // namespace

std::string print_term(const Term& t) {
  Printer p;
  return p.go(t, 0);
}

std::string print_term(const Term& t, const Context& ctx) {
  Printer p;
  for (const auto& e : ctx.entries) {
    if (e.kind == CtxEntry::Kind::TermVar || e.kind == CtxEntry::Kind::PathDim ||
        e.kind == CtxEntry::Kind::BridgeDim)
      p.names.push_back({e.id, p.fresh_name(e.hint)});
  }
  return p.go(t, 0);
}

}  // namespace ptt
