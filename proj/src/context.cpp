#include "ptt/context.hpp"

#include <map>

namespace ptt {

IntervalCtx Context::dims() const {
  IntervalCtx psi;
  for (const auto& e : entries) {
    if (e.kind == CtxEntry::Kind::PathDim)
      psi.entries.push_back({Sort::Path, e.id, e.hint});
    else if (e.kind == CtxEntry::Kind::BridgeDim)
      psi.entries.push_back({Sort::Bridge, e.id, e.hint});
  }
  return psi;
}

std::vector<Constraint> Context::constraints() const {
  std::vector<Constraint> cs;
  for (const auto& e : entries)
    if (e.kind == CtxEntry::Kind::Constr) cs.push_back(e.constr);
  return cs;
}

std::pair<Context, Renaming> restrict_ctx(const Context& ctx, const BridgeTerm& r) {
  Renaming ren;
  if (!r.is_free()) {
    for (const auto& e : ctx.entries)
      if (e.kind != CtxEntry::Kind::Constr && e.kind != CtxEntry::Kind::Tombstone)
        ren.kept.push_back(e.id);
    return {ctx, ren};
  }
  int x = r.var;
  const CtxEntry* target = ctx.lookup(x);
  if (!target || target->kind == CtxEntry::Kind::Tombstone)
    throw TypeError(target ? Code::NotApart : Code::UnboundVariable,
                    "bridge variable not available for restriction");
  // find the position of x
  size_t pos = ctx.entries.size();
  for (size_t i = 0; i < ctx.entries.size(); i++) {
    const auto& e = ctx.entries[i];
    if (e.kind == CtxEntry::Kind::BridgeDim && e.id == x) pos = i;
  }
  Context out;
  for (size_t i = 0; i < ctx.entries.size(); i++) {
    const auto& e = ctx.entries[i];
    if (i < pos) {
      out.entries.push_back(e);
      if (e.kind != CtxEntry::Kind::Constr && e.kind != CtxEntry::Kind::Tombstone)
        ren.kept.push_back(e.id);
      continue;
    }
    if (i == pos) {
      CtxEntry t = e;
      t.kind = CtxEntry::Kind::Tombstone;
      t.dropped_kind = CtxEntry::Kind::BridgeDim;
      t.dropped_by = x;
      out.entries.push_back(std::move(t));
      continue;
    }
    switch (e.kind) {
      case CtxEntry::Kind::PathDim:
      case CtxEntry::Kind::BridgeDim:
        out.entries.push_back(e);
        ren.kept.push_back(e.id);
        break;
      case CtxEntry::Kind::TermVar: {
        CtxEntry t = e;
        t.kind = CtxEntry::Kind::Tombstone;
        t.dropped_kind = CtxEntry::Kind::TermVar;
        t.dropped_by = x;
        out.entries.push_back(std::move(t));
        break;
      }
      case CtxEntry::Kind::Constr:
        if (!occurs_bridge(e.constr, x)) out.entries.push_back(e);
        break;
      case CtxEntry::Kind::Tombstone:
        out.entries.push_back(e);
        break;
    }
  }
  return {out, ren};
}

namespace {

struct Closure {
  // union-find over path nodes: 0 ↦ const0, 1 ↦ const1, ids offset by 2
  std::map<int, int> parent;
  std::map<int, int> bridge_val;  // bridge id -> endpoint
  bool inconsistent = false;

  int key(const PathTerm& p) {
    if (p.kind == PathTerm::Kind::C0) return 0;
    if (p.kind == PathTerm::Kind::C1) return 1;
    return p.var + 2;
  }
  int find(int a) {
    auto it = parent.find(a);
    if (it == parent.end() || it->second == a) return a;
    int r = find(it->second);
    parent[a] = r;
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // keep constants as representatives
    if (b < 2) std::swap(a, b);
    if (a < 2 && b < 2) {
      inconsistent = true;
      return;
    }
    parent[b] = a;
  }
};

Closure build_closure(const Context& ctx) {
  Closure cl;
  for (const auto& e : ctx.entries) {
    if (e.kind != CtxEntry::Kind::Constr) continue;
    const Constraint& c = e.constr;
    if (c.kind == Constraint::Kind::PathEq) {
      cl.unite(cl.key(c.pl), cl.key(c.pr));
    } else {
      if (c.bl.is_const()) {
        if (c.bl.endpoint() != c.beps) cl.inconsistent = true;
      } else if (c.bl.is_free()) {
        auto it = cl.bridge_val.find(c.bl.var);
        if (it != cl.bridge_val.end() && it->second != c.beps)
          cl.inconsistent = true;
        else
          cl.bridge_val[c.bl.var] = c.beps;
      }
    }
  }
  return cl;
}

}  // namespace

bool ctx_inconsistent(const Context& ctx) { return build_closure(ctx).inconsistent; }

Status constraint_status(const Context& ctx, const Constraint& c) {
  Closure cl = build_closure(ctx);
  if (cl.inconsistent) return Status::True;
  if (c.kind == Constraint::Kind::PathEq) {
    int a = cl.find(cl.key(c.pl)), b = cl.find(cl.key(c.pr));
    if (a == b) return Status::True;
    if (a < 2 && b < 2) return Status::False;
    return Status::Undetermined;
  }
  int v;
  if (c.bl.is_const())
    v = c.bl.endpoint();
  else if (c.bl.is_free()) {
    auto it = cl.bridge_val.find(c.bl.var);
    if (it == cl.bridge_val.end()) return Status::Undetermined;
    v = it->second;
  } else {
    return Status::Undetermined;
  }
  return v == c.beps ? Status::True : Status::False;
}

namespace {

// Oriented dimension valuation: processes constraints left to right,
// substituting variables for the terms they are equated with.
struct Valuation {
  std::map<int, PathTerm> pmap;
  std::map<int, BridgeTerm> bmap;

  PathTerm walk(PathTerm p) const {
    int guard = 0;
    while (p.is_free() && guard++ < 64) {
      auto it = pmap.find(p.var);
      if (it == pmap.end()) break;
      p = it->second;
    }
    return p;
  }
  BridgeTerm walk(BridgeTerm b) const {
    if (b.is_free()) {
      auto it = bmap.find(b.var);
      if (it != bmap.end()) return it->second;
    }
    return b;
  }
};

Valuation build_valuation(const Context& ctx) {
  Valuation v;
  for (const auto& e : ctx.entries) {
    if (e.kind != CtxEntry::Kind::Constr) continue;
    const Constraint& c = e.constr;
    if (c.kind == Constraint::Kind::PathEq) {
      PathTerm l = v.walk(c.pl), r = v.walk(c.pr);
      if (l == r) continue;
      if (l.is_free())
        v.pmap[l.var] = r;
      else if (r.is_free())
        v.pmap[r.var] = l;
    } else {
      BridgeTerm l = v.walk(c.bl);
      if (l.is_free()) v.bmap[l.var] = BridgeTerm::cn(c.beps);
    }
  }
  return v;
}

}  // namespace

PathTerm apply_ctx_valuation(const Context& ctx, PathTerm p) {
  return build_valuation(ctx).walk(p);
}

BridgeTerm apply_ctx_valuation(const Context& ctx, BridgeTerm b) {
  return build_valuation(ctx).walk(b);
}

Term apply_ctx_valuation(const Context& ctx, Term t) {
  Valuation v = build_valuation(ctx);
  if (v.pmap.empty() && v.bmap.empty()) return t;
  for (const auto& [id, p] : v.pmap) t = subst_path(t, id, v.walk(p));
  for (const auto& [id, b] : v.bmap) t = subst_bridge(t, id, b);
  return t;
}

}  // namespace ptt
