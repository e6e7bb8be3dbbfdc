#include "ptt/interval.hpp"

#include <atomic>

namespace ptt {

namespace {
std::atomic<int> g_fresh{1};
}

int fresh_id() { return g_fresh.fetch_add(1); }

void bump_fresh_ids(int floor) {
  int cur = g_fresh.load();
  while (cur < floor && !g_fresh.compare_exchange_weak(cur, floor)) {
  }
}

const char* code_name(Code c) {
  switch (c) {
    case Code::UnboundVariable: return "UnboundVariable";
    case Code::SortMismatch: return "SortMismatch";
    case Code::NotApart: return "NotApart";
    case Code::DiagonalSubstitution: return "DiagonalSubstitution";
    case Code::TypeMismatch: return "TypeMismatch";
    case Code::TubeMismatch: return "TubeMismatch";
    case Code::BoundaryMismatch: return "BoundaryMismatch";
    case Code::UnsupportedKan: return "UnsupportedKan";
    case Code::CannotInfer: return "CannotInfer";
    case Code::FuelExhausted: return "FuelExhausted";
    case Code::StuckTerm: return "StuckTerm";
    case Code::LexError: return "LexError";
    case Code::ParseError: return "ParseError";
    case Code::DuplicateName: return "DuplicateName";
  }
  return "Unknown";
}

std::string Diagnostic::render() const {
  std::string s;
  if (span.known()) {
    s = span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.col) + ": ";
  }
  s += code_name(code);
  s += ": ";
  s += message;
  return s;
}

Constraint forall_x(int bridge_id, const Constraint& c) {
  if (c.kind == Constraint::Kind::PathEq) return c;
  if (c.bl.is_free() && c.bl.var == bridge_id)
    return Constraint::bridge_eq(BridgeTerm::c0(), 1);
  return c;
}

Status constraint_status_closed(const Constraint& c) {
  if (c.kind == Constraint::Kind::PathEq) {
    if (c.pl == c.pr) return Status::True;
    if (c.pl.is_const() && c.pr.is_const()) return Status::False;
    return Status::Undetermined;
  }
  if (c.bl.is_const())
    return c.bl.endpoint() == c.beps ? Status::True : Status::False;
  return Status::Undetermined;
}

IntervalCtx restrict_ictx(const IntervalCtx& psi, const BridgeTerm& r) {
  if (!r.is_free()) return psi;
  IntervalCtx out;
  for (const auto& e : psi.entries)
    if (e.id != r.var) out.entries.push_back(e);
  return out;
}

IntervalSubst IntervalSubst::identity(const IntervalCtx& psi) {
  IntervalSubst s;
  s.target = psi;
  s.source = psi;
  for (const auto& e : psi.entries) {
    Assign a;
    a.sort = e.sort;
    a.target_id = e.id;
    if (e.sort == Sort::Path)
      a.p = PathTerm::free(e.id);
    else
      a.b = BridgeTerm::free(e.id);
    s.map.push_back(a);
  }
  return s;
}

IntervalSubst IntervalSubst::make(IntervalCtx target, IntervalCtx source,
                                  std::vector<Assign> map) {
  IntervalSubst s;
  s.target = std::move(target);
  s.source = std::move(source);
  s.map = std::move(map);
  std::vector<int> seen;
  for (const auto& a : s.map) {
    if (a.sort == Sort::Bridge && a.b.is_free()) {
      for (int v : seen)
        if (v == a.b.var)
          throw TypeError(Code::DiagonalSubstitution,
                          "substitution sends two bridge variables to one variable");
      seen.push_back(a.b.var);
    }
  }
  return s;
}

PathTerm IntervalSubst::apply(const PathTerm& p) const {
  if (!p.is_free()) return p;
  for (const auto& a : map)
    if (a.sort == Sort::Path && a.target_id == p.var) return a.p;
  return p;
}

BridgeTerm IntervalSubst::apply(const BridgeTerm& b) const {
  if (!b.is_free()) return b;
  for (const auto& a : map)
    if (a.sort == Sort::Bridge && a.target_id == b.var) return a.b;
  return b;
}

Constraint IntervalSubst::apply(const Constraint& c) const {
  if (c.kind == Constraint::Kind::PathEq)
    return Constraint::path_eq(apply(c.pl), apply(c.pr));
  return Constraint::bridge_eq(apply(c.bl), c.beps);
}

IntervalSubst compose_subst(const IntervalSubst& outer, const IntervalSubst& inner) {
  std::vector<IntervalSubst::Assign> out;
  for (const auto& a : inner.map) {
    IntervalSubst::Assign r = a;
    if (a.sort == Sort::Path)
      r.p = outer.apply(a.p);
    else
      r.b = outer.apply(a.b);
    out.push_back(r);
  }
  return IntervalSubst::make(inner.target, outer.source, std::move(out));
}

}  // namespace ptt
