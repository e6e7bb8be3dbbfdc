#include "ptt/frontend.hpp"

namespace ptt {

namespace {

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  std::string file;

  const Token& peek(int k = 0) const {
    size_t i = pos + k;
    return i < toks.size() ? toks[i] : toks.back();
  }
  Token next() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* w) const {
    return peek().kind == Tok::Keyword && peek().text == w;
  }
  Span span() const { return Span{file, peek().line, peek().col}; }

  [[noreturn]] void err(const std::string& expected) {
    throw TypeError(Diagnostic{
        Code::ParseError,
        "expected " + expected + ", found '" + (at(Tok::End) ? "<eof>" : peek().text) + "'",
        span()});
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) err(what);
    return next();
  }

  SExpP mk(SExp::K k) {
    auto e = std::make_shared<SExp>();
    e->k = k;
    e->span = span();
    return e;
  }

  bool is_binder_atom() const {
    // '(' Ident '.'  — possibly '(' Ident '.' Ident '.' ...
    return at(Tok::LParen) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Dot;
  }

  SExpP dim_atom() {
    auto e = mk(SExp::K::Var);
    if (at(Tok::Ident)) {
      e->name = next().text;
      return e;
    }
    if (at(Tok::Number)) {
      Token t = next();
      if (t.text != "0" && t.text != "1") err("a dimension (a variable, 0, or 1)");
      e->k = SExp::K::Num;
      e->num = t.text == "1" ? 1 : 0;
      return e;
    }
    err("a dimension (a variable, 0, or 1)");
  }

  SExpP binder_atom() {
    auto e = mk(SExp::K::Binder);
    expect(Tok::LParen, "'('");
    e->names.push_back(expect(Tok::Ident, "a binder name").text);
    expect(Tok::Dot, "'.'");
    while (at(Tok::Ident) && peek(1).kind == Tok::Dot) {
      e->names.push_back(next().text);
      next();  // dot
    }
    e->kids.push_back(term());
    expect(Tok::RParen, "')'");
    return e;
  }

  SExpP atom() {
    if (is_binder_atom()) return binder_atom();
    if (at(Tok::LParen)) {
      next();
      SExpP a = term();
      if (at(Tok::Comma)) {
        next();
        SExpP b = term();
        expect(Tok::RParen, "')'");
        auto p = mk(SExp::K::Pair);
        p->kids = {a, b};
        return p;
      }
      expect(Tok::RParen, "')'");
      return a;
    }
    if (at(Tok::Ident)) {
      auto e = mk(SExp::K::Var);
      e->name = next().text;
      return e;
    }
    if (at(Tok::Number)) {
      auto e = mk(SExp::K::Num);
      e->num = std::stoll(next().text);
      return e;
    }
    if (at(Tok::Keyword)) {
      const std::string& w = peek().text;
      if (w == "U" || w == "bool" || w == "tt" || w == "ff" || w == "int" || w == "z2" ||
          w == "unit" || w == "star" || w == "empty") {
        auto e = mk(SExp::K::Form);
        e->name = next().text;
        return e;
      }
    }
    err("a term");
  }

  STube tube() {
    STube t;
    t.lhs = dim_atom();
    expect(Tok::Equal, "'='");
    t.rhs = dim_atom();
    expect(Tok::Arrow, "'->'");
    t.name = expect(Tok::Ident, "a tube binder name").text;
    expect(Tok::Dot, "'.'");
    t.body = term();
    return t;
  }

  std::vector<STube> system() {
    std::vector<STube> sys;
    expect(Tok::LBracket, "'['");
    if (!at(Tok::RBracket)) {
      sys.push_back(tube());
      while (at(Tok::Pipe)) {
        next();
        sys.push_back(tube());
      }
    }
    expect(Tok::RBracket, "']'");
    return sys;
  }

  SExpP form_head() {
    // keyword-initiated fixed-arity forms; returns null if not at one
    if (!at(Tok::Keyword)) return nullptr;
    const std::string w = peek().text;
    auto form = [&](std::initializer_list<char> argspec, bool sys = false) {
      auto e = mk(SExp::K::Form);
      e->name = w;
      next();
      for (char c : argspec) {
        if (c == 'd')
          e->kids.push_back(dim_atom());
        else
          e->kids.push_back(atom());
      }
      if (sys) e->tubes = system();
      return e;
    };
    if (w == "Path" || w == "Bridge") return form({'a', 'a', 'a'});
    if (w == "Gel") return form({'d', 'a', 'a', 'a'});
    if (w == "gel") return form({'d', 'a', 'a', 'a'});
    if (w == "ungel") return form({'a'});
    if (w == "extent") return form({'d', 'a', 'a', 'a', 'a', 'a', 'a'});
    if (w == "coe") return form({'a', 'd', 'd', 'a'});
    if (w == "hcom" || w == "com") return form({'a', 'd', 'd', 'a'}, true);
    if (w == "V") return form({'d', 'a', 'a', 'a'});
    if (w == "Vin") return form({'d', 'a', 'a'});
    if (w == "Vproj") return form({'d', 'a', 'a'});
    if (w == "if") return form({'a', 'a', 'a', 'a'});
    if (w == "zin") return form({'a'});
    if (w == "zmod") return form({'a', 'd'});
    if (w == "z2elim") return form({'a', 'a', 'a', 'a'});
    if (w == "abort") return form({'a', 'a'});
    if (w == "fst" || w == "snd") return form({'a'});
    return nullptr;
  }

  SExpP app_term() {
    SExpP head = form_head();
    if (!head) head = atom();
    for (;;) {
      if (at(Tok::At)) {
        Span sp = span();
        next();
        auto e = std::make_shared<SExp>();
        e->k = SExp::K::PApp;
        e->span = sp;
        e->kids = {head, dim_atom()};
        head = e;
        continue;
      }
      if (at(Tok::AtAt)) {
        Span sp = span();
        next();
        auto e = std::make_shared<SExp>();
        e->k = SExp::K::BApp;
        e->span = sp;
        e->kids = {head, dim_atom()};
        head = e;
        continue;
      }
      if (at(Tok::Ident) || at(Tok::Number) || at(Tok::LParen) ||
          (at(Tok::Keyword) && peek().text != "def")) {
        // an argument begins only with an atom-starter keyword or a non-keyword
        if (at(Tok::Keyword)) {
          const std::string& w = peek().text;
          bool atomish = w == "U" || w == "bool" || w == "tt" || w == "ff" || w == "int" ||
                         w == "z2" || w == "unit" || w == "star" || w == "empty";
          if (!atomish) break;
        }
        auto e = std::make_shared<SExp>();
        e->k = SExp::K::App;
        e->span = span();
        SExpP arg = atom();
        e->kids = {head, arg};
        head = e;
        continue;
      }
      break;
    }
    return head;
  }

  SExpP add_term() {
    SExpP l = app_term();
    if (at(Tok::Plus)) {
      Span sp = span();
      next();
      auto e = std::make_shared<SExp>();
      e->k = SExp::K::Add;
      e->span = sp;
      e->kids = {l, add_term()};
      return e;
    }
    return l;
  }

  SExpP prod_term() {
    SExpP l = add_term();
    if (at(Tok::Star)) {
      Span sp = span();
      next();
      auto e = std::make_shared<SExp>();
      e->k = SExp::K::Sig;
      e->span = sp;
      e->names = {"_"};
      e->kids = {l, prod_term()};
      return e;
    }
    return l;
  }

  SExpP arrow_term() {
    SExpP l = prod_term();
    if (at(Tok::Arrow)) {
      Span sp = span();
      next();
      auto e = std::make_shared<SExp>();
      e->k = SExp::K::Pi;
      e->span = sp;
      e->names = {"_"};
      e->kids = {l, term()};
      return e;
    }
    return l;
  }

  SExpP term() {
    if (at_kw("lam") || at_kw("plam") || at_kw("blam")) {
      std::string w = next().text;
      auto e = mk(SExp::K::Lam);
      e->k = w == "lam" ? SExp::K::Lam : w == "plam" ? SExp::K::PLam : SExp::K::BLam;
      e->names.push_back(expect(Tok::Ident, "a binder name").text);
      while (at(Tok::Ident)) e->names.push_back(next().text);
      expect(Tok::Dot, "'.'");
      e->kids.push_back(term());
      return e;
    }
    if (at_kw("Pi") || at_kw("Sig")) {
      std::string w = next().text;
      // one or more annotation groups: Pi (a b : A) (c : B) cod
      struct Group {
        std::vector<std::string> names;
        SExpP type;
        Span span;
      };
      std::vector<Group> groups;
      auto at_group = [&] {
        if (!at(Tok::LParen) || peek(1).kind != Tok::Ident) return false;
        size_t k = 1;
        while (peek((int)k).kind == Tok::Ident) k++;
        return peek((int)k).kind == Tok::Colon;
      };
      if (!at_group()) err("'(name : type)'");
      while (at_group()) {
        Group g;
        g.span = span();
        next();  // (
        g.names.push_back(expect(Tok::Ident, "a binder name").text);
        while (at(Tok::Ident)) g.names.push_back(next().text);
        expect(Tok::Colon, "':'");
        g.type = term();
        expect(Tok::RParen, "')'");
        groups.push_back(std::move(g));
      }
      SExpP cod = term();
      for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        auto e = std::make_shared<SExp>();
        e->k = w == "Pi" ? SExp::K::Pi : SExp::K::Sig;
        e->span = it->span;
        e->names = it->names;
        e->kids = {it->type, cod};
        cod = e;
      }
      return cod;
    }
    return arrow_term();
  }

  SDecl decl() {
    SDecl d;
    d.span = span();
    if (!at_kw("def")) err("'def'");
    next();
    d.name = expect(Tok::Ident, "a definition name").text;
    while (at(Tok::LParen)) {
      SDecl::Binder b;
      b.span = span();
      next();
      b.names.push_back(expect(Tok::Ident, "a binder name").text);
      while (at(Tok::Ident)) b.names.push_back(next().text);
      expect(Tok::Colon, "':'");
      if (at_kw("I")) {
        next();
        b.sort = 1;
      } else if (at(Tok::HashI)) {
        next();
        b.sort = 2;
      } else {
        b.sort = 0;
        b.type = term();
      }
      expect(Tok::RParen, "')'");
      d.telescope.push_back(std::move(b));
    }
    expect(Tok::Colon, "':'");
    d.type = term();
    expect(Tok::Equal, "'='");
    d.body = term();
    return d;
  }
};

}  // namespace

SourceFile parse_file(const std::string& text, const std::string& path) {
  Parser p;
  p.toks = tokenize(text, path);
  p.file = path;
  SourceFile f;
  f.path = path;
  while (!p.at(Tok::End)) f.decls.push_back(p.decl());
  return f;
}

SExpP parse_term_string(const std::string& text) {
  Parser p;
  p.toks = tokenize(text, "<string>");
  p.file = "<string>";
  SExpP e = p.term();
  if (!p.at(Tok::End)) p.err("end of input");
  return e;
}

}  // namespace ptt
