#ifndef PTT_FRONTEND_HPP
#define PTT_FRONTEND_HPP

#include <memory>
#include <string>
#include <vector>

#include "ptt/checker.hpp"

namespace ptt {

// ---- tokens ---------------------------------------------------------------

enum class Tok : uint8_t {
  Ident, Number, Keyword,
  LParen, RParen, LBracket, RBracket,
  Dot, Comma, Colon, Equal, Arrow, Star, Plus, At, AtAt, Pipe, HashI,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> tokenize(const std::string& text, const std::string& file);

// ---- surface syntax ---------------------------------------------------------

struct SExp;
using SExpP = std::shared_ptr<SExp>;

struct STube {
  SExpP lhs, rhs;  // constraint sides (idents or 0/1)
  std::string name;
  SExpP body;
};

struct SExp {
  enum class K {
    Var, Num, App, PApp, BApp, Lam, PLam, BLam, Pi, Sig, Pair, Add, Binder, Form
  };
  K k;
  Span span;
  std::string name;                // Var; Form: keyword
  long long num = 0;               // Num
  std::vector<std::string> names;  // Lam/PLam/BLam/Binder binder names; Pi/Sig names
  std::vector<SExpP> kids;         // children; Pi/Sig: [dom, cod]; Form: args
  std::vector<STube> tubes;        // hcom/com systems
  int dom_sort = 0;  // Pi-like binder over a dimension: 0 none, 1 path, 2 bridge
};

struct SDecl {
  Span span;
  std::string name;
  // telescope entries: (names, sort, type). sort: 0 term, 1 path dim, 2 bridge dim
  struct Binder {
    std::vector<std::string> names;
    int sort;
    SExpP type;  // null for dims
    Span span;
  };
  std::vector<Binder> telescope;
  SExpP type;
  SExpP body;
};

struct SourceFile {
  std::string path;
  std::vector<SDecl> decls;
};

SourceFile parse_file(const std::string& text, const std::string& path);
SExpP parse_term_string(const std::string& text);  // for tests

// ---- elaboration ------------------------------------------------------------

struct ElabResult {
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Elaborates and checks every declaration, adding the successful ones to the
// session's environment. Fail-fast per definition, continues across
// definitions.
ElabResult elaborate_file(Session& s, const SourceFile& file);

// Elaborates one term against a context (names resolve against ctx hints and
// the session's definitions); used by tests.
Term elaborate_term(Session& s, const Context& ctx, const SExpP& e);

// ---- printing ----------------------------------------------------------------

std::string print_term(const Term& t);
std::string print_term(const Term& t, const Context& ctx);

}  // namespace ptt

#endif
