#ifndef PTT_DIAGNOSTICS_HPP
#define PTT_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>

namespace ptt {

enum class Code {
  UnboundVariable,
  SortMismatch,
  NotApart,
  DiagonalSubstitution,
  TypeMismatch,
  TubeMismatch,
  BoundaryMismatch,
  UnsupportedKan,
  CannotInfer,
  FuelExhausted,
  StuckTerm,
  LexError,
  ParseError,
  DuplicateName,
};

const char* code_name(Code c);

struct Span {
  std::string file;
  int line = 0;
  int col = 0;
  bool known() const { return !file.empty(); }
};

struct Diagnostic {
  Code code;
  std::string message;
  Span span;
  // Serialized as `file:line:col: code: message`.
  std::string render() const;
};

struct TypeError : std::runtime_error {
  Diagnostic diag;
  explicit TypeError(Diagnostic d) : std::runtime_error(d.render()), diag(std::move(d)) {}
  TypeError(Code c, std::string msg)
      : TypeError(Diagnostic{c, std::move(msg), Span{}}) {}
};

struct FuelExhausted : std::runtime_error {
  FuelExhausted() : std::runtime_error("evaluation fuel exhausted") {}
};

struct Fuel {
  long long remaining;
  explicit Fuel(long long n = 1000000) : remaining(n) {}
  void tick() {
    if (remaining-- <= 0) throw FuelExhausted{};
  }
};

}  // namespace ptt

#endif
