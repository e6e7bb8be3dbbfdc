#include <cctype>
#include <set>

#include "ptt/frontend.hpp"

namespace ptt {

namespace {

const std::set<std::string> kKeywords = {
    "def",  "U",    "Path",   "Bridge", "Gel",  "gel",    "ungel", "extent",
    "coe",  "hcom", "com",    "V",      "Vin",  "Vproj",  "bool",  "tt",
    "ff",   "if",   "int",    "z2",     "zin",  "zmod",   "z2elim", "unit",
    "star", "empty", "abort", "lam",    "plam", "blam",   "fst",   "snd",
    "Sig",  "Pi",   "I",
};

}  // namespace

std::vector<Token> tokenize(const std::string& text, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string s, int l, int c) {
    out.push_back({k, std::move(s), l, c});
  };
  auto err = [&](const std::string& msg) {
    throw TypeError(Diagnostic{Code::LexError, msg, Span{file, line, col}});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      line++;
      col = 1;
      i++;
      continue;
    }
    if (isspace((unsigned char)c)) {
      i++;
      col++;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') i++;
      continue;
    }
    int l = line, co = col;
    if (isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (isalnum((unsigned char)text[j]) || text[j] == '_' || text[j] == '\''))
        j++;
      std::string w = text.substr(i, j - i);
      col += (int)(j - i);
      i = j;
      push(kKeywords.count(w) ? Tok::Keyword : Tok::Ident, w, l, co);
      continue;
    }
    if (isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < text.size() && isdigit((unsigned char)text[j])) j++;
      std::string w = text.substr(i, j - i);
      col += (int)(j - i);
      i = j;
      push(Tok::Number, w, l, co);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', '>')) {
      push(Tok::Arrow, "->", l, co);
      i += 2;
      col += 2;
      continue;
    }
    if (two('@', '@')) {
      if (i + 2 < text.size() && text[i + 2] == '@') err("unexpected '@@@'");
      push(Tok::AtAt, "@@", l, co);
      i += 2;
      col += 2;
      continue;
    }
    if (two('#', 'I')) {
      push(Tok::HashI, "#I", l, co);
      i += 2;
      col += 2;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", l, co); break;
      case ')': push(Tok::RParen, ")", l, co); break;
      case '[': push(Tok::LBracket, "[", l, co); break;
      case ']': push(Tok::RBracket, "]", l, co); break;
      case '.': push(Tok::Dot, ".", l, co); break;
      case ',': push(Tok::Comma, ",", l, co); break;
      case ':': push(Tok::Colon, ":", l, co); break;
      case '=': push(Tok::Equal, "=", l, co); break;
      case '*': push(Tok::Star, "*", l, co); break;
      case '+': push(Tok::Plus, "+", l, co); break;
      case '@': push(Tok::At, "@", l, co); break;
      case '|': push(Tok::Pipe, "|", l, co); break;
      default:
        err(std::string("unexpected character '") + c + "'");
    }
    i++;
    col++;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

}  // namespace ptt
