// Parser and printer for the formula surface syntax.

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "kripke/error.hpp"
#include "kripke/formula.hpp"

namespace kripke {
namespace {

enum class Tok { Var, False, True, Not, Box, And, Or, Imp, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  Var var = 0;
  std::string text;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Var: return "variable";
    case Tok::False: return "'false'";
    case Tok::True: return "'true'";
    case Tok::Not: return "'~'";
    case Tok::Box: return "'[]'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view s, bool modal) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](std::vector<std::string> expected) -> void {
    throw SyntaxError(i, std::move(expected), "'" + std::string(1, s[i]) + "'");
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, start, 0, std::string(s.substr(start, len))});
      i += len;
    };
    if (c == '~') {
      push(Tok::Not, 1);
    } else if (c == '&') {
      push(Tok::And, 1);
    } else if (c == '|') {
      push(Tok::Or, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (s.substr(i, 2) == "->") {
      push(Tok::Imp, 2);
    } else if (s.substr(i, 3) == "<->") {
      push(Tok::Iff, 3);
    } else if (modal && s.substr(i, 2) == "[]") {
      push(Tok::Box, 2);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      const std::string_view word = s.substr(i, j - i);
      Token t{Tok::Var, start, 0, std::string(word)};
      if (word == "false") {
        t.kind = Tok::False;
      } else if (word == "true") {
        t.kind = Tok::True;
      } else if (word == "p") {
        t.var = 0;
      } else if (word == "q") {
        t.var = 1;
      } else if (word == "r") {
        t.var = 2;
      } else if (word.size() > 1 && word[0] == 'p' &&
                 word.find_first_not_of("0123456789", 1) == std::string_view::npos &&
                 (word.size() == 2 || word[1] != '0')) {
        auto [ptr, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), t.var);
        if (ec != std::errc{} || ptr != word.data() + word.size())
          throw SyntaxError(start, {"variable index within range"}, "'" + std::string(word) + "'");
      } else {
        throw SyntaxError(start, {"variable (p, q, r, p<n>)", "'false'", "'true'"},
                          "'" + std::string(word) + "'");
      }
      out.push_back(std::move(t));
      i = j;
    } else {
      fail({"formula"});
    }
  }
  out.push_back({Tok::End, s.size(), 0, ""});
  return out;
}

template <class F>
class Parser {
 public:
  Parser(std::vector<Token> toks, bool modal) : toks_(std::move(toks)), modal_(modal) {}

  F parse_all() {
    F f = iff();
    expect(Tok::End, {Tok::And, Tok::Or, Tok::Imp, Tok::Iff, Tok::End});
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(std::vector<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.emplace_back(describe(t));
    const Token& t = peek();
    throw SyntaxError(t.offset, std::move(names),
                      t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  void expect(Tok k, std::vector<Tok> expected) {
    if (peek().kind != k) fail(std::move(expected));
    ++pos_;
  }

  std::vector<Tok> atom_starts() const {
    std::vector<Tok> v{Tok::Var, Tok::False, Tok::True, Tok::Not, Tok::LParen};
    if (modal_) v.push_back(Tok::Box);
    return v;
  }

  static F implies(const F& a, const F& b) { return F::imp(a, b); }
  static F conj(const F& a, const F& b) { return F::conj(a, b); }

  F iff() {
    F lhs = imp();
    if (peek().kind == Tok::Iff) {
      ++pos_;
      F rhs = iff();
      return conj(implies(lhs, rhs), implies(rhs, lhs));
    }
    return lhs;
  }

  F imp() {
    F lhs = disj();
    if (peek().kind == Tok::Imp) {
      ++pos_;
      return implies(lhs, imp());
    }
    return lhs;
  }

  F disj() {
    F acc = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      acc = F::disj(acc, conjunction());
    }
    return acc;
  }

  F conjunction() {
    F acc = unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      acc = conj(acc, unary());
    }
    return acc;
  }

  F unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        ++pos_;
        return implies(unary(), F::bot());
      case Tok::Box:
        if constexpr (requires(const F& x) { F::box(x); }) {
          ++pos_;
          return F::box(unary());
        }
        break;
      case Tok::Var:
        ++pos_;
        return F::var(t.var);
      case Tok::False:
        ++pos_;
        return F::bot();
      case Tok::True:
        ++pos_;
        return implies(F::bot(), F::bot());
      case Tok::LParen: {
        ++pos_;
        F inner = iff();
        expect(Tok::RParen, {Tok::And, Tok::Or, Tok::Imp, Tok::Iff, Tok::RParen});
        return inner;
      }
      default:
        break;
    }
    fail(atom_starts());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool modal_;
};

// Binding strength of the printed top-level connective.
int level(Connective c) {
  switch (c) {
    case Connective::Imp: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    case Connective::Box: return 4;
    default: return 5;
  }
}

template <class F>
void emit(const F& f, std::string& out) {
  auto child = [&](const F& c, bool paren) {
    if (paren) out += '(';
    emit(c, out);
    if (paren) out += ')';
  };
  switch (f.op()) {
    case Connective::Bot:
      out += "false";
      return;
    case Connective::Var:
      out += 'p';
      out += std::to_string(f.index());
      return;
    case Connective::Box:
      out += "[]";
      child(f.lhs(), level(f.lhs().op()) < level(Connective::Box));
      return;
    case Connective::And:
    case Connective::Or: {
      const int me = level(f.op());
      child(f.lhs(), level(f.lhs().op()) < me);
      out += f.op() == Connective::And ? " & " : " | ";
      child(f.rhs(), level(f.rhs().op()) <= me);
      return;
    }
    case Connective::Imp: {
      const int me = level(Connective::Imp);
      child(f.lhs(), level(f.lhs().op()) <= me);
      out += " -> ";
      child(f.rhs(), level(f.rhs().op()) < me);
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser<Formula>(lex(text, false), false).parse_all(); }

ModalFormula parse_modal(std::string_view text) {
  return Parser<ModalFormula>(lex(text, true), true).parse_all();
}

std::string print(const Formula& f) {
  std::string out;
  emit(f, out);
  return out;
}

std::string print(const ModalFormula& f) {
  std::string out;
  emit(f, out);
  return out;
}

}  // namespace kripke
