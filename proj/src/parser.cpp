#include <cctype>

#include "zeroone/error.hpp"
#include "zeroone/formula.hpp"

namespace zeroone {

namespace {

enum class Tok { Ident, Quant, Dot, LParen, RParen, Comma, And, Or, Bang, Neq, Eq, Tilde, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= src_.size()) return {Tok::End, "", start};
    char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
      std::string word(src_.substr(start, i_ - start));
      if (word == "exists" || word == "forall") {
        if (i_ < src_.size() && src_[i_] == '\'') {
          ++i_;
          word += '\'';
        }
        return {Tok::Quant, word, start};
      }
      return {Tok::Ident, word, start};
    }
    ++i_;
    switch (c) {
      case '.': return {Tok::Dot, ".", start};
      case '(': return {Tok::LParen, "(", start};
      case ')': return {Tok::RParen, ")", start};
      case ',': return {Tok::Comma, ",", start};
      case '&': return {Tok::And, "&", start};
      case '|': return {Tok::Or, "|", start};
      case '~': return {Tok::Tilde, "~", start};
      case '=': return {Tok::Eq, "=", start};
      case '!':
        if (i_ < src_.size() && src_[i_] == '=') {
          ++i_;
          return {Tok::Neq, "!=", start};
        }
        return {Tok::Bang, "!", start};
      default:
        throw Error(ErrorKind::Parse, "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(start));
    }
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  Formula parse() {
    Formula f = formula();
    if (tok_.kind != Tok::End) fail("unexpected '" + tok_.text + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(tok_.pos));
  }

  void advance() { tok_ = lex_.next(); }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  std::string ident(const char* what) {
    if (tok_.kind != Tok::Ident) fail(std::string("expected ") + what);
    std::string s = tok_.text;
    advance();
    return s;
  }

  Formula formula() {
    if (tok_.kind == Tok::Quant) return quant();
    return disjunction();
  }

  Formula quant() {
    std::string kw = tok_.text;
    advance();
    std::string var = ident("variable after quantifier");
    expect(Tok::Dot, "'.' after quantified variable");
    Formula body = formula();
    NodeKind kind = kw == "exists"    ? NodeKind::Exists
                    : kw == "forall"  ? NodeKind::Forall
                    : kw == "exists'" ? NodeKind::ExistsNe
                                      : NodeKind::ForallNe;
    return Formula::quantifier(kind, var, body);
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (tok_.kind == Tok::Or) {
      advance();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (tok_.kind == Tok::And) {
      advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    switch (tok_.kind) {
      case Tok::Tilde:
        advance();
        return Formula::negation(unary());
      case Tok::Bang: {
        advance();
        std::string rel = ident("relation after '!'");
        return Formula::neg_atom(rel, arguments());
      }
      case Tok::LParen: {
        advance();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      // A quantifier in operand position extends as far right as possible.
      case Tok::Quant:
        return quant();
      case Tok::Ident: {
        std::string name = tok_.text;
        advance();
        if (tok_.kind == Tok::LParen) return Formula::atom(name, arguments());
        if (tok_.kind == Tok::Eq || tok_.kind == Tok::Neq) {
          bool eq = tok_.kind == Tok::Eq;
          advance();
          std::string rhs = ident("variable after comparison");
          return eq ? Formula::eq(name, rhs) : Formula::neq(name, rhs);
        }
        fail("expected '(', '=' or '!=' after '" + name + "'");
      }
      default:
        fail(tok_.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + tok_.text + "'");
    }
  }

  std::vector<std::string> arguments() {
    expect(Tok::LParen, "'('");
    std::vector<std::string> args{ident("variable")};
    while (tok_.kind == Tok::Comma) {
      advance();
      args.push_back(ident("variable"));
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  Lexer lex_;
  Token tok_;
};

}  // namespace

Formula parse_formula_raw(std::string_view text) { return Parser(text).parse(); }

Formula parse_formula(std::string_view text, const Vocabulary& vocab, ParseOptions options) {
  Formula f = parse_formula_raw(text);
  validate(f, vocab);
  return rectify(to_nnf(f), options);
}

Formula parse_formula(std::string_view text, ParseOptions options) {
  Formula f = parse_formula_raw(text);
  infer_vocabulary(f);
  return rectify(to_nnf(f), options);
}

}  // namespace zeroone
