#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

// Recursive-descent parser for the text syntax of lattice formulas:
//
//   formula := quant | impl
//   quant   := ("forall" | "exists") varlist formula | "min" var "{" formula "}"
//   impl    := disj [ "->" formula ]
//   disj    := conj { "or" conj }
//   conj    := neg { "and" neg }
//   neg     := "not" neg | "(" formula ")" | atom
//   atom    := term ("=" | "!=" | "<=" | "<" | ">=" | ">") term
//   term    := factor { "|" factor }
//   factor  := prim { "&" prim }
//   prim    := var | "(" term ")"

namespace comlat {

  namespace detail {

    enum class Tok {
      ident,
      kw_forall,
      kw_exists,
      kw_min,
      kw_not,
      kw_and,
      kw_or,
      lparen,
      rparen,
      lbrace,
      rbrace,
      comma,
      eq,
      neq,
      le,
      lt,
      ge,
      gt,
      arrow,
      amp,
      bar,
      end
    };

    struct Token {
      Tok         kind;
      std::string text;
      std::size_t pos;
    };

    inline std::vector<Token> tokenize(std::string_view src) {
      std::vector<Token> out;
      std::size_t        i = 0;
      auto ident_char      = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      };
      while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
          continue;
        }
        std::size_t const start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          while (i < src.size() && ident_char(src[i])) {
            ++i;
          }
          std::string word(src.substr(start, i - start));
          Tok         kind = Tok::ident;
          if (word == "forall") {
            kind = Tok::kw_forall;
          } else if (word == "exists") {
            kind = Tok::kw_exists;
          } else if (word == "min") {
            kind = Tok::kw_min;
          } else if (word == "not") {
            kind = Tok::kw_not;
          } else if (word == "and") {
            kind = Tok::kw_and;
          } else if (word == "or") {
            kind = Tok::kw_or;
          }
          out.push_back({kind, std::move(word), start});
          continue;
        }
        auto two = src.substr(i, 2);
        if (two == "!=") {
          out.push_back({Tok::neq, "!=", start});
          i += 2;
        } else if (two == "<=") {
          out.push_back({Tok::le, "<=", start});
          i += 2;
        } else if (two == ">=") {
          out.push_back({Tok::ge, ">=", start});
          i += 2;
        } else if (two == "->") {
          out.push_back({Tok::arrow, "->", start});
          i += 2;
        } else {
          Tok kind;
          switch (c) {
            case '(':
              kind = Tok::lparen;
              break;
            case ')':
              kind = Tok::rparen;
              break;
            case '{':
              kind = Tok::lbrace;
              break;
            case '}':
              kind = Tok::rbrace;
              break;
            case ',':
              kind = Tok::comma;
              break;
            case '=':
              kind = Tok::eq;
              break;
            case '<':
              kind = Tok::lt;
              break;
            case '>':
              kind = Tok::gt;
              break;
            case '&':
              kind = Tok::amp;
              break;
            case '|':
              kind = Tok::bar;
              break;
            default:
              throw SyntaxError(std::string("unexpected character '") + c + "'",
                                start);
          }
          out.push_back({kind, std::string(1, c), start});
          ++i;
        }
      }
      out.push_back({Tok::end, "", src.size()});
      return out;
    }

    class Parser {
     public:
      explicit Parser(std::string_view src) : _toks(tokenize(src)) {}

      Formula parse_all() {
        auto f = formula();
        if (peek().kind != Tok::end) {
          fail("unexpected '" + peek().text + "'");
        }
        return f;
      }

     private:
      // Thrown internally when an atom attempt fails and we need to
      // backtrack to a parenthesized formula.
      struct Backtrack {};

      Token const& peek() const {
        return _toks[_pos];
      }

      Token const& advance() {
        return _toks[_pos++];
      }

      bool accept(Tok k) {
        if (peek().kind == k) {
          ++_pos;
          return true;
        }
        return false;
      }

      [[noreturn]] void fail(std::string const& msg) const {
        throw SyntaxError(msg, peek().pos);
      }

      void expect(Tok k, char const* what) {
        if (!accept(k)) {
          fail(std::string("expected ") + what
               + (peek().kind == Tok::end ? " but input ended"
                                          : " before '" + peek().text + "'"));
        }
      }

      std::string variable() {
        if (peek().kind != Tok::ident) {
          fail("expected a variable"
               + (peek().kind == Tok::end ? std::string(" but input ended")
                                          : " before '" + peek().text + "'"));
        }
        return advance().text;
      }

      Formula formula() {
        switch (peek().kind) {
          case Tok::kw_forall:
          case Tok::kw_exists: {
            bool const universal = advance().kind == Tok::kw_forall;
            std::vector<std::string> vs{variable()};
            while (accept(Tok::comma)) {
              vs.push_back(variable());
            }
            auto body = formula();
            return universal ? forall(vs, body) : exists(vs, body);
          }
          case Tok::kw_min: {
            advance();
            auto v = variable();
            expect(Tok::lbrace, "'{'");
            auto body = formula();
            expect(Tok::rbrace, "'}'");
            return min(v, body);
          }
          default:
            return impl();
        }
      }

      Formula impl() {
        auto lhs = disjunction();
        if (accept(Tok::arrow)) {
          return implies(lhs, formula());
        }
        return lhs;
      }

      Formula disjunction() {
        auto f = conjunction();
        while (accept(Tok::kw_or)) {
          f = disj(f, conjunction());
        }
        return f;
      }

      Formula conjunction() {
        auto f = neg();
        while (accept(Tok::kw_and)) {
          f = conj(f, neg());
        }
        return f;
      }

      Formula neg() {
        if (accept(Tok::kw_not)) {
          return negation(neg());
        }
        if (peek().kind == Tok::lparen) {
          auto const saved = _pos;
          try {
            return atom(true);
          } catch (Backtrack const&) {
            _pos = saved;
          }
          advance();
          auto f = formula();
          expect(Tok::rparen, "')'");
          return f;
        }
        return atom(false);
      }

      // With `tentative`, failures raise Backtrack instead of SyntaxError.
      Formula atom(bool tentative) {
        auto lhs = term(tentative);
        auto op  = peek().kind;
        switch (op) {
          case Tok::eq:
          case Tok::neq:
          case Tok::le:
          case Tok::lt:
          case Tok::ge:
          case Tok::gt:
            advance();
            break;
          default:
            if (tentative) {
              throw Backtrack{};
            }
            fail(peek().kind == Tok::end
                     ? std::string("expected a relation but input ended")
                     : "expected a relation before '" + peek().text + "'");
        }
        auto rhs = term(false);
        switch (op) {
          case Tok::eq:
            return eq(lhs, rhs);
          case Tok::neq:
            return neq(lhs, rhs);
          case Tok::le:
            return leq(lhs, rhs);
          case Tok::lt:
            return lt(lhs, rhs);
          case Tok::ge:
            return leq(rhs, lhs);
          default:
            return lt(rhs, lhs);
        }
      }

      Term term(bool tentative) {
        auto t = factor(tentative);
        while (accept(Tok::bar)) {
          t = join(t, factor(tentative));
        }
        return t;
      }

      Term factor(bool tentative) {
        auto t = prim(tentative);
        while (accept(Tok::amp)) {
          t = meet(t, prim(tentative));
        }
        return t;
      }

      Term prim(bool tentative) {
        if (accept(Tok::lparen)) {
          auto t = term(tentative);
          if (peek().kind != Tok::rparen) {
            if (tentative) {
              throw Backtrack{};
            }
            expect(Tok::rparen, "')'");
          }
          advance();
          return t;
        }
        if (peek().kind != Tok::ident) {
          if (tentative) {
            throw Backtrack{};
          }
          variable();
        }
        return var(advance().text);
      }

      std::vector<Token> _toks;
      std::size_t        _pos = 0;
    };
  }  // namespace detail

  inline Formula parse(std::string_view text) {
    return detail::Parser(text).parse_all();
  }

}  // namespace comlat
