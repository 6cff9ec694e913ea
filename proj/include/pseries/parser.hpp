#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "multipoly.hpp"

namespace pseries {

// Expression AST for the textual polynomial grammar. Precedence, tightest
// first: ^, unary -, * (explicit only), binary +/-. Left-associative;
// rationals are a/b literals between integer literals only; Pow exponents are
// non-negative integer literals.
struct ExprAst {
    enum class Kind { IntLit, RatLit, Var, Neg, Add, Sub, Mul, Pow };

    Kind kind;
    Rational value;         // IntLit, RatLit
    std::string name;       // Var
    unsigned exponent = 0;  // Pow
    std::vector<std::unique_ptr<ExprAst>> children;

    static std::unique_ptr<ExprAst> literal(Kind k, Rational v) {
        auto n = std::make_unique<ExprAst>();
        n->kind = k;
        n->value = std::move(v);
        return n;
    }
    static std::unique_ptr<ExprAst> var(std::string nm) {
        auto n = std::make_unique<ExprAst>();
        n->kind = Kind::Var;
        n->name = std::move(nm);
        return n;
    }
    static std::unique_ptr<ExprAst> unary(Kind k, std::unique_ptr<ExprAst> c) {
        auto n = std::make_unique<ExprAst>();
        n->kind = k;
        n->children.push_back(std::move(c));
        return n;
    }
    static std::unique_ptr<ExprAst> binary(Kind k, std::unique_ptr<ExprAst> l,
                                           std::unique_ptr<ExprAst> r) {
        auto n = std::make_unique<ExprAst>();
        n->kind = k;
        n->children.push_back(std::move(l));
        n->children.push_back(std::move(r));
        return n;
    }
    static std::unique_ptr<ExprAst> pow(std::unique_ptr<ExprAst> base, unsigned e) {
        auto n = std::make_unique<ExprAst>();
        n->kind = Kind::Pow;
        n->exponent = e;
        n->children.push_back(std::move(base));
        return n;
    }
};

namespace detail {

struct Token {
    enum class Type { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
    Type type;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Type::End, "", start};
            return;
        }
        char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            tok_ = {Token::Type::Int, std::string(src_.substr(start, pos_ - start)), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Type::Ident, std::string(src_.substr(start, pos_ - start)), start};
            return;
        }
        ++pos_;
        switch (ch) {
            case '+': tok_ = {Token::Type::Plus, "+", start}; return;
            case '-': tok_ = {Token::Type::Minus, "-", start}; return;
            case '*': tok_ = {Token::Type::Star, "*", start}; return;
            case '^': tok_ = {Token::Type::Caret, "^", start}; return;
            case '/': tok_ = {Token::Type::Slash, "/", start}; return;
            case '(': tok_ = {Token::Type::LParen, "(", start}; return;
            case ')': tok_ = {Token::Type::RParen, ")", start}; return;
            default:
                throw SyntaxError("unexpected character '" + std::string(1, ch) + "' at offset " +
                                      std::to_string(start),
                                  start, "integer, identifier, operator, or parenthesis");
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_{Token::Type::End, "", 0};
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    std::unique_ptr<ExprAst> parse() {
        auto e = expr();
        if (lex_.peek().type != Token::Type::End)
            fail("operator or end of input");
        return e;
    }

private:
    using Type = Token::Type;

    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = lex_.peek();
        std::string got = t.type == Type::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError("expected " + expected + ", got " + got + " at offset " +
                              std::to_string(t.offset),
                          t.offset, expected);
    }

    std::unique_ptr<ExprAst> expr() {
        auto lhs = term();
        while (lex_.peek().type == Type::Plus || lex_.peek().type == Type::Minus) {
            bool plus = lex_.take().type == Type::Plus;
            lhs = ExprAst::binary(plus ? ExprAst::Kind::Add : ExprAst::Kind::Sub, std::move(lhs),
                                  term());
        }
        return lhs;
    }

    std::unique_ptr<ExprAst> term() {
        auto lhs = unary();
        while (lex_.peek().type == Type::Star) {
            lex_.take();
            lhs = ExprAst::binary(ExprAst::Kind::Mul, std::move(lhs), unary());
        }
        return lhs;
    }

    std::unique_ptr<ExprAst> unary() {
        if (lex_.peek().type == Type::Minus) {
            lex_.take();
            return ExprAst::unary(ExprAst::Kind::Neg, unary());
        }
        return power();
    }

    std::unique_ptr<ExprAst> power() {
        auto base = primary();
        while (lex_.peek().type == Type::Caret) {
            lex_.take();
            if (lex_.peek().type != Type::Int) fail("non-negative integer exponent");
            Token e = lex_.take();
            base = ExprAst::pow(std::move(base), static_cast<unsigned>(std::stoul(e.text)));
        }
        return base;
    }

    std::unique_ptr<ExprAst> primary() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Type::Int: {
                Token num = lex_.take();
                if (lex_.peek().type == Type::Slash) {
                    lex_.take();
                    if (lex_.peek().type != Type::Int) fail("integer denominator");
                    Token den = lex_.take();
                    Integer n(num.text), d(den.text);
                    if (d == 0)
                        throw SyntaxError("zero denominator at offset " + std::to_string(den.offset),
                                          den.offset, "nonzero integer denominator");
                    return ExprAst::literal(ExprAst::Kind::RatLit, rational(n, d));
                }
                return ExprAst::literal(ExprAst::Kind::IntLit, Rational(Integer(num.text)));
            }
            case Type::Ident: {
                Token id = lex_.take();
                return ExprAst::var(id.text);
            }
            case Type::LParen: {
                lex_.take();
                auto e = expr();
                if (lex_.peek().type != Type::RParen) fail("')'");
                lex_.take();
                return e;
            }
            default:
                fail("integer, variable, '-', or '('");
        }
    }

    Lexer lex_;
};

}  // namespace detail

inline std::unique_ptr<ExprAst> parse(std::string_view text) {
    return detail::Parser(text).parse();
}

inline MultiPoly to_multipoly(const ExprAst& ast, const VarSet& vars) {
    switch (ast.kind) {
        case ExprAst::Kind::IntLit:
        case ExprAst::Kind::RatLit:
            return MultiPoly::constant(vars, ast.value);
        case ExprAst::Kind::Var:
            return MultiPoly::variable(vars, ast.name);  // throws UnknownVariable
        case ExprAst::Kind::Neg:
            return -to_multipoly(*ast.children[0], vars);
        case ExprAst::Kind::Add:
            return to_multipoly(*ast.children[0], vars) + to_multipoly(*ast.children[1], vars);
        case ExprAst::Kind::Sub:
            return to_multipoly(*ast.children[0], vars) - to_multipoly(*ast.children[1], vars);
        case ExprAst::Kind::Mul:
            return to_multipoly(*ast.children[0], vars) * to_multipoly(*ast.children[1], vars);
        case ExprAst::Kind::Pow:
            return to_multipoly(*ast.children[0], vars).pow(ast.exponent);
    }
    throw std::logic_error("to_multipoly: unreachable");
}

inline MultiPoly parse_poly(std::string_view text, const VarSet& vars) {
    return to_multipoly(*parse(text), vars);
}

}  // namespace pseries
