#include "sival/parser.hpp"

#include <cctype>
#include <optional>
#include <unordered_set>

namespace sival {

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error("at " + std::to_string(position) + ": " + message), kind_(kind), position_(position)
{
}

namespace {

enum class Tok { ident, number, plus, minus, star, slash, lparen, rparen, end };

struct Token {
    Tok type;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c)
{
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (ident_start(c)) {
            while (i < src.size() && ident_char(src[i])) {
                ++i;
            }
            out.push_back({Tok::ident, std::string(src.substr(start, i - start)), start});
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            while (i < src.size() && is_digit(src[i])) {
                ++i;
            }
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && is_digit(src[i])) {
                    ++i;
                }
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) {
                    ++j;
                }
                if (j >= src.size() || !is_digit(src[j])) {
                    throw ParseError(ParseError::Kind::syntax, j, "malformed exponent in numeric literal");
                }
                while (j < src.size() && is_digit(src[j])) {
                    ++j;
                }
                i = j;
            }
            out.push_back({Tok::number, std::string(src.substr(start, i - start)), start});
            continue;
        }
        Tok t;
        switch (c) {
        case '+':
            t = Tok::plus;
            break;
        case '-':
            t = Tok::minus;
            break;
        case '*':
            t = Tok::star;
            break;
        case '/':
            t = Tok::slash;
            break;
        case '(':
            t = Tok::lparen;
            break;
        case ')':
            t = Tok::rparen;
            break;
        default:
            throw ParseError(ParseError::Kind::syntax, i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({t, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::end, "", src.size()});
    return out;
}

std::optional<UnaryOp> unary_keyword(const std::string& word)
{
    if (word == "abs") {
        return UnaryOp::abs;
    }
    if (word == "sqrt") {
        return UnaryOp::sqrt;
    }
    if (word == "sqrtr") {
        return UnaryOp::sqrt_rel;
    }
    return std::nullopt;
}

class Parser {
  public:
    explicit Parser(std::string_view source) : tokens_(tokenize(source))
    {
        for (const auto& t : tokens_) {
            if (t.type == Tok::ident) {
                used_names_.insert(t.text);
            }
        }
    }

    ParsedExpr run()
    {
        Expr e = expr();
        if (peek().type != Tok::end) {
            fail("unexpected '" + peek().text + "' after expression");
        }
        return {std::move(e), std::move(bindings_)};
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const
    {
        throw ParseError(ParseError::Kind::syntax, peek().pos, message);
    }

    Expr expr()
    {
        Expr lhs = term();
        while (peek().type == Tok::plus || peek().type == Tok::minus) {
            const BinaryOp op = next().type == Tok::plus ? BinaryOp::add : BinaryOp::sub;
            lhs = Expr::binary(op, std::move(lhs), term());
        }
        return lhs;
    }

    Expr term()
    {
        Expr lhs = factor();
        while (peek().type == Tok::star || peek().type == Tok::slash) {
            const BinaryOp op = next().type == Tok::star ? BinaryOp::mul : BinaryOp::div;
            lhs = Expr::binary(op, std::move(lhs), factor());
        }
        return lhs;
    }

    Expr factor()
    {
        const Token& t = peek();
        switch (t.type) {
        case Tok::minus:
            next();
            return Expr::unary(UnaryOp::neg, factor());
        case Tok::lparen: {
            next();
            Expr inner = expr();
            if (peek().type != Tok::rparen) {
                fail("expected ')'");
            }
            next();
            return inner;
        }
        case Tok::number: {
            next();
            std::string name = fresh_constant_name();
            bindings_.push_back({name, t.text});
            return Expr::var(std::move(name));
        }
        case Tok::ident: {
            next();
            if (auto op = unary_keyword(t.text)) {
                return Expr::unary(*op, factor());
            }
            if (peek().type == Tok::lparen) {
                throw ParseError(ParseError::Kind::unknown_symbol, t.pos,
                                 "unknown operation symbol '" + t.text + "'");
            }
            return Expr::var(t.text);
        }
        case Tok::end:
            fail("unexpected end of input, expected an operand");
        default:
            fail("expected an operand, got '" + t.text + "'");
        }
    }

    std::string fresh_constant_name()
    {
        for (;;) {
            std::string name = "_c" + std::to_string(next_constant_++);
            if (!used_names_.contains(name)) {
                return name;
            }
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::unordered_set<std::string> used_names_;
    std::vector<Binding> bindings_;
    std::size_t next_constant_ = 0;
};

Expr substitute_literals(const Expr& e, const std::vector<Binding>& bindings)
{
    switch (e.kind()) {
    case Expr::Kind::var:
        for (const auto& b : bindings) {
            if (b.constant_name == e.name()) {
                return Expr::var(b.literal);
            }
        }
        return e;
    case Expr::Kind::unary:
        return Expr::unary(e.unary_op(), substitute_literals(e.child(), bindings));
    case Expr::Kind::binary:
        return Expr::binary(e.binary_op(), substitute_literals(e.left(), bindings),
                            substitute_literals(e.right(), bindings));
    }
    return e;
}

} // namespace

ParsedExpr parse(std::string_view source)
{
    return Parser(source).run();
}

std::string to_source(const ParsedExpr& parsed)
{
    if (parsed.bindings.empty()) {
        return to_string(parsed.expr);
    }
    return to_string(substitute_literals(parsed.expr, parsed.bindings));
}

} // namespace sival
