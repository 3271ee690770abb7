#include <cctype>
#include <set>

#include "annihilant/expr.hpp"

namespace annihilant {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[i])))
                ++i;
            out.push_back({Tok::number, text.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) ||
                    text[i] == '_'))
                ++i;
            out.push_back({Tok::ident, text.substr(start, i - start), start});
            continue;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-': kind = Tok::minus; break;
            case '*': kind = Tok::star; break;
            case '/': kind = Tok::slash; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'",
                                 start);
        }
        out.push_back({kind, text.substr(start, 1), start});
        ++i;
    }
    out.push_back({Tok::end, "", text.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, Space sp, std::set<std::string> params)
        : tokens_(std::move(tokens)), space_(sp), params_(std::move(params)) {}

    Expr run() {
        Expr e = parse_expr();
        if (peek().kind != Tok::end)
            throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return e;
    }

private:
    const Token& peek() const { return tokens_[index_]; }
    Token advance() { return tokens_[index_++]; }
    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++index_;
        return true;
    }

    Expr parse_expr() {
        bool neg = false;
        if (accept(Tok::minus))
            neg = true;
        else
            accept(Tok::plus);
        Expr e = parse_term();
        if (neg) e = -e;
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool minus = advance().kind == Tok::minus;
            Expr rhs = parse_term();
            e = minus ? sub(e, rhs) : add(e, rhs);
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            Token op = advance();
            Expr rhs = parse_factor();
            if (op.kind == Tok::star) {
                e = mul(e, rhs);
            } else {
                e = mul(e, invert_constant(rhs, op.pos));
            }
        }
        return e;
    }

    // Division is only defined by nonzero constants (rationals and parameter
    // monomials), which is all the plain formatter ever emits.
    Expr invert_constant(const Expr& rhs, std::size_t pos) {
        if (rhs.terms().size() != 1 || !rhs.terms()[0].atoms.empty())
            throw ParseError("division by a non-constant expression", pos);
        return Expr::constant(space_, rhs.terms()[0].coeff.inverse());
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (accept(Tok::caret)) {
            Token t = peek();
            if (t.kind != Tok::number)
                throw ParseError("expected integer exponent", t.pos);
            advance();
            if (t.text.size() > 4)
                throw ParseError("exponent too large", t.pos);
            base = pow(base, std::stoi(t.text));
        }
        return base;
    }

    Expr parse_base() {
        Token t = peek();
        switch (t.kind) {
            case Tok::number: {
                advance();
                return Expr::constant(space_, rational_from_string(t.text));
            }
            case Tok::lparen: {
                advance();
                Expr e = parse_expr();
                if (!accept(Tok::rparen))
                    throw ParseError("expected ')'", peek().pos);
                return e;
            }
            case Tok::ident:
                advance();
                if (t.text == "sin" || t.text == "cos" || t.text == "exp")
                    return parse_func(t);
                return parse_symbol(t);
            default:
                throw ParseError("expected a value", t.pos);
        }
    }

    Expr parse_func(const Token& name) {
        if (!accept(Tok::lparen))
            throw ParseError("expected '(' after " + name.text, peek().pos);
        Expr arg = parse_expr();
        if (!accept(Tok::rparen))
            throw ParseError("expected ')'", peek().pos);

        if (arg.is_zero()) {
            if (name.text == "sin") return Expr::zero(space_);
            return Expr::constant(space_, Rational(1));
        }
        // Arguments outside rational * coordinate leave the closed function
        // class, which is an unsupported input rather than a syntax error.
        Atom pure;
        pure.power = 1;
        if (arg.terms().size() != 1 || !arg.terms()[0].coeff.is_rational() ||
            arg.terms()[0].atoms.size() != 1 ||
            !(arg.terms()[0].atoms.begin()->second == pure))
            throw UnsupportedError(name.text +
                                   " argument must be a rational multiple of "
                                   "one coordinate");
        const Term& t = arg.terms()[0];
        Rational r = t.coeff.rational();
        int coord = t.atoms.begin()->first;

        Atom a;
        if (name.text == "exp") {
            a.exp_rate = r;
        } else {
            a.trig = name.text == "sin" ? Trig::sin : Trig::cos;
            a.freq = r;
        }
        return Expr::from_terms(space_,
                                {Term{Coefficient::one(), {{coord, a}}}});
    }

    Expr parse_symbol(const Token& t) {
        if (t.text == "t") {
            if (!space_.has_time)
                throw ParseError("this space has no time coordinate", t.pos);
            return Expr::monomial(space_, Coord::t(), 1);
        }
        if (t.text.size() > 1 && t.text[0] == 'x' &&
            std::isdigit(static_cast<unsigned char>(t.text[1]))) {
            bool digits = true;
            for (std::size_t i = 1; i < t.text.size(); ++i)
                digits = digits &&
                         std::isdigit(static_cast<unsigned char>(t.text[i]));
            if (digits) {
                int id = std::stoi(t.text.substr(1));
                if (id < 1 || id > space_.n)
                    throw ParseError("coordinate " + t.text +
                                         " outside a space of dimension " +
                                         std::to_string(space_.n),
                                     t.pos);
                return Expr::monomial(space_, Coord::x(id), 1);
            }
        }
        if (params_.count(t.text))
            return Expr::constant(space_, Coefficient::param(t.text));
        throw ParseError("unknown identifier '" + t.text + "'", t.pos);
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
    Space space_;
    std::set<std::string> params_;
};

}  // namespace

Expr parse(const std::string& text, Space sp,
           const std::vector<std::string>& params) {
    return Parser(lex(text), sp, std::set<std::string>(params.begin(), params.end()))
        .run();
}

}  // namespace annihilant
