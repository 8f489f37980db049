#include "psq/parse.hpp"

#include <cctype>
#include <vector>

namespace psq {

namespace {

enum class Tok { Plus, Minus, Star, Slash, Caret, LParen, RParen, Integer, Ident, End };

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        size_t start = i;
        switch (c) {
            case '+': out.push_back({Tok::Plus, "+", start}); ++i; continue;
            case '-': out.push_back({Tok::Minus, "-", start}); ++i; continue;
            case '*': out.push_back({Tok::Star, "*", start}); ++i; continue;
            case '/': out.push_back({Tok::Slash, "/", start}); ++i; continue;
            case '^': out.push_back({Tok::Caret, "^", start}); ++i; continue;
            case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
            case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({Tok::Integer, text.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            out.push_back({Tok::Ident, text.substr(start, i - start), start});
            continue;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

// Recursive-descent parser over a value type V supporting the ring
// operations; Atoms supplies the variable atoms of the concrete grammar.
template <class V, class Atoms>
class Parser {
  public:
    Parser(std::vector<Token> tokens, Atoms atoms)
        : tokens_(std::move(tokens)), atoms_(std::move(atoms)) {}

    V run() {
        V v = expr();
        expect(Tok::End, "unexpected trailing input");
        return v;
    }

  private:
    const Token& peek() const { return tokens_[cursor_]; }
    Token take() { return tokens_[cursor_++]; }

    void expect(Tok kind, const char* message) {
        if (peek().kind != kind) throw ParseError(message, peek().pos);
        ++cursor_;
    }

    V expr() {
        bool negate = false;
        if (peek().kind == Tok::Minus) {
            take();
            negate = true;
        }
        V acc = term();
        if (negate) acc = -acc;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = take().kind == Tok::Minus;
            V rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    V term() {
        V acc = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            Token op = take();
            V rhs = factor();
            if (op.kind == Tok::Star) {
                acc = atoms_.mul(acc, rhs);
            } else {
                acc = atoms_.mul(acc, atoms_.invert(rhs, op.pos));
            }
        }
        return acc;
    }

    V factor() {
        V base = atom();
        if (peek().kind == Tok::Caret) {
            Token caret = take();
            if (peek().kind == Tok::Minus)
                throw ParseError("negative exponent is not allowed", peek().pos);
            if (peek().kind != Tok::Integer)
                throw ParseError("expected nonnegative integer exponent", peek().pos);
            Token e = take();
            long exp = std::stol(e.text);
            (void)caret;
            base = atoms_.power(base, static_cast<int>(exp));
        }
        return base;
    }

    V atom() {
        const Token& t = peek();
        if (t.kind == Tok::Integer) {
            Token n = take();
            return atoms_.integer(Rational(BigInt(n.text)));
        }
        if (t.kind == Tok::Ident) {
            Token id = take();
            return atoms_.identifier(id.text, id.pos);
        }
        if (t.kind == Tok::LParen) {
            take();
            V v = expr();
            expect(Tok::RParen, "expected ')'");
            return v;
        }
        throw ParseError("expected a value", t.pos);
    }

    std::vector<Token> tokens_;
    Atoms atoms_;
    size_t cursor_ = 0;
};

struct PhaseAtoms {
    PhasePoly integer(const Rational& r) const { return PhasePoly(Scalar(r)); }

    PhasePoly identifier(const std::string& name, size_t pos) const {
        if (name == "x") return PhasePoly::x();
        if (name == "p") return PhasePoly::p();
        if (name == "hbar") return PhasePoly(Scalar::hbar());
        if (name == "l") return PhasePoly(Scalar::length());
        if (name == "sqrt2") return PhasePoly(Scalar::sqrt2());
        if (name == "i") return PhasePoly(Scalar::unit_i());
        throw ParseError("unknown symbol '" + name + "'", pos);
    }

    PhasePoly mul(const PhasePoly& a, const PhasePoly& b) const { return a * b; }
    PhasePoly power(const PhasePoly& a, int e) const { return a.pow(e); }

    PhasePoly invert(const PhasePoly& v, size_t pos) const {
        if (!v.is_constant() || !v.constant_term().is_monomial())
            throw ParseError("division by a value that is not an invertible coefficient", pos);
        return PhasePoly(v.constant_term().inverse());
    }
};

struct OpAtoms {
    Alphabet alphabet;

    OpPoly integer(const Rational& r) const { return OpPoly::constant(Scalar(r), alphabet); }

    OpPoly identifier(const std::string& name, size_t pos) const {
        if (name == "hbar") return OpPoly::constant(Scalar::hbar(), alphabet);
        if (name == "l") return OpPoly::constant(Scalar::length(), alphabet);
        if (name == "sqrt2") return OpPoly::constant(Scalar::sqrt2(), alphabet);
        if (name == "i") return OpPoly::constant(Scalar::unit_i(), alphabet);
        if (name == "X" || name == "P") {
            return OpPoly::from_word(name == "X" ? "X" : "P", Scalar::one(), alphabet);
        }
        if (name == "a" || name == "ad") {
            return OpPoly::from_word(name == "a" ? "a" : "d", Scalar::one(), alphabet);
        }
        throw ParseError("unknown symbol '" + name + "'", pos);
    }

    OpPoly mul(const OpPoly& a, const OpPoly& b) const {
        // Order-preserving concatenation; canonicalization happens once the
        // whole expression is assembled.
        OpPoly raw(alphabet);
        for (const auto& [wa, ca] : a.terms())
            for (const auto& [wb, cb] : b.terms()) raw.add_term(wa + wb, ca * cb);
        return raw;
    }

    OpPoly power(const OpPoly& a, int e) const {
        OpPoly acc = OpPoly::identity(alphabet);
        for (int k = 0; k < e; ++k) acc = mul(acc, a);
        return acc;
    }

    OpPoly invert(const OpPoly& v, size_t pos) const {
        if (!v.is_constant() || !v.constant_term().is_monomial())
            throw ParseError("division by a value that is not an invertible coefficient", pos);
        return OpPoly::constant(v.constant_term().inverse(), alphabet);
    }
};

}  // namespace

PhasePoly parse_phase_expr(const std::string& text) {
    Parser<PhasePoly, PhaseAtoms> parser(tokenize(text), PhaseAtoms{});
    return parser.run();
}

OpPoly parse_op_expr(const std::string& text, std::optional<Alphabet> fallback) {
    std::vector<Token> tokens = tokenize(text);
    std::optional<Alphabet> seen;
    for (const Token& t : tokens) {
        if (t.kind != Tok::Ident) continue;
        std::optional<Alphabet> this_one;
        if (t.text == "X" || t.text == "P") this_one = Alphabet::XP;
        if (t.text == "a" || t.text == "ad") this_one = Alphabet::Ladder;
        if (!this_one) continue;
        if (seen && *seen != *this_one)
            throw ParseError("mixed operator alphabets in one expression", t.pos);
        seen = this_one;
    }
    Alphabet alphabet = seen.value_or(fallback.value_or(Alphabet::XP));
    Parser<OpPoly, OpAtoms> parser(std::move(tokens), OpAtoms{alphabet});
    return canonicalize(parser.run(), default_order(alphabet));
}

}  // namespace psq
