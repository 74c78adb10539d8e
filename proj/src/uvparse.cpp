#include <cctype>

#include "motivic/bipoly.hpp"

namespace motivic {

namespace {

struct UvParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit UvParser(const std::string& t) : text(t) {}

    void skipWs() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skipWs();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skipWs();
        return pos < text.size() ? text[pos] : '\0';
    }

    Int parseInt() {
        skipWs();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        return Int(text.substr(start, pos - start), 10);
    }

    long parseExponent() {
        bool paren = eat('(');
        bool negate = eat('-');
        Int v = parseInt();
        if (paren && !eat(')')) throw ParseError("expected ')'", pos);
        if (!v.fits_slong_p()) throw ParseError("exponent out of range", pos);
        long e = v.get_si();
        return negate ? -e : e;
    }

    BiPoly parsePrimary() {
        skipWs();
        if (pos >= text.size()) throw ParseError("expected a term", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            BiPoly e = parseExpr();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return e;
        }
        if (c == '-') {
            ++pos;
            return -parseFactor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly(parseInt());
        if (c == 'u') {
            ++pos;
            if (pos < text.size() && text[pos] == 'v') {
                ++pos;
                return BiPoly::monomial({1, 1});
            }
            return BiPoly::monomial({1, 0});
        }
        if (c == 'v') {
            ++pos;
            return BiPoly::monomial({0, 1});
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    BiPoly parseFactor() {
        BiPoly base = parsePrimary();
        while (eat('^')) {
            long e = parseExponent();
            if (e >= 0) {
                BiPoly r{Int(1)};
                for (long i = 0; i < e; ++i) r = r * base;
                base = r;
            } else {
                if (base.coeffs().size() != 1) throw ParseError("negative power of a non-monomial", pos);
                const auto& [exp, coeff] = *base.coeffs().begin();
                if (coeff != 1 && coeff != -1) throw ParseError("negative power of a non-unit", pos);
                Int c = (coeff == -1 && (e % 2) != 0) ? Int(-1) : Int(1);
                base = BiPoly::monomial({exp.first * e, exp.second * e}, c);
            }
        }
        return base;
    }

    BiPoly parseTerm() {
        BiPoly acc = parseFactor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc = acc * parseFactor();
            } else if (c == 'u' || c == 'v' || c == '(') {
                // implicit product, e.g. "2uv" or "uv(uv-1)"
                acc = acc * parseFactor();
            } else {
                break;
            }
        }
        return acc;
    }

    BiPoly parseExpr() {
        BiPoly acc = parseTerm();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc = acc + parseTerm();
            } else if (c == '-') {
                ++pos;
                acc = acc - parseTerm();
            } else {
                break;
            }
        }
        return acc;
    }
};

}  // namespace

BiPoly parse_bipoly(const std::string& text) {
    UvParser p(text);
    BiPoly e = p.parseExpr();
    p.skipWs();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return e;
}

}  // namespace motivic
