#include "motivic/classexpr.hpp"

#include <cctype>
#include <sstream>

namespace motivic {

ClassExpr ClassExpr::ref(std::string n) {
    ClassExpr e;
    e.kind = Kind::Ref;
    e.isClass = true;
    e.name = std::move(n);
    return e;
}

ClassExpr ClassExpr::lit(Int v) {
    ClassExpr e;
    e.kind = Kind::IntLit;
    e.value = std::move(v);
    return e;
}

ClassExpr ClassExpr::lefschetz() {
    ClassExpr e;
    e.kind = Kind::L;
    return e;
}

ClassExpr ClassExpr::inv(long m) {
    ClassExpr e;
    e.kind = Kind::Inv;
    e.exponent = m;
    return e;
}

namespace {
ClassExpr binary(ClassExpr::Kind k, ClassExpr a, ClassExpr b, bool isClass) {
    ClassExpr e;
    e.kind = k;
    e.isClass = isClass;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}
}  // namespace

ClassExpr ClassExpr::add(ClassExpr a, ClassExpr b) {
    bool cls = a.isClass || b.isClass;
    return binary(Kind::Add, std::move(a), std::move(b), cls);
}

ClassExpr ClassExpr::sub(ClassExpr a, ClassExpr b) {
    bool cls = a.isClass || b.isClass;
    return binary(Kind::Sub, std::move(a), std::move(b), cls);
}

ClassExpr ClassExpr::mul(ClassExpr a, ClassExpr b) {
    if (a.isClass && b.isClass)
        throw Error("class x class product not defined: classes form an L-module, not a ring");
    return binary(Kind::Mul, std::move(a), std::move(b), a.isClass || b.isClass);
}

ClassExpr ClassExpr::pow(ClassExpr base, long ex) {
    if (base.isClass) throw Error("cannot raise a class to a power (no class products)");
    ClassExpr e;
    e.kind = Kind::Pow;
    e.exponent = ex;
    e.kids.push_back(std::move(base));
    return e;
}

ClassExpr ClassExpr::neg(ClassExpr a) {
    ClassExpr e;
    e.kind = Kind::Neg;
    e.isClass = a.isClass;
    e.kids.push_back(std::move(a));
    return e;
}

std::string ClassExpr::str() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Ref: out << "[" << name << "]"; break;
        case Kind::IntLit: out << value.get_str(); break;
        case Kind::L: out << "L"; break;
        case Kind::Inv:
            out << "inv(L";
            if (exponent != 1) out << "^" << exponent;
            out << " - 1)";
            break;
        case Kind::Neg: out << "-(" << kids[0].str() << ")"; break;
        case Kind::Add: out << "(" << kids[0].str() << " + " << kids[1].str() << ")"; break;
        case Kind::Sub: out << "(" << kids[0].str() << " - " << kids[1].str() << ")"; break;
        case Kind::Mul: out << kids[0].str() << "*" << kids[1].str(); break;
        case Kind::Pow: out << kids[0].str() << "^" << exponent; break;
    }
    return out.str();
}

namespace {

struct Lexer {
    enum class Tok { End, LBracket, Name, Int, L, Inv, Plus, Minus, Star, Caret, LParen, RParen };

    const std::string& text;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::string name;
    Int value;
    std::size_t tokPos = 0;

    explicit Lexer(const std::string& t) : text(t) { advance(); }

    void advance() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        tokPos = pos;
        if (pos >= text.size()) {
            tok = Tok::End;
            return;
        }
        char c = text[pos];
        if (c == '[') {
            std::size_t end = text.find(']', pos);
            if (end == std::string::npos) throw ParseError("unterminated '['", pos);
            name = text.substr(pos + 1, end - pos - 1);
            // trim
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(name.begin());
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
            if (name.empty()) throw ParseError("empty record name '[]'", pos);
            pos = end + 1;
            tok = Tok::Name;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            value = Int(text.substr(pos, end - pos), 10);
            pos = end;
            tok = Tok::Int;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end]))) ++end;
            std::string word = text.substr(pos, end - pos);
            if (word == "L") {
                tok = Tok::L;
                pos = end;
                return;
            }
            if (word == "inv") {
                tok = Tok::Inv;
                pos = end;
                return;
            }
            throw ParseError("unknown identifier '" + word + "' (record names go in brackets)", pos);
        }
        switch (c) {
            case '+': tok = Tok::Plus; break;
            case '-': tok = Tok::Minus; break;
            case '*': tok = Tok::Star; break;
            case '^': tok = Tok::Caret; break;
            case '(': tok = Tok::LParen; break;
            case ')': tok = Tok::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
        ++pos;
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& t) : lex(t) {}

    long parseSignedLong() {
        bool negate = false;
        if (lex.tok == Lexer::Tok::Minus) {
            negate = true;
            lex.advance();
        }
        if (lex.tok != Lexer::Tok::Int) throw ParseError("expected integer exponent", lex.tokPos);
        if (!lex.value.fits_slong_p()) throw ParseError("exponent out of range", lex.tokPos);
        long v = lex.value.get_si();
        lex.advance();
        return negate ? -v : v;
    }

    ClassExpr parsePrimary() {
        switch (lex.tok) {
            case Lexer::Tok::Name: {
                ClassExpr e = ClassExpr::ref(lex.name);
                lex.advance();
                return e;
            }
            case Lexer::Tok::Int: {
                ClassExpr e = ClassExpr::lit(lex.value);
                lex.advance();
                return e;
            }
            case Lexer::Tok::L: {
                lex.advance();
                return ClassExpr::lefschetz();
            }
            case Lexer::Tok::Inv: {
                std::size_t at = lex.tokPos;
                lex.advance();
                if (lex.tok != Lexer::Tok::LParen) throw ParseError("expected '(' after inv", lex.tokPos);
                lex.advance();
                // The argument must be literally L^m - 1.
                if (lex.tok != Lexer::Tok::L) throw ParseError("inv() takes L^m - 1", lex.tokPos);
                lex.advance();
                long m = 1;
                if (lex.tok == Lexer::Tok::Caret) {
                    lex.advance();
                    m = parseSignedLong();
                }
                if (lex.tok != Lexer::Tok::Minus) throw ParseError("inv() takes L^m - 1", lex.tokPos);
                lex.advance();
                if (lex.tok != Lexer::Tok::Int || lex.value != 1)
                    throw ParseError("inv() takes L^m - 1", lex.tokPos);
                lex.advance();
                if (lex.tok != Lexer::Tok::RParen) throw ParseError("expected ')'", lex.tokPos);
                lex.advance();
                if (m < 1) throw ParseError("inv(L^m - 1) needs m >= 1", at);
                return ClassExpr::inv(m);
            }
            case Lexer::Tok::LParen: {
                lex.advance();
                ClassExpr e = parseExpr();
                if (lex.tok != Lexer::Tok::RParen) throw ParseError("expected ')'", lex.tokPos);
                lex.advance();
                return e;
            }
            case Lexer::Tok::Minus: {
                lex.advance();
                return ClassExpr::neg(parseFactor());
            }
            default: throw ParseError("expected a term", lex.tokPos);
        }
    }

    ClassExpr parseFactor() {
        ClassExpr base = parsePrimary();
        if (lex.tok == Lexer::Tok::Caret) {
            std::size_t at = lex.tokPos;
            lex.advance();
            long e = parseSignedLong();
            if (base.isClass) throw ParseError("cannot raise a class to a power", at);
            base = ClassExpr::pow(std::move(base), e);
        }
        return base;
    }

    ClassExpr parseTerm() {
        ClassExpr acc = parseFactor();
        while (lex.tok == Lexer::Tok::Star) {
            std::size_t at = lex.tokPos;
            lex.advance();
            ClassExpr rhs = parseFactor();
            if (acc.isClass && rhs.isClass)
                throw ParseError("class x class product not defined: classes form an L-module, not a ring", at);
            acc = ClassExpr::mul(std::move(acc), std::move(rhs));
        }
        return acc;
    }

    ClassExpr parseExpr() {
        ClassExpr acc = parseTerm();
        while (lex.tok == Lexer::Tok::Plus || lex.tok == Lexer::Tok::Minus) {
            bool plus = lex.tok == Lexer::Tok::Plus;
            lex.advance();
            ClassExpr rhs = parseTerm();
            acc = plus ? ClassExpr::add(std::move(acc), std::move(rhs))
                       : ClassExpr::sub(std::move(acc), std::move(rhs));
        }
        return acc;
    }
};

}  // namespace

ClassExpr parse_class_expr(const std::string& text) {
    Parser p(text);
    ClassExpr e = p.parseExpr();
    if (p.lex.tok != Lexer::Tok::End) throw ParseError("trailing input", p.lex.tokPos);
    return e;
}

}  // namespace motivic
