#ifndef MOTIVIC_CLASSEXPR_HPP
#define MOTIVIC_CLASSEXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "motivic/common.hpp"

namespace motivic {

/// Parsed class expression. Nodes are typed at parse time: scalar
/// subexpressions are built from integers, L and inv(L^m - 1); anything
/// containing a [name] reference is a class. There is no class-by-class
/// product; `*` needs an L-scalar on at least one side.
struct ClassExpr {
    enum class Kind { Ref, IntLit, L, Inv, Neg, Add, Sub, Mul, Pow };

    Kind kind = Kind::IntLit;
    bool isClass = false;     // fixed at parse time
    std::string name;         // Ref
    Int value;                // IntLit
    long exponent = 0;        // Pow: kids[0]^exponent; Inv: 1/(L^exponent - 1)
    std::vector<ClassExpr> kids;

    static ClassExpr ref(std::string n);
    static ClassExpr lit(Int v);
    static ClassExpr lefschetz();
    static ClassExpr inv(long m);
    static ClassExpr add(ClassExpr a, ClassExpr b);
    static ClassExpr sub(ClassExpr a, ClassExpr b);
    static ClassExpr mul(ClassExpr a, ClassExpr b);
    static ClassExpr pow(ClassExpr base, long e);
    static ClassExpr neg(ClassExpr a);

    std::string str() const;
};

/// Parse the class-expression grammar: `[name]`, `L`, integer literals,
/// `+ - *`, `^`, `inv(L^m - 1)`. Whitespace insignificant. Throws
/// ParseError with a position on bad syntax, including class*class.
ClassExpr parse_class_expr(const std::string& text);

}  // namespace motivic

#endif
