#ifndef MOTIVIC_LRING_HPP
#define MOTIVIC_LRING_HPP

#include <map>
#include <optional>
#include <set>
#include <string>

#include "motivic/common.hpp"

namespace motivic {

/// Sparse Laurent polynomial in the Lefschetz class L, exact integer
/// coefficients. Canonical form: no stored zero coefficients.
class LefschetzPoly {
public:
    LefschetzPoly() = default;
    explicit LefschetzPoly(Int constant);
    static LefschetzPoly monomial(long degree, Int coeff = Int(1));
    /// L^m - 1.
    static LefschetzPoly cyclo(long m);

    bool isZero() const { return coeffs_.empty(); }
    const std::map<long, Int>& coeffs() const { return coeffs_; }
    Int coeff(long degree) const;
    /// Top exponent; requires a nonzero polynomial.
    long degree() const;
    long lowDegree() const;
    bool isConstant() const;

    LefschetzPoly operator+(const LefschetzPoly& o) const;
    LefschetzPoly operator-(const LefschetzPoly& o) const;
    LefschetzPoly operator-() const;
    LefschetzPoly operator*(const LefschetzPoly& o) const;
    LefschetzPoly operator*(const Int& c) const;
    LefschetzPoly& operator+=(const LefschetzPoly& o);
    /// Multiply by L^k.
    LefschetzPoly shifted(long k) const;
    bool operator==(const LefschetzPoly& o) const { return coeffs_ == o.coeffs_; }

    /// Exact division: quotient if `d` divides this exactly over Z, else nullopt.
    std::optional<LefschetzPoly> dividedBy(const LefschetzPoly& d) const;

    /// Drop terms with exponent > hi (if hi set) or < lo (if lo set).
    LefschetzPoly truncated(std::optional<long> lo, std::optional<long> hi) const;

    /// Canonical text: terms by descending degree, e.g. "L^2 + L + 1".
    std::string str(const std::string& var = "L") const;

    void addTerm(long degree, const Int& coeff);

private:
    std::map<long, Int> coeffs_;
};

enum class ExpandDir { atZero, atInfinity };

/// Exact dyadic value 2^(-k), or zero. Result type of the completion norm.
struct Norm {
    bool zero = true;
    long negLog2 = 0;  // value = 2^(-negLog2) when !zero

    static Norm zeroNorm() { return Norm{}; }
    static Norm dyadic(long k) { return Norm{false, k}; }

    bool operator==(const Norm& o) const;
    bool operator<=(const Norm& o) const;
    Rat toRational() const;
    std::string str() const;
};

/// Element of the localized ring: Laurent polynomial numerator over a
/// multiset of factors (L^m - 1). Kept canonical: no denominator factor
/// divides the numerator, and zero has an empty denominator.
class LefschetzRational {
public:
    LefschetzRational() = default;
    LefschetzRational(LefschetzPoly num);  // NOLINT: implicit on purpose
    LefschetzRational(LefschetzPoly num, std::multiset<long> den);
    explicit LefschetzRational(Int constant);
    /// 1 / (L^m - 1).
    static LefschetzRational inverseFactor(long m);

    bool isZero() const { return num_.isZero(); }
    bool isPolynomial() const { return den_.empty(); }
    const LefschetzPoly& num() const { return num_; }
    const std::multiset<long>& den() const { return den_; }
    /// The denominator expanded as a polynomial.
    LefschetzPoly denPoly() const;

    LefschetzRational operator+(const LefschetzRational& o) const;
    LefschetzRational operator-(const LefschetzRational& o) const;
    LefschetzRational operator-() const;
    LefschetzRational operator*(const LefschetzRational& o) const;
    /// Equality by cross-multiplied polynomial identity.
    bool operator==(const LefschetzRational& o) const;

    /// Largest k with x in F^k: (sum of denominator exponents) - deg(num).
    /// Throws NormUndefinedError on zero.
    long filtrationIndex() const;
    /// 2^(-filtrationIndex); norm(0) = 0 by convention.
    Norm norm() const;

    /// Truncated series expansion. atZero turns 1/(L^m-1) into
    /// -(1 + L^m + L^2m + ...), atInfinity into L^-m + L^-2m + ....
    /// Polynomials are returned unchanged.
    LefschetzPoly laurentExpand(ExpandDir dir, long order) const;

    std::string str(const std::string& var = "L") const;

private:
    void reduce();
    LefschetzPoly num_;
    std::multiset<long> den_;
};

enum class ArithOp { add, sub, mul };
LefschetzRational lring_arith(const LefschetzRational& x, const LefschetzRational& y, ArithOp op);

}  // namespace motivic

#endif
