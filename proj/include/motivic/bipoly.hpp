#ifndef MOTIVIC_BIPOLY_HPP
#define MOTIVIC_BIPOLY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "motivic/common.hpp"

namespace motivic {

/// Sparse Laurent polynomial in the Hodge variables (u, v). The type
/// signature (a, b) records which monomial u^a v^b plays the role of L
/// under substitution; it is carried metadata, not enforced structure.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(Int constant);
    static BiPoly monomial(Exp2 e, Int coeff = Int(1));
    /// x^e - 1.
    static BiPoly binomial(Exp2 e);

    bool isZero() const { return coeffs_.empty(); }
    bool isConstant() const;
    const std::map<Exp2, Int>& coeffs() const { return coeffs_; }
    Int coeff(Exp2 e) const;

    Exp2 sig() const { return sig_; }
    void setSig(Exp2 s) { sig_ = s; }

    BiPoly operator+(const BiPoly& o) const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator-() const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const Int& c) const;
    bool operator==(const BiPoly& o) const { return coeffs_ == o.coeffs_; }

    /// Multiply by the monomial x^e.
    BiPoly shifted(Exp2 e) const;
    /// u -> 1/u, v -> 1/v.
    BiPoly swapped() const;
    /// u -> 1/u, v fixed.
    BiPoly swappedU() const;
    /// Multiply every exponent by k (root-order rescale).
    BiPoly scaledExponents(long k) const;
    /// Divide every exponent by k; requires divisibility.
    std::optional<BiPoly> unscaledExponents(long k) const;

    /// Exact division by the binomial x^e - 1 (e != 0), or nullopt.
    std::optional<BiPoly> dividedByBinomial(Exp2 e) const;

    void addTerm(Exp2 e, const Int& coeff);

    /// Canonical text: ascending lexicographic (p, q); u^p v^p prints as
    /// (uv)^p. `root` divides displayed exponents (fractions if needed).
    std::string str(long root = 1) const;

private:
    std::map<Exp2, Int> coeffs_;
    Exp2 sig_{1, 1};
};

/// Rational function in (u, v): numerator over a multiset of factors
/// (u^{e1/root} v^{e2/root} - 1). Factor vectors are kept lexicographically
/// positive; flipping one absorbs a unit -x^E into the numerator.
class BiRational {
public:
    BiRational() = default;
    BiRational(BiPoly num);  // NOLINT: implicit on purpose
    explicit BiRational(Int constant);
    /// num / prod (x^{E/root} - 1); canonicalizes factor directions.
    static BiRational make(BiPoly num, const std::vector<Exp2>& denFactors, long root = 1);

    bool isZero() const { return num_.isZero(); }
    bool isPolynomial() const { return den_.empty(); }
    const BiPoly& num() const { return num_; }
    const std::multiset<Exp2>& den() const { return den_; }
    long root() const { return root_; }
    Exp2 sig() const { return num_.sig(); }
    void setSig(Exp2 s) { num_.setSig(s); }

    BiRational operator+(const BiRational& o) const;
    BiRational operator-(const BiRational& o) const;
    BiRational operator-() const;
    BiRational operator*(const BiRational& o) const;
    bool operator==(const BiRational& o) const;

    /// Multiply by c * u^p v^q with (p, q) in unscaled units.
    BiRational timesMonomial(Exp2 e, const Int& coeff = Int(1)) const;
    /// u -> 1/u, v -> 1/v, renormalized.
    BiRational swapped() const;
    /// u -> 1/u only, renormalized.
    BiRational swappedU() const;

    /// Rescale to a root order that is a multiple of the current one.
    BiRational withRoot(long newRoot) const;

    std::string str() const;

private:
    void reduce();
    BiPoly num_;
    std::multiset<Exp2> den_;
    long root_ = 1;
};

/// Result of stringy-number extraction: either the signed coefficient map
/// (-1)^{p+q} a_{p,q}, or a report of why the value is not a polynomial.
struct StringyNumbers {
    bool polynomial = false;
    std::map<Exp2, Int> numbers;
    std::string reason;
};

StringyNumbers stringy_numbers(const BiRational& x);

BiRational bipoly_swap(const BiRational& x);

/// Parse a polynomial in u, v from its canonical text (atoms `u`, `v`,
/// `uv`, integers, `+ - * ^`, parentheses). Throws ParseError.
BiPoly parse_bipoly(const std::string& text);

}  // namespace motivic

#endif
