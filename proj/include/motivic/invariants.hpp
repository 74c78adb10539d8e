#ifndef MOTIVIC_INVARIANTS_HPP
#define MOTIVIC_INVARIANTS_HPP

#include <map>
#include <string>
#include <vector>

#include "motivic/bipoly.hpp"
#include "motivic/kgroup.hpp"

namespace motivic {

/// A bounded family of motivic invariants of type (a, b): graded integer
/// functionals phi_{j,n} on generators with the shift rule
/// phi_{j,n}(X * L^k) = phi_{j-ak, n-bk}(X). Values per generator are
/// user-supplied data; the library provides the homomorphic extension to
/// the localized group. A bipoly-valued family (like the E-polynomial)
/// stores the whole generating polynomial per generator instead.
struct InvariantFamily {
    enum class Kind { IntegerGraded, BipolyValued };

    std::string name;
    Exp2 type{1, 1};  // (a, b)
    Kind kind = Kind::IntegerGraded;
    std::map<std::string, GradedTable> tables;  // generator name -> phi_{j,n}
    std::map<std::string, BiPoly> polys;        // generator name -> polynomial

    /// The unit class [point] evaluates to phi_{0,0} = 1 unless the family
    /// carries an explicit entry under the name "1".
    static constexpr const char* unitName = "1";
};

/// Relation declared by the user between existing records, used to check
/// that supplied tables respect the blow-up relation.
struct BlowupDecl {
    std::string bl;      // record for Bl_Y X
    std::string ex;      // record for E(Y)
    std::string base;    // X
    std::string center;  // Y
    long codim = 2;
};

/// Evaluate an integer-graded family on a localized class at (j, n).
/// Denominator factors 1/(L^m - 1) expand through the atZero series
/// -(1 + L^m + L^2m + ...); the sum is finite by boundedness.
Int evaluate(const InvariantFamily& f, const KClass& c, long j, long n);

/// Assemble the generating function phi(c; u, v): shifts become powers of
/// u^a v^b, denominator factors become ((u^a v^b)^m - 1).
BiRational phi_polynomial(const InvariantFamily& f, const KClass& c);

struct CheckReport {
    bool ok = false;
    BiRational residual;
};

/// residual = x - (u^a v^b)^d * x(u^-1, v^-1); ok iff zero.
CheckReport gsca_symmetry_check(const InvariantFamily& f, const BiRational& x, long d);

/// residual = phiV - (-u^a)^n * phiW(u^-1, v); ok iff zero.
CheckReport mirror_check(const InvariantFamily& f, const BiRational& phiV, const BiRational& phiW,
                         long n);

/// The stock invariant families, populated from record data: E (bipoly,
/// type (1,1)), e and h (graded, type (1,1)), T, G, F (graded, type (1,2)).
/// Records carrying an E polynomial get their e table derived from it and
/// vice versa. Only families with at least one generator entry are returned.
std::vector<InvariantFamily> define_builtin_families(const VarietyDb& db);

/// Registration-time validation: graded indices must be >= 0 and within
/// 2 * dimension for generators known to the database, and supplied tables
/// must satisfy f(Bl) - f(E) = f(X) - f(Y) on every declared blow-up.
/// Throws MalformedRecordError.
void validate_family(const InvariantFamily& f, const VarietyDb& db,
                     const std::vector<BlowupDecl>& blowups = {});

}  // namespace motivic

#endif
