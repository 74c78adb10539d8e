#ifndef MOTIVIC_KGROUP_HPP
#define MOTIVIC_KGROUP_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "motivic/bipoly.hpp"
#include "motivic/classexpr.hpp"
#include "motivic/lring.hpp"

namespace motivic {

using GradedTable = std::map<Exp2, Int>;  // (j, n) -> value, finite support

/// A named variety generator with user-supplied invariant data. Dimensions
/// of Lawson/Hodge-theoretic groups are inputs; nothing here is computed
/// from equations.
struct VarietyRecord {
    std::string name;
    long dimension = 0;
    bool smoothProjective = false;

    // Invariant data keyed by family name.
    std::map<std::string, GradedTable> tables;
    std::map<std::string, BiPoly> polys;  // e.g. the E-polynomial

    // Geometry for Bittner rewriting: a nonsingular record may name a
    // compactification and its boundary class; a singular one a
    // stratification into locally closed pieces.
    struct Compactification {
        std::string closure;  // record name of the compactification
        ClassExpr boundary;
    };
    std::optional<Compactification> compactification;
    std::vector<ClassExpr> stratification;

    bool hasGeometry() const { return compactification.has_value() || !stratification.empty(); }
};

using RecordPtr = std::shared_ptr<const VarietyRecord>;

/// Append-only record database; names are unique.
class VarietyDb {
public:
    RecordPtr add(VarietyRecord r);
    RecordPtr find(const std::string& name) const;  // null if absent
    RecordPtr get(const std::string& name) const;   // throws
    const std::map<std::string, RecordPtr>& records() const { return recs_; }

private:
    std::map<std::string, RecordPtr> recs_;
};

/// Formal class in the localized Grothendieck group: integer combinations
/// of (generator, L-shift) pairs over a multiset of (L^m - 1) factors.
/// A null generator is the unit class [point].
class KClass {
public:
    struct Term {
        RecordPtr gen;  // null = the unit class (a point)
        long shift = 0;
        Int coeff;
    };

    KClass() = default;
    static KClass zero() { return {}; }
    static KClass unit(Int coeff = Int(1), long shift = 0);
    static KClass generator(RecordPtr g, long shift = 0, Int coeff = Int(1));
    /// Scalar promoted to a multiple of the unit class.
    static KClass fromScalar(const LefschetzRational& s);

    bool isZero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const std::multiset<long>& den() const { return den_; }
    LefschetzPoly denPoly() const;

    KClass operator+(const KClass& o) const;
    KClass operator-(const KClass& o) const;
    KClass operator-() const;
    /// The L-module action: shift every term by k.
    KClass lAction(long k) const;
    KClass scaled(const Int& c) const;
    KClass scaled(const LefschetzRational& s) const;
    /// Formal identity after clearing denominators.
    bool operator==(const KClass& o) const;

    /// Max over terms of generator dimension + shift.
    long virtualDimension() const;
    /// Largest k with the class in F^k, generators contributing their
    /// dimension as leading L-degree. Throws NormUndefinedError on zero.
    long filtrationIndex() const;
    Norm norm() const;

    bool allSmoothProjective() const;
    /// Generator names appearing with nonzero coefficient.
    std::set<std::string> generatorNames() const;

    std::string str() const;

private:
    void normalize();
    std::vector<Term> terms_;
    std::multiset<long> den_;
};

KClass scissor_sum(const KClass& x, const KClass& y);
KClass l_action(const KClass& c, long k);

struct BlowupResult {
    KClass blowup;       // [Bl_Y X] = [X] + sum_{j=1}^{codim-1} L^j [Y]
    KClass exceptional;  // [E(Y)]   = sum_{j=0}^{codim-1} L^j [Y]
};
/// Closed-form blow-up class for a center of the given codimension.
BlowupResult blowup_class(const KClass& x, const KClass& y, long codim);

/// [P(E)] = sum_{j=0}^{r} L^j [Y] for a rank r+1 bundle over Y.
KClass projective_bundle_class(const KClass& y, long rankMinusOne);

/// Evaluate a class expression against a record database. A pure L-scalar
/// expression is returned in `scalar`; anything referencing records in `cls`.
struct ExprValue {
    std::optional<LefschetzRational> scalar;
    std::optional<KClass> cls;

    /// The value as a class, promoting scalars to unit-class multiples.
    KClass asClass() const;
};
ExprValue eval_class_expr(const ClassExpr& e, const VarietyDb& db);

/// Rewrite a class over arbitrary records into one over smooth projective
/// generators, following the inductive compactification/stratification
/// data on the records. L-equivariant; idempotent on smooth projective
/// classes. Throws UnresolvableGeneratorError / CyclicGeometryError.
KClass bittner_rewrite(const KClass& c, const VarietyDb& db);
KClass bittner_rewrite(const ClassExpr& e, const VarietyDb& db);

/// Formal equality modulo the filtration: true iff norm(x - y) < 2^-k,
/// i.e. the difference lies strictly deeper than F^k. Exact formal
/// identity when k is absent.
bool eq_mod_filtration(const KClass& x, const KClass& y, std::optional<long> k = std::nullopt);

}  // namespace motivic

#endif
