#ifndef MOTIVIC_TORIC_HPP
#define MOTIVIC_TORIC_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "motivic/bipoly.hpp"
#include "motivic/invariants.hpp"
#include "motivic/lattice.hpp"
#include "motivic/lring.hpp"

namespace motivic {

using ConeKey = std::set<int>;  // ray indices; the empty set is the zero cone

/// A rational fan: primitive ray vectors and cones as ray-index sets.
/// After fan_validate the cone list is closed under faces and contains
/// the zero cone. `complete` is a user assertion, sanity-checked in
/// rank <= 3 by point-coverage sampling.
struct Fan {
    long rank = 0;
    std::vector<lattice::Vec> rays;
    std::vector<ConeKey> cones;
    bool complete = false;
    std::vector<std::string> warnings;  // e.g. primitivity normalizations
};

/// Normalizes rays to primitive vectors (warning), rejects cones that
/// contain a line, completes the face closure, and — when `complete` is
/// asserted and rank <= 3 — spot-checks coverage. Throws InvalidFanError.
Fan fan_validate(Fan f);

/// d_k = number of cones of dimension exactly k, k = 0..rank.
std::vector<long> cone_counts(const Fan& f);

/// The toric Hodge number: 0 unless p = q in [0, rank], else
/// sum_k d_{rank-k} (-1)^{k-p} binom(k, k-p).
Int toric_hodge(const Fan& f, long p, long q);

/// E(X; u, v) = sum_k d_{rank-k} (uv - 1)^k.
BiPoly toric_epoly(const Fan& f);

/// Per-maximal-cone rational linear functionals with value 1 on each of
/// the cone's primitive rays.
struct SupportFunction {
    std::map<ConeKey, lattice::QVec> perCone;

    /// Functional value at a lattice point of the given cone (looked up
    /// through any maximal cone containing it).
    Rat value(const ConeKey& cone, const lattice::Vec& point) const;
    const lattice::QVec& functionalFor(const ConeKey& cone) const;
};

/// Solve functional(ray) = 1 on every maximal cone; throws
/// NotQGorensteinError when some cone admits no such functional.
SupportFunction support_from_qgorenstein(const Fan& f);

/// Lattice-point generating function of the open cone,
/// sum over n in relint(cone) of t^{phi(n)}, as an exact rational function
/// in t. Weights are scaled by `root` so that all exponents are integers;
/// the value's denominator factors (t^w - 1) carry the sign convention
/// 1/(1 - t^w) = -1/(t^w - 1) folded into the numerator.
struct ConeGenFun {
    LefschetzRational value;
    long root = 1;

    std::string str() const;
};

ConeGenFun cone_genfun(const Fan& f, const ConeKey& cone, const SupportFunction& support,
                       const Int& detLimit = Int(1000000));

/// The toric stringy function: (q - 1)^rank * sum over all cones of the
/// open generating function at t = q^-1, where q = u^a v^b for the family
/// signature (default the E-polynomial's (1,1)).
BiRational toric_stringy_e(const Fan& f, const SupportFunction& support, Exp2 sig = {1, 1},
                           const Int& detLimit = Int(1000000));

/// gsca_symmetry_check on the toric stringy function with d = rank.
/// Refuses incomplete fans (the theorem is about projective varieties).
CheckReport toric_symmetry_check(const Fan& f, const SupportFunction& support,
                                 const InvariantFamily& family,
                                 const Int& detLimit = Int(1000000));

// Exposed for tests and the completeness heuristic.
namespace toricdetail {
/// All faces of cone(S), as ray-index subsets of S (includes S and {}).
std::set<ConeKey> coneFaces(const std::vector<lattice::Vec>& rays, const ConeKey& S);
/// Deterministic triangulation into simplicial subcones spanned by
/// existing rays (pulling from the lowest ray index).
std::vector<ConeKey> triangulate(const std::vector<lattice::Vec>& rays, const ConeKey& S);
bool coneContains(const std::vector<lattice::Vec>& rays, const ConeKey& S, const lattice::Vec& x);
long coneDim(const std::vector<lattice::Vec>& rays, const ConeKey& S);
}  // namespace toricdetail

}  // namespace motivic

#endif
