#ifndef MOTIVIC_SNC_HPP
#define MOTIVIC_SNC_HPP

#include <map>
#include <string>
#include <vector>

#include "motivic/invariants.hpp"
#include "motivic/kgroup.hpp"

namespace motivic {

/// Resolution data for the simple-normal-crossing integral: a smooth
/// ambient class, weighted divisor components, and the classes of the
/// closed (or open) strata D_J indexed by subsets of components. Strata
/// classes are inputs; only combinatorial consistency is enforced.
struct SncResolution {
    enum class StrataKind { Closed, Open };

    KClass ambient;
    long dim = 0;
    struct Component {
        std::string name;
        Rat mult;  // discrepancy a_i, log-terminal: a_i > -1
    };
    std::vector<Component> components;
    StrataKind strataKind = StrataKind::Closed;
    std::map<unsigned, KClass> strata;  // bitmask over components -> class

    std::size_t r() const { return components.size(); }
};

/// Structural checks: all 2^r subsets present, the empty set matching the
/// ambient (for closed strata), multiplicities > -1, stratum dimensions
/// within d - |J|. Throws IncompleteStrataError / LogTerminalityError /
/// DimensionMismatchError.
void validate_resolution(const SncResolution& s);

/// Closed strata of the resolution, regardless of which kind was supplied.
std::map<unsigned, KClass> closed_strata(const SncResolution& s);

/// [D^0_J] = sum_{J' >= J} (-1)^{|J'|-|J|} [D_{J'}]; inverse of the
/// summation [D_J] = sum_{J' >= J} [D^0_{J'}].
std::map<unsigned, KClass> open_strata(const SncResolution& s);

/// Test helper inverse of open_strata.
std::map<unsigned, KClass> closed_from_open(const std::map<unsigned, KClass>& open, std::size_t r);

/// The SNC motivic integral: sum over subsets J of
/// [D^0_J] * prod_{j in J} (L - 1)/(L^{a_j + 1} - 1).
/// Multiplicities must be integers here; rational discrepancies live in
/// the (u, v) ring via stringy_phi_snc.
KClass motivic_integral_snc(const SncResolution& s);

/// Stringy phi-function: sum over subsets J of
/// phi(D^0_J; u, v) * prod_{j in J} (q - 1)/(q^{a_j+1} - 1), q = u^a v^b.
/// Rational multiplicities are lifted to a common root order.
BiRational stringy_phi_snc(const InvariantFamily& f, const SncResolution& s);

/// residual = stringy(s1) - stringy(s2); ok iff zero.
CheckReport resolution_independence_check(const InvariantFamily& f, const SncResolution& s1,
                                          const SncResolution& s2);

struct KEquivalenceReport {
    bool equal = false;                      // motivic integrals agree
    std::map<std::string, bool> perFamily;  // stringy functions agree
};

/// Both resolutions must share the ambient space Z (same class and
/// dimension); compares the motivic integrals and, per supplied family,
/// the stringy functions. Throws SetupError on an ambient mismatch.
KEquivalenceReport k_equivalence_check(const std::vector<InvariantFamily>& families,
                                       const SncResolution& x, const SncResolution& y);

}  // namespace motivic

#endif
