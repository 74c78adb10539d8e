#include "motivic/snc.hpp"

#include <bit>
#include <numeric>
#include <sstream>

namespace motivic {

namespace {

std::string subsetName(unsigned mask) {
    if (mask == 0) return "{}";
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (unsigned i = 0; mask >> i; ++i) {
        if (!(mask & (1u << i))) continue;
        if (!first) out << ",";
        out << (i + 1);
        first = false;
    }
    out << "}";
    return out.str();
}

int popcount(unsigned x) { return std::popcount(x); }

}  // namespace

void validate_resolution(const SncResolution& s) {
    const std::size_t r = s.r();
    if (r > 20) throw Error("too many divisor components (2^r strata)");
    for (const auto& comp : s.components)
        if (comp.mult <= Rat(-1))
            throw LogTerminalityError("component '" + comp.name + "' has multiplicity " +
                                      comp.mult.get_str() + " <= -1 (not log-terminal)");
    const unsigned full = (r >= 32) ? 0 : (1u << r);
    for (unsigned mask = 0; mask < full; ++mask)
        if (!s.strata.count(mask))
            throw IncompleteStrataError("missing stratum entry for J = " + subsetName(mask));
    auto closed = closed_strata(s);
    if (!(closed.at(0) == s.ambient))
        throw SetupError(s.strataKind == SncResolution::StrataKind::Closed
                             ? "the J = {} stratum must equal the ambient class"
                             : "open strata must sum to the ambient class");
    for (const auto& [mask, cls] : closed) {
        if (cls.isZero()) continue;
        if (cls.virtualDimension() > s.dim - popcount(mask))
            throw DimensionMismatchError("stratum " + subsetName(mask) + " has virtual dimension " +
                                         std::to_string(cls.virtualDimension()) + " > " +
                                         std::to_string(s.dim - popcount(mask)));
    }
}

std::map<unsigned, KClass> closed_strata(const SncResolution& s) {
    if (s.strataKind == SncResolution::StrataKind::Closed) return s.strata;
    return closed_from_open(s.strata, s.r());
}

std::map<unsigned, KClass> open_strata(const SncResolution& s) {
    const std::size_t r = s.r();
    const unsigned full = (r == 0) ? 0 : (1u << r) - 1;
    for (unsigned mask = 0; mask <= full; ++mask)
        if (!s.strata.count(mask))
            throw IncompleteStrataError("missing stratum entry for J = " + subsetName(mask));
    if (s.strataKind == SncResolution::StrataKind::Open) return s.strata;
    std::map<unsigned, KClass> open;
    for (unsigned mask = 0; mask <= full; ++mask) {
        KClass acc;
        unsigned rest = full & ~mask;
        // Inclusion-exclusion over supersets of mask.
        unsigned sub = 0;
        while (true) {
            const KClass& cls = s.strata.at(mask | sub);
            acc = (popcount(sub) % 2 == 0) ? acc + cls : acc - cls;
            if (sub == rest) break;
            sub = (sub - rest) & rest;
        }
        open[mask] = std::move(acc);
    }
    return open;
}

std::map<unsigned, KClass> closed_from_open(const std::map<unsigned, KClass>& open, std::size_t r) {
    const unsigned full = (r == 0) ? 0 : (1u << r) - 1;
    std::map<unsigned, KClass> closed;
    for (unsigned mask = 0; mask <= full; ++mask) {
        KClass acc;
        unsigned rest = full & ~mask;
        unsigned sub = 0;
        while (true) {
            auto it = open.find(mask | sub);
            if (it == open.end()) throw IncompleteStrataError("missing stratum entry for J = " + subsetName(mask | sub));
            acc = acc + it->second;
            if (sub == rest) break;
            sub = (sub - rest) & rest;
        }
        closed[mask] = std::move(acc);
    }
    return closed;
}

KClass motivic_integral_snc(const SncResolution& s) {
    validate_resolution(s);
    std::vector<long> exps;
    for (const auto& comp : s.components) {
        Rat e = comp.mult + 1;
        if (e.get_den() != 1)
            throw Error("motivic_integral_snc needs integer multiplicities; component '" +
                        comp.name + "' has " + comp.mult.get_str() +
                        " (use stringy_phi_snc for rational discrepancies)");
        exps.push_back(static_cast<long>(e.get_num().get_si()));
    }
    auto opens = open_strata(s);
    const unsigned full = (s.r() == 0) ? 0 : (1u << s.r()) - 1;
    KClass total;
    for (unsigned mask = 0; mask <= full; ++mask) {
        LefschetzPoly num{Int(1)};
        std::multiset<long> den;
        for (unsigned i = 0; i < s.r(); ++i) {
            if (!(mask & (1u << i))) continue;
            num = num * LefschetzPoly::cyclo(1);
            den.insert(exps[i]);
        }
        total = total + opens.at(mask).scaled(LefschetzRational(std::move(num), std::move(den)));
    }
    return total;
}

BiRational stringy_phi_snc(const InvariantFamily& f, const SncResolution& s) {
    validate_resolution(s);
    const auto [a, b] = f.type;
    if (a == 0 && b == 0 && !s.components.empty())
        throw DivergenceError("family '" + f.name + "' of type (0,0) has no stringy extension");
    long root = 1;
    for (const auto& comp : s.components) {
        Rat e = comp.mult + 1;
        root = std::lcm(root, static_cast<long>(e.get_den().get_si()));
    }
    auto opens = open_strata(s);
    const unsigned full = (s.r() == 0) ? 0 : (1u << s.r()) - 1;
    BiRational total;
    for (unsigned mask = 0; mask <= full; ++mask) {
        BiRational phi = phi_polynomial(f, opens.at(mask));
        BiPoly num{Int(1)};
        num.setSig(f.type);
        std::vector<Exp2> factors;
        for (unsigned i = 0; i < s.r(); ++i) {
            if (!(mask & (1u << i))) continue;
            num = num * BiPoly::binomial({a * root, b * root});
            Rat e = (s.components[i].mult + 1) * root;
            long m = static_cast<long>(e.get_num().get_si());
            factors.push_back({a * m, b * m});
        }
        total = total + phi * BiRational::make(std::move(num), factors, root);
    }
    total.setSig(f.type);
    return total;
}

CheckReport resolution_independence_check(const InvariantFamily& f, const SncResolution& s1,
                                          const SncResolution& s2) {
    CheckReport rep;
    rep.residual = stringy_phi_snc(f, s1) - stringy_phi_snc(f, s2);
    rep.ok = rep.residual.isZero();
    return rep;
}

KEquivalenceReport k_equivalence_check(const std::vector<InvariantFamily>& families,
                                       const SncResolution& x, const SncResolution& y) {
    if (x.dim != y.dim) throw SetupError("resolutions have different ambient dimensions");
    if (!(x.ambient == y.ambient))
        throw SetupError("resolutions do not share the same ambient space");
    KEquivalenceReport rep;
    rep.equal = motivic_integral_snc(x) == motivic_integral_snc(y);
    for (const auto& f : families)
        rep.perFamily[f.name] = resolution_independence_check(f, x, y).ok;
    return rep;
}

}  // namespace motivic
