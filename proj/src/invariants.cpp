#include "motivic/invariants.hpp"

#include <algorithm>

namespace motivic {

namespace {

struct TableBounds {
    long jLo = 0, jHi = 0, nLo = 0, nHi = 0;
    bool empty = true;
};

TableBounds boundsOf(const GradedTable& t) {
    TableBounds b;
    for (const auto& [e, c] : t) {
        if (b.empty) {
            b.jLo = b.jHi = e.first;
            b.nLo = b.nHi = e.second;
            b.empty = false;
        } else {
            b.jLo = std::min(b.jLo, e.first);
            b.jHi = std::max(b.jHi, e.first);
            b.nLo = std::min(b.nLo, e.second);
            b.nHi = std::max(b.nHi, e.second);
        }
    }
    return b;
}

const GradedTable& unitTable() {
    static const GradedTable t = {{{0, 0}, Int(1)}};
    return t;
}

// Table for a term's generator; the unit class is a point.
const GradedTable* lookupTable(const InvariantFamily& f, const RecordPtr& gen) {
    const std::string& name = gen ? gen->name : std::string(InvariantFamily::unitName);
    auto it = f.tables.find(name);
    if (it != f.tables.end()) return &it->second;
    if (!gen) return &unitTable();
    return nullptr;
}

Int lookup(const GradedTable& t, long j, long n) {
    auto it = t.find({j, n});
    return it == t.end() ? Int(0) : it->second;
}

// Sum over the multi-geometric expansion of the remaining denominator
// factors. Each factor contributes -(1 + L^m + L^2m + ...); type (a, b)
// turns L^mt into an index shift by (a m t, b m t).
Int evalThroughDens(const InvariantFamily& f, const GradedTable& table, const TableBounds& b, long j,
                    long n, const std::vector<long>& dens, std::size_t idx) {
    if (b.empty) return 0;
    const auto [a, bb] = f.type;
    if (a == 0 && (j < b.jLo || j > b.jHi)) return 0;
    if (bb == 0 && (n < b.nLo || n > b.nHi)) return 0;
    if (idx == dens.size()) return lookup(table, j, n);
    if (a == 0 && bb == 0)
        throw DivergenceError("family '" + f.name +
                              "' of type (0,0) diverges through denominator expansion");
    long m = dens[idx];
    // Largest t with a possibly nonzero contribution; beyond it the index
    // leaves the support box in a direction later factors cannot undo.
    auto coordBound = [m](long coeff, long x, long lo, long hi) -> std::optional<long> {
        if (coeff > 0) {
            if (x < lo) return -1;
            return (x - lo) / (coeff * m);
        }
        if (coeff < 0) {
            if (x > hi) return -1;
            return (hi - x) / (-coeff * m);
        }
        return std::nullopt;
    };
    std::optional<long> tj = coordBound(a, j, b.jLo, b.jHi);
    std::optional<long> tn = coordBound(bb, n, b.nLo, b.nHi);
    long T;
    if (tj && tn)
        T = std::min(*tj, *tn);
    else
        T = tj ? *tj : *tn;
    Int sum = 0;
    for (long t = 0; t <= T; ++t)
        sum += evalThroughDens(f, table, b, j - a * m * t, n - bb * m * t, dens, idx + 1);
    return -sum;
}

BiPoly polyForGenerator(const InvariantFamily& f, const RecordPtr& gen) {
    const std::string& name = gen ? gen->name : std::string(InvariantFamily::unitName);
    if (f.kind == InvariantFamily::Kind::BipolyValued) {
        auto it = f.polys.find(name);
        if (it != f.polys.end()) {
            BiPoly p = it->second;
            p.setSig(f.type);
            return p;
        }
        if (!gen) {
            BiPoly one{Int(1)};
            one.setSig(f.type);
            return one;
        }
        throw UnevaluableGeneratorError(f.name, name);
    }
    const GradedTable* t = lookupTable(f, gen);
    if (!t) throw UnevaluableGeneratorError(f.name, name);
    BiPoly p;
    p.setSig(f.type);
    for (const auto& [e, c] : *t) p.addTerm(e, c);
    return p;
}

}  // namespace

Int evaluate(const InvariantFamily& f, const KClass& c, long j, long n) {
    if (f.kind != InvariantFamily::Kind::IntegerGraded)
        throw Error("evaluate() needs an integer-graded family; '" + f.name +
                    "' is polynomial-valued (use its generating function)");
    const auto [a, b] = f.type;
    std::vector<long> dens(c.den().begin(), c.den().end());
    Int total = 0;
    for (const auto& t : c.terms()) {
        const GradedTable* table = lookupTable(f, t.gen);
        if (!table) throw UnevaluableGeneratorError(f.name, t.gen->name);
        TableBounds bounds = boundsOf(*table);
        total += t.coeff *
                 evalThroughDens(f, *table, bounds, j - a * t.shift, n - b * t.shift, dens, 0);
    }
    return total;
}

BiRational phi_polynomial(const InvariantFamily& f, const KClass& c) {
    const auto [a, b] = f.type;
    if (a == 0 && b == 0 && !c.den().empty())
        throw DivergenceError("family '" + f.name + "' of type (0,0) cannot absorb denominators");
    BiPoly num;
    num.setSig(f.type);
    for (const auto& t : c.terms()) {
        BiPoly p = polyForGenerator(f, t.gen);
        num += (p * t.coeff).shifted({a * t.shift, b * t.shift});
    }
    std::vector<Exp2> factors;
    for (long m : c.den()) factors.push_back({a * m, b * m});
    BiRational r = BiRational::make(std::move(num), factors, 1);
    r.setSig(f.type);
    return r;
}

CheckReport gsca_symmetry_check(const InvariantFamily& f, const BiRational& x, long d) {
    const auto [a, b] = f.type;
    CheckReport rep;
    rep.residual = x - x.swapped().timesMonomial({a * d, b * d});
    rep.ok = rep.residual.isZero();
    return rep;
}

CheckReport mirror_check(const InvariantFamily& f, const BiRational& phiV, const BiRational& phiW,
                         long n) {
    const auto [a, b] = f.type;
    (void)b;
    Int sign = (n % 2 == 0) ? Int(1) : Int(-1);
    CheckReport rep;
    rep.residual = phiV - phiW.swappedU().timesMonomial({a * n, 0}, sign);
    rep.ok = rep.residual.isZero();
    return rep;
}

std::vector<InvariantFamily> define_builtin_families(const VarietyDb& db) {
    InvariantFamily E{"E", {1, 1}, InvariantFamily::Kind::BipolyValued, {}, {}};
    InvariantFamily e{"e", {1, 1}, InvariantFamily::Kind::IntegerGraded, {}, {}};
    InvariantFamily h{"h", {1, 1}, InvariantFamily::Kind::IntegerGraded, {}, {}};
    InvariantFamily T{"T", {1, 2}, InvariantFamily::Kind::IntegerGraded, {}, {}};
    InvariantFamily G{"G", {1, 2}, InvariantFamily::Kind::IntegerGraded, {}, {}};
    InvariantFamily F{"F", {1, 2}, InvariantFamily::Kind::IntegerGraded, {}, {}};

    for (const auto& [name, rec] : db.records()) {
        for (const auto& [fam, table] : rec->tables) {
            if (fam == "e") e.tables[name] = table;
            if (fam == "h") h.tables[name] = table;
            if (fam == "T") T.tables[name] = table;
            if (fam == "G") G.tables[name] = table;
            if (fam == "F") F.tables[name] = table;
        }
        auto ep = rec->polys.find("E");
        if (ep != rec->polys.end()) {
            E.polys[name] = ep->second;
            if (!rec->tables.count("e")) {
                GradedTable t;
                for (const auto& [exp, c] : ep->second.coeffs()) t[exp] = c;
                e.tables[name] = std::move(t);
            }
        } else if (rec->tables.count("e")) {
            BiPoly p;
            for (const auto& [exp, c] : rec->tables.at("e")) p.addTerm(exp, c);
            E.polys[name] = std::move(p);
        }
    }

    std::vector<InvariantFamily> out;
    for (auto& f : {E, e, h, T, G, F})
        if (!f.tables.empty() || !f.polys.empty()) out.push_back(f);
    return out;
}

void validate_family(const InvariantFamily& f, const VarietyDb& db,
                     const std::vector<BlowupDecl>& blowups) {
    auto dimOf = [&](const std::string& name) -> std::optional<long> {
        auto rec = db.find(name);
        if (rec) return rec->dimension;
        if (name == InvariantFamily::unitName) return 0;
        return std::nullopt;
    };
    for (const auto& [gen, table] : f.tables) {
        auto dim = dimOf(gen);
        for (const auto& [e, c] : table) {
            if (c == 0) continue;
            if (e.first < 0 || e.second < 0)
                throw MalformedRecordError("family '" + f.name + "': generator '" + gen +
                                           "' has a value at negative index (" +
                                           std::to_string(e.first) + "," + std::to_string(e.second) + ")");
            if (dim && (e.first > 2 * *dim || e.second > 2 * *dim))
                throw MalformedRecordError("family '" + f.name + "': generator '" + gen +
                                           "' has table bounds exceeding 2*dimension");
        }
    }
    for (const auto& [gen, poly] : f.polys) {
        auto dim = dimOf(gen);
        if (!dim) continue;
        for (const auto& [e, c] : poly.coeffs())
            if (c != 0 && (e.first > 2 * *dim || e.second > 2 * *dim))
                throw MalformedRecordError("family '" + f.name + "': generator '" + gen +
                                           "' has polynomial degree exceeding 2*dimension");
    }
    // Blow-up compatibility: f(Bl) - f(E) = f(X) - f(Y), index by index.
    // A declaration is only checkable when the family carries data for all
    // four records.
    for (const auto& blow : blowups) {
        bool evaluable = true;
        for (const auto& name : {blow.bl, blow.ex, blow.base, blow.center}) {
            bool has = f.kind == InvariantFamily::Kind::BipolyValued ? f.polys.count(name) > 0
                                                                     : f.tables.count(name) > 0;
            if (!has) evaluable = false;
        }
        if (!evaluable) continue;
        KClass lhs = KClass::generator(db.get(blow.bl)) - KClass::generator(db.get(blow.ex));
        KClass rhs = KClass::generator(db.get(blow.base)) - KClass::generator(db.get(blow.center));
        if (f.kind == InvariantFamily::Kind::BipolyValued) {
            if (!(phi_polynomial(f, lhs) == phi_polynomial(f, rhs)))
                throw MalformedRecordError("family '" + f.name +
                                           "' violates the blow-up relation on '" + blow.bl + "'");
            continue;
        }
        // Probe every index where any of the four tables is supported.
        std::set<Exp2> indices;
        for (const auto& name : {blow.bl, blow.ex, blow.base, blow.center})
            for (const auto& [e, c] : f.tables.at(name)) indices.insert(e);
        for (const auto& [j, n] : indices) {
            if (evaluate(f, lhs, j, n) != evaluate(f, rhs, j, n))
                throw MalformedRecordError("family '" + f.name +
                                           "' violates the blow-up relation on '" + blow.bl +
                                           "' at (" + std::to_string(j) + "," + std::to_string(n) + ")");
        }
    }
}

}  // namespace motivic
