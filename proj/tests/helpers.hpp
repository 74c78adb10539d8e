#ifndef MOTIVIC_TEST_HELPERS_HPP
#define MOTIVIC_TEST_HELPERS_HPP

#include <random>

#include "motivic/bipoly.hpp"
#include "motivic/invariants.hpp"
#include "motivic/kgroup.hpp"
#include "motivic/lring.hpp"

namespace motivic::test {

inline LefschetzPoly randomPoly(std::mt19937& rng, int maxTerms = 4, long degSpan = 4) {
    std::uniform_int_distribution<int> nTerms(0, maxTerms);
    std::uniform_int_distribution<long> deg(-degSpan, degSpan);
    std::uniform_int_distribution<long> coeff(-5, 5);
    LefschetzPoly p;
    int n = nTerms(rng);
    for (int i = 0; i < n; ++i) p.addTerm(deg(rng), Int(coeff(rng)));
    return p;
}

inline LefschetzRational randomRational(std::mt19937& rng) {
    std::uniform_int_distribution<int> nDen(0, 2);
    std::uniform_int_distribution<long> factor(1, 3);
    std::multiset<long> den;
    int n = nDen(rng);
    for (int i = 0; i < n; ++i) den.insert(factor(rng));
    return LefschetzRational(randomPoly(rng), den);
}

inline BiPoly randomBiPoly(std::mt19937& rng, int maxTerms = 4, long span = 3) {
    std::uniform_int_distribution<int> nTerms(0, maxTerms);
    std::uniform_int_distribution<long> exp(-span, span);
    std::uniform_int_distribution<long> coeff(-4, 4);
    BiPoly p;
    int n = nTerms(rng);
    for (int i = 0; i < n; ++i) p.addTerm({exp(rng), exp(rng)}, Int(coeff(rng)));
    return p;
}

inline RecordPtr makeRecord(VarietyDb& db, const std::string& name, long dim, bool sp,
                            const std::string& epoly = "") {
    VarietyRecord r;
    r.name = name;
    r.dimension = dim;
    r.smoothProjective = sp;
    if (!epoly.empty()) r.polys["E"] = parse_bipoly(epoly);
    return db.add(std::move(r));
}

/// Standard test database: pt, P1, P2, and the affine/torus pieces with
/// compactification data.
struct TestDb {
    VarietyDb db;
    RecordPtr pt, p1, p2, a1, a2, cstar;

    TestDb() {
        pt = makeRecord(db, "pt", 0, true, "1");
        p1 = makeRecord(db, "P1", 1, true, "1 + uv");
        p2 = makeRecord(db, "P2", 2, true, "1 + uv + (uv)^2");
        VarietyRecord r;
        r.name = "A1";
        r.dimension = 1;
        r.smoothProjective = false;
        r.polys["E"] = parse_bipoly("uv");
        r.compactification = VarietyRecord::Compactification{"P1", parse_class_expr("[pt]")};
        a1 = db.add(std::move(r));
        VarietyRecord r2;
        r2.name = "A2";
        r2.dimension = 2;
        r2.smoothProjective = false;
        r2.polys["E"] = parse_bipoly("(uv)^2");
        r2.compactification = VarietyRecord::Compactification{"P2", parse_class_expr("[P1]")};
        a2 = db.add(std::move(r2));
        VarietyRecord r3;
        r3.name = "Cstar";
        r3.dimension = 1;
        r3.smoothProjective = false;
        r3.polys["E"] = parse_bipoly("uv - 1");
        r3.compactification = VarietyRecord::Compactification{"P1", parse_class_expr("2*[pt]")};
        cstar = db.add(std::move(r3));
    }

    InvariantFamily efamily() const {
        for (auto& f : define_builtin_families(db))
            if (f.name == "E") return f;
        throw Error("no E data in test db");
    }
};

}  // namespace motivic::test

#endif
