#include <doctest.h>

#include "helpers.hpp"
#include "motivic/lring.hpp"

using namespace motivic;

namespace {

// Independent division oracle: classical long division over Q after
// shifting Laurent polynomials into ordinary ones.
std::optional<LefschetzPoly> oracleDivide(const LefschetzPoly& f, const LefschetzPoly& g) {
    if (g.isZero()) return std::nullopt;
    if (f.isZero()) return LefschetzPoly();
    long shiftF = f.lowDegree(), shiftG = g.lowDegree();
    std::vector<Rat> a(f.degree() - shiftF + 1, Rat(0));
    std::vector<Rat> b(g.degree() - shiftG + 1, Rat(0));
    for (const auto& [d, c] : f.coeffs()) a[d - shiftF] = Rat(c);
    for (const auto& [d, c] : g.coeffs()) b[d - shiftG] = Rat(c);
    if (a.size() < b.size()) return std::nullopt;
    std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        Rat lead = a[i + b.size() - 1] / b.back();
        q[i] = lead;
        for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= lead * b[j];
    }
    for (const Rat& r : a)
        if (r != 0) return std::nullopt;
    LefschetzPoly out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i].canonicalize();
        if (q[i].get_den() != 1) return std::nullopt;
        out.addTerm(static_cast<long>(i) + shiftF - shiftG, Int(q[i].get_num()));
    }
    return out;
}

LefschetzPoly L(long d, long c = 1) { return LefschetzPoly::monomial(d, Int(c)); }

}  // namespace

TEST_SUITE("lring") {
    TEST_CASE("arith: inverse pair collapses") {
        LefschetzRational lMinus1{LefschetzPoly::cyclo(1)};
        auto prod = lring_arith(lMinus1, LefschetzRational::inverseFactor(1), ArithOp::mul);
        CHECK(prod == LefschetzRational(Int(1)));
        CHECK(prod.isPolynomial());
        CHECK(prod.str() == "1");
    }

    TEST_CASE("arith: (1+L) + (1-L) = 2") {
        LefschetzRational a{LefschetzPoly(Int(1)) + L(1)};
        LefschetzRational b{LefschetzPoly(Int(1)) - L(1)};
        CHECK(lring_arith(a, b, ArithOp::add) == LefschetzRational(Int(2)));
    }

    TEST_CASE("arith: (L^2-1)/(L-1) reduces to L+1, matching the division oracle") {
        LefschetzRational x(LefschetzPoly::cyclo(2), {1});
        CHECK(x.isPolynomial());
        auto expect = oracleDivide(LefschetzPoly::cyclo(2), LefschetzPoly::cyclo(1));
        REQUIRE(expect.has_value());
        CHECK(x.num() == *expect);
        CHECK(x.str() == "L + 1");
    }

    TEST_CASE("division oracle agrees with dividedBy on random products") {
        std::mt19937 rng(11);
        int checked = 0;
        for (int i = 0; i < 200; ++i) {
            LefschetzPoly f = test::randomPoly(rng), g = test::randomPoly(rng);
            if (g.isZero()) continue;
            LefschetzPoly prod = f * g;
            auto mine = prod.dividedBy(g);
            auto oracle = oracleDivide(prod, g);
            REQUIRE(mine.has_value());
            REQUIRE(oracle.has_value());
            CHECK(*mine == *oracle);
            CHECK(*mine == f);
            ++checked;
        }
        CHECK(checked > 100);
    }

    TEST_CASE("filtration index") {
        CHECK(LefschetzRational(LefschetzPoly(Int(1)) + L(2)).filtrationIndex() == -2);
        CHECK(LefschetzRational(L(-3)).filtrationIndex() == 3);
        CHECK(LefschetzRational::inverseFactor(1).filtrationIndex() == 1);
        CHECK_THROWS_AS(LefschetzRational().filtrationIndex(), NormUndefinedError);
    }

    TEST_CASE("norm") {
        CHECK(LefschetzRational().norm() == Norm::zeroNorm());
        CHECK(LefschetzRational(L(-3)).norm() == Norm::dyadic(3));
        CHECK(LefschetzRational(L(-3)).norm().toRational() == Rat(1, 8));
        Norm n = LefschetzRational(LefschetzPoly(Int(1)) + L(2)).norm();
        CHECK(n == Norm::dyadic(-2));
        CHECK(n.toRational() == Rat(4));
    }

    TEST_CASE("laurent expansion at both ends") {
        auto inv = LefschetzRational::inverseFactor(1);
        LefschetzPoly zero3 = inv.laurentExpand(ExpandDir::atZero, 3);
        LefschetzPoly want;
        for (long d = 0; d <= 3; ++d) want.addTerm(d, Int(-1));
        CHECK(zero3 == want);

        LefschetzPoly inf3 = inv.laurentExpand(ExpandDir::atInfinity, 3);
        LefschetzPoly want2;
        for (long d = 1; d <= 3; ++d) want2.addTerm(-d, Int(1));
        CHECK(inf3 == want2);

        LefschetzRational poly{L(2)};
        CHECK(poly.laurentExpand(ExpandDir::atZero, 0) == L(2));
        CHECK(poly.laurentExpand(ExpandDir::atInfinity, 7) == L(2));
    }

    TEST_CASE("expansion consistency: remainder vanishes through the valid range") {
        std::mt19937 rng(23);
        for (int i = 0; i < 120; ++i) {
            LefschetzRational x = test::randomRational(rng);
            if (x.isZero()) continue;
            const long order = 6;
            long denSum = 0;
            for (long m : x.den()) denSum += m;

            LefschetzPoly eZero = x.laurentExpand(ExpandDir::atZero, order);
            LefschetzPoly remZero = x.num() - eZero * x.denPoly();
            for (const auto& [d, c] : remZero.coeffs()) CHECK(d > order);

            LefschetzPoly eInf = x.laurentExpand(ExpandDir::atInfinity, order);
            LefschetzPoly remInf = x.num() - eInf * x.denPoly();
            for (const auto& [d, c] : remInf.coeffs()) CHECK(d < -order + denSum);
        }
    }

    TEST_CASE("ultrametric norm inequality (property)") {
        std::mt19937 rng(5);
        for (int i = 0; i < 1000; ++i) {
            LefschetzRational x = test::randomRational(rng), y = test::randomRational(rng);
            Norm lhs = (x + y).norm();
            Norm mx = x.norm(), my = y.norm();
            CHECK(lhs <= (mx <= my ? my : mx));
        }
    }

    TEST_CASE("ring laws on random inputs") {
        std::mt19937 rng(7);
        for (int i = 0; i < 60; ++i) {
            LefschetzRational x = test::randomRational(rng), y = test::randomRational(rng),
                              z = test::randomRational(rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK(x + y == y + x);
            CHECK(x * y == y * x);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
        }
    }

    TEST_CASE("canonical form: no denominator factor divides the numerator") {
        std::mt19937 rng(13);
        for (int i = 0; i < 80; ++i) {
            LefschetzRational x = test::randomRational(rng);
            for (long m : x.den())
                CHECK_FALSE(x.num().dividedBy(LefschetzPoly::cyclo(m)).has_value());
            // Normalizing twice changes nothing.
            LefschetzRational again(x.num(), x.den());
            CHECK(again.num() == x.num());
            CHECK(again.den() == x.den());
        }
    }

    TEST_CASE("equality agrees with cross-multiplied identity") {
        std::mt19937 rng(17);
        for (int i = 0; i < 80; ++i) {
            LefschetzRational x = test::randomRational(rng), y = test::randomRational(rng);
            bool crossEq = (x.num() * y.denPoly()) == (y.num() * x.denPoly());
            CHECK((x == y) == crossEq);
            // Multiplying numerator and denominator by the same factor is invisible.
            std::multiset<long> den = x.den();
            den.insert(2);
            LefschetzRational inflated(x.num() * LefschetzPoly::cyclo(2), den);
            CHECK(inflated == x);
        }
    }

    TEST_CASE("rendering round-trips through descending-degree text") {
        CHECK(LefschetzRational(LefschetzPoly(Int(1)) + L(1) + L(2)).str() == "L^2 + L + 1");
        CHECK(LefschetzRational(L(-1) + L(-2)).str() == "L^-1 + L^-2");
        CHECK(LefschetzRational(LefschetzPoly(Int(-1)) + L(3, -2)).str() == "-2*L^3 - 1");
        CHECK(LefschetzRational::inverseFactor(2).str() == "(1) * inv(L^2 - 1)");
    }
}
