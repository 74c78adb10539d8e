#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "motivic/toric.hpp"

using namespace motivic;
using lattice::QVec;
using lattice::Vec;

namespace {

Vec ray(std::initializer_list<long> xs) {
    Vec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

Fan p2Fan() {
    Fan f;
    f.rank = 2;
    f.rays = {ray({1, 0}), ray({0, 1}), ray({-1, -1})};
    f.cones = {{0, 1}, {1, 2}, {2, 0}};
    f.complete = true;
    return fan_validate(std::move(f));
}

Fan p1Fan() {
    Fan f;
    f.rank = 1;
    f.rays = {ray({1}), ray({-1})};
    f.cones = {{0}, {1}};
    f.complete = true;
    return fan_validate(std::move(f));
}

Fan p112Fan() {
    Fan f;
    f.rank = 2;
    f.rays = {ray({1, 0}), ray({0, 1}), ray({-1, -2})};
    f.cones = {{0, 1}, {1, 2}, {2, 0}};
    f.complete = true;
    return fan_validate(std::move(f));
}

Fan p1xp1Fan() {
    Fan f;
    f.rank = 2;
    f.rays = {ray({1, 0}), ray({0, 1}), ray({-1, 0}), ray({0, -1})};
    f.cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    f.complete = true;
    return fan_validate(std::move(f));
}

Fan p1113Fan() {
    Fan f;
    f.rank = 3;
    f.rays = {ray({1, 0, 0}), ray({0, 1, 0}), ray({0, 0, 1}), ray({-1, -1, -3})};
    f.cones = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    f.complete = true;
    return fan_validate(std::move(f));
}

Fan a1AffineFan() {
    Fan f;
    f.rank = 2;
    f.rays = {ray({1, 0}), ray({1, 2})};
    f.cones = {{0, 1}};
    return fan_validate(std::move(f));
}

// Brute-force oracle: weights of lattice points in the open simplicial
// cone with phi(n) <= maxW, found by scanning the bounding box and
// solving for barycentric coordinates.
std::map<Rat, Int> bruteOpenCone(const std::vector<Vec>& rays, const QVec& fn, long maxW) {
    const std::size_t n = rays[0].size(), k = rays.size();
    std::vector<long> lo(n, 0), hi(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        long span = 0;
        for (const auto& r : rays) span += static_cast<long>(labs(r[j].get_si()));
        lo[j] = -span * maxW;
        hi[j] = span * maxW;
    }
    std::map<Rat, Int> out;
    Vec x(n, Int(0));
    std::vector<long> cur(n);
    for (std::size_t j = 0; j < n; ++j) cur[j] = lo[j];
    while (true) {
        for (std::size_t j = 0; j < n; ++j) x[j] = cur[j];
        lattice::QMat a(n, QVec(k, Rat(0)));
        QVec b(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) a[i][j] = Rat(rays[j][i]);
            b[i] = Rat(x[i]);
        }
        auto sol = lattice::solveQ(a, b);
        if (sol) {
            bool interior = true;
            for (const Rat& l : *sol)
                if (l <= 0) interior = false;
            if (interior) {
                Rat w = lattice::dot(fn, x);
                if (w <= maxW && w >= 0) out[w] += 1;
            }
        }
        std::size_t j = 0;
        while (j < n) {
            if (++cur[j] <= hi[j]) break;
            cur[j] = lo[j];
            ++j;
        }
        if (j == n) break;
    }
    return out;
}

// Expansion of a ConeGenFun as weight -> coefficient, through maxW.
std::map<Rat, Int> genfunSeries(const ConeGenFun& g, long maxW) {
    LefschetzPoly p = g.value.laurentExpand(ExpandDir::atZero, maxW * g.root);
    std::map<Rat, Int> out;
    for (const auto& [d, c] : p.coeffs()) {
        if (d > maxW * g.root) continue;
        Rat w(d, g.root);
        w.canonicalize();
        out[w] += c;
    }
    return out;
}

}  // namespace

TEST_SUITE("toric") {
    TEST_CASE("fan validation: P^2 face closure") {
        Fan f = p2Fan();
        CHECK(f.cones.size() == 7);  // zero cone + 3 rays + 3 maximal
        CHECK(f.warnings.empty());
    }

    TEST_CASE("fan validation: non-primitive rays are normalized with a warning") {
        Fan f;
        f.rank = 2;
        f.rays = {ray({2, 0}), ray({0, 1})};
        f.cones = {{0, 1}};
        Fan v = fan_validate(std::move(f));
        CHECK(v.rays[0] == ray({1, 0}));
        REQUIRE_FALSE(v.warnings.empty());
        CHECK(v.warnings[0].find("primitive") != std::string::npos);
    }

    TEST_CASE("fan validation: a cone containing v and -v is rejected") {
        Fan f;
        f.rank = 2;
        f.rays = {ray({1, 0}), ray({-1, 0})};
        f.cones = {{0, 1}};
        CHECK_THROWS_AS(fan_validate(std::move(f)), InvalidFanError);
    }

    TEST_CASE("fan validation: completeness assertion is spot-checked") {
        Fan f;
        f.rank = 2;
        f.rays = {ray({1, 0}), ray({0, 1})};
        f.cones = {{0, 1}};
        f.complete = true;  // wrong: covers only one quadrant
        CHECK_THROWS_AS(fan_validate(std::move(f)), InvalidFanError);
    }

    TEST_CASE("cone counts") {
        CHECK(cone_counts(p2Fan()) == std::vector<long>{1, 3, 3});
        CHECK(cone_counts(p1Fan()) == std::vector<long>{1, 2});
        CHECK(cone_counts(p112Fan()) == std::vector<long>{1, 3, 3});
        CHECK(cone_counts(p1113Fan()) == std::vector<long>{1, 4, 6, 4});
    }

    TEST_CASE("toric Hodge numbers") {
        Fan p2 = p2Fan();
        CHECK(toric_hodge(p2, 1, 1) == 1);
        CHECK(toric_hodge(p2, 0, 0) == 1);
        CHECK(toric_hodge(p2, 2, 2) == 1);
        CHECK(toric_hodge(p2, 0, 1) == 0);
        CHECK(toric_hodge(p2, 3, 3) == 0);
        CHECK(toric_hodge(p1Fan(), 0, 0) == 1);
    }

    TEST_CASE("toric E-polynomials") {
        CHECK(toric_epoly(p2Fan()) == parse_bipoly("1 + uv + (uv)^2"));
        CHECK(toric_epoly(p1Fan()) == parse_bipoly("1 + uv"));
        CHECK(toric_epoly(p112Fan()) == parse_bipoly("1 + uv + (uv)^2"));
    }

    TEST_CASE("Q-Gorenstein support solve") {
        Fan f;
        f.rank = 2;
        f.rays = {ray({1, 0}), ray({0, 1})};
        f.cones = {{0, 1}};
        Fan v = fan_validate(std::move(f));
        auto s = support_from_qgorenstein(v);
        CHECK(s.perCone.at({0, 1}) == QVec{Rat(1), Rat(1)});

        Fan a1 = a1AffineFan();
        auto s2 = support_from_qgorenstein(a1);
        CHECK(s2.perCone.at({0, 1}) == QVec{Rat(1), Rat(0)});
        for (const auto& [cone, fn] : s2.perCone)
            for (int i : cone) CHECK(lattice::dot(fn, a1.rays[i]) == 1);
    }

    TEST_CASE("cone generating functions: closed forms") {
        Fan a1 = a1AffineFan();
        auto s = support_from_qgorenstein(a1);
        CHECK(cone_genfun(a1, {}, s).value == LefschetzRational(Int(1)));
        // Single ray: t/(1-t) = -t/(t-1).
        auto rayFun = cone_genfun(a1, {0}, s);
        CHECK(rayFun.value == LefschetzRational(LefschetzPoly::monomial(1, Int(-1)), {1}));
        // Full A_1 cone: (t + t^2)/(1-t)^2 with the box point at weight 1.
        auto full = cone_genfun(a1, {0, 1}, s);
        LefschetzPoly num = LefschetzPoly::monomial(1) + LefschetzPoly::monomial(2);
        CHECK(full.value == LefschetzRational(num, {1, 1}));
        CHECK(full.root == 1);
    }

    TEST_CASE("A_1 cone generating function matches brute force through t^12") {
        Fan a1 = a1AffineFan();
        auto s = support_from_qgorenstein(a1);
        auto g = cone_genfun(a1, {0, 1}, s);
        auto series = genfunSeries(g, 12);
        auto brute = bruteOpenCone({a1.rays[0], a1.rays[1]}, s.perCone.at({0, 1}), 12);
        CHECK(series == brute);
    }

    TEST_CASE("cone oracle: random simplicial cones, every coefficient") {
        std::mt19937 rng(101);
        std::uniform_int_distribution<long> entry(-4, 4);
        std::uniform_int_distribution<int> rankDist(1, 3);
        int done = 0;
        while (done < 40) {
            int n = rankDist(rng);
            std::uniform_int_distribution<int> kDist(1, n);
            int k = kDist(rng);
            std::vector<Vec> rays;
            for (int i = 0; i < k; ++i) {
                Vec v;
                bool zero = true;
                for (int j = 0; j < n; ++j) {
                    long e = entry(rng);
                    v.push_back(Int(e));
                    if (e) zero = false;
                }
                if (zero) v[0] = 1;
                Int g = 0;
                for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
                for (auto& c : v) c /= g;
                rays.push_back(std::move(v));
            }
            // Independence and determinant bound.
            lattice::QMat m;
            for (const auto& r : rays) {
                QVec row;
                for (const auto& c : r) row.push_back(Rat(c));
                m.push_back(row);
            }
            if (lattice::rankQ(m) != k) continue;
            Int det;
            try {
                det = lattice::boxPoints(rays, Int(50)).index;
            } catch (const BoxLimitError&) {
                continue;
            }
            Fan f;
            f.rank = n;
            f.rays = rays;
            ConeKey key;
            for (int i = 0; i < k; ++i) key.insert(i);
            f.cones = {key};
            Fan v = fan_validate(std::move(f));
            auto s = support_from_qgorenstein(v);
            auto g = cone_genfun(v, key, s);
            long maxW = 8;
            CHECK(genfunSeries(g, maxW) == bruteOpenCone(rays, s.perCone.at(key), maxW));
            ++done;
        }
    }

    TEST_CASE("non-simplicial cone over a square") {
        Fan f;
        f.rank = 3;
        f.rays = {ray({1, 0, 1}), ray({0, 1, 1}), ray({-1, 0, 1}), ray({0, -1, 1})};
        f.cones = {{0, 1, 2, 3}};
        Fan v = fan_validate(std::move(f));
        // Faces: zero cone, 4 rays, 4 adjacent 2-faces, the cone itself.
        CHECK(v.cones.size() == 10);
        auto s = support_from_qgorenstein(v);
        CHECK(s.perCone.at({0, 1, 2, 3}) == QVec{Rat(0), Rat(0), Rat(1)});
        auto g = cone_genfun(v, {0, 1, 2, 3}, s);
        auto series = genfunSeries(g, 8);
        // Interior points at height z form the open diamond |x|+|y| < z,
        // which holds 2z^2 - 2z + 1 lattice points.
        for (long z = 1; z <= 8; ++z) CHECK(series[Rat(z)] == Int(2 * z * z - 2 * z + 1));
        CHECK(series.count(Rat(0)) == 0);
    }

    TEST_CASE("interior rays do not change the lattice sum") {
        Fan f;
        f.rank = 2;
        f.rays = {ray({1, 0}), ray({1, 2}), ray({1, 1})};
        f.cones = {{0, 1, 2}};
        Fan v = fan_validate(std::move(f));
        auto s = support_from_qgorenstein(v);
        auto withInterior = cone_genfun(v, {0, 1, 2}, s);
        Fan plain = a1AffineFan();
        auto s2 = support_from_qgorenstein(plain);
        auto without = cone_genfun(plain, {0, 1}, s2);
        CHECK(withInterior.value == without.value);
    }

    TEST_CASE("stringy E: smooth affine line") {
        Fan f;
        f.rank = 1;
        f.rays = {ray({1})};
        f.cones = {{0}};
        Fan v = fan_validate(std::move(f));
        auto s = support_from_qgorenstein(v);
        CHECK(toric_stringy_e(v, s) == BiRational(parse_bipoly("uv")));
    }

    TEST_CASE("stringy E: affine A_1 cone and P(1,1,2)") {
        Fan a1 = a1AffineFan();
        CHECK(toric_stringy_e(a1, support_from_qgorenstein(a1)) ==
              BiRational(parse_bipoly("uv + (uv)^2")));
        Fan p112 = p112Fan();
        CHECK(toric_stringy_e(p112, support_from_qgorenstein(p112)) ==
              BiRational(parse_bipoly("1 + 2uv + (uv)^2")));
    }

    TEST_CASE("smooth complete fans collapse to the E-polynomial") {
        for (const Fan& f : {p1Fan(), p2Fan(), p1xp1Fan()}) {
            auto s = support_from_qgorenstein(f);
            CHECK(toric_stringy_e(f, s) == BiRational(toric_epoly(f)));
        }
    }

    TEST_CASE("d-vector consistency and Betti sanity") {
        for (const Fan& f : {p1Fan(), p2Fan(), p1xp1Fan()}) {
            auto d = cone_counts(f);
            long total = 0;
            for (long k : d) total += k;
            CHECK(total == static_cast<long>(f.cones.size()));
            CHECK(d[0] == 1);
            BiPoly e = toric_epoly(f);
            for (long p = 0; p <= f.rank; ++p) CHECK(toric_hodge(f, p, p) == e.coeff({p, p}));
        }
    }

    TEST_CASE("stringy symmetry holds on the complete Q-Gorenstein fixtures") {
        InvariantFamily E;
        E.name = "E";
        E.type = {1, 1};
        E.kind = InvariantFamily::Kind::BipolyValued;
        for (const Fan& f : {p1Fan(), p2Fan(), p1xp1Fan(), p112Fan(), p1113Fan()}) {
            auto rep = toric_symmetry_check(f, support_from_qgorenstein(f), E);
            CHECK(rep.ok);
        }
    }

    TEST_CASE("complete fan with non-simplicial maximal cones: the cube fan") {
        Fan f;
        f.rank = 3;
        for (long sx : {1, -1})
            for (long sy : {1, -1})
                for (long sz : {1, -1}) f.rays.push_back(ray({sx, sy, sz}));
        // One maximal cone per cube face (rays sharing a coordinate sign).
        for (int axis = 0; axis < 3; ++axis)
            for (long sign : {1, -1}) {
                ConeKey cone;
                for (int i = 0; i < 8; ++i)
                    if (f.rays[i][axis] == sign) cone.insert(i);
                f.cones.push_back(std::move(cone));
            }
        f.complete = true;
        Fan v = fan_validate(std::move(f));
        CHECK(cone_counts(v) == std::vector<long>{1, 8, 12, 6});
        BiPoly e = toric_epoly(v);
        CHECK(e.coeff({1, 1}) == -1);  // singular: orbit counts go negative
        Int euler = 0;
        for (const auto& [exp, c] : e.coeffs()) euler += c;
        CHECK(euler == 6);
        auto s = support_from_qgorenstein(v);
        InvariantFamily E;
        E.name = "E";
        E.type = {1, 1};
        E.kind = InvariantFamily::Kind::BipolyValued;
        auto rep = toric_symmetry_check(v, s, E);
        CHECK(rep.ok);
    }

    TEST_CASE("weighted projective space P(1,1,1,3) has the point-like Hodge diagonal") {
        Fan f = p1113Fan();
        for (long p = 0; p <= 3; ++p)
            for (long q = 0; q <= 3; ++q) CHECK(toric_hodge(f, p, q) == (p == q ? 1 : 0));
    }

    TEST_CASE("symmetry check refuses incomplete fans") {
        InvariantFamily E;
        E.name = "E";
        E.type = {1, 1};
        E.kind = InvariantFamily::Kind::BipolyValued;
        Fan a1 = a1AffineFan();
        CHECK_THROWS_AS(toric_symmetry_check(a1, support_from_qgorenstein(a1), E), SetupError);
    }

    TEST_CASE("a type (1,2) family substitutes u v^2 for L") {
        InvariantFamily G;
        G.name = "G";
        G.type = {1, 2};
        G.kind = InvariantFamily::Kind::IntegerGraded;
        Fan p1 = p1Fan();
        auto s = support_from_qgorenstein(p1);
        BiRational v = toric_stringy_e(p1, s, G.type);
        BiPoly want = BiPoly(Int(1)) + BiPoly::monomial({1, 2});
        CHECK(v == BiRational(want));
        CHECK(toric_symmetry_check(p1, s, G).ok);
    }
}
