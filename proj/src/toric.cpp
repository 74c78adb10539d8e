#include "motivic/toric.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace motivic {

using lattice::QMat;
using lattice::QVec;
using lattice::Vec;

namespace {

std::string vecStr(const Vec& v) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].get_str();
    out << ")";
    return out.str();
}

std::string coneStr(const ConeKey& c) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (int i : c) {
        if (!first) out << ",";
        out << i;
        first = false;
    }
    out << "}";
    return out.str();
}

std::vector<Vec> pickRays(const std::vector<Vec>& rays, const ConeKey& S) {
    std::vector<Vec> out;
    out.reserve(S.size());
    for (int i : S) out.push_back(rays[i]);
    return out;
}

bool raysIndependent(const std::vector<Vec>& picked) {
    if (picked.empty()) return true;
    QMat m;
    for (const auto& r : picked) {
        QVec row;
        for (const auto& x : r) row.push_back(Rat(x));
        m.push_back(std::move(row));
    }
    return lattice::rankQ(std::move(m)) == static_cast<long>(picked.size());
}

// A cone spanned by rays contains a line iff some subset of at most
// dim+1 rays carries a one-dimensional dependence with coefficients all
// of one sign (a positive circuit).
bool containsLine(const std::vector<Vec>& rays, const ConeKey& S, long rank) {
    std::vector<int> idx(S.begin(), S.end());
    const std::size_t m = idx.size();
    const std::size_t maxSize = std::min<std::size_t>(m, static_cast<std::size_t>(rank) + 1);
    for (std::size_t size = 2; size <= maxSize; ++size) {
        std::vector<std::size_t> comb(size);
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            std::vector<Vec> picked;
            for (std::size_t c : comb) picked.push_back(rays[idx[c]]);
            auto kernel = lattice::kernelOfColumns(picked);
            if (kernel.size() == 1) {
                bool pos = true, neg = true;
                for (const Rat& l : kernel[0]) {
                    if (l < 0) pos = false;
                    if (l > 0) neg = false;
                }
                if (pos || neg) return true;
            }
            // next combination
            std::size_t i = size;
            while (i > 0 && comb[i - 1] == m - size + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace

namespace toricdetail {

long coneDim(const std::vector<Vec>& rays, const ConeKey& S) {
    if (S.empty()) return 0;
    QMat m;
    for (int i : S) {
        QVec row;
        for (const auto& x : rays[i]) row.push_back(Rat(x));
        m.push_back(std::move(row));
    }
    return lattice::rankQ(std::move(m));
}

std::set<ConeKey> coneFaces(const std::vector<Vec>& rays, const ConeKey& S) {
    std::set<ConeKey> faces;
    faces.insert(S);
    faces.insert(ConeKey{});
    long d = coneDim(rays, S);
    if (d == 0) return faces;

    // Span basis of the cone from its own rays (greedy by rank growth).
    std::vector<int> idx(S.begin(), S.end());
    std::vector<Vec> spanBasis;
    for (int i : idx) {
        std::vector<Vec> trial = spanBasis;
        trial.push_back(rays[i]);
        if (raysIndependent(trial)) spanBasis.push_back(rays[i]);
    }

    // Facet normals h = sum mu_i b_i with h . t = 0 on a (d-1)-subset.
    std::set<ConeKey> facets;
    const std::size_t m = idx.size();
    const std::size_t size = static_cast<std::size_t>(d) - 1;
    if (size == 0) return faces;  // dimension 1: only the zero cone below
    std::vector<std::size_t> comb(size);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        // Kernel of the (size x d) system (t . b_i) mu = 0; kernelOfColumns
        // takes columns, so assemble column vectors of length `size`.
        std::vector<Vec> colVecs;
        for (long i = 0; i < d; ++i) {
            Vec col;
            for (std::size_t c = 0; c < size; ++c) {
                const Vec& t = rays[idx[comb[c]]];
                Int s = 0;
                for (std::size_t x = 0; x < t.size(); ++x) s += t[x] * spanBasis[i][x];
                col.push_back(s);
            }
            colVecs.push_back(std::move(col));
        }
        auto kernel = lattice::kernelOfColumns(colVecs);
        if (kernel.size() == 1) {
            // h = sum mu_i b_i; sign pattern over all rays of S.
            const QVec& mu = kernel[0];
            auto eval = [&](const Vec& r) {
                Rat s(0);
                for (long i = 0; i < d; ++i) {
                    Rat bi(0);
                    for (std::size_t x = 0; x < r.size(); ++x) bi += Rat(spanBasis[i][x]) * Rat(r[x]);
                    s += mu[i] * bi;
                }
                return s;
            };
            bool nonneg = true, nonpos = true;
            ConeKey zero;
            for (int i : idx) {
                Rat val = eval(rays[i]);
                if (val > 0) nonpos = false;
                if (val < 0) nonneg = false;
                if (val == 0) zero.insert(i);
            }
            if ((nonneg || nonpos) && zero.size() < S.size()) facets.insert(zero);
        }
        std::size_t i = size;
        while (i > 0 && comb[i - 1] == m - size + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
    for (const auto& facet : facets) {
        auto sub = coneFaces(rays, facet);
        faces.insert(sub.begin(), sub.end());
    }
    return faces;
}

std::vector<ConeKey> triangulate(const std::vector<Vec>& rays, const ConeKey& S) {
    if (raysIndependent(pickRays(rays, S))) return {S};
    const int v = *S.begin();  // lowest ray index
    auto faces = coneFaces(rays, S);
    long d = coneDim(rays, S);
    std::vector<ConeKey> pieces;
    for (const auto& face : faces) {
        if (face == S || face.count(v)) continue;
        if (coneDim(rays, face) != d - 1) continue;  // facets only
        for (auto& piece : triangulate(rays, face)) {
            piece.insert(v);
            pieces.push_back(std::move(piece));
        }
    }
    return pieces;
}

bool coneContains(const std::vector<Vec>& rays, const ConeKey& S, const Vec& x) {
    if (S.empty()) {
        for (const auto& c : x)
            if (c != 0) return false;
        return true;
    }
    for (const auto& piece : triangulate(rays, S)) {
        // Solve sum l_i r_i = x; containment iff consistent with l >= 0.
        std::vector<int> idx(piece.begin(), piece.end());
        const std::size_t n = x.size();
        QMat a(n, QVec(idx.size(), Rat(0)));
        QVec b(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < idx.size(); ++j) a[i][j] = Rat(rays[idx[j]][i]);
            b[i] = Rat(x[i]);
        }
        auto sol = lattice::solveQ(std::move(a), std::move(b));
        if (!sol) continue;
        bool ok = true;
        for (const Rat& l : *sol)
            if (l < 0) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace toricdetail

using toricdetail::coneDim;
using toricdetail::coneFaces;
using toricdetail::triangulate;

Fan fan_validate(Fan f) {
    if (f.rank < 1) throw InvalidFanError("fan rank must be >= 1");
    // Primitivize rays; collapse duplicates introduced by normalization.
    std::vector<int> remap(f.rays.size());
    std::vector<Vec> rays;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        Vec r = f.rays[i];
        if (static_cast<long>(r.size()) != f.rank)
            throw InvalidFanError("ray " + std::to_string(i) + " has wrong dimension");
        Int g = 0;
        for (const auto& c : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 0) throw InvalidFanError("ray " + std::to_string(i) + " is the zero vector");
        if (g != 1) {
            for (auto& c : r) c /= g;
            f.warnings.push_back("ray " + std::to_string(i) + " normalized to primitive " + vecStr(r));
        }
        auto existing = std::find(rays.begin(), rays.end(), r);
        if (existing != rays.end()) {
            remap[i] = static_cast<int>(existing - rays.begin());
            if (static_cast<std::size_t>(remap[i]) != i)
                f.warnings.push_back("ray " + std::to_string(i) + " duplicates ray " +
                                     std::to_string(remap[i]));
        } else {
            remap[i] = static_cast<int>(rays.size());
            rays.push_back(std::move(r));
        }
    }

    std::set<ConeKey> cones;
    cones.insert(ConeKey{});
    for (const auto& cone : f.cones) {
        ConeKey key;
        for (int i : cone) {
            if (i < 0 || static_cast<std::size_t>(i) >= f.rays.size())
                throw InvalidFanError("cone " + coneStr(cone) + " references ray " + std::to_string(i));
            key.insert(remap[i]);
        }
        if (containsLine(rays, key, f.rank))
            throw InvalidFanError("cone " + coneStr(key) + " is not strongly convex (contains a line)");
        auto faces = coneFaces(rays, key);
        cones.insert(faces.begin(), faces.end());
    }

    Fan out;
    out.rank = f.rank;
    out.rays = std::move(rays);
    out.cones.assign(cones.begin(), cones.end());
    out.complete = f.complete;
    out.warnings = std::move(f.warnings);

    if (out.complete && out.rank <= 3) {
        // Coverage heuristic: every sampled point must land in some cone.
        std::uniform_int_distribution<long> coord(-7, 7);
        std::mt19937 gen(97);
        for (int trial = 0; trial < 48; ++trial) {
            Vec x(out.rank, Int(0));
            bool zero = true;
            for (auto& c : x) {
                long v = coord(gen);
                c = v;
                if (v != 0) zero = false;
            }
            if (zero) continue;
            bool covered = false;
            for (const auto& cone : out.cones) {
                if (toricdetail::coneContains(out.rays, cone, x)) {
                    covered = true;
                    break;
                }
            }
            if (!covered)
                throw InvalidFanError("fan asserted complete but point " + vecStr(x) +
                                      " is not covered by any cone");
        }
    }
    return out;
}

std::vector<long> cone_counts(const Fan& f) {
    std::vector<long> d(static_cast<std::size_t>(f.rank) + 1, 0);
    for (const auto& cone : f.cones) {
        long k = coneDim(f.rays, cone);
        if (k > f.rank) throw InvalidFanError("cone of dimension above the fan rank");
        ++d[k];
    }
    return d;
}

Int toric_hodge(const Fan& f, long p, long q) {
    if (p != q || p < 0 || p > f.rank) return 0;
    auto d = cone_counts(f);
    const long m = f.rank;
    Int sum = 0;
    for (long k = p; k <= m; ++k) {
        Int binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(k - p));
        Int term = Int(d[m - k]) * binom;
        if ((k - p) % 2 != 0) term = -term;
        sum += term;
    }
    return sum;
}

BiPoly toric_epoly(const Fan& f) {
    auto d = cone_counts(f);
    const long m = f.rank;
    BiPoly uvMinus1 = BiPoly::binomial({1, 1});
    BiPoly acc;
    BiPoly power{Int(1)};
    for (long k = 0; k <= m; ++k) {
        acc += power * Int(d[m - k]);
        power = power * uvMinus1;
    }
    return acc;
}

const QVec& SupportFunction::functionalFor(const ConeKey& cone) const {
    for (const auto& [key, fn] : perCone)
        if (std::includes(key.begin(), key.end(), cone.begin(), cone.end())) return fn;
    throw Error("no support functional covers cone " + coneStr(cone));
}

Rat SupportFunction::value(const ConeKey& cone, const Vec& point) const {
    return lattice::dot(functionalFor(cone), point);
}

SupportFunction support_from_qgorenstein(const Fan& f) {
    // Maximal cones: not strictly contained in another cone.
    std::vector<ConeKey> maximal;
    for (const auto& c : f.cones) {
        bool isMax = true;
        for (const auto& other : f.cones) {
            if (other.size() <= c.size()) continue;
            if (std::includes(other.begin(), other.end(), c.begin(), c.end())) {
                isMax = false;
                break;
            }
        }
        if (isMax) maximal.push_back(c);
    }
    SupportFunction s;
    for (const auto& cone : maximal) {
        std::vector<int> idx(cone.begin(), cone.end());
        QMat a;
        QVec b;
        for (int i : idx) {
            QVec row;
            for (const auto& x : f.rays[i]) row.push_back(Rat(x));
            a.push_back(std::move(row));
            b.push_back(Rat(1));
        }
        auto sol = lattice::solveQ(std::move(a), std::move(b));
        if (!sol)
            throw NotQGorensteinError("cone " + coneStr(cone) +
                                      " admits no functional with value 1 on its rays");
        s.perCone[cone] = std::move(*sol);
    }
    return s;
}

std::string ConeGenFun::str() const {
    std::string base = value.str("t");
    if (root != 1) base += "  [exponents scaled by 1/" + std::to_string(root) + "]";
    return base;
}

namespace {

// Open generating function of a simplicial cone via box points and
// Stanley reciprocity: sum over interior points of t^{phi(n)} equals
// t^{sum w_i} N(1/t) / prod (1 - t^{w_i}) for the closed-box numerator N.
ConeGenFun simplicialOpenGenFun(const Fan& f, const ConeKey& simplex, const SupportFunction& support,
                                const ConeKey& lookupCone, const Int& detLimit) {
    if (simplex.empty()) return {LefschetzRational(Int(1)), 1};
    auto rays = pickRays(f.rays, simplex);
    auto box = lattice::boxPoints(rays, detLimit);

    std::vector<Rat> rayW;
    for (const auto& r : rays) {
        Rat w = support.value(lookupCone, r);
        if (w <= 0)
            throw Error("support function must be positive on rays (got " + w.get_str() + ")");
        rayW.push_back(w);
    }
    std::vector<Rat> boxW;
    for (const auto& p : box.points) {
        Rat w = support.value(lookupCone, p);
        if (w < 0) throw Error("support function negative on a box point");
        boxW.push_back(w);
    }
    long root = 1;
    for (const auto& w : rayW) root = std::lcm(root, static_cast<long>(w.get_den().get_si()));
    for (const auto& w : boxW) root = std::lcm(root, static_cast<long>(w.get_den().get_si()));

    auto scaled = [root](const Rat& w) {
        Rat s = w * root;
        s.canonicalize();
        return static_cast<long>(s.get_num().get_si());
    };
    long wSum = 0;
    std::multiset<long> den;
    for (const auto& w : rayW) {
        den.insert(scaled(w));
        wSum += scaled(w);
    }
    LefschetzPoly num;
    for (const auto& w : boxW) num.addTerm(wSum - scaled(w), Int(1));
    // prod(1 - t^w) = (-1)^k prod(t^w - 1)
    if (rays.size() % 2 == 1) num = -num;
    return {LefschetzRational(std::move(num), std::move(den)), root};
}

// Align two gen-fun roots.
LefschetzRational rescaleExponents(const LefschetzRational& v, long factor) {
    if (factor == 1) return v;
    LefschetzPoly num;
    for (const auto& [d, c] : v.num().coeffs()) num.addTerm(d * factor, c);
    std::multiset<long> den;
    for (long m : v.den()) den.insert(m * factor);
    return LefschetzRational(std::move(num), std::move(den));
}

}  // namespace

ConeGenFun cone_genfun(const Fan& f, const ConeKey& cone, const SupportFunction& support,
                       const Int& detLimit) {
    if (cone.empty()) return {LefschetzRational(Int(1)), 1};
    // Decompose the open cone into open faces of a triangulation; a face
    // survives unless it lies in the boundary (inside a facet of the cone).
    auto pieces = triangulate(f.rays, cone);
    auto allFaces = coneFaces(f.rays, cone);
    long d = coneDim(f.rays, cone);
    std::vector<ConeKey> boundary;
    for (const auto& face : allFaces)
        if (face != cone && coneDim(f.rays, face) == d - 1) boundary.push_back(face);

    std::set<ConeKey> openFaces;
    for (const auto& piece : pieces) {
        // Faces of a simplicial cone are exactly the ray subsets.
        std::vector<int> idx(piece.begin(), piece.end());
        const std::size_t m = idx.size();
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            ConeKey face;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1u << i)) face.insert(idx[i]);
            bool inBoundary = false;
            for (const auto& facet : boundary) {
                if (std::includes(facet.begin(), facet.end(), face.begin(), face.end())) {
                    inBoundary = true;
                    break;
                }
            }
            if (!inBoundary) openFaces.insert(std::move(face));
        }
    }

    std::vector<ConeGenFun> parts;
    long root = 1;
    for (const auto& face : openFaces) {
        parts.push_back(simplicialOpenGenFun(f, face, support, cone, detLimit));
        root = std::lcm(root, parts.back().root);
    }
    LefschetzRational total;
    for (const auto& part : parts)
        total = total + rescaleExponents(part.value, root / part.root);
    ConeGenFun out{std::move(total), root};
    return out;
}

BiRational toric_stringy_e(const Fan& f, const SupportFunction& support, Exp2 sig,
                           const Int& detLimit) {
    const auto [a, b] = sig;
    if (a == 0 && b == 0) throw Error("family type (0,0) has no stringy substitution");
    BiRational total;
    for (const auto& cone : f.cones) {
        ConeGenFun g = cone_genfun(f, cone, support, detLimit);
        // Substitute t = q^{-1/root}: exponent w maps to -w * (a, b).
        BiPoly num;
        num.setSig(sig);
        for (const auto& [w, c] : g.value.num().coeffs()) num.addTerm({-w * a, -w * b}, c);
        std::vector<Exp2> factors;
        for (long m : g.value.den()) factors.push_back({-m * a, -m * b});
        total = total + BiRational::make(std::move(num), factors, g.root);
    }
    BiRational prefactor{BiPoly::binomial({a, b})};
    BiRational result{BiPoly(Int(1))};
    for (long i = 0; i < f.rank; ++i) result = result * prefactor;
    result = result * total;
    result.setSig(sig);
    return result;
}

CheckReport toric_symmetry_check(const Fan& f, const SupportFunction& support,
                                 const InvariantFamily& family, const Int& detLimit) {
    if (!f.complete)
        throw SetupError("fan is not complete; the stringy symmetry theorem is about projective "
                         "toric varieties");
    BiRational x = toric_stringy_e(f, support, family.type, detLimit);
    return gsca_symmetry_check(family, x, f.rank);
}

}  // namespace motivic
