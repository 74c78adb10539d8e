#include "motivic/bipoly.hpp"

#include <numeric>
#include <sstream>

namespace motivic {

namespace {

Exp2 add(Exp2 a, Exp2 b) { return {a.first + b.first, a.second + b.second}; }
Exp2 neg(Exp2 a) { return {-a.first, -a.second}; }
Exp2 scale(Exp2 a, long k) { return {a.first * k, a.second * k}; }

bool lexPositive(Exp2 e) {
    if (e.first != 0) return e.first > 0;
    return e.second > 0;
}

}  // namespace

BiPoly::BiPoly(Int constant) {
    if (constant != 0) coeffs_[{0, 0}] = std::move(constant);
}

BiPoly BiPoly::monomial(Exp2 e, Int coeff) {
    BiPoly p;
    if (coeff != 0) p.coeffs_[e] = std::move(coeff);
    return p;
}

BiPoly BiPoly::binomial(Exp2 e) {
    BiPoly p;
    p.coeffs_[e] = 1;
    p.addTerm({0, 0}, Int(-1));
    return p;
}

bool BiPoly::isConstant() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == Exp2{0, 0});
}

Int BiPoly::coeff(Exp2 e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Int(0) : it->second;
}

void BiPoly::addTerm(Exp2 e, const Int& coeff) {
    if (coeff == 0) return;
    Int& c = coeffs_[e];
    c += coeff;
    if (c == 0) coeffs_.erase(e);
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r = *this;
    if (r.isConstant() && !o.isConstant()) r.sig_ = o.sig_;
    for (const auto& [e, c] : o.coeffs_) r.addTerm(e, c);
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    if (isConstant() && !o.isConstant()) sig_ = o.sig_;
    for (const auto& [e, c] : o.coeffs_) addTerm(e, c);
    return *this;
}

BiPoly BiPoly::operator-() const {
    BiPoly r;
    r.sig_ = sig_;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r;
    r.sig_ = isConstant() ? o.sig_ : sig_;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) r.addTerm(add(e1, e2), c1 * c2);
    return r;
}

BiPoly BiPoly::operator*(const Int& c) const {
    BiPoly r;
    r.sig_ = sig_;
    if (c == 0) return r;
    for (const auto& [e, k] : coeffs_) r.coeffs_[e] = k * c;
    return r;
}

BiPoly BiPoly::shifted(Exp2 e) const {
    BiPoly r;
    r.sig_ = sig_;
    for (const auto& [d, c] : coeffs_) r.coeffs_[add(d, e)] = c;
    return r;
}

BiPoly BiPoly::swapped() const {
    BiPoly r;
    r.sig_ = sig_;
    for (const auto& [e, c] : coeffs_) r.coeffs_[neg(e)] = c;
    return r;
}

BiPoly BiPoly::swappedU() const {
    BiPoly r;
    r.sig_ = sig_;
    for (const auto& [e, c] : coeffs_) r.coeffs_[{-e.first, e.second}] = c;
    return r;
}

BiPoly BiPoly::scaledExponents(long k) const {
    BiPoly r;
    r.sig_ = sig_;
    for (const auto& [e, c] : coeffs_) r.coeffs_[scale(e, k)] = c;
    return r;
}

std::optional<BiPoly> BiPoly::unscaledExponents(long k) const {
    BiPoly r;
    r.sig_ = sig_;
    for (const auto& [e, c] : coeffs_) {
        if (e.first % k != 0 || e.second % k != 0) return std::nullopt;
        r.coeffs_[{e.first / k, e.second / k}] = c;
    }
    return r;
}

std::optional<BiPoly> BiPoly::dividedByBinomial(Exp2 e) const {
    if (e == Exp2{0, 0}) throw Error("division by zero binomial");
    // Group terms into residue classes modulo Z*e; on each class the
    // polynomial is univariate in y = x^e and must be divisible by y - 1.
    long pivot = e.first != 0 ? e.first : e.second;
    auto coordOf = [&](Exp2 t) { return e.first != 0 ? t.first : t.second; };
    auto floordiv = [](long a, long b) {
        long q = a / b, r = a % b;
        if (r != 0 && ((r < 0) != (b < 0))) --q;
        return q;
    };
    std::map<Exp2, std::map<long, Int>> classes;
    for (const auto& [t, c] : coeffs_) {
        long k = floordiv(coordOf(t), pivot);
        Exp2 rep = add(t, scale(e, -k));
        // Exponent must actually lie on rep + Z*e; the other coordinate
        // decides a separate class when it does not line up.
        classes[rep][k] += c;
    }
    BiPoly quot;
    quot.sig_ = sig_;
    for (const auto& [rep, cls] : classes) {
        // Divide sum c_k y^k by (y - 1): h_j = sum of c_k for k > j,
        // exact iff all coefficients sum to zero.
        Int total = 0;
        for (const auto& [k, c] : cls) total += c;
        if (total != 0) return std::nullopt;
        auto it = cls.rbegin();
        long upper = it->first;
        Int run = it->second;
        for (++it; it != cls.rend(); ++it) {
            for (long j = upper - 1; j >= it->first; --j) quot.addTerm(add(rep, scale(e, j)), run);
            run += it->second;
            upper = it->first;
        }
    }
    return quot;
}

std::string BiPoly::str(long root) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    auto expStr = [&](long e) -> std::string {
        if (e % root == 0) return std::to_string(e / root);
        long g = std::gcd(e < 0 ? -e : e, root);
        return "(" + std::to_string(e / g) + "/" + std::to_string(root / g) + ")";
    };
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        Int a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        auto [p, q] = e;
        if (p == 0 && q == 0) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            if (p == q) {
                if (p == root)
                    out << "uv";
                else
                    out << "(uv)^" << expStr(p);
            } else {
                bool needStar = false;
                if (p != 0) {
                    out << "u";
                    if (p != root) out << "^" << expStr(p);
                    needStar = true;
                }
                if (q != 0) {
                    if (needStar) out << "*";
                    out << "v";
                    if (q != root) out << "^" << expStr(q);
                }
            }
        }
        first = false;
    }
    return out.str();
}

BiRational::BiRational(BiPoly num) : num_(std::move(num)) {}

BiRational::BiRational(Int constant) : num_(BiPoly(std::move(constant))) {}

BiRational BiRational::make(BiPoly num, const std::vector<Exp2>& denFactors, long root) {
    if (root < 1) throw Error("root order must be >= 1");
    BiRational r;
    r.num_ = std::move(num);
    r.root_ = root;
    for (Exp2 e : denFactors) {
        if (e == Exp2{0, 0}) throw Error("zero denominator factor x^0 - 1");
        if (!lexPositive(e)) {
            // (x^-F - 1) = -x^-F (x^F - 1): flip the factor, absorb the unit.
            e = neg(e);
            r.num_ = (-r.num_).shifted(e);
        }
        r.den_.insert(e);
    }
    r.reduce();
    return r;
}

void BiRational::reduce() {
    if (num_.isZero()) {
        den_.clear();
        root_ = 1;
        return;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = den_.begin(); it != den_.end(); ++it) {
            auto q = num_.dividedByBinomial(*it);
            if (q) {
                num_ = std::move(*q);
                den_.erase(it);
                progress = true;
                break;
            }
        }
    }
    if (root_ > 1) {
        // Shrink the root order by the common divisibility of all exponents.
        long g = root_;
        auto fold = [&g](long v) { g = std::gcd(g, v < 0 ? -v : v); };
        for (const auto& [e, c] : num_.coeffs()) {
            fold(e.first);
            fold(e.second);
        }
        for (const auto& e : den_) {
            fold(e.first);
            fold(e.second);
        }
        if (g > 1) {
            num_ = *num_.unscaledExponents(g);
            std::multiset<Exp2> nd;
            for (const auto& e : den_) nd.insert({e.first / g, e.second / g});
            den_ = std::move(nd);
            root_ /= g;
        }
    }
}

BiRational BiRational::withRoot(long newRoot) const {
    if (newRoot % root_ != 0) throw Error("root order rescale must be a multiple");
    long k = newRoot / root_;
    if (k == 1) return *this;
    BiRational r;
    r.num_ = num_.scaledExponents(k);
    for (const auto& e : den_) r.den_.insert(scale(e, k));
    r.root_ = newRoot;
    return r;
}

BiRational BiRational::operator+(const BiRational& o) const {
    long root = std::lcm(root_, o.root_);
    BiRational a = withRoot(root), b = o.withRoot(root);
    std::multiset<Exp2> common;
    for (auto it = a.den_.begin(); it != a.den_.end(); it = a.den_.upper_bound(*it)) {
        std::size_t k = std::max(a.den_.count(*it), b.den_.count(*it));
        for (std::size_t i = 0; i < k; ++i) common.insert(*it);
    }
    for (auto it = b.den_.begin(); it != b.den_.end(); it = b.den_.upper_bound(*it)) {
        if (a.den_.count(*it)) continue;
        for (std::size_t i = 0; i < b.den_.count(*it); ++i) common.insert(*it);
    }
    auto complement = [&common](const std::multiset<Exp2>& d) {
        BiPoly p{Int(1)};
        std::multiset<Exp2> rest = common;
        for (const auto& e : d) rest.erase(rest.find(e));
        for (const auto& e : rest) p = p * BiPoly::binomial(e);
        return p;
    };
    BiRational r;
    r.num_ = a.num_ * complement(a.den_) + b.num_ * complement(b.den_);
    r.den_ = std::move(common);
    r.root_ = root;
    r.reduce();
    return r;
}

BiRational BiRational::operator-() const {
    BiRational r = *this;
    r.num_ = -r.num_;
    return r;
}

BiRational BiRational::operator-(const BiRational& o) const { return *this + (-o); }

BiRational BiRational::operator*(const BiRational& o) const {
    long root = std::lcm(root_, o.root_);
    BiRational a = withRoot(root), b = o.withRoot(root);
    BiRational r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    r.den_.insert(b.den_.begin(), b.den_.end());
    r.root_ = root;
    r.reduce();
    return r;
}

bool BiRational::operator==(const BiRational& o) const {
    long root = std::lcm(root_, o.root_);
    BiRational a = withRoot(root), b = o.withRoot(root);
    BiPoly db{Int(1)}, da{Int(1)};
    for (const auto& e : b.den_) db = db * BiPoly::binomial(e);
    for (const auto& e : a.den_) da = da * BiPoly::binomial(e);
    return a.num_ * db == b.num_ * da;
}

BiRational BiRational::timesMonomial(Exp2 e, const Int& coeff) const {
    BiRational r = *this;
    r.num_ = r.num_.shifted(scale(e, root_)) * coeff;
    if (coeff == 0) {
        r.den_.clear();
        r.root_ = 1;
    }
    return r;
}

BiRational BiRational::swapped() const {
    // Each factor (x^-E - 1) renormalizes to -x^-E (x^E - 1).
    BiRational r;
    r.root_ = root_;
    r.num_ = num_.swapped();
    Exp2 total{0, 0};
    for (const auto& e : den_) {
        r.den_.insert(e);
        total = add(total, e);
    }
    if (den_.size() % 2 == 1) r.num_ = -r.num_;
    r.num_ = r.num_.shifted(total);
    r.reduce();
    return r;
}

BiRational BiRational::swappedU() const {
    std::vector<Exp2> den;
    for (const auto& e : den_) den.push_back(Exp2{-e.first, e.second});
    return make(num_.swappedU(), den, root_);
}

std::string BiRational::str() const {
    if (den_.empty()) return num_.str(root_);
    std::ostringstream out;
    out << "(" << num_.str(root_) << ")";
    for (const auto& e : den_) {
        out << " * inv(" << BiPoly::monomial(e).str(root_) << " - 1)";
    }
    return out.str();
}

StringyNumbers stringy_numbers(const BiRational& x) {
    StringyNumbers r;
    if (!x.isPolynomial()) {
        r.polynomial = false;
        std::ostringstream why;
        why << "not a polynomial: irreducible denominator";
        for (const auto& e : x.den()) why << " (" << BiPoly::monomial(e).str(x.root()) << " - 1)";
        r.reason = why.str();
        return r;
    }
    auto plain = x.num().unscaledExponents(x.root());
    if (!plain) {
        r.polynomial = false;
        r.reason = "not a polynomial: fractional exponents of root order " + std::to_string(x.root());
        return r;
    }
    r.polynomial = true;
    for (const auto& [e, c] : plain->coeffs()) {
        bool oddSign = ((e.first + e.second) % 2) != 0;
        r.numbers[e] = oddSign ? Int(-c) : c;
    }
    return r;
}

BiRational bipoly_swap(const BiRational& x) { return x.swapped(); }

}  // namespace motivic
