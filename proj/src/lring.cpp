#include "motivic/lring.hpp"

#include <algorithm>
#include <sstream>

namespace motivic {

LefschetzPoly::LefschetzPoly(Int constant) {
    if (constant != 0) coeffs_[0] = std::move(constant);
}

LefschetzPoly LefschetzPoly::monomial(long degree, Int coeff) {
    LefschetzPoly p;
    if (coeff != 0) p.coeffs_[degree] = std::move(coeff);
    return p;
}

LefschetzPoly LefschetzPoly::cyclo(long m) {
    LefschetzPoly p;
    p.coeffs_[m] = 1;
    p.coeffs_[0] = -1;
    return p;
}

Int LefschetzPoly::coeff(long degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? Int(0) : it->second;
}

long LefschetzPoly::degree() const {
    if (coeffs_.empty()) throw Error("degree of zero polynomial");
    return coeffs_.rbegin()->first;
}

long LefschetzPoly::lowDegree() const {
    if (coeffs_.empty()) throw Error("low degree of zero polynomial");
    return coeffs_.begin()->first;
}

bool LefschetzPoly::isConstant() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

void LefschetzPoly::addTerm(long degree, const Int& coeff) {
    if (coeff == 0) return;
    Int& c = coeffs_[degree];
    c += coeff;
    if (c == 0) coeffs_.erase(degree);
}

LefschetzPoly LefschetzPoly::operator+(const LefschetzPoly& o) const {
    LefschetzPoly r = *this;
    for (const auto& [d, c] : o.coeffs_) r.addTerm(d, c);
    return r;
}

LefschetzPoly& LefschetzPoly::operator+=(const LefschetzPoly& o) {
    for (const auto& [d, c] : o.coeffs_) addTerm(d, c);
    return *this;
}

LefschetzPoly LefschetzPoly::operator-() const {
    LefschetzPoly r;
    for (const auto& [d, c] : coeffs_) r.coeffs_[d] = -c;
    return r;
}

LefschetzPoly LefschetzPoly::operator-(const LefschetzPoly& o) const { return *this + (-o); }

LefschetzPoly LefschetzPoly::operator*(const LefschetzPoly& o) const {
    LefschetzPoly r;
    for (const auto& [d1, c1] : coeffs_)
        for (const auto& [d2, c2] : o.coeffs_) r.addTerm(d1 + d2, c1 * c2);
    return r;
}

LefschetzPoly LefschetzPoly::operator*(const Int& c) const {
    LefschetzPoly r;
    if (c == 0) return r;
    for (const auto& [d, k] : coeffs_) r.coeffs_[d] = k * c;
    return r;
}

LefschetzPoly LefschetzPoly::shifted(long k) const {
    LefschetzPoly r;
    for (const auto& [d, c] : coeffs_) r.coeffs_[d + k] = c;
    return r;
}

std::optional<LefschetzPoly> LefschetzPoly::dividedBy(const LefschetzPoly& d) const {
    if (d.isZero()) return std::nullopt;
    if (isZero()) return LefschetzPoly();
    // Long division by descending degree; Laurent shifts are units, so an
    // exact quotient has support in [low(f)-low(d), deg(f)-deg(d)].
    LefschetzPoly rem = *this;
    LefschetzPoly quot;
    const long dDeg = d.degree();
    const long minShift = lowDegree() - d.lowDegree();
    const Int& dLead = d.coeffs().rbegin()->second;
    while (!rem.isZero()) {
        long shift = rem.degree() - dDeg;
        if (shift < minShift) return std::nullopt;
        Int lead = rem.coeff(rem.degree());
        if (lead % dLead != 0) return std::nullopt;
        Int q = lead / dLead;
        quot.addTerm(shift, q);
        rem += -(d.shifted(shift) * q);
    }
    return quot;
}

LefschetzPoly LefschetzPoly::truncated(std::optional<long> lo, std::optional<long> hi) const {
    LefschetzPoly r;
    for (const auto& [d, c] : coeffs_) {
        if (lo && d < *lo) continue;
        if (hi && d > *hi) continue;
        r.coeffs_[d] = c;
    }
    return r;
}

std::string LefschetzPoly::str(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const auto& [d, c] = *it;
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
        if (d == 0) {
            out << a.get_str();
        } else {
            if (a != 1) out << a.get_str() << "*";
            out << var;
            if (d != 1) out << "^" << d;
        }
        first = false;
    }
    return out.str();
}

bool Norm::operator==(const Norm& o) const {
    if (zero || o.zero) return zero == o.zero;
    return negLog2 == o.negLog2;
}

bool Norm::operator<=(const Norm& o) const {
    if (zero) return true;
    if (o.zero) return false;
    return negLog2 >= o.negLog2;  // 2^-a <= 2^-b iff a >= b
}

Rat Norm::toRational() const {
    if (zero) return Rat(0);
    Rat r(1);
    mpz_class two = 2;
    mpz_class pow;
    mpz_pow_ui(pow.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(negLog2 >= 0 ? negLog2 : -negLog2));
    if (negLog2 >= 0)
        r = Rat(1) / Rat(pow);
    else
        r = Rat(pow);
    return r;
}

std::string Norm::str() const {
    if (zero) return "0";
    if (negLog2 <= 0) return Rat(toRational()).get_str();
    return "1/" + toRational().get_den().get_str();
}

LefschetzRational::LefschetzRational(LefschetzPoly num) : num_(std::move(num)) {}

LefschetzRational::LefschetzRational(Int constant) : num_(LefschetzPoly(std::move(constant))) {}

LefschetzRational::LefschetzRational(LefschetzPoly num, std::multiset<long> den)
    : num_(std::move(num)), den_(std::move(den)) {
    for (long m : den_)
        if (m <= 0) throw Error("denominator factor L^m - 1 requires m >= 1");
    reduce();
}

LefschetzRational LefschetzRational::inverseFactor(long m) {
    return LefschetzRational(LefschetzPoly(Int(1)), {m});
}

LefschetzPoly LefschetzRational::denPoly() const {
    LefschetzPoly d{Int(1)};
    for (long m : den_) d = d * LefschetzPoly::cyclo(m);
    return d;
}

void LefschetzRational::reduce() {
    if (num_.isZero()) {
        den_.clear();
        return;
    }
    // Exact trial division of the numerator by each stored factor.
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = den_.begin(); it != den_.end(); ++it) {
            auto q = num_.dividedBy(LefschetzPoly::cyclo(*it));
            if (q) {
                num_ = std::move(*q);
                den_.erase(it);
                progress = true;
                break;
            }
        }
    }
}

LefschetzRational LefschetzRational::operator+(const LefschetzRational& o) const {
    // Common denominator: per factor value, the max multiplicity.
    std::multiset<long> common;
    for (auto it = den_.begin(); it != den_.end(); it = den_.upper_bound(*it)) {
        long m = *it;
        std::size_t k = std::max(den_.count(m), o.den_.count(m));
        for (std::size_t i = 0; i < k; ++i) common.insert(m);
    }
    for (auto it = o.den_.begin(); it != o.den_.end(); it = o.den_.upper_bound(*it)) {
        long m = *it;
        if (den_.count(m)) continue;
        for (std::size_t i = 0; i < o.den_.count(m); ++i) common.insert(m);
    }
    auto complement = [&common](const std::multiset<long>& d) {
        LefschetzPoly p{Int(1)};
        std::multiset<long> rest = common;
        for (long m : d) rest.erase(rest.find(m));
        for (long m : rest) p = p * LefschetzPoly::cyclo(m);
        return p;
    };
    LefschetzPoly n = num_ * complement(den_) + o.num_ * complement(o.den_);
    return LefschetzRational(std::move(n), std::move(common));
}

LefschetzRational LefschetzRational::operator-() const {
    LefschetzRational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

LefschetzRational LefschetzRational::operator-(const LefschetzRational& o) const { return *this + (-o); }

LefschetzRational LefschetzRational::operator*(const LefschetzRational& o) const {
    std::multiset<long> d = den_;
    d.insert(o.den_.begin(), o.den_.end());
    return LefschetzRational(num_ * o.num_, std::move(d));
}

bool LefschetzRational::operator==(const LefschetzRational& o) const {
    return (num_ * o.denPoly()) == (o.num_ * denPoly());
}

long LefschetzRational::filtrationIndex() const {
    if (isZero()) throw NormUndefinedError();
    long denSum = 0;
    for (long m : den_) denSum += m;
    return denSum - num_.degree();
}

Norm LefschetzRational::norm() const {
    if (isZero()) return Norm::zeroNorm();
    return Norm::dyadic(filtrationIndex());
}

LefschetzPoly LefschetzRational::laurentExpand(ExpandDir dir, long order) const {
    if (order < 0) throw Error("expansion order must be >= 0");
    if (den_.empty() || num_.isZero()) return num_;
    LefschetzPoly acc = num_;
    if (dir == ExpandDir::atZero) {
        const long hi = order;
        for (long m : den_) {
            // 1/(L^m - 1) = -(1 + L^m + L^2m + ...)
            long lowAcc = acc.lowDegree();
            LefschetzPoly series;
            for (long e = 0; lowAcc + e <= hi; e += m) series.addTerm(e, Int(-1));
            acc = (acc * series).truncated(std::nullopt, hi);
            if (acc.isZero()) return acc;
        }
        return acc;
    }
    const long lo = -order;
    for (long m : den_) {
        // 1/(L^m - 1) = L^-m + L^-2m + ...
        long hiAcc = acc.degree();
        LefschetzPoly series;
        for (long e = -m; hiAcc + e >= lo; e -= m) series.addTerm(e, Int(1));
        acc = (acc * series).truncated(lo, std::nullopt);
        if (acc.isZero()) return acc;
    }
    return acc;
}

std::string LefschetzRational::str(const std::string& var) const {
    if (den_.empty()) return num_.str(var);
    std::ostringstream out;
    out << "(" << num_.str(var) << ")";
    for (long m : den_) {
        out << " * inv(" << var;
        if (m != 1) out << "^" << m;
        out << " - 1)";
    }
    return out.str();
}

LefschetzRational lring_arith(const LefschetzRational& x, const LefschetzRational& y, ArithOp op) {
    switch (op) {
        case ArithOp::add: return x + y;
        case ArithOp::sub: return x - y;
        case ArithOp::mul: return x * y;
    }
    throw Error("unknown arithmetic op");
}

}  // namespace motivic
