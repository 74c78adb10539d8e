#include "motivic/kgroup.hpp"

#include <algorithm>
#include <sstream>

namespace motivic {

namespace {
const std::string& keyOf(const RecordPtr& g) {
    static const std::string unitKey = "";
    return g ? g->name : unitKey;
}
}  // namespace

RecordPtr VarietyDb::add(VarietyRecord r) {
    if (recs_.count(r.name)) throw Error("duplicate record name '" + r.name + "'");
    auto p = std::make_shared<const VarietyRecord>(std::move(r));
    recs_[p->name] = p;
    return p;
}

RecordPtr VarietyDb::find(const std::string& name) const {
    auto it = recs_.find(name);
    return it == recs_.end() ? nullptr : it->second;
}

RecordPtr VarietyDb::get(const std::string& name) const {
    auto p = find(name);
    if (!p) throw Error("unknown record '" + name + "'");
    return p;
}

KClass KClass::unit(Int coeff, long shift) {
    KClass c;
    if (coeff != 0) c.terms_.push_back({nullptr, shift, std::move(coeff)});
    return c;
}

KClass KClass::generator(RecordPtr g, long shift, Int coeff) {
    KClass c;
    if (coeff != 0) c.terms_.push_back({std::move(g), shift, std::move(coeff)});
    return c;
}

KClass KClass::fromScalar(const LefschetzRational& s) {
    KClass c;
    for (const auto& [d, k] : s.num().coeffs()) c.terms_.push_back({nullptr, d, k});
    c.den_ = s.den();
    c.normalize();
    return c;
}

void KClass::normalize() {
    // Merge identical (generator, shift) pairs, drop zeros.
    std::map<std::pair<std::string, long>, Term> merged;
    for (auto& t : terms_) {
        auto key = std::make_pair(keyOf(t.gen), t.shift);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, std::move(t));
        else
            it->second.coeff += t.coeff;
    }
    terms_.clear();
    for (auto& [k, t] : merged)
        if (t.coeff != 0) terms_.push_back(std::move(t));
    if (terms_.empty()) {
        den_.clear();
        return;
    }
    // Cancel a denominator factor when it exactly divides every
    // generator's shift polynomial.
    bool progress = true;
    while (progress && !den_.empty()) {
        progress = false;
        std::map<std::string, LefschetzPoly> byGen;
        std::map<std::string, RecordPtr> gens;
        for (const auto& t : terms_) {
            byGen[keyOf(t.gen)].addTerm(t.shift, t.coeff);
            gens[keyOf(t.gen)] = t.gen;
        }
        for (auto it = den_.begin(); it != den_.end(); ++it) {
            LefschetzPoly factor = LefschetzPoly::cyclo(*it);
            std::map<std::string, LefschetzPoly> quots;
            bool ok = true;
            for (const auto& [name, poly] : byGen) {
                auto q = poly.dividedBy(factor);
                if (!q) {
                    ok = false;
                    break;
                }
                quots[name] = std::move(*q);
            }
            if (!ok) continue;
            terms_.clear();
            for (const auto& [name, poly] : quots)
                for (const auto& [d, c] : poly.coeffs()) terms_.push_back({gens[name], d, c});
            den_.erase(it);
            progress = true;
            break;
        }
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        if (keyOf(a.gen) != keyOf(b.gen)) return keyOf(a.gen) < keyOf(b.gen);
        return a.shift < b.shift;
    });
}

LefschetzPoly KClass::denPoly() const {
    LefschetzPoly d{Int(1)};
    for (long m : den_) d = d * LefschetzPoly::cyclo(m);
    return d;
}

KClass KClass::operator+(const KClass& o) const {
    std::multiset<long> common;
    for (auto it = den_.begin(); it != den_.end(); it = den_.upper_bound(*it)) {
        std::size_t k = std::max(den_.count(*it), o.den_.count(*it));
        for (std::size_t i = 0; i < k; ++i) common.insert(*it);
    }
    for (auto it = o.den_.begin(); it != o.den_.end(); it = o.den_.upper_bound(*it)) {
        if (den_.count(*it)) continue;
        for (std::size_t i = 0; i < o.den_.count(*it); ++i) common.insert(*it);
    }
    auto complementPoly = [&common](const std::multiset<long>& d) {
        LefschetzPoly p{Int(1)};
        std::multiset<long> rest = common;
        for (long m : d) rest.erase(rest.find(m));
        for (long m : rest) p = p * LefschetzPoly::cyclo(m);
        return p;
    };
    auto scaleTerms = [](const std::vector<Term>& ts, const LefschetzPoly& p, std::vector<Term>& out) {
        for (const auto& t : ts)
            for (const auto& [d, c] : p.coeffs()) out.push_back({t.gen, t.shift + d, t.coeff * c});
    };
    KClass r;
    scaleTerms(terms_, complementPoly(den_), r.terms_);
    scaleTerms(o.terms_, complementPoly(o.den_), r.terms_);
    r.den_ = std::move(common);
    r.normalize();
    return r;
}

KClass KClass::operator-() const {
    KClass r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

KClass KClass::operator-(const KClass& o) const { return *this + (-o); }

KClass KClass::lAction(long k) const {
    KClass r = *this;
    for (auto& t : r.terms_) t.shift += k;
    return r;
}

KClass KClass::scaled(const Int& c) const {
    if (c == 0) return {};
    KClass r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

KClass KClass::scaled(const LefschetzRational& s) const {
    KClass r;
    for (const auto& t : terms_)
        for (const auto& [d, c] : s.num().coeffs()) r.terms_.push_back({t.gen, t.shift + d, t.coeff * c});
    r.den_ = den_;
    r.den_.insert(s.den().begin(), s.den().end());
    r.normalize();
    return r;
}

bool KClass::operator==(const KClass& o) const {
    // Cross-multiplied formal identity.
    KClass a, b;
    auto scaleTerms = [](const std::vector<Term>& ts, const LefschetzPoly& p, std::vector<Term>& out) {
        for (const auto& t : ts)
            for (const auto& [d, c] : p.coeffs()) out.push_back({t.gen, t.shift + d, t.coeff * c});
    };
    scaleTerms(terms_, o.denPoly(), a.terms_);
    scaleTerms(o.terms_, denPoly(), b.terms_);
    a.normalize();
    b.normalize();
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const auto& s = a.terms_[i];
        const auto& t = b.terms_[i];
        if (keyOf(s.gen) != keyOf(t.gen) || s.shift != t.shift || s.coeff != t.coeff) return false;
    }
    return true;
}

long KClass::virtualDimension() const {
    if (isZero()) throw Error("virtual dimension of the zero class");
    long vd = 0;
    bool first = true;
    for (const auto& t : terms_) {
        long d = (t.gen ? t.gen->dimension : 0) + t.shift;
        if (first || d > vd) vd = d;
        first = false;
    }
    return vd;
}

long KClass::filtrationIndex() const {
    if (isZero()) throw NormUndefinedError();
    long denSum = 0;
    for (long m : den_) denSum += m;
    return denSum - virtualDimension();
}

Norm KClass::norm() const {
    if (isZero()) return Norm::zeroNorm();
    return Norm::dyadic(filtrationIndex());
}

bool KClass::allSmoothProjective() const {
    for (const auto& t : terms_)
        if (t.gen && !t.gen->smoothProjective) return false;
    return true;
}

std::set<std::string> KClass::generatorNames() const {
    std::set<std::string> names;
    for (const auto& t : terms_)
        if (t.gen) names.insert(t.gen->name);
    return names;
}

std::string KClass::str() const {
    if (terms_.empty()) return "0";
    // Group shifts per generator and render coefficient polynomials.
    std::map<std::string, LefschetzPoly> byGen;
    std::vector<std::string> order;
    for (const auto& t : terms_) {
        if (!byGen.count(keyOf(t.gen))) order.push_back(keyOf(t.gen));
        byGen[keyOf(t.gen)].addTerm(t.shift, t.coeff);
    }
    const bool wrap = !den_.empty() && byGen.size() > 1;
    // Named generators first (sorted), the unit part last.
    std::sort(order.begin(), order.end(), [](const std::string& a, const std::string& b) {
        if (a.empty() != b.empty()) return b.empty();
        return a < b;
    });
    std::ostringstream out;
    if (wrap) out << "(";
    bool first = true;
    for (const auto& name : order) {
        LefschetzPoly p = byGen[name];
        bool negative = p.coeffs().size() == 1 && p.coeffs().begin()->second < 0;
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        if (negative) p = -p;
        std::string ps = p.str();
        if (name.empty()) {
            out << (p.coeffs().size() > 1 ? "(" + ps + ")" : ps);
        } else if (ps == "1") {
            out << "[" << name << "]";
        } else if (p.coeffs().size() == 1) {
            out << ps << "*[" << name << "]";
        } else {
            out << "(" << ps << ")*[" << name << "]";
        }
        first = false;
    }
    if (wrap) out << ")";
    for (long m : den_) {
        out << " * inv(L";
        if (m != 1) out << "^" << m;
        out << " - 1)";
    }
    return out.str();
}

KClass scissor_sum(const KClass& x, const KClass& y) { return x + y; }

KClass l_action(const KClass& c, long k) { return c.lAction(k); }

BlowupResult blowup_class(const KClass& x, const KClass& y, long codim) {
    if (codim < 2) throw Error("blow-up codimension must be >= 2");
    if (!x.isZero() && !y.isZero() && y.virtualDimension() != x.virtualDimension() - codim)
        throw DimensionMismatchError(
            "blow-up center has dimension " + std::to_string(y.virtualDimension()) + ", expected " +
            std::to_string(x.virtualDimension() - codim));
    BlowupResult r;
    r.blowup = x;
    for (long j = 1; j < codim; ++j) r.blowup = r.blowup + y.lAction(j);
    r.exceptional = KClass::zero();
    for (long j = 0; j < codim; ++j) r.exceptional = r.exceptional + y.lAction(j);
    return r;
}

KClass projective_bundle_class(const KClass& y, long rankMinusOne) {
    if (rankMinusOne < 0) throw Error("projective bundle needs rank - 1 >= 0");
    KClass r;
    for (long j = 0; j <= rankMinusOne; ++j) r = r + y.lAction(j);
    return r;
}

KClass ExprValue::asClass() const {
    if (cls) return *cls;
    return KClass::fromScalar(*scalar);
}

namespace {

LefschetzRational evalScalar(const ClassExpr& e, const VarietyDb& db);

ExprValue evalAny(const ClassExpr& e, const VarietyDb& db) {
    ExprValue v;
    if (!e.isClass) {
        v.scalar = evalScalar(e, db);
        return v;
    }
    using K = ClassExpr::Kind;
    switch (e.kind) {
        case K::Ref: v.cls = KClass::generator(db.get(e.name)); return v;
        case K::Neg: {
            v.cls = -evalAny(e.kids[0], db).asClass();
            return v;
        }
        case K::Add: {
            v.cls = evalAny(e.kids[0], db).asClass() + evalAny(e.kids[1], db).asClass();
            return v;
        }
        case K::Sub: {
            v.cls = evalAny(e.kids[0], db).asClass() - evalAny(e.kids[1], db).asClass();
            return v;
        }
        case K::Mul: {
            // One side is a scalar by construction.
            if (e.kids[0].isClass) {
                v.cls = evalAny(e.kids[0], db).cls->scaled(evalScalar(e.kids[1], db));
            } else {
                v.cls = evalAny(e.kids[1], db).cls->scaled(evalScalar(e.kids[0], db));
            }
            return v;
        }
        default: throw Error("malformed class expression");
    }
}

LefschetzRational evalScalar(const ClassExpr& e, const VarietyDb& db) {
    using K = ClassExpr::Kind;
    switch (e.kind) {
        case K::IntLit: return LefschetzRational(e.value);
        case K::L: return LefschetzRational(LefschetzPoly::monomial(1));
        case K::Inv: return LefschetzRational::inverseFactor(e.exponent);
        case K::Neg: return -evalScalar(e.kids[0], db);
        case K::Add: return evalScalar(e.kids[0], db) + evalScalar(e.kids[1], db);
        case K::Sub: return evalScalar(e.kids[0], db) - evalScalar(e.kids[1], db);
        case K::Mul: return evalScalar(e.kids[0], db) * evalScalar(e.kids[1], db);
        case K::Pow: {
            LefschetzRational base = evalScalar(e.kids[0], db);
            long n = e.exponent;
            if (n >= 0) {
                LefschetzRational r{Int(1)};
                for (long i = 0; i < n; ++i) r = r * base;
                return r;
            }
            // Negative powers only for monomials (units of the Laurent ring).
            if (!base.isPolynomial() || base.num().coeffs().size() != 1)
                throw Error("negative power of a non-monomial scalar");
            const auto& [d, c] = *base.num().coeffs().begin();
            if (c != 1 && c != -1) throw Error("negative power of a non-unit coefficient");
            Int coeff = (c == -1 && (n % 2) != 0) ? Int(-1) : Int(1);
            return LefschetzRational(LefschetzPoly::monomial(d * n, coeff));
        }
        default: throw Error("expression is not an L-scalar");
    }
}

class BittnerRewriter {
public:
    explicit BittnerRewriter(const VarietyDb& db) : db_(db) {}

    KClass rewrite(const KClass& c) {
        KClass out;
        for (const auto& t : c.terms()) {
            KClass piece;
            if (!t.gen || t.gen->smoothProjective)
                piece = KClass::generator(t.gen);
            else
                piece = rewriteRecord(t.gen);
            out = out + piece.lAction(t.shift).scaled(t.coeff);
        }
        // Re-attach denominators.
        LefschetzRational denScale(LefschetzPoly(Int(1)), c.den());
        return out.scaled(denScale);
    }

private:
    KClass rewriteRecord(const RecordPtr& rec) {
        auto memo = done_.find(rec->name);
        if (memo != done_.end()) return memo->second;
        if (inProgress_.count(rec->name)) throw CyclicGeometryError(rec->name);
        if (!rec->hasGeometry()) throw UnresolvableGeneratorError(rec->name);
        inProgress_.insert(rec->name);
        KClass result;
        if (rec->compactification) {
            // phi(X) = closure - phi(closure - X); the boundary expression
            // stands for the complement.
            RecordPtr closure = db_.get(rec->compactification->closure);
            KClass boundary = eval_class_expr(rec->compactification->boundary, db_).asClass();
            KClass closureClass =
                closure->smoothProjective ? KClass::generator(closure) : rewriteRecord(closure);
            result = closureClass - rewrite(boundary);
        } else {
            for (const auto& stratum : rec->stratification)
                result = result + rewrite(eval_class_expr(stratum, db_).asClass());
        }
        inProgress_.erase(rec->name);
        done_.emplace(rec->name, result);
        return result;
    }

    const VarietyDb& db_;
    std::set<std::string> inProgress_;
    std::map<std::string, KClass> done_;
};

}  // namespace

ExprValue eval_class_expr(const ClassExpr& e, const VarietyDb& db) { return evalAny(e, db); }

KClass bittner_rewrite(const KClass& c, const VarietyDb& db) { return BittnerRewriter(db).rewrite(c); }

KClass bittner_rewrite(const ClassExpr& e, const VarietyDb& db) {
    return bittner_rewrite(eval_class_expr(e, db).asClass(), db);
}

bool eq_mod_filtration(const KClass& x, const KClass& y, std::optional<long> k) {
    KClass d = x - y;
    if (d.isZero()) return true;
    if (!k) return false;
    return d.filtrationIndex() > *k;
}

}  // namespace motivic
