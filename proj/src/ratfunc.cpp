#include "qgkm/ratfunc.hpp"

#include <sstream>
#include <stdexcept>

namespace qgkm {

RationalFunction RationalFunction::from_scalar(int d, const Rational& c) {
    RationalFunction f(d);
    f.scalar_ = c;
    f.num_ = Polynomial::constant(d, Rational(1));
    f.canonicalize();
    return f;
}

RationalFunction RationalFunction::from_poly(const Polynomial& p) {
    RationalFunction f(p.rank());
    f.scalar_ = Rational(1);
    f.num_ = p;
    f.canonicalize();
    return f;
}

RationalFunction RationalFunction::reciprocal_product(const Rational& c, const std::vector<Character>& chars) {
    if (chars.empty()) throw std::invalid_argument("reciprocal_product: empty factor list");
    RationalFunction f(chars.front().rank());
    f.scalar_ = c;
    f.num_ = Polynomial::constant(f.rank_, Rational(1));
    for (Character a : chars) {
        if (a.is_zero()) throw std::invalid_argument("reciprocal_product: zero factor");
        if (a.normalize_sign() < 0) f.scalar_ = -f.scalar_;
        f.den_[a] += 1;
    }
    f.canonicalize();
    return f;
}

int RationalFunction::denominator_degree() const {
    int s = 0;
    for (const auto& [a, k] : den_) s += k;
    return s;
}

void RationalFunction::canonicalize() {
    if (scalar_.is_zero() || num_.is_zero()) {
        scalar_ = Rational(0);
        num_ = Polynomial::constant(rank_, Rational(0));
        den_.clear();
        return;
    }
    // cancel linear denominator factors against the numerator
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = den_.begin(); it != den_.end() && !progress; ++it) {
            auto q = num_.divide_by_character(it->first);
            if (!q) continue;
            num_ = *q;
            if (--it->second == 0) den_.erase(it);
            progress = true;
        }
    }
    Rational c = num_.content();
    if (!c.is_zero() && !(c == Rational(1))) {
        scalar_ *= c;
        num_ = num_ * (Rational(1) / c);
    }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return rf_sum({*this, o});
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.scalar_ = -r.scalar_;
    return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return zero(std::max(rank_, o.rank_));
    RationalFunction r(rank_);
    r.scalar_ = scalar_ * o.scalar_;
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    for (const auto& [a, k] : o.den_) r.den_[a] += k;
    r.canonicalize();
    return r;
}

RationalFunction RationalFunction::operator*(const Rational& c) const {
    RationalFunction r = *this;
    r.scalar_ *= c;
    if (r.scalar_.is_zero()) return zero(rank_);
    return r;
}

RationalFunction RationalFunction::mul_poly(const Polynomial& p) const {
    RationalFunction r = *this;
    r.num_ = r.num_ * p;
    r.canonicalize();
    return r;
}

RationalFunction RationalFunction::reciprocal() const {
    if (is_zero()) throw std::domain_error("RationalFunction: reciprocal of zero");
    auto fac = factor_linear(num_, {});
    if (!fac) throw std::domain_error("RationalFunction: numerator is not a product of linear forms");
    RationalFunction r(rank_);
    r.scalar_ = Rational(1) / (scalar_ * fac->first);
    r.num_ = Polynomial::constant(rank_, Rational(1));
    r.den_ = fac->second;
    for (const auto& [a, k] : den_) {
        Polynomial f = Polynomial::from_character(a);
        for (int i = 0; i < k; ++i) r.num_ = r.num_ * f;
    }
    r.canonicalize();
    return r;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    return scalar_ == o.scalar_ && num_ == o.num_ && den_ == o.den_;
}

bool RationalFunction::equals_unsigned(const RationalFunction& o) const {
    if (scalar_.abs() != o.scalar_.abs() || den_ != o.den_) return false;
    return num_ == o.num_ || num_ == -o.num_;
}

std::optional<Polynomial> RationalFunction::as_polynomial() const {
    if (is_zero()) return Polynomial::constant(rank_, Rational(0));
    if (!den_.empty()) return std::nullopt;
    return num_ * scalar_;
}

Rational RationalFunction::eval(const std::vector<Rational>& point) const {
    if (is_zero()) return Rational(0);
    Rational v = scalar_ * num_.eval(point);
    for (const auto& [a, k] : den_) {
        Rational fv = Polynomial::from_character(a).eval(point);
        if (fv.is_zero()) throw std::domain_error("RationalFunction::eval: denominator vanishes");
        for (int i = 0; i < k; ++i) v /= fv;
    }
    return v;
}

std::string RationalFunction::str(const Cocharacter* chi) const {
    if (is_zero()) return "0";
    Rational sc = scalar_;
    std::vector<std::pair<Character, int>> factors(den_.begin(), den_.end());
    if (chi) {
        for (auto& [a, k] : factors) {
            if (pairing(*chi, a) < 0) {
                a = -a;
                if (k % 2 == 1) sc = -sc;
            }
        }
    }
    std::ostringstream os;
    auto numc = num_.as_constant();
    std::string numstr;
    if (numc) {
        numstr = (sc * *numc).str();
    } else {
        std::string s = sc == Rational(1) ? "" : (sc == Rational(-1) ? "-" : sc.str() + "*");
        std::string body = num_.str();
        if (num_.terms().size() > 1) body = "(" + body + ")";
        numstr = s + body;
    }
    os << numstr;
    if (!factors.empty()) {
        os << " / (";
        bool first = true;
        for (const auto& [a, k] : factors)
            for (int i = 0; i < k; ++i) {
                if (!first) os << "*";
                first = false;
                os << "(" << a.str(true) << ")";
            }
        os << ")";
    }
    return os.str();
}

RationalFunction rf_sum(const std::vector<RationalFunction>& terms) {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.rank());
    RationalFunction r(d);
    // common denominator = factor-wise max multiplicity
    std::map<Character, int> common;
    for (const auto& t : terms)
        if (!t.is_zero())
            for (const auto& [a, k] : t.den_)
                common[a] = std::max(common[a], k);
    Polynomial acc = Polynomial::constant(d, Rational(0));
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        Polynomial part = t.num_ * t.scalar_;
        for (const auto& [a, k] : common) {
            int have = 0;
            auto it = t.den_.find(a);
            if (it != t.den_.end()) have = it->second;
            Polynomial f = Polynomial::from_character(a);
            for (int i = have; i < k; ++i) part = part * f;
        }
        acc = acc + part;
    }
    r.scalar_ = Rational(1);
    r.num_ = acc;
    r.den_ = common;
    r.canonicalize();
    return r;
}

std::optional<std::pair<Rational, std::map<Character, int>>>
factor_linear(const Polynomial& p, const std::vector<Character>& pool) {
    if (p.is_zero()) return std::nullopt;
    std::map<Character, int> factors;
    Polynomial rem = p;
    auto peel = [&](Character a) {
        if (a.is_zero()) return false;
        a.normalize_sign();
        auto q = rem.divide_by_character(a);
        if (!q) return false;
        factors[a] += 1;
        rem = *q;
        return true;
    };
    bool progress = true;
    while (progress && rem.total_degree() > 0) {
        progress = false;
        // content division first so as_character applies to integral forms
        Rational c = rem.content();
        if (!c.is_zero() && c != Rational(1)) rem = rem * (Rational(1) / c);
        if (auto a = rem.as_character()) {
            if (peel(*a)) { progress = true; rem = rem * c; continue; }
        }
        rem = rem * c;
        for (const auto& cand : pool)
            if (peel(cand)) { progress = true; break; }
    }
    auto c = rem.as_constant();
    if (!c) return std::nullopt;
    return std::make_pair(*c, factors);
}

} // namespace qgkm
