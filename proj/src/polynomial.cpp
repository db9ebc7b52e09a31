#include "qgkm/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgkm {

Polynomial Polynomial::constant(int d, const Rational& c) {
    Polynomial p(d);
    p.add_term(Monomial(d + 1, 0), c);
    return p;
}

Polynomial Polynomial::from_character(const Character& a) {
    Polynomial p(a.rank());
    Monomial m(a.rank() + 1, 0);
    if (a.delta != 0) {
        m[0] = 1;
        p.add_term(m, Rational(a.delta));
        m[0] = 0;
    }
    for (int i = 0; i < a.rank(); ++i) {
        if (a.eps[i] == 0) continue;
        m[i + 1] = 1;
        p.add_term(m, Rational(a.eps[i]));
        m[i + 1] = 0;
    }
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if ((int)m.size() != nvars_)
        throw std::invalid_argument("Polynomial: monomial arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::match(const Polynomial& o) const {
    if (nvars_ != o.nvars_ && !terms_.empty() && !o.terms_.empty())
        throw std::invalid_argument("Polynomial: arity mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    match(o);
    Polynomial r = terms_.empty() ? o : *this;
    if (terms_.empty()) return r;
    r.nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    match(o);
    Polynomial r(std::max(nvars_, o.nvars_) - 1);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            for (size_t i = 0; i < m.size(); ++i) m[i] += m2[i];
            r.add_term(m, c1 * c2);
        }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(nvars_ - 1);
    if (c.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const { return terms_ == o.terms_; }
bool Polynomial::operator<(const Polynomial& o) const {
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
}

int Polynomial::total_degree() const {
    int deg = -1;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (int e : m) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

bool Polynomial::is_homogeneous() const {
    int deg = -2;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (int e : m) d += e;
        if (deg == -2) deg = d;
        else if (d != deg) return false;
    }
    return true;
}

std::optional<Rational> Polynomial::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() != 1) return std::nullopt;
    const auto& [m, c] = *terms_.begin();
    for (int e : m) if (e != 0) return std::nullopt;
    return c;
}

std::optional<Character> Polynomial::as_character() const {
    Character a(rank());
    for (const auto& [m, c] : terms_) {
        int d = 0, var = -1;
        for (size_t i = 0; i < m.size(); ++i) {
            d += m[i];
            if (m[i] != 0) var = (int)i;
        }
        if (d != 1 || c.den != 1) return std::nullopt;
        long long v = (long long)c.num;
        if (var == 0) a.delta = v; else a.eps[var - 1] = v;
    }
    if (a.is_zero() && !terms_.empty()) return std::nullopt;
    return a;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if ((int)point.size() != nvars_)
        throw std::invalid_argument("Polynomial::eval: point arity mismatch");
    Rational s(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) t *= point[i];
        s += t;
    }
    return s;
}

std::optional<Polynomial> Polynomial::divide_by_character(const Character& a) const {
    if (a.is_zero()) throw std::invalid_argument("divide_by_character: zero form");
    if (terms_.empty()) return Polynomial(rank());
    // pivot: first variable with nonzero coefficient in a
    int piv = -1;
    long long pc = 0;
    if (a.delta != 0) { piv = 0; pc = a.delta; }
    else {
        for (int i = 0; i < a.rank(); ++i)
            if (a.eps[i] != 0) { piv = i + 1; pc = a.eps[i]; break; }
    }
    Polynomial alpha = from_character(a);
    Polynomial rem = *this;
    Polynomial quot(rank());
    Rational pivc = Rational(pc);
    // peel monomials of top pivot-degree until the pivot is eliminated
    while (true) {
        int topdeg = 0;
        for (const auto& [m, c] : rem.terms_) topdeg = std::max(topdeg, m[piv]);
        if (topdeg == 0) break;
        Polynomial sliver(rank());
        for (const auto& [m, c] : rem.terms_) {
            if (m[piv] != topdeg) continue;
            Monomial q = m;
            q[piv] -= 1;
            sliver.add_term(q, c / pivc);
        }
        quot = quot + sliver;
        rem = rem - alpha * sliver;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return Rational(0);
    Int g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        g = boost::multiprecision::gcd(g, c.num < 0 ? Int(-c.num) : c.num);
        l = l / boost::multiprecision::gcd(l, c.den) * c.den;
    }
    Rational content(g, l);
    if (terms_.begin()->second.sign() < 0) content = -content;
    return content;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        auto var = [&](size_t i) {
            return i == 0 ? std::string("d") : "e" + std::to_string(i);
        };
        for (size_t i = 0; i < m.size(); ++i) {
            for (int k = 0; k < m[i]; ++k) {
                if (!mono.empty()) mono += "*";
                mono += var(i);
            }
        }
        Rational a = c.abs();
        std::string coef = a.str();
        std::string term;
        if (mono.empty()) term = coef;
        else if (coef == "1") term = mono;
        else term = coef + "*" + mono;
        if (s.empty()) s = (c.sign() < 0 ? "-" : "") + term;
        else s += (c.sign() < 0 ? " - " : " + ") + term;
    }
    return s;
}

bool divides(const Character& a, const Polynomial& p) {
    if (a.is_zero()) throw std::invalid_argument("divides: zero character rejected");
    return p.divide_by_character(a).has_value();
}

} // namespace qgkm
