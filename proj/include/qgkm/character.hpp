#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgkm {

// Integral linear combination of the torus characters delta, eps_1..eps_d.
// The lattice rank d is fixed per session.
struct Character {
    long long delta{0};
    std::vector<long long> eps;

    Character() = default;
    explicit Character(int d) : eps(d, 0) {}
    Character(long long de, std::vector<long long> e) : delta(de), eps(std::move(e)) {}

    static Character eps_i(int d, int i) {
        Character c(d);
        c.eps.at(i - 1) = 1;
        return c;
    }
    static Character delta_char(int d) {
        Character c(d);
        c.delta = 1;
        return c;
    }

    int rank() const { return (int)eps.size(); }
    bool is_zero() const {
        if (delta != 0) return false;
        for (auto v : eps) if (v != 0) return false;
        return true;
    }

    Character operator+(const Character& o) const {
        check(o);
        Character r = *this;
        r.delta += o.delta;
        for (size_t i = 0; i < eps.size(); ++i) r.eps[i] += o.eps[i];
        return r;
    }
    Character operator-(const Character& o) const {
        check(o);
        Character r = *this;
        r.delta -= o.delta;
        for (size_t i = 0; i < eps.size(); ++i) r.eps[i] -= o.eps[i];
        return r;
    }
    Character operator-() const {
        Character r = *this;
        r.delta = -r.delta;
        for (auto& v : r.eps) v = -v;
        return r;
    }
    Character operator*(long long k) const {
        Character r = *this;
        r.delta *= k;
        for (auto& v : r.eps) v *= k;
        return r;
    }

    bool operator==(const Character& o) const { return delta == o.delta && eps == o.eps; }
    bool operator!=(const Character& o) const { return !(*this == o); }
    bool operator<(const Character& o) const {
        if (eps != o.eps) return eps < o.eps;
        return delta < o.delta;
    }

    // Proportionality over Q, used by the GKM-regularity test.
    bool proportional_to(const Character& o) const {
        check(o);
        long long c1 = 0, c2 = 0; // cross-ratio witnesses
        auto upd = [&](long long a, long long b) -> bool {
            if (c1 == 0 && c2 == 0) { c1 = a; c2 = b; return true; }
            return a * c2 == b * c1;
        };
        if (!upd(delta, o.delta)) return false;
        for (size_t i = 0; i < eps.size(); ++i)
            if (!upd(eps[i], o.eps[i])) return false;
        return true;
    }

    // Sign normalization: first nonzero coordinate in (eps_1..eps_d, delta) positive.
    // Returns +1 if unchanged, -1 if flipped.
    int normalize_sign() {
        long long lead = 0;
        for (auto v : eps) if (v != 0) { lead = v; break; }
        if (lead == 0) lead = delta;
        if (lead < 0) { *this = -*this; return -1; }
        return 1;
    }

    // "e3-e2", "e1-e2+3d"; with star=true, "e1-e2+3*d" (the form used inside
    // rational function renderings)
    std::string str(bool star = false) const {
        std::string s;
        auto term = [&](long long c, const std::string& v) {
            if (c == 0) return;
            if (s.empty()) {
                if (c == -1) s += "-";
                else if (c != 1) s += std::to_string(c) + (star ? "*" : "");
            } else {
                s += (c > 0) ? "+" : "-";
                long long a = c > 0 ? c : -c;
                if (a != 1) s += std::to_string(a) + (star ? "*" : "");
            }
            s += v;
        };
        for (size_t i = 0; i < eps.size(); ++i)
            if (eps[i] > 0) term(eps[i], "e" + std::to_string(i + 1));
        for (size_t i = 0; i < eps.size(); ++i)
            if (eps[i] < 0) term(eps[i], "e" + std::to_string(i + 1));
        term(delta, "d");
        return s.empty() ? "0" : s;
    }

private:
    void check(const Character& o) const {
        if (eps.size() != o.eps.size())
            throw std::invalid_argument("Character: rank mismatch");
    }
};

// One-parameter subgroup; pairs integrally with characters.
struct Cocharacter {
    long long delta{0};
    std::vector<long long> eps;

    Cocharacter() = default;
    Cocharacter(long long de, std::vector<long long> e) : delta(de), eps(std::move(e)) {}
    int rank() const { return (int)eps.size(); }
};

inline long long pairing(const Cocharacter& chi, const Character& a) {
    if (chi.eps.size() != a.eps.size())
        throw std::invalid_argument("pairing: rank mismatch");
    long long s = chi.delta * a.delta;
    for (size_t i = 0; i < a.eps.size(); ++i) s += chi.eps[i] * a.eps[i];
    return s;
}

} // namespace qgkm
