#pragma once

#include "qgkm/polynomial.hpp"

#include <map>
#include <string>
#include <vector>

namespace qgkm {

// scalar * num / prod(factor^mult). Denominator factors are nonzero linear
// characters stored sign-normalized (normalize_sign), flips absorbed into
// the scalar. Canonical form cancels every denominator factor that divides
// the numerator and pulls the numerator content into the scalar.
class RationalFunction {
public:
    RationalFunction() = default;
    explicit RationalFunction(int d) : rank_(d), num_(Polynomial::constant(d, Rational(0))) {}

    static RationalFunction zero(int d) { return RationalFunction(d); }
    static RationalFunction from_scalar(int d, const Rational& c);
    static RationalFunction from_poly(const Polynomial& p);
    // scalar / prod(chars): the shape of an inverse Euler class at a smooth point
    static RationalFunction reciprocal_product(const Rational& c, const std::vector<Character>& chars);

    int rank() const { return rank_; }
    bool is_zero() const { return scalar_.is_zero(); }
    const Rational& scalar() const { return scalar_; }
    const Polynomial& numerator() const { return num_; }
    const std::map<Character, int>& denominator() const { return den_; }
    int denominator_degree() const;

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator*(const Rational& c) const;
    RationalFunction mul_poly(const Polynomial& p) const;
    RationalFunction reciprocal() const; // requires a pure product numerator
    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    // equality up to overall sign (golden comparisons)
    bool equals_unsigned(const RationalFunction& o) const;

    // the polynomial it equals, if denominator-free after canonicalization
    std::optional<Polynomial> as_polynomial() const;

    Rational eval(const std::vector<Rational>& point) const;

    // "2*d / ((e3-e2)*(e2-e1-d)*(e1-e2+3*d))"; factor signs flipped to
    // pairing-positive when a cocharacter is supplied
    std::string str(const Cocharacter* chi = nullptr) const;

private:
    int rank_{0};
    Rational scalar_{0};
    Polynomial num_;
    std::map<Character, int> den_;
    void canonicalize();
    friend RationalFunction rf_sum(const std::vector<RationalFunction>& terms);
};

RationalFunction rf_sum(const std::vector<RationalFunction>& terms);

// Peels linear factors off a polynomial: scalar * prod(chars), with chars
// sign-normalized. Candidate forms are taken from the polynomial itself
// (degree-1 case) and from the supplied pool. Returns nullopt when a
// nonlinear residue remains that no candidate divides.
std::optional<std::pair<Rational, std::map<Character, int>>>
factor_linear(const Polynomial& p, const std::vector<Character>& pool);

} // namespace qgkm
