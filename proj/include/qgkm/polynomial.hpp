#pragma once

#include "qgkm/character.hpp"
#include "qgkm/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgkm {

// Exponent vector over (delta, eps_1..eps_d); index 0 is delta.
using Monomial = std::vector<int>;

// Sparse polynomial with rational coefficients over the character lattice
// generators. No zero coefficients are stored.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int d) : nvars_(d + 1) {}

    static Polynomial constant(int d, const Rational& c);
    static Polynomial from_character(const Character& a);

    int nvars() const { return nvars_; }
    int rank() const { return nvars_ - 1; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    bool operator<(const Polynomial& o) const;

    int total_degree() const; // -1 for the zero polynomial
    bool is_homogeneous() const;
    // constant c with *this == constant(c), if it is one
    std::optional<Rational> as_constant() const;
    // the character a with *this == a (degree-1 homogeneous, integral after
    // clearing content is not required; coefficients must be integers)
    std::optional<Character> as_character() const;

    Rational eval(const std::vector<Rational>& point) const;

    // exact division by a nonzero linear form; nullopt if not divisible
    std::optional<Polynomial> divide_by_character(const Character& a) const;

    // gcd of coefficient numerators / lcm of denominators, sign of the
    // leading (map-order smallest) term; zero polynomial yields 0
    Rational content() const;

    std::string str() const;

private:
    int nvars_{1};
    std::map<Monomial, Rational> terms_;
    void match(const Polynomial& o) const;
};

// Thm GKM membership primitive: true iff p lies in the ideal (a).
bool divides(const Character& a, const Polynomial& p);

} // namespace qgkm
