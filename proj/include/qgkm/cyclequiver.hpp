#pragma once

#include "qgkm/character.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgkm {

// Oriented cycle on n vertices, arrows i -> i+1 mod n. Vertices are 1-based
// like the torus coordinates; reduction helpers keep everything in [1, n].
struct CycleQuiver {
    int n{1};
    int reduce(int v) const {
        int r = (v - 1) % n;
        if (r < 0) r += n;
        return r + 1;
    }
};

using DimVector = std::vector<int>;

struct Summand {
    int start{1}; // vertex of the string head
    int len{1};
};

// Direct sum of strings U_i(l); summand order fixes the torus coordinates.
struct NilpotentRep {
    CycleQuiver quiver;
    std::vector<Summand> summands;
    int bound{1}; // nilpotency bound N, every len <= bound

    NilpotentRep() = default;
    NilpotentRep(int n, std::vector<Summand> s, int N = 0);

    int num_summands() const { return (int)summands.size(); }
    int total_dim() const;
    // iso-class key: sorted (start, len) multiset
    std::vector<std::pair<int, int>> iso_key() const;
    bool iso_equal(const NilpotentRep& o) const;
    std::string str() const; // "n=2; U(1,4)+U(2,2)+U(2,2); N=4"

    // vertex and torus weight of basis vector (summand c, position k), 1-based
    int vertex_of(int c, int k) const;
    Character weight_of(int c, int k) const;
};

// Basis vector of the coefficient quiver: summand index + position, 1-based.
struct BasisVector {
    int summand{1};
    int pos{1};
    bool operator==(const BasisVector& o) const { return summand == o.summand && pos == o.pos; }
    bool operator<(const BasisVector& o) const {
        if (summand != o.summand) return summand < o.summand;
        return pos < o.pos;
    }
};

// Disjoint strings on the basis vectors; arrows b -> succ(b).
struct CoefficientQuiver {
    const NilpotentRep* rep{nullptr};
    std::vector<BasisVector> vertices;
    // index into vertices, or -1
    std::vector<int> succ;
    std::vector<int> pred;

    int index_of(const BasisVector& b) const;
    int vertex_of(int vi) const;
    Character weight_of(int vi) const;
};

DimVector dimension_vector(const NilpotentRep& m);
CoefficientQuiver coefficient_quiver(const NilpotentRep& m);

// dim Hom(N, M) by exact linear algebra on the intertwiner equations
int hom_dim(const NilpotentRep& n, const NilpotentRep& m);

// dim Hom(N, M) - dim End(N); throws if negative
int stratum_dim(const NilpotentRep& n, const NilpotentRep& m);

// decomposes a successor-closed label set into strings (canonically sorted)
NilpotentRep iso_type(const std::vector<int>& labels, const CoefficientQuiver& q);

// "n=2; U(1,4)+U(2,2)+U(2,2); N=4" (N optional, defaults to max length)
NilpotentRep parse_nilpotent_rep(const std::string& text);

} // namespace qgkm
