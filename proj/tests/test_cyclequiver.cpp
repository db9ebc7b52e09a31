#include <doctest.h>

#include "golden.hpp"

#include <random>

using namespace qgkm;

TEST_CASE("dimension vectors count basis vectors per vertex") {
    CHECK(dimension_vector(golden::rep()) == DimVector{4, 4});
    NilpotentRep s1(3, {{1, 1}});
    CHECK(dimension_vector(s1) == DimVector{1, 0, 0});
    NilpotentRep u13(2, {{1, 3}});
    CHECK(dimension_vector(u13) == DimVector{2, 1});
}

TEST_CASE("coefficient quiver carries strings and weights") {
    NilpotentRep m = golden::rep();
    CoefficientQuiver q = coefficient_quiver(m);
    CHECK(q.vertices.size() == 8);
    // string lengths 4, 2, 2 and the weight ladder along each arrow
    int arrows = 0;
    for (size_t i = 0; i < q.vertices.size(); ++i) {
        if (q.succ[i] < 0) continue;
        ++arrows;
        Character diff = q.weight_of(q.succ[i]) - q.weight_of((int)i);
        CHECK(diff == Character::delta_char(3));
    }
    CHECK(arrows == 5);
    CHECK(q.weight_of(q.index_of({1, 1})) == parse_character("e1", 3));
    CHECK(q.weight_of(q.index_of({1, 4})) == parse_character("e1+3d", 3));
    CHECK(q.weight_of(q.index_of({3, 2})) == parse_character("e3+d", 3));
    // a length-1 summand has no arrows
    NilpotentRep s(2, {{1, 1}});
    CoefficientQuiver qs = coefficient_quiver(s);
    CHECK(qs.succ[0] == -1);
}

TEST_CASE("hom_dim on simples and strings") {
    NilpotentRep s1(2, {{1, 1}}), s2(2, {{2, 1}});
    CHECK(hom_dim(s1, s1) == 1);
    CHECK(hom_dim(s1, s2) == 0);
    NilpotentRep u14(2, {{1, 4}});
    CHECK(hom_dim(u14, u14) == 2);
}

TEST_CASE("hom_dim closed form for string endomorphisms") {
    for (int n = 1; n <= 4; ++n)
        for (int l = 1; l <= 3 * n; ++l) {
            NilpotentRep u(n, {{1, l}}, l);
            CHECK(hom_dim(u, u) == (l + n - 1) / n);
        }
}

TEST_CASE("hom_dim is additive in direct sums") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + (int)(rng() % 3);
        auto rand_summand = [&]() { return Summand{1 + (int)(rng() % n), 1 + (int)(rng() % 4)}; };
        Summand a = rand_summand(), b = rand_summand(), c = rand_summand();
        NilpotentRep A(n, {a}, 4), B(n, {b}, 4), C(n, {c}, 4);
        NilpotentRep AB(n, {a, b}, 4);
        CHECK(hom_dim(AB, C) == hom_dim(A, C) + hom_dim(B, C));
        CHECK(hom_dim(C, AB) == hom_dim(C, A) + hom_dim(C, B));
    }
}

TEST_CASE("stratum dimensions of the running example") {
    NilpotentRep m = golden::rep();
    // the five types realized by fixed points, with their stratum dimensions
    NilpotentRep v1(2, {{1, 4}}, 4);
    NilpotentRep v2(2, {{1, 1}, {2, 3}}, 4); // the three-dimensional open stratum
    NilpotentRep v3(2, {{2, 2}, {2, 2}}, 4);
    NilpotentRep v4(2, {{1, 2}, {2, 2}}, 4);
    NilpotentRep v5(2, {{1, 1}, {2, 1}, {2, 2}}, 4);
    CHECK(stratum_dim(v1, m) == 2);
    CHECK(stratum_dim(v2, m) == 3);
    CHECK(hom_dim(v2, m) - hom_dim(v2, v2) == 3);
    CHECK(stratum_dim(v3, m) == 2);
    CHECK(stratum_dim(v4, m) == 2);
    CHECK(stratum_dim(v5, m) == 1);
    CHECK(stratum_dim(m, m) == 0);
    // the mirror-labelled class has a one-dimensional stratum instead
    NilpotentRep v2_mirror(2, {{2, 1}, {1, 3}}, 4);
    CHECK(stratum_dim(v2_mirror, m) == 1);
}

TEST_CASE("iso_type decomposes closed label sets") {
    NilpotentRep m = golden::rep();
    CoefficientQuiver q = coefficient_quiver(m);
    auto pts = golden::points();
    std::vector<int> p1;
    for (const auto& b : pts[0]) p1.push_back(q.index_of(b));
    NilpotentRep t = iso_type(p1, q);
    CHECK(t.iso_equal(NilpotentRep(2, {{1, 1}, {2, 1}, {2, 2}}, 4)));
    // dimension vector of the type equals the vertex counts of the set
    CHECK(dimension_vector(t) == DimVector{2, 2});
    // full set and empty set
    std::vector<int> all(q.vertices.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
    CHECK(iso_type(all, q).iso_equal(m));
    CHECK(iso_type({}, q).total_dim() == 0);
    // a non-closed set is rejected
    CHECK_THROWS(iso_type({q.index_of({1, 1})}, q));
}

TEST_CASE("textual form round-trips") {
    NilpotentRep m = golden::rep();
    CHECK(m.str() == "n=2; U(1,4)+U(2,2)+U(2,2); N=4");
    NilpotentRep m2 = parse_nilpotent_rep(m.str());
    CHECK(m2.iso_equal(m));
    CHECK(m2.bound == 4);
}

TEST_CASE("stratum_dim rejects non-subrepresentation types") {
    // the target is too small to receive the source: negative defect
    NilpotentRep m(2, {{1, 1}}, 4);
    NilpotentRep big(2, {{1, 4}}, 4);
    CHECK_THROWS(stratum_dim(big, m));
}
