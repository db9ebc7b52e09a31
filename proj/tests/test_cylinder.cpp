#include <doctest.h>

#include "golden.hpp"

#include <map>
#include <set>

#include <random>

using namespace qgkm;

namespace {

int site(const CylinderRep& w, int i, int k) { return w.quiver.site(i, k); }

NilpotentRep random_rep(std::mt19937_64& rng) {
    int n = 1 + (int)(rng() % 4);
    int N = 1 + (int)(rng() % 5);
    int cnt = 1 + (int)(rng() % 4);
    std::vector<Summand> parts;
    for (int c = 0; c < cnt; ++c)
        parts.push_back({1 + (int)(rng() % n), 1 + (int)(rng() % N)});
    return NilpotentRep(n, parts, N);
}

} // namespace

TEST_CASE("lambda dimension grids") {
    // two 2-strings on the 2-cycle
    NilpotentRep m(2, {{2, 2}, {1, 2}}, 2);
    CylinderRep w = lambda(m);
    auto d = w.dims();
    CHECK(d[site(w, 1, 1)] == 2);
    CHECK(d[site(w, 2, 1)] == 2);
    CHECK(d[site(w, 1, 2)] == 1);
    CHECK(d[site(w, 2, 2)] == 1);

    // a simple has no higher levels
    NilpotentRep s(3, {{2, 1}}, 3);
    auto ds = lambda(s).dims();
    for (int i = 1; i <= 3; ++i)
        for (int k = 2; k <= 3; ++k) CHECK(ds[(k - 1) * 3 + (i - 1)] == 0);

    // the 4-string over the 2-cycle
    NilpotentRep u(2, {{1, 4}}, 4);
    CylinderRep wu = lambda(u);
    auto du = wu.dims();
    CHECK(du == CylinderDimVector{2, 2, 2, 1, 1, 1, 1, 0});
}

TEST_CASE("lambda dims are beta-monotone and alpha-feasible") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        NilpotentRep m = random_rep(rng);
        CylinderRep w = lambda(m);
        auto d = w.dims();
        CycleQuiver cyc{m.quiver.n};
        for (int i = 1; i <= m.quiver.n; ++i)
            for (int k = 2; k <= m.bound; ++k) {
                CHECK(d[w.quiver.site(i, k)] <= d[w.quiver.site(cyc.reduce(i + 1), k - 1)]);
                CHECK(d[w.quiver.site(i, k)] <= d[w.quiver.site(i, k - 1)]);
            }
    }
}

TEST_CASE("res inverts lambda") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial)
        CHECK(res_lambda_is_identity(random_rep(rng)));
    // on label subsets, res is the level-1 intersection
    NilpotentRep m = golden::rep();
    CylinderRep w = lambda(m);
    CHECK(res_labels(w, {}).empty());
    int l1 = w.index_of({1, 2, 1});
    int l2 = w.index_of({1, 2, 2});
    auto r = res_labels(w, {l1, l2});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == BasisVector{1, 2});
}

TEST_CASE("simple, projective and injective dimension grids") {
    CylinderQuiver q{4, 4};
    CHECK(total_dim(proj_inj_simple(q, {ProjInjKind::simple, 2, 3})) == 1);
    // the projective at level 3 covers the printed staircase
    auto p = proj_inj_simple(q, {ProjInjKind::projective, 1, 3});
    CHECK(total_dim(p) == 7);
    CHECK(p[q.site(1, 3)] == 1);
    CHECK(p[q.site(1, 4)] == 1);
    CHECK(p[q.site(2, 2)] == 1);
    CHECK(p[q.site(2, 3)] == 1);
    CHECK(p[q.site(3, 1)] == 1);
    CHECK(p[q.site(3, 2)] == 1);
    CHECK(p[q.site(4, 1)] == 1);
    // the mirrored injective support
    auto inj = proj_inj_simple(q, {ProjInjKind::injective, 1, 1});
    CHECK(total_dim(inj) == 10);
    // anchors one past the top level give the zero object
    CHECK(total_dim(proj_inj_simple(q, {ProjInjKind::projective, 1, 5})) == 0);
    CHECK(total_dim(proj_inj_simple(q, {ProjInjKind::injective, 1, 5})) == 0);
}

TEST_CASE("four-term alternating dimension identity for simples") {
    for (int n = 1; n <= 4; ++n)
        for (int N = 2; N <= 5; ++N) {
            CylinderQuiver q{n, N};
            for (int i = 1; i <= n; ++i)
                for (int k = 2; k <= N; ++k) {
                    auto S = proj_inj_simple(q, {ProjInjKind::simple, i, k});
                    auto P = proj_inj_simple(q, {ProjInjKind::projective, i, k});
                    auto A = proj_inj_simple(q, {ProjInjKind::projective, i + 1, k - 1});
                    auto B = proj_inj_simple(q, {ProjInjKind::projective, i, k + 1});
                    auto C = proj_inj_simple(q, {ProjInjKind::projective, i + 1, k});
                    for (int s = 0; s < q.num_sites(); ++s)
                        CHECK(P[s] == S[s] + A[s] + B[s] - C[s]);
                }
        }
}

TEST_CASE("resolution dimension identities hold") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        auto rep = resolution_check(random_rep(rng));
        CHECK(rep.ok);
        if (!rep.ok)
            for (const auto& f : rep.failures) MESSAGE(f);
    }
    // the longest string is projective: its resolution degenerates
    NilpotentRep u(2, {{1, 4}}, 4);
    CylinderQuiver q{2, 4};
    auto p11 = proj_inj_simple(q, {ProjInjKind::projective, 1, 1});
    CHECK(lambda(u).dims() == p11);
    CHECK(resolution_check(u).ok);
    // the zero representation passes vacuously
    CHECK(resolution_check(NilpotentRep(2, {}, 4)).ok);
}

TEST_CASE("gsub component counts in the rigid setting") {
    // one string ending at each vertex, lengths w*n
    for (int n = 2; n <= 3; ++n)
        for (int w = 1; w <= 2; ++w) {
            std::vector<Summand> parts;
            CycleQuiver cyc{n};
            for (int i = 1; i <= n; ++i) parts.push_back({cyc.reduce(i + 1), w * n});
            NilpotentRep m(n, parts, w * n);
            for (int k = 0; k <= n; ++k) {
                DimVector e(n, w * k);
                auto g = gsub(m, e, GsubMode::lemma410);
                long long binom = 1;
                for (int j = 0; j < k; ++j) binom = binom * (n - j) / (j + 1);
                CHECK((long long)g.classes.size() == binom);
                for (const auto& cls : g.classes)
                    CHECK(stratum_dim(cls, m) == w * k * (n - k));
            }
        }
}

TEST_CASE("gsub explicit accepts the maximal strata of the running example") {
    NilpotentRep m = golden::rep();
    NilpotentRep c8(2, {{1, 4}}, 4);
    NilpotentRep c7(2, {{1, 1}, {2, 3}}, 4);
    NilpotentRep c5(2, {{2, 2}, {2, 2}}, 4);
    auto g = gsub(m, golden::e(), GsubMode::explicit_list, {c8, c7, c5});
    CHECK(g.classes.size() == 3);
    CHECK_FALSE(g.heuristic);
    // a class that is no fixed point type is rejected
    NilpotentRep bogus(2, {{1, 2}, {1, 2}}, 4);
    CHECK_THROWS(gsub(m, golden::e(), GsubMode::explicit_list, {bogus}));
    // the whole representation is the single class at full dimension vector
    auto gm = gsub(m, dimension_vector(m), GsubMode::heuristic);
    REQUIRE(gm.classes.size() == 1);
    CHECK(gm.classes[0].iso_equal(m));
}

TEST_CASE("gsub heuristic recovers the components of the running example") {
    NilpotentRep m = golden::rep();
    auto g = gsub(m, golden::e(), GsubMode::heuristic);
    CHECK(g.heuristic);
    REQUIRE(g.classes.size() == 3);
    std::vector<int> dims;
    for (const auto& c : g.classes) dims.push_back(stratum_dim(c, m));
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{2, 2, 3});
}

TEST_CASE("desing components of the running example") {
    NilpotentRep m = golden::rep();
    NilpotentRep c8(2, {{1, 4}}, 4);
    NilpotentRep c7(2, {{1, 1}, {2, 3}}, 4);
    NilpotentRep c5(2, {{2, 2}, {2, 2}}, 4);
    auto g = gsub(m, golden::e(), GsubMode::explicit_list, {c8, c7, c5});
    auto comps = desing_components(m, golden::e(), g);
    REQUIRE(comps.size() == 3);
    CylinderRep w = lambda(m);
    GradedRep rep = graded_rep(w);
    std::vector<size_t> counts;
    for (const auto& c : comps) counts.push_back(closed_subsets(rep, c.target).size());
    CHECK(counts == std::vector<size_t>{3, 6, 3});
}

TEST_CASE("fibers over fixed points") {
    NilpotentRep m = golden::rep();
    NilpotentRep c5(2, {{2, 2}, {2, 2}}, 4);
    GsubResult g;
    g.classes = {c5};
    auto comp = desing_components(m, golden::e(), g)[0];
    auto pts = golden::points();
    // the open-stratum point has a single point fiber
    auto f5 = fiber(m, comp, pts[4]);
    CHECK_FALSE(f5.empty);
    CHECK(f5.fixed_points == 1);
    CHECK(f5.dimension == 0);
    // the minimal point lies in the image of this component
    auto f1 = fiber(m, comp, pts[0]);
    CHECK_FALSE(f1.empty);
    CHECK(f1.fixed_points == 1);
    // the dense-stratum point of the ambient does not: dimension obstruction
    auto f8 = fiber(m, comp, pts[7]);
    CHECK(f8.empty);
}

TEST_CASE("every point is covered by some component") {
    NilpotentRep m = golden::rep();
    NilpotentRep c8(2, {{1, 4}}, 4);
    NilpotentRep c7(2, {{1, 1}, {2, 3}}, 4);
    NilpotentRep c5(2, {{2, 2}, {2, 2}}, 4);
    GsubResult g;
    g.classes = {c8, c7, c5};
    auto comps = desing_components(m, golden::e(), g);
    for (const auto& pt : golden::points()) {
        bool covered = false;
        for (const auto& c : comps)
            if (!fiber(m, c, pt).empty) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("tower profiles of the running example components") {
    NilpotentRep m = golden::rep();
    NilpotentRep c8(2, {{1, 4}}, 4);
    NilpotentRep c7(2, {{1, 1}, {2, 3}}, 4);
    GsubResult g;
    g.classes = {c8, c7};
    auto comps = desing_components(m, golden::e(), g);
    TowerProfile t8 = tower_profile(m, comps[0]);
    CHECK(t8.consistent);
    CHECK(t8.total_dim == 2);
    CHECK(t8.poincare == std::vector<long long>{1, 1, 1});
    TowerProfile t7 = tower_profile(m, comps[1]);
    CHECK(t7.consistent);
    CHECK(t7.total_dim == 3);
    CHECK(t7.poincare == std::vector<long long>{1, 2, 2, 1});
    // zero-dimensional component: empty tower
    NilpotentRep msmall(2, {{1, 1}}, 1);
    GsubResult gs;
    gs.classes = {msmall};
    auto cs = desing_components(msmall, dimension_vector(msmall), gs);
    TowerProfile t0 = tower_profile(msmall, cs[0]);
    CHECK(t0.total_dim == 0);
    CHECK(t0.factors.empty());
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(3, 1) == std::vector<long long>{1, 1, 1});
    CHECK(gaussian_binomial(3, 2) == std::vector<long long>{1, 1, 1});
    CHECK(gaussian_binomial(4, 2) == std::vector<long long>{1, 1, 2, 1, 1});
    CHECK(gaussian_binomial(2, 0) == std::vector<long long>{1});
}

TEST_CASE("attracting cells refine the strata") {
    // dense cells realize the stratum dimensions, type by type
    auto check_rep = [](const NilpotentRep& m, const DimVector& e) {
        Pipeline pl(m, e);
        auto od = pl.graph.outdeg();
        std::map<std::vector<std::pair<int, int>>, std::pair<int, int>> per_type;
        for (size_t p = 0; p < pl.graph.points.size(); ++p) {
            NilpotentRep t = iso_type(pl.graph.points[p].labels, pl.quiver);
            auto& slot = per_type[t.iso_key()];
            slot.first = std::max(slot.first, od[p]);
            slot.second = stratum_dim(t, m);
        }
        for (const auto& [key, v] : per_type) {
            CHECK(v.first == v.second);
            if (v.first != v.second) {
                NilpotentRep t(m.quiver.n, {}, m.bound);
                MESSAGE("type mismatch in " << m.str());
            }
        }
    };
    check_rep(golden::rep(), golden::e());
    // two components of unequal stratum dimension
    NilpotentRep m3(3, {{1, 2}, {1, 2}, {2, 2}, {2, 2}, {2, 2}, {3, 2}}, 2);
    check_rep(m3, {1, 2, 3});
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 1 + (int)(rng() % 3);
        int N = 1 + (int)(rng() % 3);
        std::vector<Summand> parts;
        int cnt = 1 + (int)(rng() % 3);
        for (int i = 0; i < cnt; ++i)
            parts.push_back({1 + (int)(rng() % n), 1 + (int)(rng() % N)});
        NilpotentRep m(n, parts, N);
        DimVector dm = dimension_vector(m);
        DimVector e(n);
        for (int i = 0; i < n; ++i) e[i] = (int)(rng() % (dm[i] + 1));
        check_rep(m, e);
    }
}

TEST_CASE("heuristic gsub finds both components of the three-vertex example") {
    NilpotentRep m(3, {{1, 2}, {1, 2}, {2, 2}, {2, 2}, {2, 2}, {3, 2}}, 2);
    DimVector e{1, 2, 3};
    Pipeline pl(m, e);
    CHECK(pl.graph.points.size() == 36);
    std::set<std::vector<std::pair<int, int>>> types;
    for (const auto& p : pl.graph.points)
        types.insert(iso_type(p.labels, pl.quiver).iso_key());
    CHECK(types.size() == 8);
    auto g = gsub(m, e, GsubMode::heuristic);
    REQUIRE(g.classes.size() == 2);
    std::multiset<int> dims;
    for (const auto& c : g.classes) dims.insert(stratum_dim(c, m));
    CHECK(dims == std::multiset<int>{5, 7});
    NilpotentRep n1(3, {{2, 2}, {2, 2}, {3, 2}}, 2);
    NilpotentRep n2(3, {{1, 2}, {2, 2}, {3, 1}, {3, 1}}, 2);
    bool has1 = false, has2 = false;
    for (const auto& c : g.classes) {
        if (c.iso_equal(n1)) has1 = true;
        if (c.iso_equal(n2)) has2 = true;
    }
    CHECK(has1);
    CHECK(has2);
}
