#pragma once

#include "qgkm/cyclequiver.hpp"
#include "qgkm/cylinder.hpp"
#include "qgkm/ratfunc.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qgkm {

// Uniform coordinate model for torus fixed point and moment graph
// computations: labelled basis with site (ambient grid vertex), weight and
// up to two arrow images per label. Covers cycle coefficient quivers,
// cylinder representations and their coordinate subquotients.
struct GradedRep {
    int n_sites{0};
    std::vector<std::string> site_names;
    std::vector<int> site;              // per label
    std::vector<Character> weight;      // per label
    std::vector<std::array<int, 2>> out; // arrow images, -1 = maps to zero
    std::vector<std::string> names;     // per label
    int torus_rank{0};                  // d

    std::vector<int> site_dims() const;
    // weight differences of distinct labels on a common site
    std::vector<Character> candidate_labels() const;
};

GradedRep graded_rep(const CoefficientQuiver& q);
GradedRep graded_rep(const CylinderRep& w);

// successor-closed label subsets with the prescribed site counts,
// deterministically ordered (lexicographic label lists)
std::vector<std::vector<int>> closed_subsets(const GradedRep& rep, const std::vector<int>& target);

struct FixedPoint {
    std::vector<int> labels; // sorted
};

struct Edge {
    int source{-1}; // attracting end
    int target{-1};
    Character label; // pairing-positive
    std::vector<std::pair<int, int>> matching; // (label in source, label in target)
};

struct MomentGraph {
    GradedRep rep;
    std::vector<int> target;
    Cocharacter chi;
    std::vector<FixedPoint> points;
    std::vector<Edge> edges;
    std::vector<int> order;  // topological, targets first
    int ambient_dim() const; // max cell dimension

    std::vector<int> outdeg() const;
    std::vector<int> indeg() const;
    int point_index(const std::vector<int>& labels) const;
    std::vector<std::vector<int>> out_neighbors() const;
    // edge-DAG reachability from a point (includes the point)
    std::vector<int> reachable(int p) const;
};

// deterministic generic cocharacter adapted to the summand lengths; the
// "lengths" argument fixes the epsilon spacing, candidates are verified
Cocharacter choose_cocharacter(int d, const std::vector<int>& lengths,
                               const std::vector<Character>& candidates);

MomentGraph moment_graph(const GradedRep& rep, const std::vector<int>& target,
                         const Cocharacter& chi, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

std::vector<int> cells(const MomentGraph& g);
std::vector<long long> poincare_polynomial(const MomentGraph& g);

struct SmoothnessRow {
    int point{-1};
    int degree{0};
    int cell_dim{0};
    bool singular_candidate{false}; // degree exceeds the ambient dimension
    bool gkm_regular{true};         // adjacent labels pairwise non-proportional
};

std::vector<SmoothnessRow> smoothness_report(const MomentGraph& g, int ambient_dim);

enum class GraphFormat { dot, tikz, json };
std::string export_graph(const MomentGraph& g, GraphFormat fmt);

// connected components of the undirected edge graph
std::vector<std::vector<int>> graph_components(const MomentGraph& g);

} // namespace qgkm
