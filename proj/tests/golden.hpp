#pragma once

// The running example shared across the test suites: the rank-2 cycle with
// M = U(1,4) + U(2,2) + U(2,2) and subspace dimensions e = (2,2).

#include "qgkm/session.hpp"

namespace golden {

inline qgkm::NilpotentRep rep() {
    return qgkm::NilpotentRep(2, {{1, 4}, {2, 2}, {2, 2}}, 4);
}

inline qgkm::DimVector e() { return {2, 2}; }

// fixed points as label sets (summand, pos), in the filtration order used
// throughout: p1..p8
inline std::vector<std::vector<qgkm::BasisVector>> points() {
    using B = qgkm::BasisVector;
    return {
        {B{1, 4}, B{2, 2}, B{3, 1}, B{3, 2}},           // p1
        {B{1, 4}, B{2, 1}, B{2, 2}, B{3, 2}},           // p2
        {B{1, 3}, B{1, 4}, B{3, 1}, B{3, 2}},           // p3
        {B{1, 3}, B{1, 4}, B{2, 1}, B{2, 2}},           // p4
        {B{2, 1}, B{2, 2}, B{3, 1}, B{3, 2}},           // p5
        {B{1, 2}, B{1, 3}, B{1, 4}, B{3, 2}},           // p6
        {B{1, 2}, B{1, 3}, B{1, 4}, B{2, 2}},           // p7
        {B{1, 1}, B{1, 2}, B{1, 3}, B{1, 4}},           // p8
    };
}

// graph-point index of golden point `gp` (0-based into points())
inline int point_index(const qgkm::MomentGraph& g, const qgkm::CoefficientQuiver& q, int gp) {
    auto pts = points();
    std::vector<int> labels;
    for (const auto& b : pts[gp]) labels.push_back(q.index_of(b));
    std::sort(labels.begin(), labels.end());
    return g.point_index(labels);
}

// the filtration in golden numbering
inline qgkm::Filtration filtration(const qgkm::MomentGraph& g, const qgkm::CoefficientQuiver& q) {
    qgkm::Filtration f;
    for (int i = 0; i < 8; ++i) f.order.push_back(point_index(g, q, i));
    return f;
}

} // namespace golden
