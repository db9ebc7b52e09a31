#pragma once

#include "qgkm/momentgraph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgkm {

// one polynomial per fixed point of a moment graph, indexed like g.points
struct EquivariantClass {
    std::vector<Polynomial> entries;
};

struct GkmReport {
    bool ok{true};
    std::vector<std::string> violations;
};

GkmReport gkm_check(const EquivariantClass& f, const MomentGraph& g);

// Euler class at a smooth-certified point: (-1)^dim * prod(tangent chars),
// outgoing edges contribute +label, incoming -label. Refuses when the degree
// of the point differs from dim.
RationalFunction euler_smooth(const MomentGraph& g, int point, int dim);
// inverse form, kept factored
RationalFunction inv_euler_smooth(const MomentGraph& g, int point, int dim);

// Desingularization component realized upstairs: moment graph of the
// cylinder Grassmannian restricted to the connected component over the
// stratum, with the projection to downstairs fixed points.
struct UpstairsData {
    DesingComponent comp;
    MomentGraph graph;              // full upstairs moment graph
    std::vector<int> members;       // points of the chosen connected component
    std::vector<int> res_point;     // per upstairs point: downstairs index or -1
    int dim{0};                     // component dimension
    bool smooth_certified{false};   // all member degrees equal dim
};

UpstairsData build_upstairs(const NilpotentRep& m, const DesingComponent& comp,
                            const MomentGraph& downstairs);

struct ResolutionEuler {
    RationalFunction inverse;                 // sum of upstairs inverse Euler classes
    std::optional<RationalFunction> euler;    // reciprocal when the sum inverts cleanly
};

ResolutionEuler euler_via_resolution(const MomentGraph& downstairs, int point,
                                     const std::vector<UpstairsData>& comps);

// filtration = ordering of the fixed points; Z_i is the union of the first
// i attracting cells
struct Filtration {
    std::vector<int> order; // point indices
};

Filtration default_filtration(const MomentGraph& g);
bool filtration_is_admissible(const MomentGraph& g, const Filtration& f, std::string* why = nullptr);

// (point, subvariety id) -> inverse Euler class. Ids: "Z_i", "component:...",
// "cell-closure:...". Inverses are stored because sums over branches and
// resolutions live on the inverse side; smooth entries are scalar/product.
struct EulerTable {
    std::map<std::pair<int, std::string>, RationalFunction> inv;
    std::vector<std::pair<int, std::string>> undetermined;

    bool has(int point, const std::string& id) const { return inv.count({point, id}) > 0; }
    const RationalFunction& get(int point, const std::string& id) const;
};

struct EulerBuildLog {
    std::vector<std::string> notes;
};

// Populates "Z_i" entries (and the per-branch entries backing them) for the
// given filtration: each Z_i decomposes into closures of its maximal cells;
// stratum closures are handled by the resolution formula, other cell
// closures by the smooth product formula when the induced subgraph
// certifies smoothness, anything else is reported undetermined.
EulerTable build_euler_table(const MomentGraph& downstairs, const Filtration& filt,
                             const NilpotentRep& m, const DimVector& e,
                             EulerBuildLog* log = nullptr);

RationalFunction local_index(const EquivariantClass& f, int i, const MomentGraph& g,
                             const Filtration& filt, const EulerTable& eu);

std::vector<EquivariantClass> basis_solve(const MomentGraph& g, const Filtration& filt,
                                          const EulerTable& eu);

struct BasisClassReport {
    bool gkm_ok{true};
    bool triangular{true};
    bool diagonal_ok{true};  // unsigned diagonal = prod of outgoing labels
    bool homogeneous{true};
    int diagonal_degree{0};
    int cell_dim{0};
    std::vector<std::string> notes;
};

struct BasisReport {
    bool all_ok{true};
    std::vector<BasisClassReport> classes;
    bool free_basis_certificate{true}; // nonzero diagonal product
    std::vector<std::string> notes;
};

BasisReport basis_verify(const std::vector<EquivariantClass>& classes, const MomentGraph& g,
                         const Filtration& filt, const EulerTable* eu = nullptr);

} // namespace qgkm
