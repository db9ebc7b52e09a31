#pragma once

#include "qgkm/cyclequiver.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgkm {

// Vertices (i,k), i in Z_n, k in [N]; arrows a_{i,k}:(i,k)->(i,k+1) for k<N
// and b_{i,k}:(i,k)->(i+1,k-1) for k>=2.
struct CylinderQuiver {
    int n{1};
    int levels{1}; // N
    int site(int i, int k) const { // 0-based flat id for (i,k), both 1-based
        return (k - 1) * n + (i - 1);
    }
    std::pair<int, int> coords(int s) const { return {s % n + 1, s / n + 1}; }
    int num_sites() const { return n * levels; }
};

// grid of dims indexed by (i,k)
using CylinderDimVector = std::vector<int>;

// Label of the induced basis of a cylinder representation: base basis vector
// (summand, pos) of the underlying cycle representation at level k. Present
// iff the base vector has at least k-1 predecessors surviving in the rep.
struct CylLabel {
    int summand{1};
    int pos{1};
    int level{1};
    bool operator==(const CylLabel& o) const {
        return summand == o.summand && pos == o.pos && level == o.level;
    }
    bool operator<(const CylLabel& o) const {
        if (summand != o.summand) return summand < o.summand;
        if (pos != o.pos) return pos < o.pos;
        return level < o.level;
    }
};

// Coordinate model of a representation of the cylinder quiver carrying the
// label structure inherited from a cycle representation (the Lambda image,
// or a coordinate subquotient of one).
struct CylinderRep {
    NilpotentRep base;
    CylinderQuiver quiver;
    std::vector<CylLabel> labels;
    std::vector<int> alpha_img; // label index or -1
    std::vector<int> beta_img;  // label index or -1

    int index_of(const CylLabel& l) const;
    int site_of(int li) const;
    Character weight_of(int li) const; // weight of the base vector
    CylinderDimVector dims() const;
    std::string label_name(int li) const;
};

CylinderRep lambda(const NilpotentRep& m);

// level-1 restriction of a label subset of a CylinderRep (cycle labels(b))
std::vector<BasisVector> res_labels(const CylinderRep& w, const std::vector<int>& subset);
// res(lambda(M)) as a representation identity check
bool res_lambda_is_identity(const NilpotentRep& m);

enum class ProjInjKind { simple, projective, injective };

struct ProjInjSpec {
    ProjInjKind kind{ProjInjKind::simple};
    int i{1};
    int k{1};
};

// dimension grid of S_{i,k}, P_{i,k}, I_{i,k} via the push-down supports;
// anchors at level N+1 give the zero representation
CylinderDimVector proj_inj_simple(const CylinderQuiver& q, const ProjInjSpec& spec);
int total_dim(const CylinderDimVector& d);

struct ResolutionReport {
    bool ok{true};
    std::vector<std::string> failures;
};

// dimension-level exactness of the projective and injective resolutions of
// every summand's Lambda image
ResolutionReport resolution_check(const NilpotentRep& m);

enum class GsubMode { lemma410, explicit_list, heuristic };

struct GsubResult {
    std::vector<NilpotentRep> classes;
    bool heuristic{false};
};

GsubResult gsub(const NilpotentRep& m, const DimVector& e, GsubMode mode,
                const std::vector<NilpotentRep>& explicit_classes = {});

struct DesingComponent {
    NilpotentRep generic_type;
    CylinderDimVector target; // dim of Lambda(generic_type)
};

std::vector<DesingComponent> desing_components(const NilpotentRep& m, const DimVector& e,
                                               const GsubResult& g);

struct FiberResult {
    bool empty{true};
    CylinderDimVector target;   // dim N-hat minus dim U-hat (valid if !empty or counts work)
    long long fixed_points{0};
    int dimension{-1};          // max attracting cell dimension, -1 if empty
};

FiberResult fiber(const NilpotentRep& m, const DesingComponent& comp,
                  const std::vector<BasisVector>& downstairs_point);

struct TowerFactor {
    int i{1}, k{1};
    int sub{0}, amb{0}; // Gr(sub, C^amb)
    int dim() const { return sub * (amb - sub); }
};

struct TowerProfile {
    std::vector<TowerFactor> factors;
    int total_dim{0};
    std::vector<long long> poincare; // product of Gaussian binomials
    bool consistent{true};           // checked against the dense cell by callers
};

TowerProfile tower_profile(const NilpotentRep& m, const DesingComponent& comp);

std::vector<long long> gaussian_binomial(int n, int k);
std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b);

std::vector<int> lengths_of(const NilpotentRep& m);

// labels of Lambda(U) inside Lambda(M), for a successor-closed point U of M
std::vector<int> lambda_sublabels(const CylinderRep& w, const std::vector<BasisVector>& point);
// coordinate quotient by a closed label subset, with the induced arrows
CylinderRep quotient_rep(const CylinderRep& w, const std::vector<int>& sub);

} // namespace qgkm
