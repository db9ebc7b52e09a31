#pragma once

#include "qgkm/gkm.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace qgkm {

Character parse_character(const std::string& text, int d);
Polynomial parse_polynomial(const std::string& text, int d);
RationalFunction parse_ratfunc(const std::string& text, int d);

struct SessionConfig {
    int n{0};
    int bound{0};
    std::vector<Summand> summands;
    DimVector e;
    std::string gsub_mode{"heuristic"}; // lemma410 | explicit | heuristic
    std::vector<std::string> explicit_classes;
    std::vector<std::string> commands; // empty = all
    std::vector<std::string> formats{"json"};
    std::uint64_t seed{20240915ULL};
    std::string out_dir;
    std::optional<std::string> user_euler_json;
    std::optional<std::string> user_basis_json;
    std::optional<std::vector<int>> filtration; // 1-based positions in default order

    static SessionConfig from_json_file(const std::string& path);
    static SessionConfig from_json_text(const std::string& text);
    static SessionConfig from_inline(const std::string& text); // "n=2; U(1,4)+...; e=2,2"
};

struct Report {
    std::string json; // deterministic rendering
    int status{0};
};

Report run(const SessionConfig& config);

// full pipeline state, reusable by tests and bindings
struct Pipeline {
    NilpotentRep m;
    DimVector e;
    CoefficientQuiver quiver;
    GradedRep rep;
    Cocharacter chi;
    MomentGraph graph;

    Pipeline(const NilpotentRep& m_, const DimVector& e_, std::uint64_t seed = 20240915ULL);

    std::vector<NilpotentRep> point_types() const;
    Filtration filtration() const { return default_filtration(graph); }
};

} // namespace qgkm
