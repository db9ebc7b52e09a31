#include "qgkm/gkm.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgkm {

GkmReport gkm_check(const EquivariantClass& f, const MomentGraph& g) {
    if (f.entries.size() != g.points.size())
        throw std::invalid_argument("gkm_check: class index mismatch");
    GkmReport rep;
    for (const auto& e : g.edges) {
        Polynomial diff = f.entries[e.source] - f.entries[e.target];
        if (diff.is_zero()) continue;
        if (!divides(e.label, diff)) {
            rep.ok = false;
            std::ostringstream os;
            os << "edge " << e.source << "->" << e.target << " label " << e.label.str()
               << " does not divide the difference";
            rep.violations.push_back(os.str());
        }
    }
    return rep;
}

namespace {

std::vector<Character> tangent_chars(const MomentGraph& g, int point) {
    std::vector<Character> chars;
    for (const auto& e : g.edges) {
        if (e.source == point) chars.push_back(e.label);
        else if (e.target == point) chars.push_back(-e.label);
    }
    return chars;
}

} // namespace

RationalFunction euler_smooth(const MomentGraph& g, int point, int dim) {
    return inv_euler_smooth(g, point, dim).reciprocal();
}

RationalFunction inv_euler_smooth(const MomentGraph& g, int point, int dim) {
    auto chars = tangent_chars(g, point);
    if ((int)chars.size() != dim)
        throw std::invalid_argument("euler_smooth: degree differs from the claimed dimension, not certified smooth");
    Rational sign(dim % 2 == 0 ? 1 : -1);
    if (dim == 0) return RationalFunction::from_scalar(g.rep.torus_rank, Rational(1));
    return RationalFunction::reciprocal_product(sign, chars);
}

UpstairsData build_upstairs(const NilpotentRep& m, const DesingComponent& comp,
                            const MomentGraph& downstairs) {
    UpstairsData up;
    up.comp = comp;
    CylinderRep w = lambda(m);
    GradedRep rep = graded_rep(w);
    up.graph = moment_graph(rep, comp.target, downstairs.chi);
    // projection to downstairs points
    CoefficientQuiver q = coefficient_quiver(m);
    up.res_point.assign(up.graph.points.size(), -1);
    for (size_t yi = 0; yi < up.graph.points.size(); ++yi) {
        auto base = res_labels(w, up.graph.points[yi].labels);
        std::vector<int> idx;
        for (const auto& b : base) idx.push_back(q.index_of(b));
        std::sort(idx.begin(), idx.end());
        up.res_point[yi] = downstairs.point_index(idx);
    }
    // connected component over the stratum: the one containing the unique
    // preimage of a dense-stratum fixed point (injectivity over the stratum)
    auto comps = graph_components(up.graph);
    CoefficientQuiver qq = coefficient_quiver(m);
    int pick = -1;
    for (size_t ci = 0; ci < comps.size() && pick < 0; ++ci)
        for (int y : comps[ci]) {
            int p = up.res_point[y];
            if (p < 0) continue;
            NilpotentRep t = iso_type(downstairs.points[p].labels, qq);
            if (t.iso_equal(comp.generic_type)) { pick = (int)ci; break; }
        }
    if (pick < 0)
        throw std::logic_error("build_upstairs: no upstairs point lies over the stratum of " +
                               comp.generic_type.str());
    up.members = comps[pick];
    auto od = up.graph.outdeg();
    up.dim = 0;
    for (int y : up.members) up.dim = std::max(up.dim, od[y]);
    // smooth certificate: member degrees all equal the component dimension
    auto id = up.graph.indeg();
    up.smooth_certified = true;
    for (int y : up.members)
        if (od[y] + id[y] != up.dim) up.smooth_certified = false;
    return up;
}

ResolutionEuler euler_via_resolution(const MomentGraph& downstairs, int point,
                                     const std::vector<UpstairsData>& comps) {
    if (point < 0 || point >= (int)downstairs.points.size())
        throw std::invalid_argument("euler_via_resolution: bad point index");
    std::vector<RationalFunction> terms;
    for (const auto& up : comps) {
        if (!up.smooth_certified)
            throw std::invalid_argument("euler_via_resolution: upstairs component not smooth-certified");
        for (int y : up.members)
            if (up.res_point[y] == point)
                terms.push_back(inv_euler_smooth(up.graph, y, up.dim));
    }
    if (terms.empty())
        throw std::invalid_argument("euler_via_resolution: point is not in the image of any listed component");
    ResolutionEuler res;
    res.inverse = rf_sum(terms);
    auto fac = factor_linear(res.inverse.numerator(), {});
    if (fac) res.euler = res.inverse.reciprocal();
    return res;
}

Filtration default_filtration(const MomentGraph& g) {
    Filtration f;
    f.order = g.order;
    return f;
}

bool filtration_is_admissible(const MomentGraph& g, const Filtration& f, std::string* why) {
    if (f.order.size() != g.points.size()) {
        if (why) *why = "order size mismatch";
        return false;
    }
    std::vector<int> pos(g.points.size(), -1);
    for (size_t i = 0; i < f.order.size(); ++i) {
        int p = f.order[i];
        if (p < 0 || p >= (int)g.points.size() || pos[p] >= 0) {
            if (why) *why = "order is not a permutation";
            return false;
        }
        pos[p] = (int)i;
    }
    for (const auto& e : g.edges)
        if (pos[e.target] > pos[e.source]) {
            if (why) *why = "edge target placed after its source";
            return false;
        }
    return true;
}

const RationalFunction& EulerTable::get(int point, const std::string& id) const {
    auto it = inv.find({point, id});
    if (it == inv.end())
        throw std::out_of_range("euler class undetermined for (" + std::to_string(point) + ", " + id + ")");
    return it->second;
}

namespace {

struct Branch {
    int cell{-1};                       // defining point index
    std::string id;
    int dim{0};
    std::vector<int> members;           // downstairs point indices
    std::map<int, RationalFunction> mu; // inverse Euler class per member
    bool determined{true};
};

std::string classname(const NilpotentRep& r) {
    std::string s;
    auto key = r.iso_key();
    for (auto [i, l] : key) {
        if (!s.empty()) s += "+";
        s += "U(" + std::to_string(i) + "," + std::to_string(l) + ")";
    }
    return s.empty() ? "0" : s;
}

// smooth product policy on the induced subgraph of a member set
bool smooth_branch_values(const MomentGraph& g, const std::vector<int>& members, int dim,
                          std::map<int, RationalFunction>& mu) {
    std::set<int> memset(members.begin(), members.end());
    std::map<int, std::vector<Character>> chars;
    for (int p : members) chars[p] = {};
    for (const auto& e : g.edges) {
        if (!memset.count(e.source) || !memset.count(e.target)) continue;
        chars[e.source].push_back(e.label);
        chars[e.target].push_back(-e.label);
    }
    for (int p : members) {
        auto& cs = chars[p];
        if ((int)cs.size() != dim) return false;
        for (size_t a = 0; a < cs.size(); ++a)
            for (size_t b = a + 1; b < cs.size(); ++b)
                if (cs[a].proportional_to(cs[b])) return false;
    }
    Rational sign(dim % 2 == 0 ? 1 : -1);
    for (int p : members) {
        if (dim == 0) mu[p] = RationalFunction::from_scalar(g.rep.torus_rank, Rational(1));
        else mu[p] = RationalFunction::reciprocal_product(sign, chars[p]);
    }
    return true;
}

} // namespace

EulerTable build_euler_table(const MomentGraph& downstairs, const Filtration& filt,
                             const NilpotentRep& m, const DimVector& e,
                             EulerBuildLog* log) {
    std::string why;
    if (!filtration_is_admissible(downstairs, filt, &why))
        throw std::invalid_argument("build_euler_table: inadmissible filtration: " + why);
    auto note = [&](const std::string& s) {
        if (log) log->notes.push_back(s);
    };
    size_t npts = downstairs.points.size();
    auto od = downstairs.outdeg();
    CoefficientQuiver q = coefficient_quiver(m);
    // per point: iso type and stratum dimension
    std::vector<NilpotentRep> types;
    std::vector<int> sdim(npts, 0);
    for (size_t p = 0; p < npts; ++p) {
        types.push_back(iso_type(downstairs.points[p].labels, q));
        sdim[p] = stratum_dim(types[p], m);
    }
    // cache of upstairs data per iso class
    std::map<std::vector<std::pair<int, int>>, UpstairsData> upcache;
    auto upstairs_for = [&](const NilpotentRep& cls) -> const UpstairsData& {
        auto key = cls.iso_key();
        auto it = upcache.find(key);
        if (it != upcache.end()) return it->second;
        GsubResult gr;
        gr.classes = {cls};
        auto comps = desing_components(m, e, gr);
        UpstairsData up = build_upstairs(m, comps[0], downstairs);
        return upcache.emplace(key, std::move(up)).first->second;
    };

    // one branch per point: the closure of its attracting cell
    std::vector<Branch> branches(npts);
    for (size_t p = 0; p < npts; ++p) {
        Branch& br = branches[p];
        br.cell = (int)p;
        br.dim = od[p];
        if (od[p] == sdim[p]) {
            // stratum closure, resolved by the component of its own type
            br.id = "component:" + classname(types[p]);
            const UpstairsData& up = upstairs_for(types[p]);
            if (up.smooth_certified && up.dim == br.dim) {
                std::set<int> mem;
                for (int y : up.members) {
                    int x = up.res_point[y];
                    if (x < 0) continue;
                    mem.insert(x);
                    RationalFunction term = inv_euler_smooth(up.graph, y, up.dim);
                    auto it = br.mu.find(x);
                    if (it == br.mu.end()) br.mu[x] = term;
                    else it->second = rf_sum({it->second, term});
                }
                br.members.assign(mem.begin(), mem.end());
                note("Z-branch at cell " + std::to_string(p) + ": resolution via " + br.id);
                continue;
            }
            note("Z-branch at cell " + std::to_string(p) + ": resolution rejected (dim or certificate), trying product formula");
        }
        // cell closure: reachability members + smooth certificate
        br.id = "cell-closure:" + std::to_string(p);
        br.members = downstairs.reachable((int)p);
        if (smooth_branch_values(downstairs, br.members, br.dim, br.mu)) {
            note("Z-branch at cell " + std::to_string(p) + ": smooth-certified cell closure");
        } else {
            br.determined = false;
            br.mu.clear();
            note("Z-branch at cell " + std::to_string(p) + ": undetermined");
        }
    }

    EulerTable table;
    // record the per-branch entries
    for (const auto& br : branches)
        for (const auto& [x, v] : br.mu)
            table.inv[{x, br.id}] = v;

    // aggregate Z_i entries over the maximal branches of each prefix
    std::vector<int> pos(npts, 0);
    for (size_t i = 0; i < filt.order.size(); ++i) pos[filt.order[i]] = (int)i;
    for (size_t i = 0; i < filt.order.size(); ++i) {
        std::string zid = "Z_" + std::to_string(i + 1);
        // maximal cells among the first i+1
        std::vector<int> maximal;
        for (size_t a = 0; a <= i; ++a) {
            int pa = filt.order[a];
            bool dominated = false;
            for (size_t b = 0; b <= i && !dominated; ++b) {
                if (a == b) continue;
                int pb = filt.order[b];
                if (branches[pb].dim <= branches[pa].dim) continue;
                if (!branches[pb].determined) continue;
                if (std::binary_search(branches[pb].members.begin(), branches[pb].members.end(), pa))
                    dominated = true;
            }
            if (!dominated) maximal.push_back(pa);
        }
        for (size_t a = 0; a <= i; ++a) {
            int x = filt.order[a];
            std::vector<RationalFunction> terms;
            bool undet = false;
            for (int c : maximal) {
                const Branch& br = branches[c];
                if (!std::binary_search(br.members.begin(), br.members.end(), x) && c != x) continue;
                if (!br.determined) { undet = true; continue; }
                auto it = br.mu.find(x);
                if (it != br.mu.end()) terms.push_back(it->second);
                else if (c == x) undet = true;
            }
            if (undet || terms.empty()) {
                // either a branch through x is policy-(d), or x sits only on
                // dominated branches none of whose dominators carry it
                table.undetermined.push_back({x, zid});
                continue;
            }
            table.inv[{x, zid}] = rf_sum(terms);
        }
    }
    return table;
}

RationalFunction local_index(const EquivariantClass& f, int i, const MomentGraph& g,
                             const Filtration& filt, const EulerTable& eu) {
    if (f.entries.size() != g.points.size())
        throw std::invalid_argument("local_index: class index mismatch");
    std::string zid = "Z_" + std::to_string(i + 1);
    std::vector<RationalFunction> terms;
    for (int a = 0; a <= i; ++a) {
        int x = filt.order[a];
        if (f.entries[x].is_zero()) continue;
        const RationalFunction& mu = eu.get(x, zid);
        terms.push_back(mu.mul_poly(f.entries[x]));
    }
    return rf_sum(terms);
}

std::vector<EquivariantClass> basis_solve(const MomentGraph& g, const Filtration& filt,
                                          const EulerTable& eu) {
    size_t npts = g.points.size();
    int d = g.rep.torus_rank;
    std::vector<EquivariantClass> classes;
    for (size_t i = 0; i < npts; ++i) {
        EquivariantClass theta;
        theta.entries.assign(npts, Polynomial::constant(d, Rational(0)));
        // diagonal: Eu(x_i, Z_i)
        int xi = filt.order[i];
        RationalFunction diag = eu.get(xi, "Z_" + std::to_string(i + 1)).reciprocal();
        auto diagp = diag.as_polynomial();
        if (!diagp) throw std::logic_error("basis_solve: non-polynomial diagonal Euler class");
        theta.entries[xi] = *diagp;
        for (size_t j = i + 1; j < npts; ++j) {
            int xj = filt.order[j];
            std::string zid = "Z_" + std::to_string(j + 1);
            std::vector<RationalFunction> terms;
            for (size_t k = 0; k < j; ++k) {
                int xk = filt.order[k];
                if (theta.entries[xk].is_zero()) continue;
                terms.push_back(eu.get(xk, zid).mul_poly(theta.entries[xk]));
            }
            RationalFunction sum = rf_sum(terms);
            if (sum.is_zero()) continue;
            RationalFunction val = sum * eu.get(xj, zid).reciprocal() * Rational(-1);
            auto p = val.as_polynomial();
            if (!p)
                throw std::logic_error("basis_solve: entry at point " + std::to_string(xj) +
                                       " of class " + std::to_string(i + 1) +
                                       " is not a polynomial; inconsistent Euler data");
            theta.entries[xj] = *p;
        }
        classes.push_back(std::move(theta));
    }
    return classes;
}

BasisReport basis_verify(const std::vector<EquivariantClass>& classes, const MomentGraph& g,
                         const Filtration& filt, const EulerTable* eu) {
    BasisReport rep;
    auto od = g.outdeg();
    std::vector<std::vector<Character>> outgoing(g.points.size());
    for (const auto& e : g.edges) outgoing[e.source].push_back(e.label);
    for (size_t i = 0; i < classes.size(); ++i) {
        BasisClassReport cr;
        const auto& theta = classes[i];
        cr.gkm_ok = gkm_check(theta, g).ok;
        for (size_t j = 0; j < i; ++j)
            if (!theta.entries[filt.order[j]].is_zero()) cr.triangular = false;
        int xi = filt.order[i];
        cr.cell_dim = od[xi];
        const Polynomial& diag = theta.entries[xi];
        cr.diagonal_degree = diag.total_degree();
        // unsigned diagonal = product of outgoing labels
        Polynomial prod = Polynomial::constant(g.rep.torus_rank, Rational(1));
        for (const auto& a : outgoing[xi]) prod = prod * Polynomial::from_character(a);
        cr.diagonal_ok = (diag == prod) || (diag == -prod);
        cr.homogeneous = true;
        for (const auto& p : theta.entries)
            if (!p.is_homogeneous()) cr.homogeneous = false;
        if (diag.is_zero()) {
            rep.free_basis_certificate = false;
            cr.notes.push_back("zero diagonal entry");
        }
        if (cr.diagonal_degree != cr.cell_dim)
            cr.notes.push_back("diagonal degree differs from cell dimension");
        if (!cr.gkm_ok || !cr.triangular || !cr.diagonal_ok) rep.all_ok = false;
        rep.classes.push_back(std::move(cr));
    }
    if (eu) {
        // independent re-evaluation of the defining conditions
        for (size_t i = 0; i < classes.size(); ++i)
            for (size_t j = 0; j < classes.size(); ++j) {
                RationalFunction v = local_index(classes[i], (int)j, g, filt, *eu);
                bool expect_one = (i == j);
                bool is_one = !v.is_zero() && v.denominator().empty() &&
                              v.numerator().as_constant().has_value() &&
                              v.scalar() * *v.numerator().as_constant() == Rational(1);
                if (expect_one ? !is_one : !v.is_zero()) {
                    rep.all_ok = false;
                    rep.notes.push_back("local index I_" + std::to_string(j + 1) + "(theta^" +
                                        std::to_string(i + 1) + ") violates the defining conditions");
                }
            }
    }
    return rep;
}

} // namespace qgkm
