#include "qgkm/momentgraph.hpp"

#include "qgkm/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgkm {

std::vector<int> GradedRep::site_dims() const {
    std::vector<int> d(n_sites, 0);
    for (int s : site) d[s] += 1;
    return d;
}

std::vector<Character> GradedRep::candidate_labels() const {
    std::set<Character> seen;
    std::vector<Character> out;
    for (size_t a = 0; a < site.size(); ++a)
        for (size_t b = 0; b < site.size(); ++b) {
            if (a == b || site[a] != site[b]) continue;
            Character c = weight[b] - weight[a];
            if (c.is_zero()) continue;
            if (seen.insert(c).second) out.push_back(c);
        }
    return out;
}

GradedRep graded_rep(const CoefficientQuiver& q) {
    GradedRep r;
    r.n_sites = q.rep->quiver.n;
    for (int i = 1; i <= r.n_sites; ++i) r.site_names.push_back("v" + std::to_string(i));
    r.torus_rank = q.rep->num_summands();
    for (size_t i = 0; i < q.vertices.size(); ++i) {
        r.site.push_back(q.vertex_of((int)i) - 1);
        r.weight.push_back(q.weight_of((int)i));
        r.out.push_back({q.succ[i], -1});
        const auto& b = q.vertices[i];
        r.names.push_back("b(" + std::to_string(b.summand) + "," + std::to_string(b.pos) + ")");
    }
    return r;
}

GradedRep graded_rep(const CylinderRep& w) {
    GradedRep r;
    r.n_sites = w.quiver.num_sites();
    for (int s = 0; s < r.n_sites; ++s) {
        auto [i, k] = w.quiver.coords(s);
        r.site_names.push_back("(" + std::to_string(i) + "," + std::to_string(k) + ")");
    }
    r.torus_rank = w.base.num_summands();
    for (size_t i = 0; i < w.labels.size(); ++i) {
        r.site.push_back(w.site_of((int)i));
        r.weight.push_back(w.weight_of((int)i));
        r.out.push_back({w.alpha_img[i], w.beta_img[i]});
        r.names.push_back(w.label_name((int)i));
    }
    return r;
}

namespace {

// labels ordered so that arrow images come first
std::vector<int> topo_label_order(const GradedRep& rep) {
    size_t n = rep.site.size();
    std::vector<int> indeg(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (int img : rep.out[i])
            if (img >= 0) indeg[img] += 1;
    // Kahn from the sinks: we want images placed before their sources, so
    // process the reverse graph
    std::vector<std::vector<int>> users(n);
    for (size_t i = 0; i < n; ++i)
        for (int img : rep.out[i])
            if (img >= 0) users[img].push_back((int)i);
    std::vector<int> need(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int c = 0;
        for (int img : rep.out[i]) if (img >= 0) ++c;
        need[i] = c;
    }
    std::set<int> ready;
    for (size_t i = 0; i < n; ++i) if (need[i] == 0) ready.insert((int)i);
    std::vector<int> order;
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int u : users[v])
            if (--need[u] == 0) ready.insert(u);
    }
    if (order.size() != n) throw std::logic_error("topo_label_order: arrow graph has a cycle");
    return order;
}

void enumerate_rec(const GradedRep& rep, const std::vector<int>& order,
                   const std::vector<std::vector<int>>& suffix_cap,
                   const std::vector<int>& target, size_t pos,
                   std::vector<char>& chosen, std::vector<int>& counts,
                   std::vector<std::vector<int>>& out) {
    if (pos == order.size()) {
        for (int s = 0; s < rep.n_sites; ++s)
            if (counts[s] != target[s]) return;
        std::vector<int> labels;
        for (size_t i = 0; i < chosen.size(); ++i)
            if (chosen[i]) labels.push_back((int)i);
        out.push_back(std::move(labels));
        return;
    }
    // feasibility: remaining capacity must cover the deficit
    for (int s = 0; s < rep.n_sites; ++s)
        if (counts[s] + suffix_cap[pos][s] < target[s]) return;
    int l = order[pos];
    int s = rep.site[l];
    // option: exclude l
    enumerate_rec(rep, order, suffix_cap, target, pos + 1, chosen, counts, out);
    // option: include l (requires images chosen, count headroom)
    if (counts[s] + 1 <= target[s]) {
        bool ok = true;
        for (int img : rep.out[l])
            if (img >= 0 && !chosen[img]) ok = false;
        if (ok) {
            chosen[l] = 1;
            counts[s] += 1;
            enumerate_rec(rep, order, suffix_cap, target, pos + 1, chosen, counts, out);
            counts[s] -= 1;
            chosen[l] = 0;
        }
    }
}

} // namespace

std::vector<std::vector<int>> closed_subsets(const GradedRep& rep, const std::vector<int>& target) {
    if ((int)target.size() != rep.n_sites)
        throw std::invalid_argument("closed_subsets: target arity mismatch");
    auto sd = rep.site_dims();
    for (int s = 0; s < rep.n_sites; ++s)
        if (target[s] < 0 || target[s] > sd[s]) return {};
    std::vector<int> order = topo_label_order(rep);
    size_t n = order.size();
    std::vector<std::vector<int>> suffix_cap(n + 1, std::vector<int>(rep.n_sites, 0));
    for (size_t i = n; i-- > 0;) {
        suffix_cap[i] = suffix_cap[i + 1];
        suffix_cap[i][rep.site[order[i]]] += 1;
    }
    std::vector<char> chosen(rep.site.size(), 0);
    std::vector<int> counts(rep.n_sites, 0);
    std::vector<std::vector<int>> out;
    enumerate_rec(rep, order, suffix_cap, target, 0, chosen, counts, out);
    for (auto& v : out) std::sort(v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

Cocharacter choose_cocharacter(int d, const std::vector<int>& lengths,
                               const std::vector<Character>& candidates) {
    // chi = (K; c - (l_c - 1)K) with K = d+1. The weight of the basis vector
    // at position k of string c is then c - tail*K with tail = l_c - k, so
    // at every vertex the weights sort by descending remaining tail, ties by
    // summand index. This is the grading whose attracting sets refine the
    // strata. Pairing with eps_b - eps_a + r*delta is (b - a) + K*(r - l_b +
    // l_a): one of the two summands always survives, so chi is generic.
    long long K = d + 1;
    Cocharacter chi;
    chi.delta = K;
    for (int c = 1; c <= d; ++c) {
        long long len = (c - 1 < (int)lengths.size()) ? lengths[c - 1] : 1;
        chi.eps.push_back(c - (len - 1) * K);
    }
    for (const auto& a : candidates)
        if (pairing(chi, a) == 0)
            throw std::logic_error("choose_cocharacter: degenerate pairing for " + a.str());
    return chi;
}

namespace {

struct MoveResult {
    std::vector<std::pair<int, int>> matching; // (in S, out of S)
    Character alpha;
    std::vector<int> other; // the matched-move partner point, sorted labels
};

// grow a matched move from seed (a in S, b not in S); nullopt when no valid
// one-parameter family exists
std::optional<MoveResult> grow_move(const GradedRep& rep, const std::vector<char>& inS,
                                    int a, int b) {
    std::map<int, int> m;   // A -> B
    std::map<int, int> rm;  // B -> A
    std::vector<std::pair<int, int>> work{{a, b}};
    m[a] = b;
    rm[b] = a;
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        for (int f = 0; f < 2; ++f) {
            int fx = rep.out[x][f], fy = rep.out[y][f];
            if (fx >= 0 && inS[fx] && fy >= 0 && !inS[fy]) {
                auto it = m.find(fx);
                if (it != m.end()) {
                    if (it->second != fy) return std::nullopt;
                } else {
                    if (rm.count(fy)) return std::nullopt;
                    m[fx] = fy;
                    rm[fy] = fx;
                    work.push_back({fx, fy});
                }
            }
        }
    }
    // validity of the family span{x + t m(x)} + (S \ A)
    for (const auto& [x, y] : m) {
        if (rep.site[x] != rep.site[y]) return std::nullopt;
        for (int f = 0; f < 2; ++f) {
            int fx = rep.out[x][f], fy = rep.out[y][f];
            bool fx_inA = fx >= 0 && m.count(fx);
            bool fy_inB = fy >= 0 && rm.count(fy);
            if (fx_inA) {
                if (fy < 0 || m.at(fx) != fy) return std::nullopt;
            } else if (fx >= 0) { // fx in S \ A
                if (fy >= 0 && (!inS[fy] || fy_inB)) return std::nullopt;
            } else { // fx = 0
                if (fy >= 0 && (!inS[fy] || fy_inB)) return std::nullopt;
            }
        }
    }
    // S \ A must stay closed (no arrow from it into A)
    for (size_t z = 0; z < rep.site.size(); ++z) {
        if (!inS[z] || m.count((int)z)) continue;
        for (int img : rep.out[z])
            if (img >= 0 && m.count(img)) return std::nullopt;
    }
    // constant character
    Character alpha = rep.weight[b] - rep.weight[a];
    if (alpha.is_zero()) return std::nullopt;
    for (const auto& [x, y] : m)
        if (!(rep.weight[y] - rep.weight[x] == alpha)) return std::nullopt;
    MoveResult res;
    res.alpha = alpha;
    for (const auto& [x, y] : m) res.matching.push_back({x, y});
    std::sort(res.matching.begin(), res.matching.end());
    for (size_t z = 0; z < rep.site.size(); ++z) {
        if (inS[z] && !m.count((int)z)) res.other.push_back((int)z);
    }
    for (const auto& [x, y] : m) res.other.push_back(y);
    std::sort(res.other.begin(), res.other.end());
    return res;
}

// exact check that the mixing family is a subrepresentation at parameter t
bool family_is_subrep(const GradedRep& rep, const std::vector<char>& inS,
                      const std::vector<std::pair<int, int>>& matching, const Rational& t) {
    size_t n = rep.site.size();
    std::vector<char> inA(n, 0);
    for (const auto& [x, y] : matching) inA[x] = 1;
    QMatrix gens;
    auto unit = [&](int i) {
        std::vector<Rational> v(n, Rational(0));
        v[i] = Rational(1);
        return v;
    };
    for (size_t z = 0; z < n; ++z)
        if (inS[z] && !inA[z]) gens.push_back(unit((int)z));
    for (const auto& [x, y] : matching) {
        auto v = unit(x);
        v[y] = t;
        gens.push_back(v);
    }
    // arrow images of all generators must stay inside
    RowSpace span(gens);
    for (const auto& g : gens)
        for (int f = 0; f < 2; ++f) {
            std::vector<Rational> img(n, Rational(0));
            bool nonzero = false;
            for (size_t i = 0; i < n; ++i) {
                if (g[i].is_zero()) continue;
                int fi = rep.out[i][f];
                if (fi >= 0) { img[fi] += g[i]; nonzero = true; }
            }
            if (nonzero && !span.contains(std::move(img))) return false;
        }
    return true;
}

} // namespace

int MomentGraph::point_index(const std::vector<int>& labels) const {
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i].labels == labels) return (int)i;
    return -1;
}

std::vector<int> MomentGraph::outdeg() const {
    std::vector<int> d(points.size(), 0);
    for (const auto& e : edges) d[e.source] += 1;
    return d;
}

std::vector<int> MomentGraph::indeg() const {
    std::vector<int> d(points.size(), 0);
    for (const auto& e : edges) d[e.target] += 1;
    return d;
}

int MomentGraph::ambient_dim() const {
    int m = 0;
    for (int v : outdeg()) m = std::max(m, v);
    return m;
}

std::vector<std::vector<int>> MomentGraph::out_neighbors() const {
    std::vector<std::vector<int>> nb(points.size());
    for (const auto& e : edges) nb[e.source].push_back(e.target);
    return nb;
}

std::vector<int> MomentGraph::reachable(int p) const {
    auto nb = out_neighbors();
    std::vector<char> seen(points.size(), 0);
    std::vector<int> stack{p}, out;
    seen[p] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (int u : nb[v])
            if (!seen[u]) { seen[u] = 1; stack.push_back(u); }
    }
    std::sort(out.begin(), out.end());
    return out;
}

MomentGraph moment_graph(const GradedRep& rep, const std::vector<int>& target,
                         const Cocharacter& chi, std::uint64_t seed) {
    MomentGraph g;
    g.rep = rep;
    g.target = target;
    g.chi = chi;
    for (auto& labels : closed_subsets(rep, target)) g.points.push_back({std::move(labels)});

    std::mt19937_64 rng(seed);
    auto rand_t = [&]() {
        // small nonzero rationals, deterministic
        long long num = (long long)(rng() % 2000) - 1000;
        long long den = (long long)(rng() % 50) + 1;
        if (num == 0) num = 7;
        return Rational(num, den);
    };

    // matched moves, deduplicated on (endpoints, matching)
    std::set<std::tuple<std::vector<int>, std::vector<int>, std::vector<std::pair<int, int>>>> seen;
    for (size_t pi = 0; pi < g.points.size(); ++pi) {
        const auto& S = g.points[pi].labels;
        std::vector<char> inS(rep.site.size(), 0);
        for (int l : S) inS[l] = 1;
        for (int a : S)
            for (size_t b = 0; b < rep.site.size(); ++b) {
                if (inS[b] || rep.site[(int)b] != rep.site[a]) continue;
                auto mv = grow_move(rep, inS, a, (int)b);
                if (!mv) continue;
                int qi = g.point_index(mv->other);
                if (qi < 0) continue; // partner misses the dimension vector
                long long pr = pairing(chi, mv->alpha);
                if (pr == 0) throw std::logic_error("moment_graph: cocharacter not generic");
                // orient: the seed end attracts iff the pairing is positive
                std::vector<int> src = S, dst = mv->other;
                auto matching = mv->matching;
                Character alpha = mv->alpha;
                if (pr < 0) {
                    std::swap(src, dst);
                    alpha = -alpha;
                    for (auto& [x, y] : matching) std::swap(x, y);
                    std::sort(matching.begin(), matching.end());
                }
                auto key = std::make_tuple(src, dst, matching);
                if (!seen.insert(key).second) continue;
                // one-parameter family check at three exact points
                bool ok = true;
                std::vector<char> inSrc(rep.site.size(), 0);
                for (int l : src) inSrc[l] = 1;
                for (int trial = 0; trial < 3 && ok; ++trial)
                    ok = family_is_subrep(rep, inSrc, matching, rand_t());
                if (!ok)
                    throw std::logic_error("moment_graph: matched move failed the family check");
                Edge e;
                e.source = g.point_index(src);
                e.target = g.point_index(dst);
                e.label = alpha;
                e.matching = matching;
                g.edges.push_back(std::move(e));
            }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
        if (a.source != b.source) return a.source < b.source;
        if (a.target != b.target) return a.target < b.target;
        return a.matching < b.matching;
    });

    // topological order, targets first; ties by (cell dim, label list)
    auto od = g.outdeg();
    std::vector<int> pending(g.points.size(), 0);
    for (const auto& e : g.edges) pending[e.source] += 1; // outgoing edges not yet resolved
    std::vector<std::vector<int>> into(g.points.size());  // source lists per target
    for (size_t ei = 0; ei < g.edges.size(); ++ei) into[g.edges[ei].target].push_back(g.edges[ei].source);
    auto tie_key = [&](int p) {
        return std::make_pair(od[p], g.points[p].labels);
    };
    std::set<std::pair<std::pair<int, std::vector<int>>, int>> ready;
    for (size_t p = 0; p < g.points.size(); ++p)
        if (pending[p] == 0) ready.insert({tie_key((int)p), (int)p});
    std::vector<int> cnt = pending;
    while (!ready.empty()) {
        auto [key, p] = *ready.begin();
        ready.erase(ready.begin());
        g.order.push_back(p);
        for (int src : into[p])
            if (--cnt[src] == 0) ready.insert({tie_key(src), src});
    }
    if (g.order.size() != g.points.size())
        throw std::logic_error("moment_graph: orientation is not acyclic");
    return g;
}

std::vector<int> cells(const MomentGraph& g) { return g.outdeg(); }

std::vector<long long> poincare_polynomial(const MomentGraph& g) {
    auto od = g.outdeg();
    int m = 0;
    for (int v : od) m = std::max(m, v);
    std::vector<long long> p(m + 1, 0);
    for (int v : od) p[v] += 1;
    if (g.points.empty()) p.clear();
    return p;
}

std::vector<SmoothnessRow> smoothness_report(const MomentGraph& g, int ambient_dim) {
    auto od = g.outdeg();
    auto id = g.indeg();
    std::vector<std::vector<Character>> adj(g.points.size());
    for (const auto& e : g.edges) {
        adj[e.source].push_back(e.label);
        adj[e.target].push_back(e.label);
    }
    std::vector<SmoothnessRow> rows;
    for (size_t p = 0; p < g.points.size(); ++p) {
        SmoothnessRow r;
        r.point = (int)p;
        r.degree = od[p] + id[p];
        r.cell_dim = od[p];
        r.singular_candidate = r.degree > ambient_dim;
        for (size_t a = 0; a < adj[p].size() && r.gkm_regular; ++a)
            for (size_t b = a + 1; b < adj[p].size() && r.gkm_regular; ++b)
                if (adj[p][a].proportional_to(adj[p][b])) r.gkm_regular = false;
        rows.push_back(r);
    }
    return rows;
}

namespace {

std::string point_name(const MomentGraph& g, int p) {
    // position in the topological order, 1-based
    for (size_t i = 0; i < g.order.size(); ++i)
        if (g.order[i] == p) return "p" + std::to_string(i + 1);
    return "p?" + std::to_string(p);
}

std::string labels_string(const MomentGraph& g, int p) {
    std::string s;
    for (int l : g.points[p].labels) {
        if (!s.empty()) s += ",";
        s += g.rep.names[l];
    }
    return s;
}

} // namespace

std::string export_graph(const MomentGraph& g, GraphFormat fmt) {
    std::ostringstream os;
    auto od = g.outdeg();
    switch (fmt) {
    case GraphFormat::dot: {
        os << "digraph momentgraph {\n";
        for (int p : g.order)
            os << "  " << point_name(g, p) << " [label=\"" << point_name(g, p) << "\\n{"
               << labels_string(g, p) << "}\"];\n";
        for (const auto& e : g.edges)
            os << "  " << point_name(g, e.source) << " -> " << point_name(g, e.target)
               << " [label=\"" << e.label.str() << "\"];\n";
        os << "}\n";
        return os.str();
    }
    case GraphFormat::tikz: {
        os << "\\begin{tikzpicture}\n";
        int i = 0;
        for (int p : g.order) {
            os << "  \\node (" << point_name(g, p) << ") at (" << (i % 4) * 3 << ","
               << (i / 4) * 2 << ") {$" << point_name(g, p) << "$};\n";
            ++i;
        }
        for (const auto& e : g.edges)
            os << "  \\draw[->] (" << point_name(g, e.source) << ") -- node[above] {$"
               << e.label.str() << "$} (" << point_name(g, e.target) << ");\n";
        os << "\\end{tikzpicture}\n";
        return os.str();
    }
    case GraphFormat::json: {
        nlohmann::ordered_json j;
        j["vertices"] = nlohmann::ordered_json::array();
        for (int p : g.order) {
            nlohmann::ordered_json v;
            v["id"] = point_name(g, p);
            auto labels = nlohmann::ordered_json::array();
            for (int l : g.points[p].labels) labels.push_back(g.rep.names[l]);
            v["labels"] = labels;
            v["cell_dim"] = od[p];
            j["vertices"].push_back(v);
        }
        j["edges"] = nlohmann::ordered_json::array();
        for (const auto& e : g.edges) {
            nlohmann::ordered_json ej;
            ej["src"] = point_name(g, e.source);
            ej["dst"] = point_name(g, e.target);
            ej["label"] = e.label.str();
            ej["display_label"] = e.label.str();
            j["edges"].push_back(ej);
        }
        j["cocharacter"]["delta"] = g.chi.delta;
        j["cocharacter"]["eps"] = g.chi.eps;
        return j.dump(2) + "\n";
    }
    }
    throw std::invalid_argument("export_graph: unknown format");
}

std::vector<std::vector<int>> graph_components(const MomentGraph& g) {
    std::vector<int> comp(g.points.size(), -1);
    std::vector<std::vector<int>> adj(g.points.size());
    for (const auto& e : g.edges) {
        adj[e.source].push_back(e.target);
        adj[e.target].push_back(e.source);
    }
    std::vector<std::vector<int>> out;
    for (size_t p = 0; p < g.points.size(); ++p) {
        if (comp[p] >= 0) continue;
        std::vector<int> stack{(int)p}, members;
        comp[p] = (int)out.size();
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int u : adj[v])
                if (comp[u] < 0) { comp[u] = comp[p]; stack.push_back(u); }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace qgkm
