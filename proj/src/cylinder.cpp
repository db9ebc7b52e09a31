#include "qgkm/cylinder.hpp"

#include "qgkm/momentgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgkm {

int CylinderRep::index_of(const CylLabel& l) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return (int)i;
    return -1;
}

int CylinderRep::site_of(int li) const {
    const auto& l = labels.at(li);
    int v = base.vertex_of(l.summand, l.pos);
    int i = base.quiver.reduce(v - (l.level - 1));
    return quiver.site(i, l.level);
}

Character CylinderRep::weight_of(int li) const {
    const auto& l = labels.at(li);
    return base.weight_of(l.summand, l.pos);
}

CylinderDimVector CylinderRep::dims() const {
    CylinderDimVector d(quiver.num_sites(), 0);
    for (size_t i = 0; i < labels.size(); ++i) d[site_of((int)i)] += 1;
    return d;
}

std::string CylinderRep::label_name(int li) const {
    const auto& l = labels.at(li);
    std::ostringstream os;
    os << "b(" << l.summand << "," << l.pos << ")@" << l.level;
    return os.str();
}

CylinderRep lambda(const NilpotentRep& m) {
    CylinderRep w;
    w.base = m;
    w.quiver = CylinderQuiver{m.quiver.n, m.bound};
    for (int c = 1; c <= m.num_summands(); ++c) {
        int len = m.summands[c - 1].len;
        for (int p = 1; p <= len; ++p)
            for (int k = 1; k <= std::min(p, m.bound); ++k)
                w.labels.push_back({c, p, k});
    }
    w.alpha_img.assign(w.labels.size(), -1);
    w.beta_img.assign(w.labels.size(), -1);
    for (size_t i = 0; i < w.labels.size(); ++i) {
        const auto& l = w.labels[i];
        int len = m.summands[l.summand - 1].len;
        if (l.level < m.bound && l.pos < len)
            w.alpha_img[i] = w.index_of({l.summand, l.pos + 1, l.level + 1});
        if (l.level >= 2)
            w.beta_img[i] = w.index_of({l.summand, l.pos, l.level - 1});
    }
    return w;
}

std::vector<BasisVector> res_labels(const CylinderRep& w, const std::vector<int>& subset) {
    std::vector<BasisVector> out;
    for (int li : subset) {
        const auto& l = w.labels.at(li);
        if (l.level == 1) out.push_back({l.summand, l.pos});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool res_lambda_is_identity(const NilpotentRep& m) {
    CylinderRep w = lambda(m);
    // level-1 spaces carry all basis vectors and beta(alpha(.)) is the
    // original successor map
    CoefficientQuiver q = coefficient_quiver(m);
    for (size_t i = 0; i < q.vertices.size(); ++i) {
        const auto& b = q.vertices[i];
        int li = w.index_of({b.summand, b.pos, 1});
        if (li < 0) return false;
        int a = w.alpha_img[li];
        int composite = -1;
        if (a >= 0) composite = w.beta_img[a];
        int expected = -1;
        if (q.succ[i] >= 0) {
            const auto& sb = q.vertices[q.succ[i]];
            expected = w.index_of({sb.summand, sb.pos, 1});
        }
        if (m.bound == 1) {
            // no level-2 layer; the composite is the zero map and the cycle
            // maps must vanish too
            if (q.succ[i] >= 0) return false;
            continue;
        }
        if (composite != expected) return false;
    }
    return true;
}

CylinderDimVector proj_inj_simple(const CylinderQuiver& q, const ProjInjSpec& spec) {
    CylinderDimVector d(q.num_sites(), 0);
    if (spec.k == q.levels + 1) return d; // zero object convention
    if (spec.k < 1 || spec.k > q.levels) throw std::invalid_argument("proj_inj_simple: bad anchor level");
    CycleQuiver cyc{q.n};
    int i = spec.i, k = spec.k, N = q.levels;
    auto add = [&](int j, int r) {
        if (r < 1 || r > N) return;
        d[q.site(cyc.reduce(j), r)] += 1;
    };
    switch (spec.kind) {
    case ProjInjKind::simple:
        add(i, k);
        break;
    case ProjInjKind::projective:
        // push-down of V(i,k;N-k): j >= i, i+k <= j+r <= i+N
        for (int j = i; j <= i + N; ++j)
            for (int r = std::max(1, i + k - j); j + r <= i + N && r <= N; ++r)
                add(j, r);
        break;
    case ProjInjKind::injective:
        // mirrored staircase: columns i-(N-k) <= j <= i, diagonals j+r <= i+k
        for (int j = i - (N - k); j <= i; ++j)
            for (int r = 1; j + r <= i + k && r <= N; ++r)
                add(j, r);
        break;
    }
    return d;
}

int total_dim(const CylinderDimVector& d) {
    int s = 0;
    for (int v : d) s += v;
    return s;
}

namespace {

CylinderDimVector sub_dims(const CylinderDimVector& a, const CylinderDimVector& b) {
    CylinderDimVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

} // namespace

ResolutionReport resolution_check(const NilpotentRep& m) {
    ResolutionReport rep;
    CylinderQuiver q{m.quiver.n, m.bound};
    int N = m.bound;
    for (const auto& sm : m.summands) {
        NilpotentRep u(m.quiver.n, {sm}, N);
        CylinderDimVector lu = lambda(u).dims();
        // projective resolution 0 -> P_{i,l+1} -> P_{i,1} -> Lambda(U_i(l)) -> 0
        CylinderDimVector p1 = proj_inj_simple(q, {ProjInjKind::projective, sm.start, 1});
        CylinderDimVector p2 = proj_inj_simple(q, {ProjInjKind::projective, sm.start, sm.len + 1});
        // injective resolution 0 -> Lambda(U(j;l)) -> I_{j,1} -> I_{j-l,l+1} -> 0
        int j = m.quiver.reduce(sm.start + sm.len - 1);
        CylinderDimVector i1 = proj_inj_simple(q, {ProjInjKind::injective, j, 1});
        CylinderDimVector i2 = proj_inj_simple(q, {ProjInjKind::injective, m.quiver.reduce(j - sm.len), sm.len + 1});
        CylinderDimVector pdiff = sub_dims(p1, p2), idiff = sub_dims(i1, i2);
        for (int s = 0; s < q.num_sites(); ++s) {
            auto [si, sk] = q.coords(s);
            std::ostringstream at;
            at << "U(" << sm.start << "," << sm.len << ") at (" << si << "," << sk << ")";
            if (pdiff[s] != lu[s]) {
                rep.ok = false;
                rep.failures.push_back("projective resolution mismatch for " + at.str());
            }
            if (idiff[s] != lu[s]) {
                rep.ok = false;
                rep.failures.push_back("injective resolution mismatch for " + at.str());
            }
        }
    }
    return rep;
}

namespace {

// enumerate C_k(d) = {p : p_i <= d_i, sum p_i = k}
void comps_rec(const std::vector<int>& d, int pos, int left, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
    if (pos == (int)d.size()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    for (int v = 0; v <= std::min(d[pos], left); ++v) {
        cur[pos] = v;
        comps_rec(d, pos + 1, left - v, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

GsubResult gsub(const NilpotentRep& m, const DimVector& e, GsubMode mode,
                const std::vector<NilpotentRep>& explicit_classes) {
    GsubResult res;
    int n = m.quiver.n;
    if (mode == GsubMode::lemma410) {
        // all summands of length w*n, e = (w*k,...,w*k)
        int len = m.summands.empty() ? 0 : m.summands[0].len;
        for (const auto& sm : m.summands)
            if (sm.len != len) throw std::invalid_argument("gsub(lemma410): summand lengths differ");
        if (len % n != 0) throw std::invalid_argument("gsub(lemma410): summand length not a multiple of n");
        int w = len / n;
        if (w == 0) throw std::invalid_argument("gsub(lemma410): zero length");
        for (int v : e)
            if (v != e[0]) throw std::invalid_argument("gsub(lemma410): e must be constant");
        if (e[0] % w != 0) throw std::invalid_argument("gsub(lemma410): e not a multiple of w");
        int k = e[0] / w;
        // multiplicities d_i of U(i; w n) = U_{i+1}(w n), indexed by the end
        // vertex i
        std::vector<int> d(n, 0);
        for (const auto& sm : m.summands) {
            int end = m.quiver.reduce(sm.start + len - 1);
            d[end - 1] += 1;
        }
        std::vector<std::vector<int>> ps;
        std::vector<int> cur(n, 0);
        comps_rec(d, 0, k, cur, ps);
        for (const auto& p : ps) {
            std::vector<Summand> parts;
            for (int i = 1; i <= n; ++i)
                for (int c = 0; c < p[i - 1]; ++c)
                    parts.push_back({m.quiver.reduce(i - len + 1), len});
            res.classes.emplace_back(n, parts, m.bound);
        }
        return res;
    }

    // the other two modes need the fixed-point landscape
    CoefficientQuiver q = coefficient_quiver(m);
    GradedRep rep = graded_rep(q);
    if (mode == GsubMode::explicit_list) {
        Cocharacter chi = choose_cocharacter(m.num_summands(), lengths_of(m), rep.candidate_labels());
        MomentGraph g = moment_graph(rep, e, chi);
        auto od = g.outdeg();
        for (const auto& cls : explicit_classes) {
            bool witness = false;
            int sd = stratum_dim(cls, m);
            for (size_t pi = 0; pi < g.points.size(); ++pi) {
                NilpotentRep t = iso_type(g.points[pi].labels, q);
                if (!t.iso_equal(cls)) continue;
                witness = true;
                if (od[pi] > sd)
                    throw std::invalid_argument("gsub(explicit): class " + cls.str() +
                                                " has a cell exceeding its stratum dimension");
            }
            if (!witness)
                throw std::invalid_argument("gsub(explicit): class " + cls.str() +
                                            " is not the type of any fixed point");
            res.classes.push_back(cls);
        }
        return res;
    }

    // heuristic mode
    res.heuristic = true;
    Cocharacter chi = choose_cocharacter(m.num_summands(), lengths_of(m), rep.candidate_labels());
    MomentGraph g = moment_graph(rep, e, chi);
    auto od = g.outdeg();
    std::vector<NilpotentRep> classes;
    std::vector<int> maxcell, sdim;
    for (size_t pi = 0; pi < g.points.size(); ++pi) {
        NilpotentRep t = iso_type(g.points[pi].labels, q);
        int found = -1;
        for (size_t ci = 0; ci < classes.size(); ++ci)
            if (classes[ci].iso_equal(t)) found = (int)ci;
        if (found < 0) {
            classes.push_back(t);
            maxcell.push_back(od[pi]);
            sdim.push_back(stratum_dim(t, m));
        } else {
            maxcell[found] = std::max(maxcell[found], od[pi]);
        }
    }
    // all indecomposables up to length N for the hom-order test
    std::vector<NilpotentRep> indecs;
    for (int i = 1; i <= n; ++i)
        for (int l = 1; l <= m.bound; ++l)
            indecs.emplace_back(n, std::vector<Summand>{{i, l}}, m.bound);
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        if (maxcell[ci] != sdim[ci]) continue; // no dense-cell witness
        bool dominated = false;
        for (size_t cj = 0; cj < classes.size() && !dominated; ++cj) {
            if (cj == ci || sdim[cj] <= sdim[ci]) continue;
            bool dom = true;
            for (const auto& x : indecs)
                if (hom_dim(x, classes[cj]) > hom_dim(x, classes[ci])) { dom = false; break; }
            dominated = dom;
        }
        if (!dominated) res.classes.push_back(classes[ci]);
    }
    return res;
}

std::vector<DesingComponent> desing_components(const NilpotentRep& m, const DimVector& e,
                                               const GsubResult& g) {
    if (g.classes.empty()) throw std::invalid_argument("desing_components: empty gsub result");
    CylinderDimVector md = lambda(m).dims();
    std::vector<DesingComponent> out;
    for (const auto& cls : g.classes) {
        DimVector cd = dimension_vector(cls);
        for (size_t i = 0; i < cd.size(); ++i)
            if (cd[i] != e[i]) throw std::invalid_argument("desing_components: class dimension vector != e");
        DesingComponent c;
        c.generic_type = cls;
        c.target = lambda(cls).dims();
        for (size_t s = 0; s < c.target.size(); ++s)
            if (c.target[s] > md[s])
                throw std::invalid_argument("desing_components: target exceeds ambient dims");
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<int> lengths_of(const NilpotentRep& m) {
    std::vector<int> l;
    for (const auto& sm : m.summands) l.push_back(sm.len);
    return l;
}

// labels of Lambda(U) inside Lambda(M) for a successor-closed point U
std::vector<int> lambda_sublabels(const CylinderRep& w, const std::vector<BasisVector>& point) {
    // per summand, the members form a suffix; record its start
    std::map<int, int> sufstart;
    for (const auto& b : point) {
        auto it = sufstart.find(b.summand);
        if (it == sufstart.end() || b.pos < it->second) sufstart[b.summand] = b.pos;
    }
    std::vector<int> subset;
    for (size_t li = 0; li < w.labels.size(); ++li) {
        const auto& l = w.labels[li];
        auto it = sufstart.find(l.summand);
        if (it == sufstart.end()) continue;
        if (l.pos < it->second) continue;
        if (l.level - 1 <= l.pos - it->second) subset.push_back((int)li);
    }
    return subset;
}

CylinderRep quotient_rep(const CylinderRep& w, const std::vector<int>& sub) {
    std::vector<char> drop(w.labels.size(), 0);
    for (int li : sub) drop[li] = 1;
    CylinderRep r;
    r.base = w.base;
    r.quiver = w.quiver;
    std::vector<int> newindex(w.labels.size(), -1);
    for (size_t li = 0; li < w.labels.size(); ++li) {
        if (drop[li]) continue;
        newindex[li] = (int)r.labels.size();
        r.labels.push_back(w.labels[li]);
    }
    auto remap = [&](int img) { return img < 0 ? -1 : newindex[img]; };
    for (size_t li = 0; li < w.labels.size(); ++li) {
        if (drop[li]) continue;
        r.alpha_img.push_back(remap(w.alpha_img[li]));
        r.beta_img.push_back(remap(w.beta_img[li]));
    }
    return r;
}

FiberResult fiber(const NilpotentRep& m, const DesingComponent& comp,
                  const std::vector<BasisVector>& downstairs_point) {
    CylinderRep w = lambda(m);
    std::vector<int> uhat = lambda_sublabels(w, downstairs_point);
    CylinderDimVector ud(w.quiver.num_sites(), 0);
    for (int li : uhat) ud[w.site_of(li)] += 1;
    FiberResult fr;
    fr.target.assign(w.quiver.num_sites(), 0);
    for (int s = 0; s < w.quiver.num_sites(); ++s) {
        fr.target[s] = comp.target[s] - ud[s];
        if (fr.target[s] < 0) { fr.empty = true; fr.fixed_points = 0; return fr; }
    }
    CylinderRep q = quotient_rep(w, uhat);
    GradedRep rep = graded_rep(q);
    auto subsets = closed_subsets(rep, fr.target);
    fr.fixed_points = (long long)subsets.size();
    fr.empty = subsets.empty();
    if (!fr.empty) {
        Cocharacter chi = choose_cocharacter(m.num_summands(), lengths_of(m), rep.candidate_labels());
        MomentGraph g = moment_graph(rep, fr.target, chi);
        int d = 0;
        for (int v : g.outdeg()) d = std::max(d, v);
        fr.dimension = d;
    }
    return fr;
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<long long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

std::vector<long long> gaussian_binomial(int n, int k) {
    if (k < 0 || k > n) return {0};
    std::vector<std::vector<std::vector<long long>>> qb(n + 1);
    for (int nn = 0; nn <= n; ++nn) qb[nn].resize(nn + 1);
    qb[0][0] = {1};
    for (int nn = 1; nn <= n; ++nn)
        for (int kk = 0; kk <= nn; ++kk) {
            if (kk == 0 || kk == nn) { qb[nn][kk] = {1}; continue; }
            // [n k] = [n-1 k-1] + q^k [n-1 k]
            std::vector<long long> a = qb[nn - 1][kk - 1];
            std::vector<long long> b = qb[nn - 1][kk];
            std::vector<long long> r(std::max(a.size(), b.size() + kk), 0);
            for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
            for (size_t i = 0; i < b.size(); ++i) r[i + kk] += b[i];
            qb[nn][kk] = r;
        }
    return qb[n][k];
}

TowerProfile tower_profile(const NilpotentRep& m, const DesingComponent& comp) {
    TowerProfile tp;
    CylinderQuiver q{m.quiver.n, m.bound};
    CylinderDimVector md = lambda(m).dims();
    const CylinderDimVector& nd = comp.target;
    CycleQuiver cyc{m.quiver.n};
    auto nhat = [&](int i, int k) {
        if (k > q.levels) return 0;
        return nd[q.site(cyc.reduce(i), k)];
    };
    auto mhat = [&](int i, int k) {
        if (k > q.levels) return 0;
        return md[q.site(cyc.reduce(i), k)];
    };
    tp.poincare = {1};
    for (int k = q.levels; k >= 1; --k)
        for (int i = 1; i <= q.n; ++i) {
            TowerFactor f;
            f.i = i;
            f.k = k;
            f.sub = nhat(i, k) - nhat(i - 1, k + 1);
            f.amb = nhat(i, k + 1) + mhat(i, k) - mhat(i, k + 1) - nhat(i - 1, k + 1);
            if (f.sub < 0 || f.sub > f.amb) { tp.consistent = false; continue; }
            if (f.dim() == 0 && (f.sub == 0 || f.sub == f.amb)) continue; // trivial factor
            tp.factors.push_back(f);
            tp.total_dim += f.dim();
            tp.poincare = poly_mul(tp.poincare, gaussian_binomial(f.amb, f.sub));
        }
    return tp;
}

} // namespace qgkm
