#include "qgkm/cyclequiver.hpp"

#include "qgkm/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qgkm {

NilpotentRep::NilpotentRep(int n, std::vector<Summand> s, int N) : quiver{n}, summands(std::move(s)), bound(N) {
    if (n < 1) throw std::invalid_argument("NilpotentRep: n >= 1 required");
    int maxlen = 1;
    for (auto& sm : summands) {
        if (sm.len < 1) throw std::invalid_argument("NilpotentRep: summand length >= 1 required");
        sm.start = quiver.reduce(sm.start);
        maxlen = std::max(maxlen, sm.len);
    }
    if (bound <= 0) bound = maxlen;
    if (maxlen > bound) throw std::invalid_argument("NilpotentRep: summand length exceeds nilpotency bound");
}

int NilpotentRep::total_dim() const {
    int s = 0;
    for (const auto& sm : summands) s += sm.len;
    return s;
}

std::vector<std::pair<int, int>> NilpotentRep::iso_key() const {
    std::vector<std::pair<int, int>> key;
    key.reserve(summands.size());
    for (const auto& sm : summands) key.emplace_back(sm.start, sm.len);
    std::sort(key.begin(), key.end());
    return key;
}

bool NilpotentRep::iso_equal(const NilpotentRep& o) const {
    return quiver.n == o.quiver.n && iso_key() == o.iso_key();
}

std::string NilpotentRep::str() const {
    std::ostringstream os;
    os << "n=" << quiver.n << "; ";
    if (summands.empty()) os << "0";
    for (size_t i = 0; i < summands.size(); ++i) {
        if (i) os << "+";
        os << "U(" << summands[i].start << "," << summands[i].len << ")";
    }
    os << "; N=" << bound;
    return os.str();
}

int NilpotentRep::vertex_of(int c, int k) const {
    return quiver.reduce(summands.at(c - 1).start + k - 1);
}

Character NilpotentRep::weight_of(int c, int k) const {
    Character w = Character::eps_i(num_summands(), c);
    w.delta = k - 1;
    return w;
}

int CoefficientQuiver::index_of(const BasisVector& b) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == b) return (int)i;
    return -1;
}

int CoefficientQuiver::vertex_of(int vi) const {
    const auto& b = vertices.at(vi);
    return rep->vertex_of(b.summand, b.pos);
}

Character CoefficientQuiver::weight_of(int vi) const {
    const auto& b = vertices.at(vi);
    return rep->weight_of(b.summand, b.pos);
}

DimVector dimension_vector(const NilpotentRep& m) {
    DimVector d(m.quiver.n, 0);
    for (int c = 1; c <= m.num_summands(); ++c)
        for (int k = 1; k <= m.summands[c - 1].len; ++k)
            d[m.vertex_of(c, k) - 1] += 1;
    return d;
}

CoefficientQuiver coefficient_quiver(const NilpotentRep& m) {
    CoefficientQuiver q;
    q.rep = &m;
    for (int c = 1; c <= m.num_summands(); ++c)
        for (int k = 1; k <= m.summands[c - 1].len; ++k)
            q.vertices.push_back({c, k});
    q.succ.assign(q.vertices.size(), -1);
    q.pred.assign(q.vertices.size(), -1);
    for (size_t i = 0; i < q.vertices.size(); ++i) {
        const auto& b = q.vertices[i];
        if (b.pos < m.summands[b.summand - 1].len) {
            int j = q.index_of({b.summand, b.pos + 1});
            q.succ[i] = j;
            q.pred[j] = (int)i;
        }
    }
    return q;
}

namespace {

struct BasisIndex {
    // flat index per (summand, pos) plus vertex lookup
    std::vector<std::pair<int, int>> flat; // (summand, pos)
    std::vector<int> vertex;
    explicit BasisIndex(const NilpotentRep& r) {
        for (int c = 1; c <= r.num_summands(); ++c)
            for (int k = 1; k <= r.summands[c - 1].len; ++k) {
                flat.emplace_back(c, k);
                vertex.push_back(r.vertex_of(c, k));
            }
    }
    int succ(const NilpotentRep& r, int i) const {
        auto [c, k] = flat[i];
        if (k < r.summands[c - 1].len) return i + 1;
        return -1;
    }
};

} // namespace

int hom_dim(const NilpotentRep& n, const NilpotentRep& m) {
    if (n.quiver.n != m.quiver.n)
        throw std::invalid_argument("hom_dim: different cycle quivers");
    BasisIndex bn(n), bm(m);
    // variables t_{x,y} for x in basis(N), y in basis(M), vertex(x) == vertex(y)
    std::map<std::pair<int, int>, int> var;
    for (size_t x = 0; x < bn.flat.size(); ++x)
        for (size_t y = 0; y < bm.flat.size(); ++y)
            if (bn.vertex[x] == bm.vertex[y]) {
                int id = (int)var.size();
                var[{(int)x, (int)y}] = id;
            }
    if (var.empty()) return 0;
    // equations: for x in basis(N), y' in basis(M) at vertex(x)+1:
    //   t_{succ(x), y'} = t_{x, pred(y')}
    QMatrix rows;
    CycleQuiver cq{n.quiver.n};
    for (size_t x = 0; x < bn.flat.size(); ++x) {
        int sx = bn.succ(n, (int)x);
        int vnext = cq.reduce(bn.vertex[x] + 1);
        for (size_t y2 = 0; y2 < bm.flat.size(); ++y2) {
            if (bm.vertex[y2] != vnext) continue;
            std::vector<Rational> row(var.size(), Rational(0));
            bool nonzero = false;
            if (sx >= 0) {
                auto it = var.find({sx, (int)y2});
                if (it != var.end()) { row[it->second] += Rational(1); nonzero = true; }
            }
            // pred of y2 inside M
            auto [c2, k2] = bm.flat[y2];
            if (k2 > 1) {
                int ypred = (int)y2 - 1;
                auto it = var.find({(int)x, ypred});
                if (it != var.end()) { row[it->second] -= Rational(1); nonzero = true; }
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    return (int)var.size() - rank(rows);
}

int stratum_dim(const NilpotentRep& n, const NilpotentRep& m) {
    int d = hom_dim(n, m) - hom_dim(n, n);
    if (d < 0)
        throw std::domain_error("stratum_dim: negative, not a subrepresentation type of the ambient");
    return d;
}

NilpotentRep iso_type(const std::vector<int>& labels, const CoefficientQuiver& q) {
    std::vector<bool> in(q.vertices.size(), false);
    for (int l : labels) {
        in.at(l) = true;
    }
    for (int l : labels)
        if (q.succ[l] >= 0 && !in[q.succ[l]])
            throw std::invalid_argument("iso_type: label set is not successor-closed");
    std::vector<Summand> parts;
    for (int l : labels) {
        if (q.pred[l] >= 0 && in[q.pred[l]]) continue; // not a string head
        int len = 0, cur = l;
        while (cur >= 0 && in[cur]) { ++len; cur = q.succ[cur]; }
        parts.push_back({q.vertex_of(l), len});
    }
    std::sort(parts.begin(), parts.end(), [](const Summand& a, const Summand& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.len < b.len;
    });
    return NilpotentRep(q.rep->quiver.n, parts, q.rep->bound);
}

NilpotentRep parse_nilpotent_rep(const std::string& text) {
    int n = 0, N = 0;
    std::vector<Summand> parts;
    std::string token;
    std::istringstream is(text);
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_nilpotent_rep: " + why + " in \"" + text + "\"");
    };
    while (std::getline(is, token, ';')) {
        // strip blanks
        std::string t;
        for (char c : token) if (!isspace((unsigned char)c)) t += c;
        if (t.empty()) continue;
        if (t.rfind("n=", 0) == 0) n = std::stoi(t.substr(2));
        else if (t.rfind("N=", 0) == 0) N = std::stoi(t.substr(2));
        else if (t.rfind("e=", 0) == 0) continue; // tolerated, parsed elsewhere
        else {
            std::istringstream ts(t);
            std::string piece;
            while (std::getline(ts, piece, '+')) {
                int i, l;
                if (sscanf(piece.c_str(), "U(%d,%d)", &i, &l) != 2) fail("bad summand " + piece);
                parts.push_back({i, l});
            }
        }
    }
    if (n <= 0) fail("missing n");
    return NilpotentRep(n, parts, N);
}

} // namespace qgkm
