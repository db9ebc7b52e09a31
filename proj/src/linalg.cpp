#include "qgkm/linalg.hpp"

namespace qgkm {

int rank(QMatrix m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return (int)r;
}

bool in_row_span(const QMatrix& basis, const std::vector<Rational>& v) {
    return RowSpace(basis).contains(v);
}

RowSpace::RowSpace(const QMatrix& rows) {
    for (auto v : rows) {
        for (size_t r = 0; r < echelon_.size(); ++r) {
            if (v[pivot_[r]].is_zero()) continue;
            Rational f = v[pivot_[r]] / echelon_[r][pivot_[r]];
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon_[r][j];
        }
        int piv = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) { piv = (int)j; break; }
        if (piv < 0) continue;
        echelon_.push_back(std::move(v));
        pivot_.push_back(piv);
    }
}

bool RowSpace::contains(std::vector<Rational> v) const {
    for (size_t r = 0; r < echelon_.size(); ++r) {
        if (v[pivot_[r]].is_zero()) continue;
        Rational f = v[pivot_[r]] / echelon_[r][pivot_[r]];
        for (size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon_[r][j];
    }
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace qgkm
