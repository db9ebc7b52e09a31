#pragma once

#include "qgkm/rational.hpp"

#include <vector>

namespace qgkm {

using QMatrix = std::vector<std::vector<Rational>>;

int rank(QMatrix m);

// true iff v lies in the row span of basis
bool in_row_span(const QMatrix& basis, const std::vector<Rational>& v);

// echelonized row space for repeated membership queries
class RowSpace {
public:
    explicit RowSpace(const QMatrix& rows);
    bool contains(std::vector<Rational> v) const;

private:
    QMatrix echelon_;
    std::vector<int> pivot_;
};

} // namespace qgkm
