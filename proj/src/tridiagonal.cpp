#include "vb/tridiagonal.hpp"

namespace vb {

TridiagonalMatrix TridiagonalMatrix::identity(std::size_t rows) {
    TridiagonalMatrix t;
    t.lower.assign(rows - 1, 0.0);
    t.diag.assign(rows, 1.0);
    t.upper.assign(rows - 1, 0.0);
    return t;
}

bool is_l_matrix(const TridiagonalMatrix& t) {
    for (double d : t.diag)
        if (!(d > 0.0)) return false;
    for (double l : t.lower)
        if (l > 0.0) return false;
    for (double u : t.upper)
        if (u > 0.0) return false;
    return true;
}

}  // namespace vb
