#pragma once

#include <cstddef>
#include <vector>

namespace vb {

/// (N+1)x(N+1) tridiagonal matrix stored as three diagonals.
/// lower[i-1] = a_{i,i-1} (i = 1..N), diag[i] = a_{ii} (i = 0..N),
/// upper[i] = a_{i,i+1} (i = 0..N-1).
struct TridiagonalMatrix {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t rows() const { return diag.size(); }

    static TridiagonalMatrix identity(std::size_t rows);
};

/// True iff all diagonal entries are strictly positive and all
/// off-diagonal entries are <= 0.
bool is_l_matrix(const TridiagonalMatrix& t);

}  // namespace vb
