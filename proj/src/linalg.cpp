#include "tropmetz/linalg.hpp"

#include "tropmetz/error.hpp"

#include <utility>

namespace tropmetz {

RationalMatrix solve_exact(RationalMatrix a, RationalMatrix b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side has wrong row count");
    const std::size_t rhs = n == 0 ? 0 : b.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == n) throw Error(ErrorCode::SingularSystem, "no pivot in column " + std::to_string(col));
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);

        const Rational inv = 1 / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        for (std::size_t j = 0; j < rhs; ++j) b[col][j] *= inv;

        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || sgn(a[row][col]) == 0) continue;
            const Rational factor = a[row][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
            for (std::size_t j = 0; j < rhs; ++j) b[row][j] -= factor * b[col][j];
        }
    }
    return b;
}

}  // namespace tropmetz
