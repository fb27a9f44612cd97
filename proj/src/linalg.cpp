#include "qjf/linalg.hpp"

#include <stdexcept>

namespace qjf {

LinearSolution solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const size_t rows = a.size();
    if (b.size() != rows) throw std::logic_error("solve_exact: shape mismatch");
    const size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& r : a)
        if (r.size() != cols) throw std::logic_error("solve_exact: ragged matrix");

    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = rank;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        std::swap(b[sel], b[rank]);
        const Rat inv = 1 / a[rank][col];
        for (size_t j = col; j < cols; ++j)
            if (a[rank][j] != 0) a[rank][j] *= inv;
        b[rank] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Rat f = a[r][col];
            for (size_t j = col; j < cols; ++j)
                if (a[rank][j] != 0) a[r][j] -= f * a[rank][j];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    LinearSolution sol;
    for (size_t r = rank; r < rows; ++r)
        if (b[r] != 0) {
            sol.consistent = false;
            return sol;
        }

    sol.particular.assign(cols, Rat(0));
    sol.pinned.assign(cols, false);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    for (size_t r = 0; r < rank; ++r) {
        const size_t c = pivot_col[r];
        sol.particular[c] = b[r];
        bool unique = true;
        for (size_t j = 0; j < cols; ++j)
            if (!is_pivot[j] && a[r][j] != 0) unique = false;
        sol.pinned[c] = unique;
    }
    return sol;
}

}  // namespace qjf
