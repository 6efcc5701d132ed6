#include "twistbetti/dense_q.hpp"

#include <utility>

namespace twistbetti::dense {

Echelon rref(QMatrix m, std::size_t ncols) {
    Echelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const QMatrix& m, std::size_t ncols) { return rref(m, ncols).pivots.size(); }

QMatrix nullspace(const QMatrix& m, std::size_t ncols) {
    Echelon e = rref(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    QMatrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        QVector v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& rhs, std::size_t ncols) {
    QMatrix aug = m;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
    Echelon e = rref(std::move(aug), ncols + 1);
    QVector x(ncols, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == ncols) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][ncols];
    }
    return x;
}

Rational determinant(QMatrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::optional<QVector> coordinates(const QMatrix& basis, const QVector& v) {
    // Solve basis^T * c = v.
    if (basis.empty()) {
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return QVector{};
    }
    const std::size_t n = v.size();
    QMatrix t(n, QVector(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) t[j][i] = basis[i][j];
    return solve(t, v, basis.size());
}

} // namespace twistbetti::dense
