#include "twistbetti/lp.hpp"

#include "twistbetti/dense_q.hpp"
#include "twistbetti/errors.hpp"

#include <algorithm>

namespace twistbetti::lp {

LpResult maximize(const CanonicalLp& problem) {
    const std::size_t m = problem.a.size();
    const std::size_t nvar = problem.c.size();
    const std::size_t ncols = nvar + m;

    // Tableau rows: [A | I | b]; objective row holds reduced costs.
    QMatrix t(m, QVector(ncols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (problem.b[i] < 0) throw PreconditionError("lp: canonical form needs b >= 0");
        for (std::size_t j = 0; j < nvar; ++j) t[i][j] = problem.a[i][j];
        t[i][nvar + i] = 1;
        t[i][ncols] = problem.b[i];
        basis[i] = nvar + i;
    }
    QVector obj(ncols + 1, Rational(0));
    for (std::size_t j = 0; j < nvar; ++j) obj[j] = problem.c[j];

    LpResult result;
    for (;;) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == ncols) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][ncols] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            result.bounded = false;
            return result;
        }

        Rational inv = 1 / t[leave][enter];
        for (auto& x : t[leave]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = obj[enter];
        for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    result.y.assign(nvar, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < nvar) result.y[basis[i]] = t[i][ncols];
    result.value = -obj[ncols];
    return result;
}

std::optional<QVector> find_strict_point(const StrictSystem& system) {
    const std::size_t n = system.dim;
    QVector x0(n, Rational(0));
    QMatrix directions;
    if (!system.eq_lhs.empty()) {
        auto sol = dense::solve(system.eq_lhs, system.eq_rhs, n);
        if (!sol) return std::nullopt;
        x0 = std::move(*sol);
        directions = dense::nullspace(system.eq_lhs, n);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            QVector e(n, Rational(0));
            e[i] = 1;
            directions.push_back(std::move(e));
        }
    }

    const std::size_t k = system.strict_lhs.size();
    if (k == 0) return x0;

    QVector slack0(k);
    for (std::size_t j = 0; j < k; ++j) slack0[j] = dot(system.strict_lhs[j], x0) - system.strict_rhs[j];
    Rational s0 = *std::min_element(slack0.begin(), slack0.end());
    if (s0 > 0) return x0;

    // Variables: z+ (q), z- (q), u. Maximize u subject to
    //   u - sum_l c_jl (z+_l - z-_l) <= g_j(x0) - s0,   u <= 1 - s0.
    const std::size_t q = directions.size();
    CanonicalLp problem;
    problem.c.assign(2 * q + 1, Rational(0));
    problem.c[2 * q] = 1;
    for (std::size_t j = 0; j < k; ++j) {
        QVector row(2 * q + 1, Rational(0));
        for (std::size_t l = 0; l < q; ++l) {
            Rational c = dot(system.strict_lhs[j], directions[l]);
            row[l] = -c;
            row[q + l] = c;
        }
        row[2 * q] = 1;
        problem.a.push_back(std::move(row));
        problem.b.push_back(slack0[j] - s0);
    }
    QVector cap(2 * q + 1, Rational(0));
    cap[2 * q] = 1;
    problem.a.push_back(std::move(cap));
    problem.b.push_back(1 - s0);

    LpResult res = maximize(problem);
    if (!res.bounded) throw Error("lp: unexpected unbounded strict-feasibility program");
    if (s0 + res.value <= 0) return std::nullopt;

    QVector x = x0;
    for (std::size_t l = 0; l < q; ++l) {
        Rational zl = res.y[l] - res.y[q + l];
        if (zl == 0) continue;
        for (std::size_t i = 0; i < n; ++i) x[i] += zl * directions[l][i];
    }
    return x;
}

} // namespace twistbetti::lp
