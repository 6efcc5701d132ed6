#pragma once

// Test-only builders and brute-force oracles. The oracles deliberately avoid
// the library routines they are compared against.

#include "twistbetti/corpus.hpp"
#include "twistbetti/dense_q.hpp"
#include "twistbetti/geometry.hpp"
#include "twistbetti/localsys.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace twistbetti::test {

inline Hyperplane hp(std::initializer_list<long> normal, long offset = 0) {
    Hyperplane h;
    for (auto v : normal) h.normal.emplace_back(v);
    h.offset = offset;
    return h;
}

inline Arrangement arr(std::size_t dim, std::vector<Hyperplane> hs) { return Arrangement::create(dim, std::move(hs)); }

/// Rank-1 system with the given scalars.
inline LocalSystem scalars(const FieldSpec& f, std::initializer_list<Rational> ts) {
    std::vector<FMatrix> ms;
    for (const auto& t : ts) ms.push_back(FMatrix::scalar(1, t));
    return build_local_system(f, 1, std::move(ms));
}

inline LocalSystem scalars(const FieldSpec& f, const std::vector<Rational>& ts) {
    std::vector<FMatrix> ms;
    for (const auto& t : ts) ms.push_back(FMatrix::scalar(1, t));
    return build_local_system(f, 1, std::move(ms));
}

inline std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random essential arrangement with small coefficients (needs d >= n); may be non-generic.
inline Arrangement random_arrangement(std::size_t n, std::size_t d, std::mt19937_64& rng, bool central = false) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Hyperplane> hs;
        for (std::size_t i = 0; i < d; ++i) {
            Hyperplane h;
            for (std::size_t j = 0; j < n; ++j) h.normal.emplace_back(draw(rng, -2, 2));
            h.offset = central ? 0 : draw(rng, -2, 2);
            hs.push_back(std::move(h));
        }
        try {
            Arrangement a = Arrangement::create(n, std::move(hs));
            if (a.is_essential()) return a;
        } catch (const std::exception&) {
        }
    }
    throw std::logic_error("random_arrangement: parameters admit no essential arrangement");
}

/// Whitney's formula: chi(t) = sum over subsets S with nonempty intersection of (-1)^|S| t^(n - rank S).
inline std::vector<Count> whitney_chi(const Arrangement& a) {
    const std::size_t n = a.dim(), d = a.size();
    std::vector<Count> coeff(n + 1, 0);
    for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
        QMatrix m;
        QVector rhs;
        for (std::size_t i = 0; i < d; ++i)
            if (mask >> i & 1) {
                m.push_back(a[i].normal);
                rhs.push_back(a[i].offset);
            }
        if (!m.empty() && !dense::solve(m, rhs, n)) continue;
        const std::size_t rk = m.empty() ? 0 : dense::rank(m, n);
        coeff[n - rk] += (std::popcount(mask) % 2 == 0) ? 1 : -1;
    }
    return coeff;
}

/// Dense Gaussian elimination mod p on integer residues.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
    auto pw = [p](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && ((m[piv][c] % p) + p) % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const std::int64_t inv = pw(((m[rank][c] % p) + p) % p, p - 2);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const std::int64_t f = ((m[r][c] % p) + p) % p * inv % p;
            if (!f) continue;
            for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

} // namespace twistbetti::test
