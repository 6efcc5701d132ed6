#pragma once

#include "twistbetti/rational.hpp"

#include <cstddef>
#include <optional>

namespace twistbetti::lp {

/// maximize c·y subject to A y <= b, y >= 0, with b >= 0 (origin feasible).
/// Primal simplex over Q with Bland's anti-cycling rule.
struct CanonicalLp {
    QMatrix a;
    QVector b;
    QVector c;
};

struct LpResult {
    bool bounded = true;
    QVector y;
    Rational value;
};

LpResult maximize(const CanonicalLp& problem);

/// System  E x = e,  S x > k  in `dim` unknowns.
struct StrictSystem {
    std::size_t dim = 0;
    QMatrix eq_lhs;
    QVector eq_rhs;
    QMatrix strict_lhs;
    QVector strict_rhs;
};

/// An exact rational point satisfying every equality and strict inequality,
/// or nullopt if the system has no solution.
std::optional<QVector> find_strict_point(const StrictSystem& system);

} // namespace twistbetti::lp
