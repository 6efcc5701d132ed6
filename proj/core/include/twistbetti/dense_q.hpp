#pragma once

#include "twistbetti/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

// Small dense linear algebra over Q used by the geometric layer. Sizes here
// are bounded by the ambient dimension and the number of hyperplanes, so no
// attention is paid to fill or coefficient growth.
namespace twistbetti::dense {

struct Echelon {
    QMatrix rows;                      // nonzero rows of the reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form; leading entries are 1.
Echelon rref(QMatrix m, std::size_t ncols);

std::size_t rank(const QMatrix& m, std::size_t ncols);

/// Basis of {x : m x = 0}, one vector per free column (canonical for the row space).
QMatrix nullspace(const QMatrix& m, std::size_t ncols);

/// Any solution of m x = rhs, or nullopt if inconsistent.
std::optional<QVector> solve(const QMatrix& m, const QVector& rhs, std::size_t ncols);

Rational determinant(QMatrix m);

/// Coordinates of `v` in the basis given by the rows of `basis`; nullopt if v is outside the span.
std::optional<QVector> coordinates(const QMatrix& basis, const QVector& v);

} // namespace twistbetti::dense
