#pragma once

#include "twistbetti/field.hpp"

#include <cstddef>
#include <vector>

namespace twistbetti {

struct SparseEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Rational value;
};

/// Coordinate-list matrix over a field: indices in range, at most one entry
/// per position, no stored zeros.
class FMatrixSparse {
public:
    FMatrixSparse() = default;
    FMatrixSparse(std::size_t nrows, std::size_t ncols) : nrows_(nrows), ncols_(ncols) {}

    /// Sums duplicate positions in the field and drops zeros.
    static FMatrixSparse from_entries(std::size_t nrows, std::size_t ncols, std::vector<SparseEntry> entries,
                                      const FieldSpec& field);
    static FMatrixSparse from_dense(const std::vector<std::vector<Rational>>& rows, const FieldSpec& field);

    std::size_t rows() const { return nrows_; }
    std::size_t cols() const { return ncols_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }

    std::vector<std::vector<Rational>> to_dense() const;

private:
    std::size_t nrows_ = 0;
    std::size_t ncols_ = 0;
    std::vector<SparseEntry> entries_;  // sorted by (row, col)
};

FMatrixSparse transpose(const FMatrixSparse& m);
/// a * b over the field.
FMatrixSparse multiply(const FieldSpec& field, const FMatrixSparse& a, const FMatrixSparse& b);

/// Exact rank. Over Q the rows are scaled to primitive integer vectors and
/// eliminated fraction-free; over F_p by ordinary modular elimination. Both
/// pick sparse pivots to limit fill.
std::size_t rank(const FMatrixSparse& m, const FieldSpec& field);

/// Dense Bareiss elimination over Z after clearing denominators (reference route).
std::size_t rank_bareiss(const FMatrixSparse& m);

struct ComplexDims {
    std::vector<std::size_t> dims;       // cell dimension per degree 0..n
    std::vector<std::size_t> ranks;      // ranks[k] = rank of d_k : C_k -> C_{k-1}; ranks[0] = 0
    std::vector<std::size_t> homology;   // dims[k] - ranks[k] - ranks[k+1]
};

/// boundaries[k-1] is d_k with shape dims[k-1] x dims[k], k = 1..n. Throws
/// ComplexError on a shape mismatch or if some d_k d_{k+1} is nonzero.
ComplexDims complex_dims(const std::vector<FMatrixSparse>& boundaries, const std::vector<std::size_t>& dims,
                         const FieldSpec& field);

} // namespace twistbetti
