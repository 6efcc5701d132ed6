#include "twistbetti/field.hpp"

#include "twistbetti/errors.hpp"

#include <utility>

namespace twistbetti {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime(p) || p >= (1ULL << 31)) throw ValidationError("F_p needs a prime p < 2^31, got " + std::to_string(p));
    return {Kind::PrimeField, p};
}

std::string FieldSpec::name() const { return is_prime_field() ? "F" + std::to_string(p) : "Q"; }

Rational FieldSpec::reduce(const Rational& q) const {
    if (!is_prime_field()) return q;
    BigInt mod(static_cast<unsigned long>(p));
    BigInt num = q.get_num() % mod;
    if (num < 0) num += mod;
    BigInt den = q.get_den() % mod;
    if (den == 0) throw ValidationError(q.get_str() + " has no image in " + name());
    BigInt den_inv;
    mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    BigInt r = (num * den_inv) % mod;
    return Rational(r);
}

Rational FieldSpec::add(const Rational& a, const Rational& b) const { return reduce(a + b); }
Rational FieldSpec::sub(const Rational& a, const Rational& b) const { return reduce(a - b); }
Rational FieldSpec::mul(const Rational& a, const Rational& b) const { return reduce(a * b); }

Rational FieldSpec::inv(const Rational& a) const {
    if (a == 0) throw ValidationError("inverse of zero");
    return reduce(1 / a);
}

FMatrix::FMatrix(std::size_t n, std::vector<Rational> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != n * n) throw ValidationError("matrix data does not match size " + std::to_string(n));
}

FMatrix FMatrix::identity(std::size_t n) { return scalar(n, Rational(1)); }

FMatrix FMatrix::scalar(std::size_t n, const Rational& s) {
    FMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

bool FMatrix::is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool FMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

FMatrix reduce(const FieldSpec& k, const FMatrix& m) {
    std::vector<Rational> d;
    d.reserve(m.data().size());
    for (const auto& x : m.data()) d.push_back(k.reduce(x));
    return FMatrix(m.size(), std::move(d));
}

FMatrix multiply(const FieldSpec& k, const FMatrix& a, const FMatrix& b) {
    const std::size_t n = a.size();
    FMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (a(i, l) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, l) * b(l, j);
        }
    return reduce(k, c);
}

FMatrix subtract(const FieldSpec& k, const FMatrix& a, const FMatrix& b) {
    FMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = a(i, j) - b(i, j);
    return reduce(k, c);
}

namespace {

// In-place Gauss–Jordan on `m` (n columns), mirrored on `aug` when given.
// Returns (rank, determinant of the leading square block).
std::pair<std::size_t, Rational> eliminate(const FieldSpec& k, std::vector<std::vector<Rational>>& m, std::size_t ncols,
                                           std::vector<std::vector<Rational>>* aug) {
    std::size_t row = 0;
    Rational det = 1;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) {
            det = 0;
            continue;
        }
        if (piv != row) {
            std::swap(m[piv], m[row]);
            if (aug) std::swap((*aug)[piv], (*aug)[row]);
            det = k.sub(Rational(0), det);
        }
        det = k.mul(det, m[row][col]);
        Rational inv = k.inv(m[row][col]);
        for (auto& x : m[row]) x = k.mul(x, inv);
        if (aug)
            for (auto& x : (*aug)[row]) x = k.mul(x, inv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < ncols; ++c) m[r][c] = k.sub(m[r][c], k.mul(f, m[row][c]));
            if (aug)
                for (std::size_t c = 0; c < (*aug)[r].size(); ++c)
                    (*aug)[r][c] = k.sub((*aug)[r][c], k.mul(f, (*aug)[row][c]));
        }
        ++row;
    }
    if (row < m.size()) det = 0;
    return {row, det};
}

std::vector<std::vector<Rational>> rows_of(const FMatrix& m) {
    std::vector<std::vector<Rational>> r(m.size(), std::vector<Rational>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r[i][j] = m(i, j);
    return r;
}

} // namespace

Rational determinant(const FieldSpec& k, const FMatrix& m) {
    auto rows = rows_of(m);
    return eliminate(k, rows, m.size(), nullptr).second;
}

std::size_t matrix_rank(const FieldSpec& k, const FMatrix& m) {
    auto rows = rows_of(m);
    return eliminate(k, rows, m.size(), nullptr).first;
}

FMatrix inverse(const FieldSpec& k, const FMatrix& m) {
    auto rows = rows_of(m);
    auto aug = rows_of(FMatrix::identity(m.size()));
    auto [rank, det] = eliminate(k, rows, m.size(), &aug);
    if (rank != m.size()) throw ValidationError("matrix is singular");
    FMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = aug[i][j];
    return out;
}

} // namespace twistbetti
