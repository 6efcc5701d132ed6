#pragma once

#include "twistbetti/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace twistbetti {

/// Q or F_p. Elements of F_p are carried as Rationals holding the canonical
/// residue in [0, p).
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return {}; }
    /// Throws ValidationError unless p is a prime below 2^31.
    static FieldSpec prime(std::uint64_t p);

    bool is_prime_field() const { return kind == Kind::PrimeField; }
    std::string name() const;

    /// Maps a rational into the field (n/d -> n * d^{-1} mod p). Throws
    /// ValidationError if the denominator vanishes mod p.
    Rational reduce(const Rational& q) const;

    Rational add(const Rational& a, const Rational& b) const;
    Rational sub(const Rational& a, const Rational& b) const;
    Rational mul(const Rational& a, const Rational& b) const;
    Rational inv(const Rational& a) const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t p);

/// Dense square matrix over a field, row-major.
class FMatrix {
public:
    FMatrix() = default;
    explicit FMatrix(std::size_t n) : n_(n), data_(n * n, Rational(0)) {}
    FMatrix(std::size_t n, std::vector<Rational> data);

    static FMatrix identity(std::size_t n);
    static FMatrix scalar(std::size_t n, const Rational& s);

    std::size_t size() const { return n_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<Rational>& data() const { return data_; }

    bool is_identity() const;
    bool is_zero() const;

    friend bool operator==(const FMatrix&, const FMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> data_;
};

FMatrix reduce(const FieldSpec& k, const FMatrix& m);
FMatrix multiply(const FieldSpec& k, const FMatrix& a, const FMatrix& b);
FMatrix subtract(const FieldSpec& k, const FMatrix& a, const FMatrix& b);
Rational determinant(const FieldSpec& k, const FMatrix& m);
/// Throws ValidationError when singular.
FMatrix inverse(const FieldSpec& k, const FMatrix& m);
std::size_t matrix_rank(const FieldSpec& k, const FMatrix& m);

} // namespace twistbetti
