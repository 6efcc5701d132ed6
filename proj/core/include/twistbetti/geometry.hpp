#pragma once

#include "twistbetti/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistbetti {

using Count = std::int64_t;

/// The affine hyperplane {z : normal·z = offset}.
struct Hyperplane {
    QVector normal;
    Rational offset;
    std::string label;

    Rational evaluate(const QVector& z) const { return dot(normal, z) - offset; }
};

/// A finite set of distinct affine hyperplanes in K^n with rational
/// defining forms, kept in input order.
class Arrangement {
public:
    Arrangement() = default;

    /// Validates and canonicalizes. Throws ValidationError on zero normals,
    /// wrong lengths, or two rows defining the same locus.
    static Arrangement create(std::size_t dim, std::vector<Hyperplane> hyperplanes);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return hyperplanes_.size(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }

    bool is_central() const { return central_point_.has_value(); }
    bool is_essential() const { return essential_; }
    /// A common point of all hyperplanes when central.
    const std::optional<QVector>& central_point() const { return central_point_; }

    QMatrix normals() const;

    /// Label-free canonical text; equal keys mean identical defining data.
    const std::string& key() const { return key_; }

private:
    std::size_t dim_ = 0;
    std::vector<Hyperplane> hyperplanes_;
    std::optional<QVector> central_point_;
    bool essential_ = false;
    std::string key_;
};

/// Textual arrangement description, as read from a file.
struct RawHyperplane {
    std::string label;
    std::vector<std::string> normal;
    std::string offset;
};

struct RawArrangement {
    std::size_t dim = 0;
    std::vector<RawHyperplane> hyperplanes;
};

Arrangement validate_arrangement(const RawArrangement& raw);

struct Flat {
    std::size_t codim = 0;
    QVector point;
    QMatrix directions;
    std::vector<std::size_t> containing;  // sorted; every hyperplane containing the flat
    Count mobius = 0;
};

/// Intersection poset ordered by reverse inclusion. Flats are sorted by
/// codimension, then by containing set; index 0 is the ambient space.
class FlatPoset {
public:
    FlatPoset(std::size_t ambient_dim, std::vector<Flat> flats);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Flat>& flats() const { return flats_; }
    const Flat& bottom() const { return flats_.front(); }

    /// Flats of the given codimension, in poset order.
    std::vector<const Flat*> of_codim(std::size_t codim) const;
    std::optional<std::size_t> find(const std::vector<std::size_t>& containing) const;
    /// x <= y in the poset, i.e. y is contained in x as a subspace.
    bool leq(std::size_t x, std::size_t y) const;

private:
    std::size_t ambient_dim_;
    std::vector<Flat> flats_;
};

/// chi(t) = sum_k coefficients[k] t^k.
struct CharPoly {
    std::vector<Count> coefficients;

    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    Count evaluate(Count t) const;
};

FlatPoset intersection_poset(const Arrangement& a);
CharPoly characteristic_polynomial(const FlatPoset& poset);
/// b_i = sum over flats of codimension i of |mobius|.
std::vector<Count> betti_numbers(const FlatPoset& poset);
std::vector<Flat> zero_flats(const FlatPoset& poset);

/// An arrangement derived from a parent, with origin[j] the parent index of hyperplane j.
struct SubArrangement {
    Arrangement arrangement;
    std::vector<std::size_t> origin;
};

struct Essentialized {
    Arrangement arrangement;
    /// m x n matrix P; the quotient coordinates of z are P z.
    QMatrix projection;
};

Essentialized essentialize(const Arrangement& a);

/// Hyperplanes through the flat, same ambient space. Throws ValidationError
/// when `x` is not a flat of `a`.
SubArrangement localize(const Arrangement& a, const Flat& x);

struct GenericSection {
    SubArrangement section;
    /// Parametrization z = base + span^T y of the k-plane (span has k rows).
    QVector base;
    QMatrix span;
    std::uint64_t seed_used = 0;
    std::size_t attempts = 0;
};

inline constexpr std::size_t kSectionRetries = 32;
inline constexpr std::int64_t kSectionCoordinateBound = 10000;

/// Intersects `a` with a pseudo-random affine k-plane, retrying until the
/// section is certified combinatorially generic. Throws GenericityError
/// carrying every failed certificate when the retry budget is exhausted.
GenericSection generic_section(const Arrangement& a, std::size_t k, std::uint64_t seed);

/// Failure reason if `section` is not a generic k-section of `a`, else nullopt.
std::optional<std::string> section_certificate_failure(const Arrangement& a, const Arrangement& section);

/// Sends hyperplane i0 of a central essential arrangement to infinity.
SubArrangement decone(const Arrangement& a, std::size_t i0);

} // namespace twistbetti
