#pragma once

#include "twistbetti/field.hpp"
#include "twistbetti/geometry.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace twistbetti {

/// Rank-r local system on an arrangement complement with abelian monodromy:
/// one invertible matrix per hyperplane meridian, pairwise commuting.
class LocalSystem {
public:
    LocalSystem() = default;

    const FieldSpec& field() const { return field_; }
    std::size_t rank() const { return rank_; }
    /// Number of hyperplanes the system is defined for.
    std::size_t size() const { return monodromy_.size(); }
    const std::vector<FMatrix>& monodromy() const { return monodromy_; }
    const FMatrix& operator[](std::size_t i) const { return monodromy_[i]; }

    /// Canonical text; equal keys mean equal systems.
    const std::string& key() const { return key_; }

private:
    friend LocalSystem build_local_system(const FieldSpec&, std::size_t, std::vector<FMatrix>);

    FieldSpec field_;
    std::size_t rank_ = 0;
    std::vector<FMatrix> monodromy_;
    std::string key_;
};

/// Validates sizes, reduces entries into the field and checks invertibility
/// and pairwise commutation. Errors name the offending hyperplane or pair.
LocalSystem build_local_system(const FieldSpec& field, std::size_t rank, std::vector<FMatrix> matrices);

/// The constant sheaf of rank r on d hyperplanes.
LocalSystem constant_system(const FieldSpec& field, std::size_t rank, std::size_t d);

bool is_trivial(const LocalSystem& l);

/// Entrywise inverse system L^∨.
LocalSystem dual(const LocalSystem& l);

/// Product of all monodromies; only defined for central arrangements.
FMatrix total_turn(const Arrangement& a, const LocalSystem& l);

/// Pulls L back along an injective index map (target hyperplane j -> source hyperplane map[j]).
LocalSystem restrict(const LocalSystem& l, const std::vector<std::size_t>& map);

/// The system L' on decone(A, i0) with L = p^{-1} L'. Requires total_turn(A, L) = I.
LocalSystem decone_system(const Arrangement& a, const LocalSystem& l, std::size_t i0);

} // namespace twistbetti
