#pragma once

#include "twistbetti/harness.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace twistbetti {

struct CorpusSpec {
    std::uint64_t seed = 0;
    bool named = true;
    /// Random generic arrangements (d <= 6 hyperplanes, n <= 3).
    std::size_t generic_count = 6;
    /// Random central essential arrangements (d <= 5, n = 3).
    std::size_t central_count = 4;
    /// Minimum number of distinct nontrivial systems per arrangement.
    std::size_t systems_per_arrangement = 100;
    std::vector<std::uint64_t> primes{2, 3, 7, 101};
};

/// Names accepted by named_arrangement.
const std::vector<std::string>& named_arrangement_ids();

/// A1, A2, Bool2, Gen3, Cen3, Braid3, Braid4. Throws ValidationError for an unknown name.
Arrangement named_arrangement(const std::string& name);

/// The braid arrangement {z_i = z_j, 1 <= i < j <= m} modulo its lineality, in C^{m-1}.
Arrangement braid_arrangement(std::size_t m);

/// Affine arrangement of d hyperplanes in general position in K^n with small integer coefficients.
Arrangement random_generic_arrangement(std::size_t n, std::size_t d, std::mt19937_64& rng);

/// Central essential arrangement of d hyperplanes through the origin of K^n.
Arrangement random_central_arrangement(std::size_t n, std::size_t d, std::mt19937_64& rng);

/// Constant sheaves of rank 1..3 over Q, followed by at least `count` distinct
/// nontrivial systems drawn from the rank-1 Q, rank-1 F_p, rank-2 diagonal and
/// rank-2 unipotent families. The result is closed under dual.
std::vector<NamedSystem> generate_systems(std::size_t d, std::size_t count, const std::vector<std::uint64_t>& primes,
                                          std::mt19937_64& rng, const std::string& prefix);

/// Deterministic corpus for a spec; equal specs give identical corpora.
std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec);

} // namespace twistbetti
