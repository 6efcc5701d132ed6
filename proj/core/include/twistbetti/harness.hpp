#pragma once

#include "twistbetti/geometry.hpp"
#include "twistbetti/localsys.hpp"
#include "twistbetti/salvetti.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace twistbetti {

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string to_string(CheckStatus s);

struct CheckReport {
    std::string check;
    std::string arrangement_id;
    std::string system_id;
    /// Distinguishes several reports of one check on one pair ("x=...", "i=2", "r=3/F7").
    std::string variant;
    CheckStatus status = CheckStatus::Pass;
    /// False for constant-sheaf instances.
    bool twisted = false;
    /// Named dimension vectors the verdict was computed from.
    std::map<std::string, std::vector<Count>> dims;
    /// The identity or inequality that was checked.
    std::string statement;
    std::string detail;
    std::uint64_t seed = 0;

    bool passed() const { return status != CheckStatus::Fail; }
};

/// Memoizing evaluation context: posets, Salvetti complexes, generic sections
/// and twisted Betti numbers are computed once per arrangement / system.
/// Not thread-safe; use one Analyzer per thread.
class Analyzer {
public:
    const FlatPoset& poset(const Arrangement& a);
    const std::vector<Count>& betti(const Arrangement& a);
    const FaceComplex& faces(const Arrangement& a);
    const SalvettiComplex& complex(const Arrangement& a);
    const std::vector<Count>& twisted(const Arrangement& a, const LocalSystem& l);
    const GenericSection& section(const Arrangement& a, std::size_t k, std::uint64_t seed);

private:
    std::map<std::string, std::unique_ptr<FlatPoset>> posets_;
    std::map<std::string, std::vector<Count>> betti_;
    std::map<std::string, std::unique_ptr<FaceComplex>> faces_;
    std::map<std::string, std::unique_ptr<SalvettiComplex>> complexes_;
    std::map<std::pair<std::string, std::string>, std::vector<Count>> twisted_;
    std::map<std::tuple<std::string, std::size_t, std::uint64_t>, GenericSection> sections_;
};

// Every check requires an essential arrangement and throws PreconditionError
// otherwise; failures of the checked statement are reported, not thrown.

/// Salvetti homology = Whitney-sum Betti numbers; chamber / bounded counts = Zaslavsky evaluations.
CheckReport check_untwisted_match(Analyzer& an, const Arrangement& a);
/// d∘d = 0 for the untwisted complex over Z and for the twisted complex of L.
CheckReport check_boundary_squared(Analyzer& an, const Arrangement& a, const LocalSystem& l);
/// b_i(U; L) < r b_i(U) in every degree. Throws PreconditionError for trivial L.
CheckReport check_main_theorem(Analyzer& an, const Arrangement& a, const LocalSystem& l);
/// The constant sheaf of rank r has b_i(U; K^r) = r b_i(U).
CheckReport check_constant_equality(Analyzer& an, const Arrangement& a, std::size_t r,
                                    const FieldSpec& field = FieldSpec::rationals());
/// sum (-1)^i b_i(U; L) = r chi(U).
CheckReport check_euler(Analyzer& an, const Arrangement& a, const LocalSystem& l);
/// Dimension identities of the pair (U, U ∩ H) for a generic hyperplane section.
CheckReport check_relative_section(Analyzer& an, const Arrangement& a, const LocalSystem& l, std::uint64_t seed);
/// b_n(U; L) >= sum over 0-flats of the local b_n, with equality for constant sheaves.
CheckReport check_local_global(Analyzer& an, const Arrangement& a, const LocalSystem& l);
/// b_{n-1} of a generic hyperplane section of A dominates that of its localization at x.
CheckReport check_nearby_section(Analyzer& an, const Arrangement& a, const LocalSystem& l, const Flat& x,
                                 std::uint64_t seed);
/// Central arrangements: vanishing when T(L) - I is invertible, Künneth over every decone when T(L) = I.
CheckReport check_central_structure(Analyzer& an, const Arrangement& a, const LocalSystem& l);
/// b_i(U_A; L) <= b_i(U_B; L|) and b_i(U_B) = b_i(U_A) for a generic i-section B.
CheckReport check_lefschetz(Analyzer& an, const Arrangement& a, const LocalSystem& l, std::size_t i,
                            std::uint64_t seed);
/// Arrangements in C^1: b_0 = dim ∩ ker(A_i - I), b_1 = r(d-1) + b_0.
CheckReport check_one_dim_oracle(Analyzer& an, const Arrangement& a, const LocalSystem& l);

/// Closed-form twisted Betti numbers of d points in C^1 (independent of the Salvetti route).
std::vector<Count> one_dim_closed_form(const LocalSystem& l);

// ---------------------------------------------------------------------------
// Suite runner

inline const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names{
        "untwisted_match", "boundary_squared", "constant_equality", "main_theorem",
        "euler",           "relative_section", "local_global",      "nearby_section",
        "central_structure", "lefschetz",      "one_dim_oracle"};
    return names;
}

struct NamedSystem {
    std::string id;
    LocalSystem system;
};

struct CorpusEntry {
    std::string id;
    Arrangement arrangement;
    std::vector<NamedSystem> systems;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    /// Empty means every check.
    std::set<std::string> checks;
    /// When true, a check that does not apply to a pair raises PreconditionError
    /// instead of being skipped.
    bool strict = false;
    /// Primes for the untwisted field-independence runs of constant_equality.
    std::vector<std::uint64_t> primes{2, 3, 7, 101};
};

struct SuiteSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t not_applicable = 0;
    std::uint64_t seed = 0;
};

struct SuiteResult {
    std::vector<CheckReport> reports;  // sorted by (check, arrangement, system, variant)
    SuiteSummary summary;
};

/// Runs the selected checks on every (arrangement, system) pair of the corpus.
SuiteResult run_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& options);

} // namespace twistbetti
