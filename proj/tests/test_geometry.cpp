#include "support.hpp"

#include "twistbetti/errors.hpp"
#include "twistbetti/realfaces.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace twistbetti;
using test::arr;
using test::hp;

namespace {

Arrangement gen3() { return named_arrangement("Gen3"); }
Arrangement cen3() { return named_arrangement("Cen3"); }

} // namespace

TEST(Arrangement, RejectsBadRows) {
    EXPECT_THROW(arr(2, {hp({0, 0})}), ValidationError);
    EXPECT_THROW(arr(2, {hp({1, 0, 0})}), ValidationError);
    try {
        arr(2, {hp({1, 1}, 1), hp({2, 2}, 2)});
        FAIL() << "duplicate accepted";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("H1"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("H2"), std::string::npos);
    }
    // Parallel but distinct is fine.
    EXPECT_NO_THROW(arr(2, {hp({1, 1}, 1), hp({2, 2}, 1)}));
}

TEST(Arrangement, FlagsAndKey) {
    EXPECT_TRUE(cen3().is_central());
    EXPECT_FALSE(gen3().is_central());
    EXPECT_TRUE(gen3().is_essential());
    EXPECT_FALSE(arr(2, {hp({1, 0}), hp({1, 0}, 1)}).is_essential());
    EXPECT_EQ(gen3().key(), gen3().key());
    EXPECT_NE(gen3().key(), cen3().key());
}

TEST(Arrangement, ValidateRawNamesRow) {
    RawArrangement raw{2, {{"a", {"1", "0"}, "0"}, {"b", {"1", "x"}, "0"}}};
    try {
        validate_arrangement(raw);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
    }
}

TEST(Poset, NamedExamples) {
    EXPECT_EQ(betti_numbers(intersection_poset(gen3())), (std::vector<Count>{1, 3, 3}));
    EXPECT_EQ(characteristic_polynomial(intersection_poset(gen3())).coefficients, (std::vector<Count>{3, -3, 1}));
    EXPECT_EQ(betti_numbers(intersection_poset(cen3())), (std::vector<Count>{1, 3, 2}));
    EXPECT_EQ(characteristic_polynomial(intersection_poset(cen3())).coefficients, (std::vector<Count>{2, -3, 1}));
    EXPECT_EQ(betti_numbers(intersection_poset(named_arrangement("A2"))), (std::vector<Count>{1, 2}));
    EXPECT_EQ(betti_numbers(intersection_poset(named_arrangement("Bool2"))), (std::vector<Count>{1, 2, 1}));
}

TEST(Poset, BraidFourMatchesClosedForm) {
    const Arrangement b4 = braid_arrangement(4);
    EXPECT_EQ(b4.dim(), 3u);
    EXPECT_EQ(b4.size(), 6u);
    EXPECT_TRUE(b4.is_essential());
    const FlatPoset p = intersection_poset(b4);
    EXPECT_EQ(betti_numbers(p), (std::vector<Count>{1, 6, 11, 6}));
    // (t-1)(t-2)(t-3)
    EXPECT_EQ(characteristic_polynomial(p).coefficients, (std::vector<Count>{-6, 11, -6, 1}));
}

TEST(Poset, MatchesWhitneySubsetOracle) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + t % 3;
        const std::size_t d = n + static_cast<std::size_t>(test::draw(rng, 0, 6 - static_cast<std::int64_t>(n)));
        const Arrangement a = test::random_arrangement(n, d, rng, n > 1 && t % 4 == 0);
        const FlatPoset p = intersection_poset(a);
        EXPECT_EQ(characteristic_polynomial(p).coefficients, test::whitney_chi(a)) << a.key();
    }
}

TEST(Poset, FlatsAreSubsetClosures) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 30; ++t) {
        const Arrangement a = test::random_arrangement(3, 5, rng, t % 3 == 0);
        const FlatPoset p = intersection_poset(a);
        // Brute force: close every subset with a nonempty intersection.
        std::set<std::vector<std::size_t>> closures;
        for (std::uint64_t mask = 0; mask < (1u << a.size()); ++mask) {
            QMatrix m;
            QVector rhs;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (mask >> i & 1) {
                    m.push_back(a[i].normal);
                    rhs.push_back(a[i].offset);
                }
            auto x = m.empty() ? std::optional<QVector>(QVector(a.dim(), 0)) : dense::solve(m, rhs, a.dim());
            if (!x) continue;
            QMatrix dirs = dense::nullspace(m, a.dim());
            std::vector<std::size_t> cl;
            for (std::size_t i = 0; i < a.size(); ++i) {
                bool in = a[i].evaluate(*x) == 0;
                for (const auto& v : dirs) in = in && dot(a[i].normal, v) == 0;
                if (in) cl.push_back(i);
            }
            closures.insert(cl);
        }
        std::set<std::vector<std::size_t>> got;
        for (const auto& f : p.flats()) got.insert(f.containing);
        EXPECT_EQ(got, closures);
        EXPECT_TRUE(p.bottom().containing.empty());
        EXPECT_EQ(p.bottom().mobius, 1);
    }
}

TEST(Poset, MobiusSignsAlternate) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        const FlatPoset p = intersection_poset(test::random_arrangement(3, 6, rng));
        for (const auto& f : p.flats()) {
            const Count s = f.codim % 2 == 0 ? 1 : -1;
            EXPECT_GT(s * f.mobius, 0);
        }
    }
}

TEST(Sections, EssentializeAndLocalize) {
    const Arrangement a = arr(3, {hp({1, 0, 0}), hp({0, 1, 0}), hp({1, 1, 0}, 1)});
    EXPECT_FALSE(a.is_essential());
    const Essentialized e = essentialize(a);
    EXPECT_EQ(e.arrangement.dim(), 2u);
    EXPECT_TRUE(e.arrangement.is_essential());
    // Same Betti numbers; the ambient vector carries trailing zeros above the rank.
    const auto be = betti_numbers(intersection_poset(e.arrangement));
    const auto ba = betti_numbers(intersection_poset(a));
    ASSERT_EQ(ba.size(), be.size() + 1);
    EXPECT_TRUE(std::equal(be.begin(), be.end(), ba.begin()));
    EXPECT_EQ(ba.back(), 0);

    const Arrangement g = gen3();
    const auto zeros = zero_flats(intersection_poset(g));
    ASSERT_EQ(zeros.size(), 3u);
    for (const auto& x : zeros) {
        const SubArrangement loc = localize(g, x);
        EXPECT_EQ(loc.origin, x.containing);
        EXPECT_TRUE(loc.arrangement.is_central());
    }
    Flat bogus = zeros[0];
    bogus.containing = {0, 1, 2};
    EXPECT_THROW(localize(g, bogus), ValidationError);
}

TEST(Sections, GenericSectionIsCertified) {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 15; ++t) {
        const Arrangement a = test::random_arrangement(3, 5, rng, t % 2 == 0);
        const auto b = betti_numbers(intersection_poset(a));
        for (std::size_t k = 1; k <= 3; ++k) {
            const GenericSection g = generic_section(a, k, 7);
            EXPECT_EQ(g.section.arrangement.dim(), k);
            EXPECT_FALSE(section_certificate_failure(a, g.section.arrangement).has_value());
            const auto bs = betti_numbers(intersection_poset(g.section.arrangement));
            EXPECT_EQ(bs, std::vector<Count>(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k + 1)));
            // Deterministic in the seed.
            EXPECT_EQ(generic_section(a, k, 7).section.arrangement.key(), g.section.arrangement.key());
        }
    }
}

TEST(Sections, CertificateRejectsDegenerateSection) {
    const Arrangement bool3 = arr(3, {hp({1, 0, 0}), hp({0, 1, 0}), hp({0, 0, 1})});
    // Three lines in general position: a generic 2-section.
    EXPECT_FALSE(section_certificate_failure(bool3, gen3()).has_value());
    // Concurrent lines create a codim-2 flat on all three hyperplanes.
    EXPECT_TRUE(section_certificate_failure(bool3, cen3()).has_value());
    EXPECT_TRUE(section_certificate_failure(bool3, arr(2, {hp({1, 0}), hp({0, 1})})).has_value());
}

TEST(Sections, DeconeCen3) {
    const SubArrangement m = decone(cen3(), 2);
    EXPECT_EQ(m.arrangement.dim(), 1u);
    EXPECT_EQ(m.arrangement.size(), 2u);
    EXPECT_EQ(betti_numbers(intersection_poset(m.arrangement)), (std::vector<Count>{1, 2}));
    EXPECT_THROW(decone(gen3(), 0), PreconditionError);
    EXPECT_THROW(decone(cen3(), 3), PreconditionError);
}

TEST(Sections, DeconeFactorsCharacteristicPolynomial) {
    // chi_A(t) = (t - 1) chi_M(t) for every choice of hyperplane at infinity.
    std::mt19937_64 rng(25);
    for (int t = 0; t < 15; ++t) {
        const Arrangement a = test::random_arrangement(3, 5, rng, true);
        const auto ca = characteristic_polynomial(intersection_poset(a)).coefficients;
        for (std::size_t i0 = 0; i0 < a.size(); ++i0) {
            const auto cm = characteristic_polynomial(intersection_poset(decone(a, i0).arrangement)).coefficients;
            std::vector<Count> prod(cm.size() + 1, 0);
            for (std::size_t k = 0; k < cm.size(); ++k) {
                prod[k + 1] += cm[k];
                prod[k] -= cm[k];
            }
            EXPECT_EQ(prod, ca);
        }
    }
}

// ---------------------------------------------------------------------------
// Real faces

namespace {

std::set<SignVector> brute_force_faces(const Arrangement& a) {
    std::set<SignVector> out;
    const std::size_t d = a.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        SignVector s(d);
        std::size_t c = code;
        for (std::size_t i = 0; i < d; ++i, c /= 3) s[i] = static_cast<std::int8_t>(static_cast<int>(c % 3) - 1);
        if (realize_sign_vector(a, s)) out.insert(s);
    }
    return out;
}

} // namespace

TEST(Faces, NamedCounts) {
    const FaceComplex g = enumerate_faces(gen3());
    EXPECT_EQ(g.faces().size(), 19u);
    EXPECT_EQ(region_counts(g).chambers, 7);
    EXPECT_EQ(region_counts(g).bounded, 1);
    const FaceComplex c = enumerate_faces(cen3());
    EXPECT_EQ(c.faces().size(), 13u);
    EXPECT_EQ(region_counts(c).chambers, 6);
    EXPECT_EQ(region_counts(c).bounded, 0);
}

TEST(Faces, MatchSignVectorOracle) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 1 + t % 3;
        const Arrangement a = test::random_arrangement(n, std::max<std::size_t>(n, 2 + t % 4), rng, n > 1 && t % 5 == 0);
        const FaceComplex fc = enumerate_faces(a);
        std::set<SignVector> got;
        for (const auto& f : fc.faces()) {
            got.insert(f.sign);
            // Each witness realizes its sign vector exactly.
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(sign(a[i].evaluate(f.witness)), f.sign[i]);
            EXPECT_EQ(f.dim, face_dimension(a, f.sign));
        }
        EXPECT_EQ(got, brute_force_faces(a)) << a.key();
    }
}

TEST(Faces, ZaslavskyAndEulerRelations) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + t % 3;
        const Arrangement a = test::random_arrangement(n, std::max<std::size_t>(n, 2 + t % 5), rng, n > 1 && t % 3 == 0);
        const FaceComplex fc = enumerate_faces(a);
        const auto chi = characteristic_polynomial(intersection_poset(a));
        const Count s = n % 2 == 0 ? 1 : -1;
        EXPECT_EQ(region_counts(fc).chambers, s * chi.evaluate(-1));
        EXPECT_EQ(region_counts(fc).bounded, s * chi.evaluate(1));
        // Open faces partition R^n: sum (-1)^dim F = (-1)^n.
        Count euler = 0;
        for (const auto& f : fc.faces()) euler += f.dim % 2 == 0 ? 1 : -1;
        EXPECT_EQ(euler, s);
    }
}

TEST(Faces, CoversCompositionAndSeparation) {
    std::mt19937_64 rng(33);
    const Arrangement a = test::random_arrangement(2, 5, rng);
    const FaceComplex fc = enumerate_faces(a);
    for (std::size_t f = 0; f < fc.faces().size(); ++f) {
        for (auto g : fc.upper_covers(f)) {
            EXPECT_TRUE(face_leq(fc.face(f).sign, fc.face(g).sign));
            EXPECT_EQ(fc.face(g).dim, fc.face(f).dim + 1);
        }
        for (auto c : fc.adjacent_chambers(f)) {
            EXPECT_TRUE(fc.is_chamber(c));
            EXPECT_TRUE(face_leq(fc.face(f).sign, fc.face(c).sign));
            for (auto g : fc.upper_covers(f)) {
                auto gc = fc.find(compose(fc.face(g).sign, fc.face(c).sign));
                ASSERT_TRUE(gc);
                EXPECT_TRUE(fc.is_chamber(*gc));
                EXPECT_TRUE(face_leq(fc.face(g).sign, fc.face(*gc).sign));
            }
        }
    }
    const auto& ch = fc.chambers();
    for (auto c1 : ch)
        for (auto c2 : ch) {
            const auto sep = separating_set(fc, c1, c2);
            EXPECT_EQ(sep.empty(), c1 == c2);
            EXPECT_EQ(sep, separating_set(fc, c2, c1));
        }
    ASSERT_EQ(fc.face(0).dim, 0u);
    EXPECT_THROW(separating_set(fc, 0, ch[0]), ValidationError);
}
