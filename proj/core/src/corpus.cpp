#include "twistbetti/corpus.hpp"

#include "twistbetti/errors.hpp"

#include <cstdio>
#include <set>

namespace twistbetti {

namespace {

// Uniform integer in [lo, hi] by modular reduction, which is stable across
// standard library implementations (unlike std::uniform_int_distribution).
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(rng() % span);
}

Hyperplane hp(std::initializer_list<long> normal, long offset = 0) {
    Hyperplane h;
    for (auto v : normal) h.normal.emplace_back(v);
    h.offset = offset;
    return h;
}

std::string numbered(const std::string& prefix, std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02zu", i);
    return prefix + buf;
}

bool is_general_position(const Arrangement& a) {
    const auto b = betti_numbers(intersection_poset(a));
    Count binom = 1;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] != binom) return false;
        binom = binom * static_cast<Count>(a.size() - i) / static_cast<Count>(i + 1);
    }
    return true;
}

const std::vector<Rational>& scalar_pool() {
    static const std::vector<Rational> pool{Rational(2), Rational(3), Rational(5), Rational(1, 2), Rational(-1),
                                           Rational(1)};
    return pool;
}

} // namespace

const std::vector<std::string>& named_arrangement_ids() {
    static const std::vector<std::string> ids{"A1", "A2", "Bool2", "Gen3", "Cen3", "Braid3", "Braid4"};
    return ids;
}

Arrangement braid_arrangement(std::size_t m) {
    if (m < 2) throw ValidationError("braid arrangement needs m >= 2");
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Hyperplane h;
            h.normal.assign(m, Rational(0));
            h.normal[i] = 1;
            h.normal[j] = -1;
            h.offset = 0;
            h.label = "z" + std::to_string(i + 1) + "=z" + std::to_string(j + 1);
            hs.push_back(std::move(h));
        }
    return essentialize(Arrangement::create(m, std::move(hs))).arrangement;
}

Arrangement named_arrangement(const std::string& name) {
    if (name == "A1") return Arrangement::create(1, {hp({1})});
    if (name == "A2") return Arrangement::create(1, {hp({1}), hp({1}, 1)});
    if (name == "Bool2") return Arrangement::create(2, {hp({1, 0}), hp({0, 1})});
    if (name == "Gen3") return Arrangement::create(2, {hp({1, 0}), hp({0, 1}), hp({1, 1}, 1)});
    if (name == "Cen3") return Arrangement::create(2, {hp({1, 0}), hp({0, 1}), hp({1, -1})});
    if (name == "Braid3") return braid_arrangement(3);
    if (name == "Braid4") return braid_arrangement(4);
    throw ValidationError("unknown named arrangement '" + name + "'");
}

Arrangement random_generic_arrangement(std::size_t n, std::size_t d, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Hyperplane> hs;
        for (std::size_t i = 0; i < d; ++i) {
            Hyperplane h;
            for (std::size_t j = 0; j < n; ++j) h.normal.emplace_back(draw(rng, -3, 3));
            h.offset = draw(rng, -5, 5);
            hs.push_back(std::move(h));
        }
        try {
            Arrangement a = Arrangement::create(n, std::move(hs));
            if (a.is_essential() && is_general_position(a)) return a;
        } catch (const ValidationError&) {
        }
    }
    throw GenericityError("could not draw a generic arrangement");
}

Arrangement random_central_arrangement(std::size_t n, std::size_t d, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Hyperplane> hs;
        for (std::size_t i = 0; i < d; ++i) {
            Hyperplane h;
            for (std::size_t j = 0; j < n; ++j) h.normal.emplace_back(draw(rng, -2, 2));
            h.offset = 0;
            hs.push_back(std::move(h));
        }
        try {
            Arrangement a = Arrangement::create(n, std::move(hs));
            if (a.is_essential()) return a;
        } catch (const ValidationError&) {
        }
    }
    throw GenericityError("could not draw a central arrangement");
}

std::vector<NamedSystem> generate_systems(std::size_t d, std::size_t count, const std::vector<std::uint64_t>& primes,
                                          std::mt19937_64& rng, const std::string& prefix) {
    std::vector<NamedSystem> out;
    std::set<std::string> seen;
    for (std::size_t r = 1; r <= 3; ++r) {
        LocalSystem c = constant_system(FieldSpec::rationals(), r, d);
        seen.insert(c.key());
        out.push_back({prefix + "/const-r" + std::to_string(r), std::move(c)});
    }
    if (d == 0) return out;

    std::size_t nontrivial = 0;
    std::size_t serial = 0;
    auto add = [&](const LocalSystem& l, const std::string& tag) {
        if (is_trivial(l) || !seen.insert(l.key()).second) return;
        out.push_back({prefix + "/" + numbered("s", serial) + "-" + tag, l});
        ++nontrivial;
        LocalSystem dl = dual(l);
        if (seen.insert(dl.key()).second) {
            out.push_back({prefix + "/" + numbered("s", serial) + "-" + tag + "-dual", dl});
            ++nontrivial;
        }
        ++serial;
    };

    const auto& pool = scalar_pool();
    auto pick = [&] { return pool[static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))]; };
    auto unipotent = [&](const FieldSpec& f, bool all_j) {
        std::vector<FMatrix> ms;
        for (std::size_t i = 0; i < d; ++i) {
            FMatrix m = FMatrix::identity(2);
            m(0, 1) = all_j ? Rational(1) : Rational(draw(rng, -1, 1));
            ms.push_back(std::move(m));
        }
        return build_local_system(f, 2, std::move(ms));
    };

    // The all-J unipotent systems come first so every arrangement carries them.
    add(unipotent(FieldSpec::rationals(), true), "unip-Q");
    for (auto p : primes)
        if (p == 2) add(unipotent(FieldSpec::prime(2), true), "unip-F2");

    const std::size_t budget = 200 * count + 1000;
    for (std::size_t attempt = 0; nontrivial < count && attempt < budget; ++attempt) {
        switch (attempt % 4) {
        case 0: {
            std::vector<FMatrix> ms;
            for (std::size_t i = 0; i < d; ++i) ms.push_back(FMatrix::scalar(1, pick()));
            add(build_local_system(FieldSpec::rationals(), 1, std::move(ms)), "q1");
            break;
        }
        case 1: {
            if (primes.empty()) break;
            const std::uint64_t p = primes[(attempt / 4) % primes.size()];
            const FieldSpec f = FieldSpec::prime(p);
            if (p == 2) {
                add(unipotent(f, false), "unip-F2");
                break;
            }
            std::vector<FMatrix> ms;
            for (std::size_t i = 0; i < d; ++i)
                ms.push_back(FMatrix::scalar(1, Rational(draw(rng, 1, static_cast<std::int64_t>(p) - 1))));
            add(build_local_system(f, 1, std::move(ms)), "f" + std::to_string(p));
            break;
        }
        case 2: {
            std::vector<FMatrix> ms;
            for (std::size_t i = 0; i < d; ++i) {
                FMatrix m(2);
                m(0, 0) = pick();
                m(1, 1) = pick();
                ms.push_back(std::move(m));
            }
            add(build_local_system(FieldSpec::rationals(), 2, std::move(ms)), "diag2");
            break;
        }
        default:
            add(unipotent(FieldSpec::rationals(), false), "unip-Q");
            break;
        }
    }
    return out;
}

std::vector<CorpusEntry> generate_corpus(const CorpusSpec& spec) {
    std::vector<std::pair<std::string, Arrangement>> arrangements;
    std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + 0x5EED);
    if (spec.named)
        for (const auto& id : named_arrangement_ids()) arrangements.emplace_back(id, named_arrangement(id));
    for (std::size_t i = 0; i < spec.generic_count; ++i) {
        const std::size_t n = 1 + i % 3;
        const std::size_t d = n + 1 + static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(5 - n)));
        arrangements.emplace_back(numbered("gen", i), random_generic_arrangement(n, d, rng));
    }
    for (std::size_t i = 0; i < spec.central_count; ++i) {
        const std::size_t d = 3 + static_cast<std::size_t>(draw(rng, 0, 2));
        arrangements.emplace_back(numbered("cen", i), random_central_arrangement(3, d, rng));
    }

    std::vector<CorpusEntry> corpus;
    for (std::size_t i = 0; i < arrangements.size(); ++i) {
        auto& [id, a] = arrangements[i];
        std::mt19937_64 srng(spec.seed * 0x9E3779B97F4A7C15ULL + 104729ULL * (i + 1));
        auto systems = generate_systems(a.size(), spec.systems_per_arrangement, spec.primes, srng, id);
        corpus.push_back({id, std::move(a), std::move(systems)});
    }
    return corpus;
}

} // namespace twistbetti
