// Acceptance suite: runs every check over the default corpus (seed 0) and
// prints one PASS/FAIL line per acceptance criterion.

#include "twistbetti/corpus.hpp"
#include "twistbetti/harness.hpp"
#include "twistbetti/io.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>

using namespace twistbetti;

namespace {

struct Tally {
    std::size_t total = 0, passed = 0, failed = 0, twisted = 0, untwisted = 0;
    std::string first_failure;
};

std::map<std::string, Tally> tally(const SuiteResult& r) {
    std::map<std::string, Tally> out;
    for (const auto& c : r.reports) {
        Tally& t = out[c.check];
        ++t.total;
        if (c.status == CheckStatus::Fail) {
            ++t.failed;
            if (t.first_failure.empty())
                t.first_failure = c.arrangement_id + " " + c.system_id + " " + c.variant + ": " + c.detail;
        } else {
            ++t.passed;
        }
        ++(c.twisted ? t.twisted : t.untwisted);
    }
    return out;
}

class Printer {
public:
    void line(int id, bool ok, const std::string& what, const std::string& detail) {
        std::printf("%s  criterion %2d  %s  [%s]\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
        all_ok_ = all_ok_ && ok;
    }
    bool all_ok() const { return all_ok_; }

private:
    bool all_ok_ = true;
};

std::string counts(const Tally& t) {
    std::string s = std::to_string(t.passed) + "/" + std::to_string(t.total) + " reports pass, " +
                    std::to_string(t.twisted) + " twisted, " + std::to_string(t.untwisted) + " untwisted";
    if (!t.first_failure.empty()) s += "; first failure: " + t.first_failure;
    return s;
}

const CheckReport* find(const SuiteResult& r, const std::string& check, const std::string& arr,
                        const std::string& sys, const std::string& variant = "") {
    for (const auto& c : r.reports)
        if (c.check == check && c.arrangement_id == arr && c.system_id == sys &&
            (variant.empty() || c.variant == variant))
            return &c;
    return nullptr;
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    CorpusSpec spec;
    spec.seed = 0;
    const auto corpus = generate_corpus(spec);
    SuiteOptions opts;
    opts.seed = 0;
    const SuiteResult result = run_suite(corpus, opts);
    auto t = tally(result);
    Printer p;

    std::size_t pairs = 0, pairs_n2 = 0;
    for (const auto& e : corpus) {
        pairs += e.systems.size();
        if (e.arrangement.dim() >= 2) pairs_n2 += e.systems.size();
    }
    std::printf("corpus: %zu arrangements, %zu (arrangement, system) pairs, %zu reports\n", corpus.size(), pairs,
                result.reports.size());

    // Non-vacuity: every check ran on at least one twisted and one untwisted instance,
    // except those that are untwisted or twisted by definition.
    auto nonvacuous = [&](const std::string& check, bool need_twisted, bool need_untwisted) {
        const Tally& x = t[check];
        return x.total > 0 && (!need_twisted || x.twisted > 0) && (!need_untwisted || x.untwisted > 0);
    };
    auto clean = [&](const std::string& check) { return t[check].failed == 0 && t[check].total > 0; };

    {
        Analyzer an;
        const CheckReport g = check_untwisted_match(an, named_arrangement("Gen3"));
        const CheckReport c = check_untwisted_match(an, named_arrangement("Cen3"));
        const bool named = g.dims.at("betti_salvetti") == std::vector<Count>{1, 3, 3} &&
                           g.dims.at("regions") == std::vector<Count>{7, 1} &&
                           c.dims.at("betti_salvetti") == std::vector<Count>{1, 3, 2} &&
                           c.dims.at("regions") == std::vector<Count>{6, 0};
        p.line(1, clean("untwisted_match") && t["untwisted_match"].total == corpus.size() && named,
               "untwisted oracle (Whitney sums, Zaslavsky counts)", counts(t["untwisted_match"]) +
                   (named ? "; Gen3 (1,3,3)/7/1, Cen3 (1,3,2)/6/0" : "; named values wrong"));
    }

    p.line(2, clean("boundary_squared") && t["boundary_squared"].total == pairs && nonvacuous("boundary_squared", true, true),
           "d∘d = 0 over Z and every field instance", counts(t["boundary_squared"]));

    p.line(3, clean("constant_equality") && t["constant_equality"].total >= 3 * corpus.size(),
           "constant sheaf equality, r = 1,2,3", counts(t["constant_equality"]));

    {
        std::map<std::string, std::set<std::string>> per;
        std::set<std::string> families;
        for (const auto& r : result.reports)
            if (r.check == "main_theorem") {
                per[r.arrangement_id].insert(r.system_id);
                for (const char* tag : {"-q1", "-f", "-diag2", "-unip-Q", "-unip-F2"})
                    if (r.system_id.find(tag) != std::string::npos) families.insert(tag);
            }
        std::size_t min_systems = per.empty() ? 0 : SIZE_MAX;
        for (const auto& e : corpus) min_systems = std::min(min_systems, per[e.id].size());
        bool closed = true;
        for (const auto& e : corpus) {
            std::set<std::string> keys;
            for (const auto& s : e.systems) keys.insert(s.system.key());
            for (const auto& s : e.systems) closed = closed && keys.count(dual(s.system).key()) > 0;
        }
        p.line(4, clean("main_theorem") && min_systems >= 100 && families.size() == 5 && closed,
               "strict inequality for nontrivial systems",
               counts(t["main_theorem"]) + "; min nontrivial systems per arrangement " + std::to_string(min_systems) +
                   "; families " + std::to_string(families.size()) + "/5; closed under dual " +
                   (closed ? "yes" : "no"));
    }

    {
        Analyzer an;
        const Arrangement cen3 = named_arrangement("Cen3");
        auto sys = [](const FieldSpec& f) {
            std::vector<FMatrix> ms(3, FMatrix::scalar(1, Rational(2)));
            return build_local_system(f, 1, ms);
        };
        const CheckReport q = check_central_structure(an, cen3, sys(FieldSpec::rationals()));
        const CheckReport f7 = check_central_structure(an, cen3, sys(FieldSpec::prime(7)));
        const bool named = q.passed() && f7.passed() && q.dims.at("twisted") == std::vector<Count>{0, 0, 0} &&
                           f7.dims.at("twisted") == std::vector<Count>{0, 1, 1} && f7.variant == "T=I";
        std::size_t vanish = 0, kunneth = 0;
        for (const auto& r : result.reports)
            if (r.check == "central_structure" && r.status == CheckStatus::Pass)
                ++(r.variant == "T=I" ? kunneth : vanish);
        p.line(5, clean("central_structure") && named && vanish > 0 && kunneth > 0 &&
                      nonvacuous("central_structure", true, true),
               "central dichotomy (vanishing / Künneth over every decone)",
               counts(t["central_structure"]) + "; " + std::to_string(vanish) + " vanishing, " +
                   std::to_string(kunneth) + " T=I" + (named ? "; Cen3 (0,0,0)/Q, (0,1,1)/F7" : "; named values wrong"));
    }

    p.line(6, clean("relative_section") && t["relative_section"].total == pairs_n2 &&
                  nonvacuous("relative_section", true, true),
           "generic hyperplane section dimension identity", counts(t["relative_section"]));

    {
        const CheckReport* g = find(result, "local_global", "Gen3", "Gen3/const-r1");
        const bool named = g && g->dims.at("global_local") == std::vector<Count>{3, 3} &&
                           g->dims.at("local_top") == std::vector<Count>{1, 1, 1};
        p.line(7, clean("local_global") && t["local_global"].total == pairs && named &&
                      nonvacuous("local_global", true, true),
               "local-global top-degree bound", counts(t["local_global"]) + (named ? "; Gen3 3 = 1+1+1" : "; Gen3 wrong"));
    }

    p.line(8, clean("nearby_section") && nonvacuous("nearby_section", true, true), "nearby-section bound at 0-flats",
           counts(t["nearby_section"]));
    p.line(9, clean("lefschetz") && nonvacuous("lefschetz", true, true), "Lefschetz reduction, 1 <= i <= n",
           counts(t["lefschetz"]));
    p.line(10, clean("euler") && t["euler"].total == pairs && nonvacuous("euler", true, true),
           "Euler characteristic multiplicativity", counts(t["euler"]));
    p.line(11, clean("one_dim_oracle") && nonvacuous("one_dim_oracle", true, true),
           "closed form on C^1 arrangements and line sections", counts(t["one_dim_oracle"]));

    {
        const std::string first = report_to_json(result);
        const std::string second = report_to_json(run_suite(generate_corpus(spec), opts));
        p.line(12, first == second, "determinism of the seed-0 report",
               std::to_string(first.size()) + " bytes, " + (first == second ? "identical" : "differs"));
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("summary: %zu reports, %zu passed, %zu failed, %zu not applicable; %.1f s\n", result.summary.total,
                result.summary.passed, result.summary.failed, result.summary.not_applicable, secs);
    std::printf("%s\n", p.all_ok() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return p.all_ok() ? 0 : 1;
}
