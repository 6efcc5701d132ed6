#include "twistbetti_cli/cli.hpp"

#include "twistbetti/corpus.hpp"
#include "twistbetti/errors.hpp"
#include "twistbetti/harness.hpp"
#include "twistbetti/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>

namespace twistbetti::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

int cmd_info(const std::string& path, std::ostream& out) {
    const Arrangement a = load_arrangement(path);
    Analyzer an;
    const FlatPoset& poset = an.poset(a);
    std::vector<std::size_t> flats(a.dim() + 1, 0);
    for (const auto& f : poset.flats()) ++flats[f.codim];
    while (flats.size() > 1 && flats.back() == 0) flats.pop_back();
    const RegionCounts rc = region_counts(an.faces(a));

    Json j;
    j["dim"] = a.dim();
    j["hyperplanes"] = a.size();
    j["central"] = a.is_central();
    j["essential"] = a.is_essential();
    j["flats"] = flats;
    j["chi"] = characteristic_polynomial(poset).coefficients;
    j["betti"] = an.betti(a);
    j["regions"] = rc.chambers;
    j["bounded"] = rc.bounded;
    if (a.is_essential()) j["cells"] = an.complex(a).cell_counts();
    out << j.dump(2) << "\n";
    return kExitPass;
}

int cmd_betti(const std::string& arr_path, const std::string& sys_path, std::ostream& out) {
    const Arrangement a = load_arrangement(arr_path);
    const LocalSystem l = load_local_system(sys_path);
    if (!a.is_essential()) throw PreconditionError("betti: arrangement is not essential");
    Analyzer an;
    Json j;
    j["field"] = l.field().name();
    j["rank"] = l.rank();
    j["trivial"] = is_trivial(l);
    j["betti"] = an.betti(a);
    j["twisted"] = an.twisted(a, l);
    out << j.dump(2) << "\n";
    return kExitPass;
}

struct VerifyArgs {
    bool all = false;
    std::vector<std::string> checks;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> primes;
    std::string out;
    std::vector<std::string> files;
};

int cmd_verify(const VerifyArgs& v, std::ostream& out, std::ostream& err) {
    SuiteOptions opts;
    opts.seed = v.seed;
    if (!v.primes.empty()) opts.primes = v.primes;
    for (auto p : opts.primes) (void)FieldSpec::prime(p);
    if (!v.all) opts.checks.insert(v.checks.begin(), v.checks.end());

    std::vector<CorpusEntry> corpus;
    if (v.files.empty()) {
        CorpusSpec spec;
        spec.seed = v.seed;
        spec.primes = opts.primes;
        corpus = generate_corpus(spec);
    } else {
        // Explicitly requested checks on explicit inputs must apply.
        opts.strict = !v.all && !v.checks.empty();
        std::vector<std::pair<std::string, Arrangement>> arrangements;
        std::vector<NamedSystem> systems;
        for (const auto& f : v.files) {
            const std::string text = read_text_file(f);
            if (is_local_system_json(text)) {
                try {
                    systems.push_back({f, parse_local_system_json(text)});
                } catch (const Error& e) {
                    throw ParseError(f + ": " + e.what());
                }
            } else {
                arrangements.emplace_back(f, load_arrangement(f));
            }
        }
        if (arrangements.empty()) throw PreconditionError("verify: no arrangement file given");
        for (auto& [id, a] : arrangements) {
            CorpusEntry e{id, a, {}};
            if (systems.empty()) {
                std::mt19937_64 rng(v.seed);
                e.systems = generate_systems(a.size(), 100, opts.primes, rng, stem(id));
            } else {
                for (const auto& s : systems) {
                    if (s.system.size() != a.size())
                        throw ValidationError("verify: " + s.id + " has " + std::to_string(s.system.size()) +
                                              " matrices but " + id + " has " + std::to_string(a.size()) +
                                              " hyperplanes");
                    e.systems.push_back(s);
                }
            }
            corpus.push_back(std::move(e));
        }
    }

    const SuiteResult result = run_suite(corpus, opts);
    const std::string text = report_to_json(result);
    if (v.out.empty())
        out << text;
    else
        write_text_file(v.out, text);
    err << "verify: " << result.summary.total << " reports, " << result.summary.passed << " passed, "
        << result.summary.failed << " failed, " << result.summary.not_applicable << " not applicable (seed "
        << result.summary.seed << ")\n";
    for (const auto& r : result.reports)
        if (r.status == CheckStatus::Fail)
            err << "FAIL " << r.check << " " << r.arrangement_id << " " << r.system_id << " " << r.variant << ": "
                << r.detail << "\n";
    return result.summary.failed == 0 ? kExitPass : kExitCheckFailure;
}

int cmd_corpus_generate(std::uint64_t seed, const CorpusSpec& base, const std::string& dir, std::ostream& out) {
    CorpusSpec spec = base;
    spec.seed = seed;
    const auto corpus = generate_corpus(spec);
    fs::create_directories(fs::path(dir) / "arrangements");
    Json manifest;
    manifest["seed"] = seed;
    Json entries = Json::array();
    for (const auto& e : corpus) {
        const fs::path arr = fs::path("arrangements") / (e.id + ".json");
        write_text_file((fs::path(dir) / arr).string(), arrangement_to_json(e.arrangement));
        const fs::path sysdir = fs::path("systems") / e.id;
        fs::create_directories(fs::path(dir) / sysdir);
        Json systems = Json::array();
        for (const auto& s : e.systems) {
            const std::string name = s.id.substr(s.id.find('/') + 1);
            const fs::path sp = sysdir / (name + ".json");
            write_text_file((fs::path(dir) / sp).string(), local_system_to_json(s.system));
            systems.push_back({{"id", s.id}, {"file", sp.generic_string()}, {"trivial", is_trivial(s.system)}});
        }
        entries.push_back({{"id", e.id}, {"file", arr.generic_string()}, {"systems", std::move(systems)}});
    }
    manifest["arrangements"] = std::move(entries);
    write_text_file((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    out << "wrote " << corpus.size() << " arrangements to " << dir << "\n";
    return kExitPass;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted Betti numbers of hyperplane arrangement complements"};
    app.require_subcommand(1);

    std::string info_path;
    auto* info = app.add_subcommand("info", "Flats, characteristic polynomial, Betti numbers and region counts");
    info->add_option("arrangement", info_path, "Arrangement JSON file")->required();

    std::string betti_arr, betti_sys;
    auto* betti = app.add_subcommand("betti", "Twisted Betti numbers for a local system");
    betti->add_option("arrangement", betti_arr, "Arrangement JSON file")->required();
    betti->add_option("--system", betti_sys, "Local-system JSON file")->required();

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run the verification checks and write a JSON report");
    auto* all_flag = verify->add_flag("--all", va.all, "Run every check");
    verify->add_option("--checks", va.checks, "Checks to run (comma-separated or repeated)")
        ->allow_extra_args(false)
        ->delimiter(',')
        ->excludes(all_flag)
        ->check(CLI::IsMember(all_check_names()));
    verify->add_option("--seed", va.seed, "Seed for generic sections and generated systems");
    verify->add_option("--prime", va.primes, "Prime for F_p instances (repeatable)")->allow_extra_args(false);
    verify->add_option("--out", va.out, "Report file (stdout when omitted)");
    verify->add_option("files", va.files, "Arrangement and local-system files (default corpus when omitted)");

    auto* corpus = app.add_subcommand("corpus", "Corpus utilities");
    corpus->require_subcommand(1);
    std::uint64_t corpus_seed = 0;
    std::string corpus_out;
    CorpusSpec corpus_spec;
    auto* generate = corpus->add_subcommand("generate", "Write the corpus as JSON files");
    generate->add_option("--seed", corpus_seed, "Corpus seed");
    generate->add_option("--out", corpus_out, "Output directory")->required();
    generate->add_option("--generic", corpus_spec.generic_count, "Number of random generic arrangements");
    generate->add_option("--central", corpus_spec.central_count, "Number of random central arrangements");
    generate->add_option("--systems", corpus_spec.systems_per_arrangement, "Nontrivial systems per arrangement");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(info_path, out);
        if (betti->parsed()) return cmd_betti(betti_arr, betti_sys, out);
        if (verify->parsed()) {
            if (va.checks.empty()) va.all = true;
            return cmd_verify(va, out, err);
        }
        if (generate->parsed()) return cmd_corpus_generate(corpus_seed, corpus_spec, corpus_out, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace twistbetti::cli
