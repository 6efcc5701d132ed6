#include "twistbetti/harness.hpp"

#include "twistbetti/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace twistbetti {

std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Analyzer

const FlatPoset& Analyzer::poset(const Arrangement& a) {
    auto it = posets_.find(a.key());
    if (it == posets_.end())
        it = posets_.emplace(a.key(), std::make_unique<FlatPoset>(intersection_poset(a))).first;
    return *it->second;
}

const std::vector<Count>& Analyzer::betti(const Arrangement& a) {
    auto it = betti_.find(a.key());
    if (it == betti_.end()) it = betti_.emplace(a.key(), betti_numbers(poset(a))).first;
    return it->second;
}

const FaceComplex& Analyzer::faces(const Arrangement& a) {
    auto it = faces_.find(a.key());
    if (it == faces_.end()) it = faces_.emplace(a.key(), std::make_unique<FaceComplex>(enumerate_faces(a))).first;
    return *it->second;
}

const SalvettiComplex& Analyzer::complex(const Arrangement& a) {
    auto it = complexes_.find(a.key());
    if (it == complexes_.end())
        it = complexes_.emplace(a.key(), std::make_unique<SalvettiComplex>(faces(a))).first;
    return *it->second;
}

const std::vector<Count>& Analyzer::twisted(const Arrangement& a, const LocalSystem& l) {
    auto k = std::make_pair(a.key(), l.key());
    auto it = twisted_.find(k);
    if (it == twisted_.end()) {
        // The complex assembled from L computes cohomology with coefficients in L^∨.
        it = twisted_.emplace(k, twisted_betti(complex(a), dual(l))).first;
    }
    return it->second;
}

const GenericSection& Analyzer::section(const Arrangement& a, std::size_t k, std::uint64_t seed) {
    auto key = std::make_tuple(a.key(), k, seed);
    auto it = sections_.find(key);
    if (it == sections_.end()) it = sections_.emplace(key, generic_section(a, k, seed)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

void require_essential(const Arrangement& a, const char* check) {
    if (!a.is_essential())
        throw PreconditionError(std::string(check) + ": arrangement is not essential (essentialize first)");
}

Count at(const std::vector<Count>& v, std::ptrdiff_t i) {
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(v.size())) return 0;
    return v[static_cast<std::size_t>(i)];
}

std::vector<Count> scaled(const std::vector<Count>& v, std::size_t r) {
    std::vector<Count> out;
    for (auto x : v) out.push_back(x * static_cast<Count>(r));
    return out;
}

Count alternating(const std::vector<Count>& v) {
    Count s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * v[i];
    return s;
}

std::string join(const std::vector<Count>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

CheckReport make_report(const char* check, const LocalSystem& l, std::string statement) {
    CheckReport r;
    r.check = check;
    r.twisted = !is_trivial(l);
    r.statement = std::move(statement);
    return r;
}

void fail(CheckReport& r, const std::string& why) {
    r.status = CheckStatus::Fail;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += why;
}

std::vector<std::size_t> compose_maps(const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner) {
    std::vector<std::size_t> out;
    for (auto j : inner) out.push_back(outer[j]);
    return out;
}

bool all_zero(const std::vector<FMatrixSparse>& ds, const FieldSpec& field, std::string& where) {
    for (std::size_t k = 0; k + 1 < ds.size(); ++k) {
        if (multiply(field, ds[k], ds[k + 1]).nonzeros() != 0) {
            where = "d_" + std::to_string(k + 1) + " d_" + std::to_string(k + 2) + " != 0";
            return false;
        }
    }
    return true;
}

} // namespace

CheckReport check_untwisted_match(Analyzer& an, const Arrangement& a) {
    require_essential(a, "untwisted_match");
    CheckReport r;
    r.check = "untwisted_match";
    r.statement = "Salvetti homology = Whitney Betti numbers; chambers = (-1)^n chi(-1); bounded = (-1)^n chi(1)";
    const auto& b = an.betti(a);
    const auto& s = an.complex(a);
    const auto h = untwisted_betti(s, FieldSpec::rationals());
    const CharPoly chi = characteristic_polynomial(an.poset(a));
    const Count sgn = a.dim() % 2 == 0 ? 1 : -1;
    const RegionCounts rc = region_counts(s.faces());
    std::vector<Count> cells;
    for (auto c : s.cell_counts()) cells.push_back(static_cast<Count>(c));

    r.dims["betti_poset"] = b;
    r.dims["betti_salvetti"] = h;
    r.dims["regions"] = {rc.chambers, rc.bounded};
    r.dims["regions_chi"] = {sgn * chi.evaluate(-1), sgn * chi.evaluate(1)};
    r.dims["cells"] = cells;
    if (h != b) fail(r, "Salvetti homology " + join(h) + " != poset Betti numbers " + join(b));
    if (rc.chambers != sgn * chi.evaluate(-1)) fail(r, "chamber count disagrees with chi(-1)");
    if (rc.bounded != sgn * chi.evaluate(1)) fail(r, "bounded chamber count disagrees with chi(1)");
    if (!cells.empty() && cells[0] != rc.chambers) fail(r, "0-cells != chambers");
    return r;
}

CheckReport check_boundary_squared(Analyzer& an, const Arrangement& a, const LocalSystem& l) {
    require_essential(a, "boundary_squared");
    CheckReport r = make_report("boundary_squared", l, "d_k d_{k+1} = 0 (untwisted over Z, twisted for L and L^dual)");
    const auto& s = an.complex(a);
    std::string where;
    if (!all_zero(boundary_matrices(s), FieldSpec::rationals(), where)) fail(r, "untwisted: " + where);
    TwistedComplex t = twisted_complex(s, l);
    if (!all_zero(t.boundaries, t.field, where)) fail(r, "twisted: " + where);
    TwistedComplex td = twisted_complex(s, dual(l));
    if (!all_zero(td.boundaries, td.field, where)) fail(r, "twisted dual: " + where);
    std::vector<Count> dims;
    for (auto d : t.dims) dims.push_back(static_cast<Count>(d));
    r.dims["chain_dims"] = dims;
    return r;
}

CheckReport check_main_theorem(Analyzer& an, const Arrangement& a, const LocalSystem& l) {
    require_essential(a, "main_theorem");
    if (is_trivial(l)) throw PreconditionError("main_theorem: the local system is trivial");
    CheckReport r = make_report("main_theorem", l, "b_i(U;L) < r b_i(U) where b_i(U) > 0, b_i(U;L) = 0 otherwise");
    const auto& b = an.betti(a);
    const auto& t = an.twisted(a, l);
    const std::size_t rk = l.rank();
    r.dims["betti"] = b;
    r.dims["twisted"] = t;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Count bound = static_cast<Count>(rk) * b[i];
        if (b[i] > 0 && !(t[i] < bound))
            fail(r, "degree " + std::to_string(i) + ": " + std::to_string(t[i]) + " >= " + std::to_string(bound));
        if (b[i] == 0 && t[i] != 0)
            fail(r, "degree " + std::to_string(i) + ": nonzero where b_i(U) = 0");
    }
    return r;
}

CheckReport check_constant_equality(Analyzer& an, const Arrangement& a, std::size_t rk, const FieldSpec& field) {
    require_essential(a, "constant_equality");
    if (rk == 0) throw PreconditionError("constant_equality: rank must be positive");
    CheckReport r;
    r.check = "constant_equality";
    r.statement = "b_i(U; K^r) = r b_i(U)";
    const LocalSystem l = constant_system(field, rk, a.size());
    const auto expect = scaled(an.betti(a), rk);
    const auto& t = an.twisted(a, l);
    r.dims["expected"] = expect;
    r.dims["twisted"] = t;
    if (t != expect) fail(r, join(t) + " != " + join(expect));
    return r;
}

CheckReport check_euler(Analyzer& an, const Arrangement& a, const LocalSystem& l) {
    require_essential(a, "euler");
    CheckReport r = make_report("euler", l, "sum (-1)^i b_i(U;L) = r chi(U)");
    const auto& b = an.betti(a);
    const auto& t = an.twisted(a, l);
    const Count lhs = alternating(t);
    const Count rhs = static_cast<Count>(l.rank()) * alternating(b);
    r.dims["twisted"] = t;
    r.dims["euler"] = {lhs, rhs};
    if (lhs != rhs) fail(r, std::to_string(lhs) + " != " + std::to_string(rhs));
    return r;
}

CheckReport check_relative_section(Analyzer& an, const Arrangement& a, const LocalSystem& l, std::uint64_t seed) {
    require_essential(a, "relative_section");
    const std::size_t n = a.dim();
    if (n < 2) throw PreconditionError("relative_section: needs dimension >= 2");
    CheckReport r = make_report("relative_section", l,
                                "b_i(B;L) = b_i(U;L) for i <= n-2; b_{n-1}(B;L) - b_{n-1}(U;L) + b_n(U;L) = r b_n(U)");
    r.seed = seed;
    const GenericSection& g = an.section(a, n - 1, seed);
    const LocalSystem lb = restrict(l, g.section.origin);
    const auto& b = an.betti(a);
    const auto& t = an.twisted(a, l);
    const auto& tb = an.twisted(g.section.arrangement, lb);
    const Count rk = static_cast<Count>(l.rank());
    r.dims["betti"] = b;
    r.dims["twisted"] = t;
    r.dims["twisted_section"] = tb;
    for (std::size_t i = 0; i + 2 <= n; ++i)
        if (tb[i] != t[i]) fail(r, "degree " + std::to_string(i) + ": section and complement differ");
    const Count lhs = tb[n - 1] - t[n - 1] + t[n];
    if (lhs != rk * b[n])
        fail(r, "top relative dimension " + std::to_string(lhs) + " != r b_n = " + std::to_string(rk * b[n]));
    if (t[n] == rk * b[n] && tb[n - 1] != t[n - 1]) fail(r, "top degree is maximal but b_{n-1} differs");
    return r;
}

CheckReport check_local_global(Analyzer& an, const Arrangement& a, const LocalSystem& l) {
    require_essential(a, "local_global");
    const std::size_t n = a.dim();
    CheckReport r = make_report("local_global", l,
                                "b_n(U;L) >= sum over 0-flats x of b_n(U_x;L_x), equality for constant sheaves");
    std::vector<Count> local;
    Count sum = 0;
    for (const Flat& x : zero_flats(an.poset(a))) {
        SubArrangement loc = localize(a, x);
        Essentialized e = essentialize(loc.arrangement);
        const auto& tx = an.twisted(e.arrangement, restrict(l, loc.origin));
        local.push_back(at(tx, static_cast<std::ptrdiff_t>(n)));
        sum += local.back();
    }
    const Count top = an.twisted(a, l)[n];
    r.dims["local_top"] = local;
    r.dims["global_local"] = {top, sum};
    if (top < sum) fail(r, "b_n(U;L) = " + std::to_string(top) + " < " + std::to_string(sum));
    if (is_trivial(l) && top != sum) fail(r, "constant sheaf: " + std::to_string(top) + " != " + std::to_string(sum));
    return r;
}

CheckReport check_nearby_section(Analyzer& an, const Arrangement& a, const LocalSystem& l, const Flat& x,
                                 std::uint64_t seed) {
    require_essential(a, "nearby_section");
    const std::size_t n = a.dim();
    if (n < 2) throw PreconditionError("nearby_section: needs dimension >= 2");
    if (x.codim != n) throw PreconditionError("nearby_section: x is not a 0-dimensional flat");
    CheckReport r = make_report("nearby_section", l, "b_{n-1}(B;L) >= b_{n-1}(B_x;L_x) for generic sections");
    r.seed = seed;
    SubArrangement loc = localize(a, x);
    Essentialized e = essentialize(loc.arrangement);
    const GenericSection& g = an.section(a, n - 1, seed);
    const GenericSection& gx = an.section(e.arrangement, n - 1, seed);
    const auto& tb = an.twisted(g.section.arrangement, restrict(l, g.section.origin));
    const auto& tx = an.twisted(gx.section.arrangement, restrict(l, compose_maps(loc.origin, gx.section.origin)));
    r.dims["twisted_section"] = tb;
    r.dims["twisted_local_section"] = tx;
    if (tb[n - 1] < tx[n - 1])
        fail(r, std::to_string(tb[n - 1]) + " < " + std::to_string(tx[n - 1]) + " in degree " + std::to_string(n - 1));
    return r;
}

CheckReport check_central_structure(Analyzer& an, const Arrangement& a, const LocalSystem& l) {
    require_essential(a, "central_structure");
    if (!a.is_central()) throw PreconditionError("central_structure: arrangement is not central");
    CheckReport r = make_report("central_structure", l,
                                "det(T-I) != 0 => b(U;L) = 0; T = I => b_k(U;L) = b_k(M;L') + b_{k-1}(M;L') "
                                "for every decone M");
    const FieldSpec& k = l.field();
    const FMatrix t = total_turn(a, l);
    const auto& tw = an.twisted(a, l);
    r.dims["twisted"] = tw;
    const FMatrix diff = subtract(k, t, FMatrix::identity(l.rank()));
    if (determinant(k, diff) != 0) {
        r.variant = "T-I invertible";
        for (auto v : tw)
            if (v != 0) fail(r, "nonzero cohomology " + join(tw) + " although T - I is invertible");
        return r;
    }
    if (!t.is_identity()) {
        r.variant = "T-I singular";
        r.status = CheckStatus::NotApplicable;
        r.detail = "T is neither identity nor has T - I invertible";
        return r;
    }
    r.variant = "T=I";
    for (std::size_t i0 = 0; i0 < a.size(); ++i0) {
        SubArrangement m = decone(a, i0);
        const LocalSystem lm = decone_system(a, l, i0);
        const auto& tm = an.twisted(m.arrangement, lm);
        r.dims["decone_" + std::to_string(i0)] = tm;
        for (std::size_t d = 0; d < tw.size(); ++d) {
            const Count expect = at(tm, static_cast<std::ptrdiff_t>(d)) + at(tm, static_cast<std::ptrdiff_t>(d) - 1);
            if (tw[d] != expect)
                fail(r, "decone at H" + std::to_string(i0 + 1) + ", degree " + std::to_string(d) + ": " +
                            std::to_string(tw[d]) + " != " + std::to_string(expect));
        }
    }
    return r;
}

CheckReport check_lefschetz(Analyzer& an, const Arrangement& a, const LocalSystem& l, std::size_t i,
                            std::uint64_t seed) {
    require_essential(a, "lefschetz");
    if (i < 1 || i > a.dim()) throw PreconditionError("lefschetz: need 1 <= i <= n");
    CheckReport r = make_report("lefschetz", l, "b_i(U_A;L) <= b_i(U_B;L|B) and b_i(U_B) = b_i(U_A), B generic i-section");
    r.seed = seed;
    r.variant = "i=" + std::to_string(i);
    const GenericSection& g = an.section(a, i, seed);
    const auto& t = an.twisted(a, l);
    const auto& tb = an.twisted(g.section.arrangement, restrict(l, g.section.origin));
    const auto& b = an.betti(a);
    const auto& bb = an.betti(g.section.arrangement);
    r.dims["twisted"] = t;
    r.dims["twisted_section"] = tb;
    r.dims["betti_section"] = bb;
    if (t[i] > tb[i]) fail(r, std::to_string(t[i]) + " > " + std::to_string(tb[i]));
    if (bb[i] != b[i]) fail(r, "untwisted b_i of the section differs");
    return r;
}

std::vector<Count> one_dim_closed_form(const LocalSystem& l) {
    const FieldSpec& k = l.field();
    const std::size_t rk = l.rank();
    std::vector<std::vector<Rational>> stacked;
    for (const auto& m : l.monodromy()) {
        const FMatrix diff = subtract(k, m, FMatrix::identity(rk));
        for (std::size_t i = 0; i < rk; ++i) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < rk; ++j) row.push_back(diff(i, j));
            stacked.push_back(std::move(row));
        }
    }
    const std::size_t rank_stack = stacked.empty() ? 0 : rank(FMatrixSparse::from_dense(stacked, k), k);
    const Count b0 = static_cast<Count>(rk - rank_stack);
    const Count d = static_cast<Count>(l.size());
    return {b0, static_cast<Count>(rk) * (d - 1) + b0};
}

CheckReport check_one_dim_oracle(Analyzer& an, const Arrangement& a, const LocalSystem& l) {
    require_essential(a, "one_dim_oracle");
    if (a.dim() != 1) throw PreconditionError("one_dim_oracle: arrangement is not in dimension 1");
    CheckReport r = make_report("one_dim_oracle", l, "b_0 = dim of common invariants, b_1 = r(d-1) + b_0");
    const auto expect = one_dim_closed_form(l);
    const auto& t = an.twisted(a, l);
    r.dims["closed_form"] = expect;
    r.dims["twisted"] = t;
    if (t != expect) fail(r, join(t) + " != " + join(expect));
    return r;
}

// ---------------------------------------------------------------------------
// Runner

namespace {

std::string flat_variant(const Flat& x) {
    std::ostringstream os;
    os << "x={";
    for (std::size_t i = 0; i < x.containing.size(); ++i) os << (i ? "," : "") << "H" << x.containing[i] + 1;
    os << '}';
    return os.str();
}

class Runner {
public:
    Runner(const SuiteOptions& o, std::vector<CheckReport>& out) : opts_(o), out_(out) {}

    bool wants(const std::string& name) const { return opts_.checks.empty() || opts_.checks.count(name) > 0; }

    // Runs one check; precondition failures are skipped unless the run is strict.
    void run(const std::string& name, const std::string& aid, const std::string& sid, const std::string& variant,
             const std::function<CheckReport()>& body) {
        if (!wants(name)) return;
        CheckReport r;
        try {
            r = body();
        } catch (const PreconditionError&) {
            if (opts_.strict) throw;
            return;
        }
        r.arrangement_id = aid;
        r.system_id = sid;
        if (!variant.empty()) r.variant = r.variant.empty() ? variant : variant + ";" + r.variant;
        if (r.seed == 0) r.seed = opts_.seed;
        out_.push_back(std::move(r));
    }

private:
    const SuiteOptions& opts_;
    std::vector<CheckReport>& out_;
};

} // namespace

SuiteResult run_suite(const std::vector<CorpusEntry>& corpus, const SuiteOptions& options) {
    for (const auto& c : options.checks)
        if (std::find(all_check_names().begin(), all_check_names().end(), c) == all_check_names().end())
            throw PreconditionError("unknown check '" + c + "'");

    SuiteResult result;
    Analyzer an;
    Runner run(options, result.reports);
    const std::uint64_t seed = options.seed;

    for (const auto& entry : corpus) {
        const Arrangement& a = entry.arrangement;
        const std::string& aid = entry.id;
        const std::size_t n = a.dim();
        run.run("untwisted_match", aid, "constant", "", [&] { return check_untwisted_match(an, a); });
        if (run.wants("constant_equality")) {
            for (std::size_t rk = 1; rk <= 3; ++rk)
                run.run("constant_equality", aid, "constant", "r=" + std::to_string(rk) + "/Q",
                        [&] { return check_constant_equality(an, a, rk, FieldSpec::rationals()); });
            for (auto p : options.primes) {
                const FieldSpec f = FieldSpec::prime(p);
                run.run("constant_equality", aid, "constant", "r=1/" + f.name(),
                        [&] { return check_constant_equality(an, a, 1, f); });
            }
        }

        for (const auto& ns : entry.systems) {
            const LocalSystem& l = ns.system;
            const std::string& sid = ns.id;
            run.run("boundary_squared", aid, sid, "", [&] { return check_boundary_squared(an, a, l); });
            if (!is_trivial(l) || options.strict)
                run.run("main_theorem", aid, sid, "", [&] { return check_main_theorem(an, a, l); });
            run.run("euler", aid, sid, "", [&] { return check_euler(an, a, l); });
            run.run("relative_section", aid, sid, "", [&] { return check_relative_section(an, a, l, seed); });
            run.run("local_global", aid, sid, "", [&] { return check_local_global(an, a, l); });
            if (run.wants("nearby_section") && n >= 2)
                for (const Flat& x : zero_flats(an.poset(a)))
                    run.run("nearby_section", aid, sid, flat_variant(x),
                            [&] { return check_nearby_section(an, a, l, x, seed); });
            run.run("central_structure", aid, sid, "", [&] { return check_central_structure(an, a, l); });
            if (run.wants("lefschetz"))
                for (std::size_t i = 1; i <= n; ++i)
                    run.run("lefschetz", aid, sid, "", [&] { return check_lefschetz(an, a, l, i, seed); });
            if (run.wants("one_dim_oracle")) {
                if (n == 1) {
                    run.run("one_dim_oracle", aid, sid, "", [&] { return check_one_dim_oracle(an, a, l); });
                } else if (n >= 2) {
                    // Independent check of the twisted complex on the generic line section.
                    run.run("one_dim_oracle", aid, sid, "line section", [&] {
                        const GenericSection& g = an.section(a, 1, seed);
                        return check_one_dim_oracle(an, g.section.arrangement, restrict(l, g.section.origin));
                    });
                }
                if (n == 2) {
                    // The local line sections used by nearby_section.
                    for (const Flat& x : zero_flats(an.poset(a)))
                        run.run("one_dim_oracle", aid, sid, "local line section " + flat_variant(x), [&] {
                            SubArrangement loc = localize(a, x);
                            Essentialized e = essentialize(loc.arrangement);
                            const GenericSection& g = an.section(e.arrangement, 1, seed);
                            return check_one_dim_oracle(an, g.section.arrangement,
                                                        restrict(l, compose_maps(loc.origin, g.section.origin)));
                        });
                }
            }
        }
    }

    std::sort(result.reports.begin(), result.reports.end(), [](const CheckReport& x, const CheckReport& y) {
        return std::tie(x.check, x.arrangement_id, x.system_id, x.variant) <
               std::tie(y.check, y.arrangement_id, y.system_id, y.variant);
    });
    result.summary.seed = seed;
    result.summary.total = result.reports.size();
    for (const auto& r : result.reports) {
        if (r.status == CheckStatus::Pass) ++result.summary.passed;
        if (r.status == CheckStatus::Fail) ++result.summary.failed;
        if (r.status == CheckStatus::NotApplicable) ++result.summary.not_applicable;
    }
    return result;
}

} // namespace twistbetti
