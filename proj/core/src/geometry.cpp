#include "twistbetti/geometry.hpp"

#include "twistbetti/dense_q.hpp"
#include "twistbetti/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace twistbetti {

namespace {

// (normal, offset) scaled so the first nonzero normal entry is 1.
std::pair<QVector, Rational> normalized_form(const Hyperplane& h) {
    auto lead = std::find_if(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x != 0; });
    Rational s = 1 / *lead;
    QVector n = h.normal;
    for (auto& x : n) x *= s;
    return {n, h.offset * s};
}

std::string make_key(std::size_t dim, const std::vector<Hyperplane>& hs) {
    std::ostringstream os;
    os << dim << '|';
    for (const auto& h : hs) {
        for (const auto& x : h.normal) os << x.get_str() << ',';
        os << ':' << h.offset.get_str() << ';';
    }
    return os.str();
}

QMatrix rows_of(const Arrangement& a, const std::vector<std::size_t>& idx) {
    QMatrix m;
    for (auto i : idx) m.push_back(a[i].normal);
    return m;
}

QVector offsets_of(const Arrangement& a, const std::vector<std::size_t>& idx) {
    QVector v;
    for (auto i : idx) v.push_back(a[i].offset);
    return v;
}

bool contains_flat(const Hyperplane& h, const QVector& point, const QMatrix& directions) {
    if (h.evaluate(point) != 0) return false;
    for (const auto& d : directions)
        if (dot(h.normal, d) != 0) return false;
    return true;
}

// Flat cut out by the given hyperplanes, with its containing set closed up.
std::optional<Flat> flat_of(const Arrangement& a, const std::vector<std::size_t>& idx) {
    const std::size_t n = a.dim();
    QMatrix m = rows_of(a, idx);
    Flat f;
    if (idx.empty()) {
        f.point.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            QVector e(n, Rational(0));
            e[i] = 1;
            f.directions.push_back(std::move(e));
        }
    } else {
        auto p = dense::solve(m, offsets_of(a, idx), n);
        if (!p) return std::nullopt;
        f.point = std::move(*p);
        f.directions = dense::nullspace(m, n);
    }
    f.codim = n - f.directions.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (contains_flat(a[i], f.point, f.directions)) f.containing.push_back(i);
    return f;
}

} // namespace

Arrangement Arrangement::create(std::size_t dim, std::vector<Hyperplane> hyperplanes) {
    Arrangement a;
    a.dim_ = dim;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
        auto& h = hyperplanes[i];
        if (h.label.empty()) h.label = "H" + std::to_string(i + 1);
        if (h.normal.size() != dim)
            throw ValidationError("hyperplane " + h.label + ": normal has length " + std::to_string(h.normal.size()) +
                                  ", expected " + std::to_string(dim));
        if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x == 0; }))
            throw ValidationError("hyperplane " + h.label + ": zero normal");
    }
    std::vector<std::pair<QVector, Rational>> forms;
    for (const auto& h : hyperplanes) forms.push_back(normalized_form(h));
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (forms[i] == forms[j])
                throw ValidationError("duplicate hyperplane: " + hyperplanes[j].label + " and " +
                                      hyperplanes[i].label + " define the same locus");
    a.hyperplanes_ = std::move(hyperplanes);

    QMatrix normals = a.normals();
    a.essential_ = dense::rank(normals, dim) == dim;
    if (a.hyperplanes_.empty()) {
        a.central_point_ = QVector(dim, Rational(0));
    } else {
        QVector offsets;
        for (const auto& h : a.hyperplanes_) offsets.push_back(h.offset);
        a.central_point_ = dense::solve(normals, offsets, dim);
    }
    a.key_ = make_key(dim, a.hyperplanes_);
    return a;
}

QMatrix Arrangement::normals() const {
    QMatrix m;
    for (const auto& h : hyperplanes_) m.push_back(h.normal);
    return m;
}

Arrangement validate_arrangement(const RawArrangement& raw) {
    if (raw.dim == 0) throw ValidationError("ambient dimension must be positive");
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < raw.hyperplanes.size(); ++i) {
        const auto& row = raw.hyperplanes[i];
        Hyperplane h;
        h.label = row.label.empty() ? "H" + std::to_string(i + 1) : row.label;
        try {
            for (const auto& s : row.normal) h.normal.push_back(parse_rational(s));
            h.offset = parse_rational(row.offset);
        } catch (const ParseError& e) {
            throw ParseError("hyperplane " + h.label + ": " + e.what());
        }
        hs.push_back(std::move(h));
    }
    return Arrangement::create(raw.dim, std::move(hs));
}

FlatPoset::FlatPoset(std::size_t ambient_dim, std::vector<Flat> flats)
    : ambient_dim_(ambient_dim), flats_(std::move(flats)) {}

std::vector<const Flat*> FlatPoset::of_codim(std::size_t codim) const {
    std::vector<const Flat*> out;
    for (const auto& f : flats_)
        if (f.codim == codim) out.push_back(&f);
    return out;
}

std::optional<std::size_t> FlatPoset::find(const std::vector<std::size_t>& containing) const {
    for (std::size_t i = 0; i < flats_.size(); ++i)
        if (flats_[i].containing == containing) return i;
    return std::nullopt;
}

bool FlatPoset::leq(std::size_t x, std::size_t y) const {
    const auto& cx = flats_[x].containing;
    const auto& cy = flats_[y].containing;
    return std::includes(cy.begin(), cy.end(), cx.begin(), cx.end());
}

Count CharPoly::evaluate(Count t) const {
    Count v = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * t + *it;
    return v;
}

FlatPoset intersection_poset(const Arrangement& a) {
    const std::size_t n = a.dim();
    std::map<std::vector<std::size_t>, Flat> seen;
    std::vector<std::vector<std::size_t>> layer;

    Flat bottom = *flat_of(a, {});
    layer.push_back(bottom.containing);
    seen.emplace(bottom.containing, std::move(bottom));

    for (std::size_t codim = 0; codim < n && !layer.empty(); ++codim) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& key : layer) {
            for (std::size_t h = 0; h < a.size(); ++h) {
                if (std::binary_search(key.begin(), key.end(), h)) continue;
                auto idx = key;
                idx.insert(std::upper_bound(idx.begin(), idx.end(), h), h);
                auto f = flat_of(a, idx);
                if (!f) continue;
                if (seen.count(f->containing)) continue;
                next.push_back(f->containing);
                seen.emplace(f->containing, std::move(*f));
            }
        }
        layer = std::move(next);
    }

    std::vector<Flat> flats;
    for (auto& [k, f] : seen) flats.push_back(std::move(f));
    std::stable_sort(flats.begin(), flats.end(), [](const Flat& x, const Flat& y) {
        if (x.codim != y.codim) return x.codim < y.codim;
        return x.containing < y.containing;
    });

    // mu(bottom) = 1, sum_{Y <= X} mu(Y) = 0 above it.
    for (std::size_t i = 0; i < flats.size(); ++i) {
        if (i == 0) {
            flats[i].mobius = 1;
            continue;
        }
        Count s = 0;
        for (std::size_t j = 0; j < i; ++j) {
            const auto& cj = flats[j].containing;
            const auto& ci = flats[i].containing;
            if (flats[j].codim < flats[i].codim && std::includes(ci.begin(), ci.end(), cj.begin(), cj.end()))
                s += flats[j].mobius;
        }
        flats[i].mobius = -s;
    }
    return FlatPoset(n, std::move(flats));
}

CharPoly characteristic_polynomial(const FlatPoset& poset) {
    const std::size_t n = poset.ambient_dim();
    CharPoly chi;
    chi.coefficients.assign(n + 1, 0);
    for (const auto& f : poset.flats()) chi.coefficients[n - f.codim] += f.mobius;
    return chi;
}

std::vector<Count> betti_numbers(const FlatPoset& poset) {
    std::vector<Count> b(poset.ambient_dim() + 1, 0);
    for (const auto& f : poset.flats()) b[f.codim] += f.mobius < 0 ? -f.mobius : f.mobius;
    return b;
}

std::vector<Flat> zero_flats(const FlatPoset& poset) {
    std::vector<Flat> out;
    for (const auto& f : poset.flats())
        if (f.codim == poset.ambient_dim()) out.push_back(f);
    return out;
}

Essentialized essentialize(const Arrangement& a) {
    const std::size_t n = a.dim();
    dense::Echelon e = dense::rref(a.normals(), n);
    std::vector<Hyperplane> hs;
    for (const auto& h : a.hyperplanes()) {
        Hyperplane q;
        q.label = h.label;
        q.offset = h.offset;
        // RREF rows have an identity block in the pivot columns.
        for (auto p : e.pivots) q.normal.push_back(h.normal[p]);
        hs.push_back(std::move(q));
    }
    return {Arrangement::create(e.pivots.size(), std::move(hs)), std::move(e.rows)};
}

SubArrangement localize(const Arrangement& a, const Flat& x) {
    if (x.point.size() != a.dim()) throw ValidationError("localize: flat lives in a different ambient space");
    std::vector<std::size_t> containing;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (contains_flat(a[i], x.point, x.directions)) containing.push_back(i);
    if (containing != x.containing) throw ValidationError("localize: not a flat of the arrangement");
    auto f = flat_of(a, containing);
    if (!f || f->codim != x.codim || x.directions.size() != a.dim() - x.codim)
        throw ValidationError("localize: not a flat of the arrangement");

    SubArrangement out;
    std::vector<Hyperplane> hs;
    for (auto i : containing) hs.push_back(a[i]);
    out.arrangement = Arrangement::create(a.dim(), std::move(hs));
    out.origin = containing;
    return out;
}

std::optional<std::string> section_certificate_failure(const Arrangement& a, const Arrangement& section) {
    const std::size_t k = section.dim();
    if (section.size() != a.size()) return "hyperplane count changed";
    FlatPoset pa = intersection_poset(a);
    FlatPoset pb = intersection_poset(section);
    std::map<std::vector<std::size_t>, std::size_t> expected;
    for (const auto& f : pa.flats())
        if (f.codim <= k) expected.emplace(f.containing, f.codim);
    std::map<std::vector<std::size_t>, std::size_t> got;
    for (const auto& f : pb.flats()) got.emplace(f.containing, f.codim);
    for (const auto& [c, codim] : expected) {
        auto it = got.find(c);
        if (it == got.end()) return "a flat of codim " + std::to_string(codim) + " misses the plane";
        if (it->second != codim) return "a flat of codim " + std::to_string(codim) + " meets the plane non-transversally";
    }
    if (got.size() != expected.size()) return "the section has flats not coming from codim <= k flats";
    auto ba = betti_numbers(pa);
    auto bb = betti_numbers(pb);
    ba.resize(k + 1);
    if (ba != bb) return "betti numbers of the section differ from the truncation";
    return std::nullopt;
}

GenericSection generic_section(const Arrangement& a, std::size_t k, std::uint64_t seed) {
    const std::size_t n = a.dim();
    if (k < 1 || k > n)
        throw PreconditionError("generic_section: need 1 <= k <= n, got k=" + std::to_string(k));
    GenericSection out;
    if (k == n) {
        out.section.arrangement = a;
        for (std::size_t i = 0; i < a.size(); ++i) out.section.origin.push_back(i);
        out.base.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            QVector e(n, Rational(0));
            e[i] = 1;
            out.span.push_back(std::move(e));
        }
        out.seed_used = seed;
        out.attempts = 0;
        return out;
    }

    std::vector<std::string> failures;
    for (std::size_t attempt = 0; attempt < kSectionRetries; ++attempt) {
        const std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL + attempt + 1;
        std::mt19937_64 rng(s);
        auto draw = [&rng]() {
            const std::uint64_t range = 2 * kSectionCoordinateBound + 1;
            return Rational(static_cast<long>(rng() % range) - static_cast<long>(kSectionCoordinateBound));
        };
        QVector base(n);
        for (auto& x : base) x = draw();
        QMatrix span(k, QVector(n));
        for (auto& row : span)
            for (auto& x : row) x = draw();

        std::vector<Hyperplane> hs;
        std::string failure;
        for (const auto& h : a.hyperplanes()) {
            Hyperplane q;
            q.label = h.label;
            for (const auto& dir : span) q.normal.push_back(dot(h.normal, dir));
            q.offset = h.offset - dot(h.normal, base);
            if (std::all_of(q.normal.begin(), q.normal.end(), [](const Rational& x) { return x == 0; })) {
                failure = "hyperplane " + h.label + " is parallel to the plane";
                break;
            }
            hs.push_back(std::move(q));
        }
        if (failure.empty()) {
            try {
                Arrangement b = Arrangement::create(k, std::move(hs));
                if (auto why = section_certificate_failure(a, b)) {
                    failure = *why;
                } else {
                    out.section.arrangement = std::move(b);
                    for (std::size_t i = 0; i < a.size(); ++i) out.section.origin.push_back(i);
                    out.base = std::move(base);
                    out.span = std::move(span);
                    out.seed_used = s;
                    out.attempts = attempt + 1;
                    return out;
                }
            } catch (const ValidationError& e) {
                failure = e.what();
            }
        }
        failures.push_back("attempt " + std::to_string(attempt + 1) + ": " + failure);
    }
    std::string msg = "generic_section: retry budget exhausted";
    for (const auto& f : failures) msg += "\n  " + f;
    throw GenericityError(msg);
}

SubArrangement decone(const Arrangement& a, std::size_t i0) {
    if (!a.is_central() || !a.is_essential())
        throw PreconditionError("decone: arrangement must be central and essential");
    if (i0 >= a.size()) throw PreconditionError("decone: hyperplane index out of range");
    const std::size_t n = a.dim();
    const QVector& lead = a[i0].normal;
    std::size_t c = 0;
    while (lead[c] == 0) ++c;

    // Chart u_0 = alpha_{i0}(z - p), u_k = (z - p)_k for k != c; then set u_0 = 1.
    SubArrangement out;
    std::vector<Hyperplane> hs;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == i0) continue;
        const QVector& aj = a[j].normal;
        Rational ratio = aj[c] / lead[c];
        Hyperplane q;
        q.label = a[j].label;
        for (std::size_t k = 0; k < n; ++k)
            if (k != c) q.normal.push_back(aj[k] - ratio * lead[k]);
        q.offset = -ratio;
        hs.push_back(std::move(q));
        out.origin.push_back(j);
    }
    out.arrangement = Arrangement::create(n - 1, std::move(hs));
    return out;
}

} // namespace twistbetti
