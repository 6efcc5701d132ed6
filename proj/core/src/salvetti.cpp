#include "twistbetti/salvetti.hpp"

#include "twistbetti/dense_q.hpp"
#include "twistbetti/errors.hpp"

namespace twistbetti {

namespace {

QMatrix direction_basis(const Arrangement& a, const SignVector& sign) {
    QMatrix zeros;
    for (std::size_t i = 0; i < sign.size(); ++i)
        if (sign[i] == 0) zeros.push_back(a[i].normal);
    return dense::nullspace(zeros, a.dim());
}

QMatrix columns(const QMatrix& m, const std::vector<std::size_t>& cols) {
    QMatrix out;
    for (const auto& row : m) {
        QVector r;
        for (auto c : cols) r.push_back(row[c]);
        out.push_back(std::move(r));
    }
    return out;
}

// Orientation of each face is its canonical direction basis. The facet F of G
// is oriented as the boundary with the outward vector first.
int incidence_sign(const Arrangement& a, const Face& g, const Face& f) {
    QMatrix bg = direction_basis(a, g.sign);
    QMatrix bf = direction_basis(a, f.sign);
    dense::Echelon e = dense::rref(bg, a.dim());
    QVector outward(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) outward[i] = f.witness[i] - g.witness[i];
    QMatrix m{outward};
    for (auto& row : bf) m.push_back(std::move(row));
    const int s = sign(dense::determinant(columns(m, e.pivots))) * sign(dense::determinant(columns(bg, e.pivots)));
    if (s == 0) throw ComplexError("degenerate facet orientation");
    return s;
}

} // namespace

SalvettiComplex::SalvettiComplex(FaceComplex faces) : faces_(std::move(faces)) {
    const Arrangement& a = faces_.arrangement();
    const std::size_t n = a.dim();
    if (faces_.chambers().empty()) throw ComplexError("face complex has no chambers");
    base_chamber_ = faces_.chambers().front();

    cells_.assign(n + 1, {});
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t f = 0; f < faces_.faces().size(); ++f) {
        const std::size_t degree = n - faces_.face(f).dim;
        for (auto c : faces_.adjacent_chambers(f)) {
            index.emplace(std::make_pair(f, c), cells_[degree].size());
            cells_[degree].push_back({f, c, degree});
        }
    }

    for (std::size_t f = 0; f < faces_.faces().size(); ++f)
        for (auto g : faces_.upper_covers(f))
            face_incidence_.emplace(std::make_pair(g, f), incidence_sign(a, faces_.face(g), faces_.face(f)));

    const SignVector& base = faces_.face(base_chamber_).sign;
    incidences_.assign(n + 1, {});
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t from = 0; from < cells_[k].size(); ++from) {
            const SCell& cell = cells_[k][from];
            const SignVector& c = faces_.face(cell.chamber).sign;
            for (auto g : faces_.upper_covers(cell.face)) {
                auto target = faces_.find(compose(faces_.face(g).sign, c));
                if (!target) throw ComplexError("missing chamber G∘C");
                Incidence inc;
                inc.from = from;
                inc.to = index.at({g, *target});
                inc.sign = face_incidence_.at({g, cell.face});
                const SignVector& c2 = faces_.face(*target).sign;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (c[i] == c2[i]) continue;
                    inc.crossings.push_back(i);
                    if (c[i] == base[i]) inc.transport.push_back(i);
                }
                incidences_[k].push_back(std::move(inc));
            }
        }
    }
}

std::vector<std::size_t> SalvettiComplex::cell_counts() const {
    std::vector<std::size_t> out;
    for (const auto& c : cells_) out.push_back(c.size());
    return out;
}

int SalvettiComplex::face_incidence(std::size_t g, std::size_t f) const { return face_incidence_.at({g, f}); }

SalvettiComplex build_salvetti(const FaceComplex& faces) { return SalvettiComplex(faces); }

std::vector<FMatrixSparse> boundary_matrices(const SalvettiComplex& s) {
    std::vector<FMatrixSparse> out;
    const auto counts = s.cell_counts();
    for (std::size_t k = 1; k <= s.top_degree(); ++k) {
        std::vector<SparseEntry> es;
        for (const auto& inc : s.incidences(k)) es.push_back({inc.to, inc.from, Rational(inc.sign)});
        out.push_back(FMatrixSparse::from_entries(counts[k - 1], counts[k], std::move(es), FieldSpec::rationals()));
    }
    return out;
}

TwistedComplex twisted_complex(const SalvettiComplex& s, const LocalSystem& l) {
    const Arrangement& a = s.arrangement();
    if (l.size() != a.size())
        throw ValidationError("twisted_complex: system has " + std::to_string(l.size()) + " matrices for " +
                              std::to_string(a.size()) + " hyperplanes");
    const FieldSpec& k = l.field();
    const std::size_t r = l.rank();
    TwistedComplex t;
    t.field = k;
    t.rank = r;
    for (auto c : s.cell_counts()) t.dims.push_back(r * c);

    std::map<std::vector<std::size_t>, FMatrix> products;
    auto product = [&](const std::vector<std::size_t>& idx) -> const FMatrix& {
        auto it = products.find(idx);
        if (it != products.end()) return it->second;
        FMatrix m = FMatrix::identity(r);
        for (auto i : idx) m = multiply(k, m, l[i]);
        return products.emplace(idx, std::move(m)).first->second;
    };

    for (std::size_t deg = 1; deg <= s.top_degree(); ++deg) {
        std::vector<SparseEntry> es;
        for (const auto& inc : s.incidences(deg)) {
            const FMatrix& block = product(inc.transport);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    if (block(i, j) == 0) continue;
                    Rational v = inc.sign > 0 ? block(i, j) : k.reduce(-block(i, j));
                    es.push_back({inc.to * r + i, inc.from * r + j, std::move(v)});
                }
        }
        t.boundaries.push_back(FMatrixSparse::from_entries(t.dims[deg - 1], t.dims[deg], std::move(es), k));
    }
    return t;
}

std::vector<Count> twisted_betti(const SalvettiComplex& s, const LocalSystem& l) {
    TwistedComplex t = twisted_complex(s, l);
    ComplexDims d = complex_dims(t.boundaries, t.dims, t.field);
    return {d.homology.begin(), d.homology.end()};
}

std::vector<Count> untwisted_betti(const SalvettiComplex& s, const FieldSpec& field) {
    ComplexDims d = complex_dims(boundary_matrices(s), s.cell_counts(), field);
    return {d.homology.begin(), d.homology.end()};
}

} // namespace twistbetti
