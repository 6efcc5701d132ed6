#include "twistbetti/exactla.hpp"

#include "twistbetti/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace twistbetti {

FMatrixSparse FMatrixSparse::from_entries(std::size_t nrows, std::size_t ncols, std::vector<SparseEntry> entries,
                                          const FieldSpec& field) {
    std::map<std::pair<std::size_t, std::size_t>, Rational> acc;
    for (auto& e : entries) {
        if (e.row >= nrows || e.col >= ncols)
            throw ValidationError("sparse entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                                  ") outside " + std::to_string(nrows) + "x" + std::to_string(ncols));
        auto [it, fresh] = acc.emplace(std::make_pair(e.row, e.col), field.reduce(e.value));
        if (!fresh) it->second = field.add(it->second, e.value);
    }
    FMatrixSparse m(nrows, ncols);
    for (auto& [pos, v] : acc)
        if (v != 0) m.entries_.push_back({pos.first, pos.second, std::move(v)});
    return m;
}

FMatrixSparse FMatrixSparse::from_dense(const std::vector<std::vector<Rational>>& rows, const FieldSpec& field) {
    std::vector<SparseEntry> es;
    const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            if (rows[i][j] != 0) es.push_back({i, j, rows[i][j]});
    return from_entries(rows.size(), ncols, std::move(es), field);
}

std::vector<std::vector<Rational>> FMatrixSparse::to_dense() const {
    std::vector<std::vector<Rational>> d(nrows_, std::vector<Rational>(ncols_, Rational(0)));
    for (const auto& e : entries_) d[e.row][e.col] = e.value;
    return d;
}

FMatrixSparse transpose(const FMatrixSparse& m) {
    std::vector<SparseEntry> es;
    for (const auto& e : m.entries()) es.push_back({e.col, e.row, e.value});
    return FMatrixSparse::from_entries(m.cols(), m.rows(), std::move(es), FieldSpec::rationals());
}

FMatrixSparse multiply(const FieldSpec& field, const FMatrixSparse& a, const FMatrixSparse& b) {
    if (a.cols() != b.rows()) throw ValidationError("multiply: shape mismatch");
    std::vector<std::vector<std::pair<std::size_t, const Rational*>>> b_rows(b.rows());
    for (const auto& e : b.entries()) b_rows[e.row].emplace_back(e.col, &e.value);
    std::vector<SparseEntry> es;
    for (const auto& e : a.entries())
        for (const auto& [col, v] : b_rows[e.col]) es.push_back({e.row, col, e.value * *v});
    return FMatrixSparse::from_entries(a.rows(), b.cols(), std::move(es), field);
}

namespace {

// Sparse elimination shared by both fields. `Ops` supplies the row update and
// normalization; rows are sorted (col, value) lists.
template <class Ops>
std::size_t sparse_rank(std::vector<std::vector<std::pair<std::uint32_t, typename Ops::Value>>> rows,
                        std::size_t ncols, const Ops& ops) {
    using Row = std::vector<std::pair<std::uint32_t, typename Ops::Value>>;
    std::vector<std::vector<std::uint32_t>> col_rows(ncols);
    std::vector<bool> alive(rows.size(), true);
    for (std::uint32_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty()) alive[i] = false;
        for (const auto& [c, v] : rows[i]) col_rows[c].push_back(i);
    }
    auto find = [](const Row& r, std::uint32_t c) -> const typename Ops::Value* {
        auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
        return (it != r.end() && it->first == c) ? &it->second : nullptr;
    };

    std::size_t rank = 0;
    for (;;) {
        std::size_t pivot_row = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (alive[i] && (pivot_row == rows.size() || rows[i].size() < rows[pivot_row].size())) pivot_row = i;
        if (pivot_row == rows.size()) break;

        Row& p = rows[pivot_row];
        std::uint32_t pc = p.front().first;
        std::size_t best = col_rows[pc].size();
        for (const auto& [c, v] : p)
            if (col_rows[c].size() < best) {
                best = col_rows[c].size();
                pc = c;
            }
        alive[pivot_row] = false;
        ++rank;
        ops.prepare_pivot(p, pc);
        const typename Ops::Value pv = *find(p, pc);

        std::vector<std::uint32_t> targets;
        targets.swap(col_rows[pc]);
        for (auto i : targets) {
            if (!alive[i]) continue;
            const auto* a = find(rows[i], pc);
            if (a == nullptr) continue;
            Row updated = ops.combine(rows[i], *a, p, pv);
            for (const auto& [c, v] : updated)
                if (!find(rows[i], c)) col_rows[c].push_back(i);
            rows[i] = std::move(updated);
            if (rows[i].empty()) alive[i] = false;
        }
    }
    return rank;
}

struct IntegerOps {
    using Value = BigInt;
    using Row = std::vector<std::pair<std::uint32_t, BigInt>>;

    void prepare_pivot(Row&, std::uint32_t) const {}

    // row <- (pv/g) row - (a/g) p, then divide out the content.
    Row combine(const Row& row, const BigInt& a, const Row& p, const BigInt& pv) const {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), pv.get_mpz_t());
        BigInt fr = pv / g;
        BigInt fp = a / g;
        Row out;
        out.reserve(row.size() + p.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < p.size()) {
            if (j == p.size() || (i < row.size() && row[i].first < p[j].first)) {
                out.emplace_back(row[i].first, fr * row[i].second);
                ++i;
            } else if (i == row.size() || p[j].first < row[i].first) {
                out.emplace_back(p[j].first, -fp * p[j].second);
                ++j;
            } else {
                BigInt v = fr * row[i].second - fp * p[j].second;
                if (v != 0) out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        normalize(out);
        return out;
    }

    static void normalize(Row& r) {
        if (r.empty()) return;
        BigInt g = 0;
        for (const auto& [c, v] : r) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
};

struct ModularOps {
    using Value = std::uint64_t;
    using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
    std::uint64_t p;

    std::uint64_t inv(std::uint64_t a) const {
        std::uint64_t result = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    }

    // Scale the pivot row so the pivot entry is 1.
    void prepare_pivot(Row& r, std::uint32_t c) const {
        std::uint64_t s = 0;
        for (const auto& [col, v] : r)
            if (col == c) s = inv(v);
        for (auto& [col, v] : r) v = v * s % p;
    }

    Row combine(const Row& row, std::uint64_t a, const Row& pr, std::uint64_t /*pv == 1*/) const {
        Row out;
        out.reserve(row.size() + pr.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pr.size()) {
            if (j == pr.size() || (i < row.size() && row[i].first < pr[j].first)) {
                out.push_back(row[i++]);
            } else if (i == row.size() || pr[j].first < row[i].first) {
                out.emplace_back(pr[j].first, (p - a * pr[j].second % p) % p);
                ++j;
            } else {
                std::uint64_t v = (row[i].second + p - a * pr[j].second % p) % p;
                if (v != 0) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        return out;
    }
};

} // namespace

std::size_t rank(const FMatrixSparse& m, const FieldSpec& field) {
    if (field.is_prime_field()) {
        std::vector<ModularOps::Row> rows(m.rows());
        for (const auto& e : m.entries()) {
            Rational r = field.reduce(e.value);
            if (r != 0) rows[e.row].emplace_back(static_cast<std::uint32_t>(e.col), r.get_num().get_ui());
        }
        return sparse_rank(std::move(rows), m.cols(), ModularOps{field.p});
    }
    std::vector<IntegerOps::Row> rows(m.rows());
    std::vector<BigInt> lcm(m.rows(), BigInt(1));
    for (const auto& e : m.entries()) mpz_lcm(lcm[e.row].get_mpz_t(), lcm[e.row].get_mpz_t(), e.value.get_den_mpz_t());
    for (const auto& e : m.entries())
        rows[e.row].emplace_back(static_cast<std::uint32_t>(e.col), e.value.get_num() * (lcm[e.row] / e.value.get_den()));
    for (auto& r : rows) IntegerOps::normalize(r);
    return sparse_rank(std::move(rows), m.cols(), IntegerOps{});
}

std::size_t rank_bareiss(const FMatrixSparse& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<BigInt>> a(nr, std::vector<BigInt>(nc, BigInt(0)));
    std::vector<BigInt> lcm(nr, BigInt(1));
    for (const auto& e : m.entries()) mpz_lcm(lcm[e.row].get_mpz_t(), lcm[e.row].get_mpz_t(), e.value.get_den_mpz_t());
    for (const auto& e : m.entries()) a[e.row][e.col] = e.value.get_num() * (lcm[e.row] / e.value.get_den());

    BigInt prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t piv = row;
        while (piv < nr && a[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t i = row + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j) {
                a[i][j] = a[row][col] * a[i][j] - a[i][col] * a[row][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        ++row;
    }
    return row;
}

ComplexDims complex_dims(const std::vector<FMatrixSparse>& boundaries, const std::vector<std::size_t>& dims,
                         const FieldSpec& field) {
    if (dims.empty() || boundaries.size() + 1 != dims.size())
        throw ComplexError("complex_dims: need one boundary per positive degree");
    for (std::size_t k = 1; k < dims.size(); ++k) {
        const auto& d = boundaries[k - 1];
        if (d.rows() != dims[k - 1] || d.cols() != dims[k])
            throw ComplexError("complex_dims: d_" + std::to_string(k) + " has the wrong shape");
    }
    for (std::size_t k = 1; k + 1 < dims.size(); ++k) {
        if (multiply(field, boundaries[k - 1], boundaries[k]).nonzeros() != 0)
            throw ComplexError("complex_dims: d_" + std::to_string(k) + " d_" + std::to_string(k + 1) +
                               " != 0 over " + field.name());
    }
    ComplexDims out;
    out.dims = dims;
    out.ranks.assign(dims.size() + 1, 0);
    for (std::size_t k = 1; k < dims.size(); ++k) out.ranks[k] = rank(boundaries[k - 1], field);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const std::size_t used = out.ranks[k] + out.ranks[k + 1];
        if (used > dims[k]) throw ComplexError("complex_dims: ranks exceed the chain dimension");
        out.homology.push_back(dims[k] - used);
    }
    out.ranks.resize(dims.size());
    return out;
}

} // namespace twistbetti
