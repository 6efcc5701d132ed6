#include "twistbetti/realfaces.hpp"

#include "twistbetti/dense_q.hpp"
#include "twistbetti/errors.hpp"
#include "twistbetti/lp.hpp"

#include <algorithm>

namespace twistbetti {

namespace {

QMatrix zero_normals(const Arrangement& a, const SignVector& sign) {
    QMatrix m;
    for (std::size_t i = 0; i < sign.size(); ++i)
        if (sign[i] == 0) m.push_back(a[i].normal);
    return m;
}

lp::StrictSystem sign_system(const Arrangement& a, const SignVector& sign) {
    lp::StrictSystem sys;
    sys.dim = a.dim();
    for (std::size_t i = 0; i < sign.size(); ++i) {
        const auto& h = a[i];
        if (sign[i] == 0) {
            sys.eq_lhs.push_back(h.normal);
            sys.eq_rhs.push_back(h.offset);
        } else {
            QVector row = h.normal;
            Rational rhs = h.offset;
            if (sign[i] < 0) {
                for (auto& x : row) x = -x;
                rhs = -rhs;
            }
            sys.strict_lhs.push_back(std::move(row));
            sys.strict_rhs.push_back(std::move(rhs));
        }
    }
    return sys;
}

struct Piece {
    SignVector sign;
    QVector witness;
};

// Splits the relatively open face (sign over the first i hyperplanes) by hyperplane i.
std::vector<Piece> split(const Arrangement& a, const Piece& face, std::size_t i) {
    const Hyperplane& h = a[i];
    const Rational v = h.evaluate(face.witness);
    const int s = sign(v);
    std::vector<Piece> out;
    auto with = [&](int t, QVector w) {
        Piece p{face.sign, std::move(w)};
        p.sign.push_back(static_cast<std::int8_t>(t));
        out.push_back(std::move(p));
    };

    // Direction of the face's affine hull along which alpha_H moves.
    QMatrix dirs = dense::nullspace(zero_normals(a, face.sign), a.dim());
    const QVector* moving = nullptr;
    for (const auto& d : dirs)
        if (dot(h.normal, d) != 0) {
            moving = &d;
            break;
        }
    if (moving == nullptr) {
        with(s, face.witness);
        return out;
    }

    if (s == 0) {
        // Step off H inside the face: stay within half the distance to every other wall.
        const QVector& d = *moving;
        Rational eps = 1;
        for (std::size_t j = 0; j < i; ++j) {
            if (face.sign[j] == 0) continue;
            Rational rate = dot(a[j].normal, d);
            if (rate == 0) continue;
            Rational room = abs(a[j].evaluate(face.witness) / rate) / 2;
            if (room < eps) eps = room;
        }
        QVector plus = face.witness, minus = face.witness;
        for (std::size_t k = 0; k < d.size(); ++k) {
            plus[k] += eps * d[k];
            minus[k] -= eps * d[k];
        }
        if (sign(h.evaluate(plus)) < 0) std::swap(plus, minus);
        with(-1, std::move(minus));
        with(0, face.witness);
        with(+1, std::move(plus));
        return out;
    }

    // alpha_H takes an open interval of values on the face; probe the other side.
    SignVector probe = face.sign;
    probe.push_back(static_cast<std::int8_t>(-s));
    auto other = realize_sign_vector(a, probe);
    if (!other) {
        with(s, face.witness);
        return out;
    }
    // The segment between the two witnesses crosses H inside the face.
    const Rational va = v, vb = h.evaluate(*other);
    const Rational t = va / (va - vb);
    QVector cross = face.witness;
    for (std::size_t k = 0; k < cross.size(); ++k) cross[k] += t * ((*other)[k] - face.witness[k]);
    if (s > 0) {
        with(-1, std::move(*other));
        with(0, std::move(cross));
        with(+1, face.witness);
    } else {
        with(-1, face.witness);
        with(0, std::move(cross));
        with(+1, std::move(*other));
    }
    return out;
}

} // namespace

bool face_leq(const SignVector& f, const SignVector& g) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0 && f[i] != g[i]) return false;
    return true;
}

SignVector compose(const SignVector& g, const SignVector& c) {
    SignVector out = g;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i] == 0) out[i] = c[i];
    return out;
}

std::size_t face_dimension(const Arrangement& a, const SignVector& sign) {
    return a.dim() - dense::rank(zero_normals(a, sign), a.dim());
}

std::optional<QVector> realize_sign_vector(const Arrangement& a, const SignVector& sign) {
    // Only the hyperplanes covered by `sign` take part.
    lp::StrictSystem sys = sign_system(a, sign);
    return lp::find_strict_point(sys);
}

FaceComplex::FaceComplex(Arrangement arrangement, std::vector<Face> faces)
    : arrangement_(std::move(arrangement)), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end(), [](const Face& x, const Face& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        return x.sign < y.sign;
    });
    const std::size_t n = arrangement_.dim();
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        index_.emplace(faces_[i].sign, i);
        if (faces_[i].dim == n) chambers_.push_back(i);
    }
    upper_covers_.resize(faces_.size());
    adjacent_chambers_.resize(faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        for (std::size_t g = 0; g < faces_.size(); ++g) {
            if (faces_[g].dim == faces_[f].dim + 1 && face_leq(faces_[f].sign, faces_[g].sign))
                upper_covers_[f].push_back(g);
        }
        for (auto c : chambers_)
            if (face_leq(faces_[f].sign, faces_[c].sign)) adjacent_chambers_[f].push_back(c);
    }
}

std::optional<std::size_t> FaceComplex::find(const SignVector& sign) const {
    auto it = index_.find(sign);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

FaceComplex enumerate_faces(const Arrangement& a) {
    std::vector<Piece> pieces{Piece{{}, QVector(a.dim(), Rational(0))}};
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<Piece> next;
        for (const auto& p : pieces) {
            auto parts = split(a, p, i);
            for (auto& q : parts) next.push_back(std::move(q));
        }
        pieces = std::move(next);
    }
    std::vector<Face> faces;
    for (auto& p : pieces) {
        Face f;
        f.dim = face_dimension(a, p.sign);
        f.sign = std::move(p.sign);
        f.witness = std::move(p.witness);
        faces.push_back(std::move(f));
    }
    return FaceComplex(a, std::move(faces));
}

bool is_bounded_face(const Arrangement& a, const SignVector& sign) {
    QMatrix basis = dense::nullspace(zero_normals(a, sign), a.dim());
    const std::size_t m = basis.size();
    if (m == 0) return true;

    // Constraints sigma_i * alpha_i restricted to the face's direction space.
    QMatrix rows;
    for (std::size_t i = 0; i < sign.size(); ++i) {
        if (sign[i] == 0) continue;
        QVector r(m);
        for (std::size_t l = 0; l < m; ++l) r[l] = dot(a[i].normal, basis[l]) * sign[i];
        rows.push_back(std::move(r));
    }
    if (dense::rank(rows, m) < m) return false;  // a lineality direction

    // Pointed cone: nonzero iff some extreme ray, cut out by m-1 independent rows.
    const std::size_t need = m - 1;
    auto ray_ok = [&](const QVector& u) {
        for (const auto& r : rows)
            if (dot(r, u) < 0) return false;
        return true;
    };
    auto check_subset = [&](const std::vector<std::size_t>& idx) {
        QMatrix sub;
        for (auto k : idx) sub.push_back(rows[k]);
        QMatrix ker = dense::nullspace(sub, m);
        if (ker.size() != 1) return false;
        QVector neg = ker[0];
        for (auto& x : neg) x = -x;
        return ray_ok(ker[0]) || ray_ok(neg);
    };
    // Enumerate combinations of `need` rows.
    std::vector<std::size_t> idx(need);
    for (std::size_t k = 0; k < need; ++k) idx[k] = k;
    if (need > rows.size()) return true;
    for (;;) {
        if (check_subset(idx)) return false;
        std::size_t k = need;
        while (k > 0 && idx[k - 1] == rows.size() - need + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

RegionCounts region_counts(const FaceComplex& fc) {
    RegionCounts rc;
    for (auto c : fc.chambers()) {
        ++rc.chambers;
        if (is_bounded_face(fc.arrangement(), fc.face(c).sign)) ++rc.bounded;
    }
    return rc;
}

std::vector<std::size_t> separating_set(const FaceComplex& fc, std::size_t c1, std::size_t c2) {
    if (c1 >= fc.faces().size() || c2 >= fc.faces().size() || !fc.is_chamber(c1) || !fc.is_chamber(c2))
        throw ValidationError("separating_set: both arguments must be chambers");
    std::vector<std::size_t> out;
    const auto& s1 = fc.face(c1).sign;
    const auto& s2 = fc.face(c2).sign;
    for (std::size_t i = 0; i < s1.size(); ++i)
        if (s1[i] != s2[i]) out.push_back(i);
    return out;
}

} // namespace twistbetti
