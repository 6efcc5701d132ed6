#pragma once

#include "twistbetti/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace twistbetti {

/// Entry i is the side of hyperplane i: -1, 0 or +1.
using SignVector = std::vector<std::int8_t>;

struct Face {
    SignVector sign;
    std::size_t dim = 0;
    QVector witness;
};

/// F <= G in the face poset: F lies in the closure of G.
bool face_leq(const SignVector& f, const SignVector& g);

/// G∘C: the sign of G where nonzero, of C elsewhere. For F <= C, G∘C is the
/// chamber adjacent to G nearest to C.
SignVector compose(const SignVector& g, const SignVector& c);

/// Face poset of the real arrangement.
class FaceComplex {
public:
    FaceComplex(Arrangement arrangement, std::vector<Face> faces);

    const Arrangement& arrangement() const { return arrangement_; }
    std::size_t ambient_dim() const { return arrangement_.dim(); }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(std::size_t i) const { return faces_[i]; }
    /// Indices of faces with no zero entries, in face order.
    const std::vector<std::size_t>& chambers() const { return chambers_; }
    /// upper_covers(f): faces G with F ⋖ G.
    const std::vector<std::size_t>& upper_covers(std::size_t f) const { return upper_covers_[f]; }
    /// Chambers whose closure contains face f.
    const std::vector<std::size_t>& adjacent_chambers(std::size_t f) const { return adjacent_chambers_[f]; }
    std::optional<std::size_t> find(const SignVector& sign) const;
    bool is_chamber(std::size_t f) const { return faces_[f].dim == ambient_dim(); }

private:
    Arrangement arrangement_;
    std::vector<Face> faces_;
    std::vector<std::size_t> chambers_;
    std::vector<std::vector<std::size_t>> upper_covers_;
    std::vector<std::vector<std::size_t>> adjacent_chambers_;
    std::map<SignVector, std::size_t> index_;
};

/// Incremental enumeration: hyperplanes are inserted one at a time and each
/// face is split, with every piece certified by an exact witness.
FaceComplex enumerate_faces(const Arrangement& a);

struct RegionCounts {
    Count chambers = 0;
    Count bounded = 0;
};

RegionCounts region_counts(const FaceComplex& fc);

/// True when the face's recession cone is {0}.
bool is_bounded_face(const Arrangement& a, const SignVector& sign);

/// { i : sign_C[i] != sign_C'[i] }. Throws ValidationError unless both are chambers.
std::vector<std::size_t> separating_set(const FaceComplex& fc, std::size_t c1, std::size_t c2);

/// Independent realizability test: a point with exactly these signs, or nullopt.
std::optional<QVector> realize_sign_vector(const Arrangement& a, const SignVector& sign);

/// n - rank of the normals on the zero entries.
std::size_t face_dimension(const Arrangement& a, const SignVector& sign);

} // namespace twistbetti
