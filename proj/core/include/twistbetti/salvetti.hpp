#pragma once

#include "twistbetti/exactla.hpp"
#include "twistbetti/localsys.hpp"
#include "twistbetti/realfaces.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace twistbetti {

/// A cell [C < F] of the Salvetti complex: face F, chamber C adjacent to F,
/// degree codim F.
struct SCell {
    std::size_t face = 0;
    std::size_t chamber = 0;
    std::size_t degree = 0;
};

/// Boundary incidence from a degree-k cell to a degree-(k-1) cell [G∘C < G].
struct Incidence {
    std::size_t from = 0;  // index among degree-k cells
    std::size_t to = 0;    // index among degree-(k-1) cells
    int sign = 1;
    /// Hyperplanes separating from.chamber and to.chamber.
    std::vector<std::size_t> crossings;
    /// The crossings made away from the base chamber's side; their monodromy
    /// product is the transport along the positive path between the two
    /// base vertices.
    std::vector<std::size_t> transport;
};

/// Salvetti CW model of the complexified complement of a real arrangement.
class SalvettiComplex {
public:
    explicit SalvettiComplex(FaceComplex faces);

    const FaceComplex& faces() const { return faces_; }
    const Arrangement& arrangement() const { return faces_.arrangement(); }
    std::size_t top_degree() const { return cells_.size() - 1; }
    const std::vector<SCell>& cells(std::size_t degree) const { return cells_[degree]; }
    /// incidences(k): all incidences out of degree-k cells, k >= 1.
    const std::vector<Incidence>& incidences(std::size_t degree) const { return incidences_[degree]; }
    std::vector<std::size_t> cell_counts() const;
    std::size_t base_chamber() const { return base_chamber_; }
    /// Incidence number [G:F] of the facet F in the face G.
    int face_incidence(std::size_t g, std::size_t f) const;

private:
    FaceComplex faces_;
    std::size_t base_chamber_ = 0;
    std::vector<std::vector<SCell>> cells_;
    std::vector<std::vector<Incidence>> incidences_;
    std::map<std::pair<std::size_t, std::size_t>, int> face_incidence_;
};

SalvettiComplex build_salvetti(const FaceComplex& faces);

/// Untwisted boundary matrices d_1..d_n with entries ±1.
std::vector<FMatrixSparse> boundary_matrices(const SalvettiComplex& s);

struct TwistedComplex {
    FieldSpec field;
    std::size_t rank = 1;
    std::vector<std::size_t> dims;            // r * c_k
    std::vector<FMatrixSparse> boundaries;    // boundaries[k-1] = d_k
};

/// Assembles r x r blocks sign * prod(A_i, i in transport) at (to, from).
TwistedComplex twisted_complex(const SalvettiComplex& s, const LocalSystem& l);

/// Homology dimensions of the twisted complex of L, i.e. dim H^k(U; L^∨).
std::vector<Count> twisted_betti(const SalvettiComplex& s, const LocalSystem& l);

/// Homology dimensions of the untwisted complex over `field`.
std::vector<Count> untwisted_betti(const SalvettiComplex& s, const FieldSpec& field);

} // namespace twistbetti
