#include "twistbetti/localsys.hpp"

#include "twistbetti/errors.hpp"

#include <sstream>

namespace twistbetti {

namespace {

std::string label(std::size_t i) { return "H" + std::to_string(i + 1); }

std::string make_key(const FieldSpec& k, std::size_t r, const std::vector<FMatrix>& ms) {
    std::ostringstream os;
    os << k.name() << '|' << r << '|';
    for (const auto& m : ms) {
        for (const auto& x : m.data()) os << x.get_str() << ',';
        os << ';';
    }
    return os.str();
}

} // namespace

LocalSystem build_local_system(const FieldSpec& field, std::size_t rank, std::vector<FMatrix> matrices) {
    if (rank == 0) throw ValidationError("local system rank must be positive");
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        if (matrices[i].size() != rank)
            throw ValidationError("monodromy of " + label(i) + " is " + std::to_string(matrices[i].size()) + "x" +
                                  std::to_string(matrices[i].size()) + ", expected rank " + std::to_string(rank));
        matrices[i] = reduce(field, matrices[i]);
        if (determinant(field, matrices[i]) == 0)
            throw ValidationError("monodromy of " + label(i) + " is singular over " + field.name());
    }
    if (rank > 1) {
        for (std::size_t i = 0; i < matrices.size(); ++i)
            for (std::size_t j = i + 1; j < matrices.size(); ++j)
                if (multiply(field, matrices[i], matrices[j]) != multiply(field, matrices[j], matrices[i]))
                    throw ValidationError("monodromies of " + label(i) + " and " + label(j) +
                                          " do not commute (only abelian local systems are supported)");
    }
    LocalSystem l;
    l.field_ = field;
    l.rank_ = rank;
    l.key_ = make_key(field, rank, matrices);
    l.monodromy_ = std::move(matrices);
    return l;
}

LocalSystem constant_system(const FieldSpec& field, std::size_t rank, std::size_t d) {
    return build_local_system(field, rank, std::vector<FMatrix>(d, FMatrix::identity(rank)));
}

bool is_trivial(const LocalSystem& l) {
    for (const auto& m : l.monodromy())
        if (!m.is_identity()) return false;
    return true;
}

LocalSystem dual(const LocalSystem& l) {
    std::vector<FMatrix> inv;
    for (const auto& m : l.monodromy()) inv.push_back(inverse(l.field(), m));
    return build_local_system(l.field(), l.rank(), std::move(inv));
}

FMatrix total_turn(const Arrangement& a, const LocalSystem& l) {
    if (!a.is_central()) throw PreconditionError("total_turn: arrangement is not central");
    if (a.size() != l.size())
        throw ValidationError("total_turn: system has " + std::to_string(l.size()) + " matrices for " +
                              std::to_string(a.size()) + " hyperplanes");
    FMatrix t = FMatrix::identity(l.rank());
    for (const auto& m : l.monodromy()) t = multiply(l.field(), t, m);
    return t;
}

LocalSystem restrict(const LocalSystem& l, const std::vector<std::size_t>& map) {
    std::vector<bool> used(l.size(), false);
    std::vector<FMatrix> ms;
    for (auto j : map) {
        if (j >= l.size()) throw ValidationError("restrict: index " + std::to_string(j) + " out of range");
        if (used[j]) throw ValidationError("restrict: index map is not injective");
        used[j] = true;
        ms.push_back(l[j]);
    }
    return build_local_system(l.field(), l.rank(), std::move(ms));
}

LocalSystem decone_system(const Arrangement& a, const LocalSystem& l, std::size_t i0) {
    if (!a.is_central() || !a.is_essential())
        throw PreconditionError("decone_system: arrangement must be central and essential");
    if (i0 >= a.size()) throw PreconditionError("decone_system: hyperplane index out of range");
    if (!total_turn(a, l).is_identity())
        throw PreconditionError("decone_system: total turn is not the identity, the system does not descend");
    std::vector<std::size_t> map;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (j != i0) map.push_back(j);
    return restrict(l, map);
}

} // namespace twistbetti
