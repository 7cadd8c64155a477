#pragma once

#include "../error.hpp"
#include "../ff/field.hpp"
#include "jinvariant.hpp"

namespace isolab::ec {

/// y^2 = x^3 + A x + B
struct Curve {
    FieldElement A, B;

    const ff::Level& level() const { return A.level(); }

    FieldElement discriminant_core() const {
        const auto& L = level();
        return A * A * A * L.from_int(4) + B * B * L.from_int(27);
    }
    bool is_nonsingular() const { return !discriminant_core().is_zero(); }

    FieldElement j_invariant() const {
        const auto& L = level();
        const FieldElement a3 = A * A * A * L.from_int(4);
        return L.from_int(1728) * a3 / discriminant_core();
    }

    FieldElement rhs(const FieldElement& x) const { return (x * x + A) * x + B; }
};

inline void require_large_characteristic(u64 p) {
    if (p < 5) throw Error(ErrorCode::CharTooSmall, "characteristic " + std::to_string(p) + " is excluded");
}

/// Standard model with the given j-invariant, over the level of j.
inline Curve curve_from_j(const FieldElement& j) {
    const auto& L = j.level();
    require_large_characteristic(L.characteristic());
    if (j.is_zero()) return {L.zero(), L.one()};
    const FieldElement c1728 = L.from_int(1728);
    if (j == c1728) return {L.one(), L.zero()};
    const FieldElement k = j / (c1728 - j);
    return {k.scaled(3), k.scaled(2)};
}

inline Curve curve_from_j(const JInvariant& j) {
    if (j.is_cusp()) throw Error(ErrorCode::CuspInput, "no curve at the cusp");
    return curve_from_j(j.canonical().value());
}

/// The twist by c: (A c^2, B c^3). A quadratic twist when c is a non-square.
inline Curve quadratic_twist(const Curve& E, const FieldElement& c) {
    const FieldElement c2 = c * c;
    return {E.A * c2, E.B * c2 * c};
}

}  // namespace isolab::ec
