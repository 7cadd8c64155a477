#pragma once

#include <vector>

#include "../config.hpp"
#include "../error.hpp"
#include "matrix.hpp"
#include "tower.hpp"

namespace isolab::ff {

/// Solution set of s^{p^E} = s + lambda in level E*p: particular + span(kernel) over F_p.
struct AffineSolutionSet {
    const Level* level = nullptr;
    std::optional<FieldElement> particular;
    std::vector<std::vector<u64>> kernel;

    bool empty() const { return !particular.has_value(); }
    BigInt size() const { return empty() ? BigInt(0) : big_pow(level->characteristic(), kernel.size()); }
};

/// Linear-algebra form of s^{p^E} - s = lambda over F_{p^{E p}}.
inline AffineSolutionSet affine_frobenius_system(const FieldTower& tower, int E, const FieldElement& lambda) {
    if (E < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
    if (lambda.is_zero()) throw Error(ErrorCode::ZeroShift, "shift lambda must be nonzero");
    const u64 p = tower.characteristic();
    const int target = E * static_cast<int>(p);
    if (target % lambda.degree() != 0)
        throw Error(ErrorCode::LevelMismatch, "lambda does not lie in a subfield of degree " + std::to_string(target));
    const Level& L = tower.ensure_level(target);
    const FieldElement rhs = tower.embed(lambda, target);

    Matrix frob_e = Matrix::identity(target, p);
    const Matrix& frob = L.frobenius_matrix();
    for (int i = 0; i < E; ++i) frob_e = frob * frob_e;
    for (int i = 0; i < target; ++i) frob_e(i, i) = sub_mod(frob_e(i, i), 1, p);

    AffineSolutionSet out;
    out.level = &L;
    if (auto x = frob_e.solve(rhs.span())) out.particular = L.from_coeffs(*x);
    if (out.particular) out.kernel = frob_e.kernel();
    return out;
}

/// Every s in F_{p^{E p}} with s^{p^E} = s + lambda, sorted.
inline std::vector<FieldElement> solve_affine_frobenius(const FieldTower& tower, int E, const FieldElement& lambda,
                                                        const Budgets& budgets = {}) {
    const AffineSolutionSet sys = affine_frobenius_system(tower, E, lambda);
    std::vector<FieldElement> out;
    if (sys.empty()) return out;
    if (sys.size() > budgets.enumeration_limit)
        throw Error(ErrorCode::BudgetExceeded, "solution set of size " + sys.size().str() + " exceeds enumeration limit");
    const u64 p = tower.characteristic();
    const std::size_t dim = sys.kernel.size();
    const std::size_t n = static_cast<std::size_t>(sys.level->degree());
    const u64 count = static_cast<u64>(sys.size());
    out.reserve(count);
    for (u64 idx = 0; idx < count; ++idx) {
        std::vector<u64> v(sys.particular->coeffs().begin(), sys.particular->coeffs().end());
        u64 rest = idx;
        for (std::size_t b = 0; b < dim && rest; ++b, rest /= p) {
            const u64 c = rest % p;
            if (!c) continue;
            for (std::size_t i = 0; i < n; ++i) v[i] = add_mod(v[i], mul_mod(c, sys.kernel[b][i], p), p);
        }
        out.push_back(sys.level->from_coeffs(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace isolab::ff
