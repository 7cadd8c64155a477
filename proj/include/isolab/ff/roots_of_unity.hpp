#pragma once

#include "../config.hpp"
#include "../error.hpp"
#include "factor.hpp"
#include "residues.hpp"
#include "tower.hpp"

namespace isolab::ff {

/// An element of exact multiplicative order lambda, living in level ord_lambda(p).
inline FieldElement nth_root_of_unity(const FieldTower& tower, u64 lambda, const FactorEffort& effort = {}) {
    const u64 p = tower.characteristic();
    if (lambda == 0) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
    if (lambda % p == 0)
        throw Error(ErrorCode::NotCoprime, std::to_string(p) + " divides " + std::to_string(lambda));
    if (lambda == 1) return tower.level(1).one();
    const u64 k = element_order(p % lambda, lambda, effort);
    if (k > static_cast<u64>(tower.max_degree()))
        throw Error(ErrorCode::ExtensionTooLarge, "ord_" + std::to_string(lambda) + "(" + std::to_string(p) +
                                                      ") = " + std::to_string(k) + " exceeds maximum degree");
    const Level& L = tower.ensure_level(static_cast<int>(k));
    const Factorization lf = factor(lambda, effort);
    if (!lf.complete()) throw Error(ErrorCode::IncompleteFactorization, lf.to_string());
    const BigInt cofactor = (L.order() - 1) / lambda;
    Rng rng = make_rng(tower.seed(), {lambda, 0x756e6974});
    for (;;) {
        const FieldElement z = L.random(rng);
        if (z.is_zero()) continue;
        const FieldElement t = z.pow(cofactor);
        bool exact = true;
        for (const auto& [l, e] : lf.factors) {
            if (t.pow(static_cast<u64>(lambda / static_cast<u64>(l))).is_one()) {
                exact = false;
                break;
            }
        }
        if (exact) return t;
    }
}

}  // namespace isolab::ff
