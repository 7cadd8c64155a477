#pragma once

#include <vector>

#include "field.hpp"
#include "matrix.hpp"

namespace isolab::ff {

/// Monic minimal polynomial of x over F_p (low -> high). Its degree is the
/// degree of the smallest subfield containing x.
inline std::vector<u64> minimal_polynomial(const FieldElement& x) {
    const u64 p = x.characteristic();
    const int k = x.degree();
    if (x.is_prime_field_constant()) return {(p - x.coeffs()[0]) % p, 1};
    std::vector<FieldElement> powers{x.level().one()};
    for (int d = 1; d <= k; ++d) {
        powers.push_back(powers.back() * x);
        if (k % d != 0) continue;
        Matrix m(k, d, p);
        for (int i = 0; i < d; ++i) m.set_column(i, powers[i].span());
        if (auto c = m.solve(powers[d].span())) {
            std::vector<u64> f(d + 1, 0);
            for (int i = 0; i < d; ++i) f[i] = (p - (*c)[i]) % p;
            f[d] = 1;
            return f;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "minimal polynomial not found; level modulus is not irreducible");
}

}  // namespace isolab::ff
