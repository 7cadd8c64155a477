#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace isolab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

inline bool fits_u64(const BigInt& n) {
    return n >= 0 && n <= BigInt(std::numeric_limits<u64>::max());
}

inline BigInt big_pow(u64 base, u64 exp) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

inline std::string to_decimal(const BigInt& n) { return n.str(); }

}  // namespace isolab
