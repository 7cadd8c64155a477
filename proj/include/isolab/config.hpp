#pragma once

#include <cstdint>

namespace isolab {

/// Work limits shared by every search. All are overridable from the CLI.
struct Budgets {
    std::uint64_t trial_division_bound = 1'000'000;
    std::uint64_t rho_iterations = 10'000'000;
    int max_extension_degree = 200;
    /// Largest field size counted by direct enumeration of x-coordinates.
    std::uint64_t naive_count_limit = 10'000'000;
    /// Largest field size handled by the Hasse-interval baby-step/giant-step counter.
    std::uint64_t point_count_limit = 1'000'000'000'000'000'000ULL;
    /// Largest number of parameter tuples (or solutions) a single enumeration may visit.
    std::uint64_t enumeration_limit = 10'000'000;
    int path_depth = 3;
};

}  // namespace isolab
