#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "../ec/jinvariant.hpp"
#include "../error.hpp"
#include "../ff/poly.hpp"
#include "../ff/roots.hpp"
#include "../ff/tower.hpp"
#include "modular_polynomial.hpp"

namespace isolab::hecke {

using ec::JInvariant;

namespace detail {

inline const ff::FieldTower& tower_of(const FieldElement& x) {
    if (!x.level().tower()) throw Error(ErrorCode::LevelMismatch, "element is not attached to a field tower");
    return *x.level().tower();
}

}  // namespace detail

/// Roots of Phi_N(j, Y) with multiplicity, each in its minimal tower level, sorted.
inline std::vector<JInvariant> hecke_neighbors(const JInvariant& j, const ModularPolynomial& phi) {
    if (j.is_cusp()) throw Error(ErrorCode::CuspInput, "Hecke neighbors of the cusp");
    const auto& tower = detail::tower_of(j.value());
    const FieldElement x = tower.canonical(j.value());
    const ff::Level& base = x.level();
    const int k = base.degree();
    const ff::Poly f(base, phi.specialize_x(x));
    ff::Rng rng = ff::make_rng(tower.seed(), {static_cast<u64>(phi.level()), 0x6865636b65});

    std::vector<FieldElement> roots;
    for (const auto& [g, mult] : ff::factor_poly(f, rng)) {
        const int r = g.degree();
        const ff::Level& big = tower.ensure_level(k * r);
        std::vector<FieldElement> lifted;
        for (const auto& c : g.coeffs()) lifted.push_back(tower.embed(c, k * r));
        const FieldElement rho = ff::one_root(ff::Poly(big, std::move(lifted)), rng);
        for (int i = 0; i < r; ++i) {
            const FieldElement conj = tower.canonical(rho.frobenius(static_cast<u64>(k) * i));
            for (int m = 0; m < mult; ++m) roots.push_back(conj);
        }
    }
    std::sort(roots.begin(), roots.end());
    return {roots.begin(), roots.end()};
}

struct HeckeEdge {
    enum class Kind { Cyclic, Frobenius, Verschiebung };
    Kind kind = Kind::Cyclic;
    int N = 1;
    JInvariant source, target;

    std::string to_string() const {
        switch (kind) {
            case Kind::Cyclic: return "Cyclic(" + std::to_string(N) + ")";
            case Kind::Frobenius: return "Frobenius";
            case Kind::Verschiebung: return "Verschiebung";
        }
        return "?";
    }
};

/// Re-checks one edge: Phi_N(source, target) = 0, or a p-power relation.
inline bool verify_edge(const HeckeEdge& e, const std::string& data_dir = default_data_dir()) {
    if (e.source.is_cusp() || e.target.is_cusp()) return false;
    const auto& tower = detail::tower_of(e.source.value());
    const FieldElement s = e.source.value(), t = e.target.value();
    switch (e.kind) {
        case HeckeEdge::Kind::Frobenius: return tower.same_point(s.frobenius(1), t);
        case HeckeEdge::Kind::Verschiebung: return tower.same_point(s, t.frobenius(1));
        case HeckeEdge::Kind::Cyclic: {
            const int K = std::lcm(s.degree(), t.degree());
            const FieldElement a = tower.embed(s, K), b = tower.embed(t, K);
            return load_phi(e.N, data_dir)->evaluate(a, b).is_zero();
        }
    }
    return false;
}

struct PathSearchStats {
    std::size_t visited = 0;
    std::size_t skipped_expansions = 0;  // neighbor sets needing levels above the tower maximum
};

/// Bounded breadth-first search over Cyclic(l) and Frobenius edges. A returned path is
/// verified edge by edge; no path within the depth says nothing about isogeny.
inline std::optional<std::vector<HeckeEdge>> isogeny_path_search(const JInvariant& j1, const JInvariant& j2,
                                                                 const std::vector<int>& primes, int max_depth,
                                                                 const std::string& data_dir = default_data_dir(),
                                                                 PathSearchStats* stats = nullptr) {
    if (j1.is_cusp() || j2.is_cusp()) throw Error(ErrorCode::CuspInput, "path search needs finite j");
    const auto& tower = detail::tower_of(j1.value());
    const u64 p = tower.characteristic();
    std::vector<std::shared_ptr<const ModularPolynomial>> phis;
    for (int l : primes) {
        if (static_cast<u64>(l) == p) throw Error(ErrorCode::InvalidArgument, "path primes must differ from p");
        phis.push_back(load_phi(l, data_dir));
    }
    using Key = std::pair<int, std::vector<u64>>;
    auto key_of = [&](const FieldElement& x) {
        const FieldElement c = tower.canonical(x);
        return Key{c.degree(), {c.coeffs().begin(), c.coeffs().end()}};
    };
    const FieldElement start = tower.canonical(j1.value());
    const Key goal = key_of(j2.value());

    struct Node {
        FieldElement value;
        int depth;
        int parent;
        HeckeEdge edge;
    };
    std::vector<Node> nodes{{start, 0, -1, {}}};
    std::map<Key, int> seen{{key_of(start), 0}};
    std::deque<int> queue{0};
    PathSearchStats local;
    std::optional<int> found;
    if (key_of(start) == goal) found = 0;
    while (!found && !queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        if (nodes[cur].depth >= max_depth) continue;
        const JInvariant src(nodes[cur].value);
        std::vector<HeckeEdge> out;
        out.push_back({HeckeEdge::Kind::Frobenius, 1, src, JInvariant(tower.canonical(nodes[cur].value.frobenius(1)))});
        for (std::size_t i = 0; i < phis.size(); ++i) {
            try {
                for (const auto& t : hecke_neighbors(src, *phis[i]))
                    out.push_back({HeckeEdge::Kind::Cyclic, primes[i], src, t});
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ExtensionTooLarge) throw;
                ++local.skipped_expansions;
            }
        }
        for (auto& e : out) {
            const Key k = key_of(e.target.value());
            if (seen.count(k)) continue;
            const int id = static_cast<int>(nodes.size());
            seen.emplace(k, id);
            nodes.push_back({e.target.value(), nodes[cur].depth + 1, cur, e});
            if (k == goal) {
                found = id;
                break;
            }
            queue.push_back(id);
        }
    }
    local.visited = nodes.size();
    if (stats) *stats = local;
    if (!found) return std::nullopt;
    std::vector<HeckeEdge> path;
    for (int id = *found; nodes[id].parent >= 0; id = nodes[id].parent) path.push_back(nodes[id].edge);
    std::reverse(path.begin(), path.end());
    for (const auto& e : path)
        if (!verify_edge(e, data_dir)) throw Error(ErrorCode::InvalidArgument, "path edge failed verification");
    return path;
}

}  // namespace isolab::hecke
