#ifndef LOGIMAP_ORBIT_HPP
#define LOGIMAP_ORBIT_HPP

// Ground-truth trajectory structure: pre-period, period and the first cycle
// point of x0, f(x0), f^2(x0), ...
//
// detect_orbit runs Brent's cycle finder in constant memory. orbit_table
// classifies every start value of a ring at once from the successor table,
// visiting each node a constant number of times.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "logimap/ring.hpp"

namespace logimap {

/// Desk-scale guardrails on the number of ring elements touched.
struct caps {
    std::uint64_t orbit = 129140163; // 3^17, single-orbit scans
    std::uint64_t sweep = 1594323;   // 3^13, exhaustive sweeps
    std::uint64_t graph = 1594323;   // 3^13, dense functional graphs
};

inline void require_within(std::uint64_t states, std::uint64_t cap) {
    if (states > cap) throw state_space_too_large(states, cap);
}

struct orbit_info {
    std::uint64_t pre_period = 0;
    std::uint64_t period = 1;
    residue cycle_entry = 0;

    friend bool operator==(const orbit_info&, const orbit_info&) = default;
};

/// Brent's algorithm on x -> step(x). Inputs are reduced into the ring first.
inline orbit_info detect_orbit(std::uint64_t x0_raw, std::uint64_t mu_raw, const ring_modulus& m,
                               const caps& limits = {}) {
    require_within(m.value(), limits.orbit);
    const residue x0 = m.reduce(x0_raw);
    const residue mu = m.reduce(mu_raw);

    // Period: the hare races ahead in power-of-two windows until it meets the tortoise.
    std::uint64_t power = 1;
    std::uint64_t lambda = 1;
    residue tortoise = x0;
    residue hare = step(x0, mu, m);
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power <<= 1;
            lambda = 0;
        }
        hare = step(hare, mu, m);
        ++lambda;
    }

    // Pre-period: two walkers lambda apart meet at the first cycle point.
    tortoise = x0;
    hare = iterate(x0, mu, m, lambda);
    std::uint64_t mu_index = 0;
    while (tortoise != hare) {
        tortoise = step(tortoise, mu, m);
        hare = step(hare, mu, m);
        ++mu_index;
    }
    return {mu_index, lambda, tortoise};
}

/// Dense successor array: succ[x] = f(x) for every x in Z_{p^n}.
inline std::vector<residue> successor_table(std::uint64_t mu_raw, const ring_modulus& m) {
    const residue mu = m.reduce(mu_raw);
    std::vector<residue> succ(m.value());
    for (residue x = 0; x < m.value(); ++x) succ[x] = step(x, mu, m);
    return succ;
}

/// Orbit structure of every start value of a functional graph given by its successor array.
inline std::vector<orbit_info> orbit_table(std::span<const residue> succ) {
    const std::size_t size = succ.size();
    constexpr std::uint64_t unseen = UINT64_MAX;
    constexpr std::uint64_t on_path = UINT64_MAX - 1;
    std::vector<orbit_info> info(size);
    std::vector<std::uint64_t> state(size, unseen); // unseen, on_path, or classified (== 0)
    std::vector<residue> path;

    for (residue start = 0; start < size; ++start) {
        if (state[start] != unseen) continue;
        path.clear();
        residue x = start;
        while (state[x] == unseen) {
            state[x] = on_path;
            path.push_back(x);
            x = succ[x];
        }
        std::size_t tail_end = path.size();
        if (state[x] == on_path) {
            // Closed a new cycle: x and everything after it on the path.
            const auto first = static_cast<std::size_t>(std::find(path.begin(), path.end(), x) - path.begin());
            const std::uint64_t len = path.size() - first;
            for (std::size_t i = first; i < path.size(); ++i) {
                info[path[i]] = {0, len, path[i]};
                state[path[i]] = 0;
            }
            tail_end = first;
        }
        for (std::size_t i = tail_end; i-- > 0;) {
            const orbit_info& next = info[succ[path[i]]];
            info[path[i]] = {next.pre_period + 1, next.period, next.cycle_entry};
            state[path[i]] = 0;
        }
    }
    return info;
}

/// orbit_table over the ring, guarded by the sweep cap.
inline std::vector<orbit_info> orbit_table(std::uint64_t mu, const ring_modulus& m, const caps& limits = {}) {
    require_within(m.value(), limits.sweep);
    const auto succ = successor_table(mu, m);
    return orbit_table(succ);
}

} // namespace logimap

#endif
