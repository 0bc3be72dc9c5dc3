#ifndef LOGIMAP_PERIOD_LAW_HPP
#define LOGIMAP_PERIOD_LAW_HPP

// Closed-form period law of f(x) = mu*x*(x+1) over Z_{3^n}.
//
// Notation used throughout:
//   mu_bar  = mu mod 3
//   i*      = steps needed to reach H_{3^n} (0, 1 or 2 by x0 mod 3)
//   v       = 3-adic valuation of F^{mu_bar}(x_{i*}) - x_{i*} over the integers
//   L       = mu_bar * 3^(n - v) when n >= v
//
// The law assumes the trajectory reaches H_{3^n}. That fails when mu = 2 (mod 3)
// and x0 = 1 (mod 3): f maps the class 1 + 3Z into itself and contracts it
// (f(x) - f(y) = mu (x - y)(x + y + 1) with x + y + 1 = 0 mod 3), so every such
// trajectory falls into the single fixed point of that class. closed_form_period
// reports this case as law_branch::contracting with period 1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "logimap/orbit.hpp"
#include "logimap/ring.hpp"

namespace logimap {

enum class law_branch {
    mu_bar_zero, ///< mu = 0 (mod 3); trajectory collapses onto 0
    formula,     ///< v finite and n >= v: L = mu_bar * 3^(n - v)
    small_n,     ///< n < v (or v infinite): L <= mu_bar, resolved by one congruence
    contracting, ///< mu = 2, x0 = 1 (mod 3): trajectory never enters H, L = 1
};

inline std::string_view to_string(law_branch b) noexcept {
    switch (b) {
    case law_branch::mu_bar_zero: return "MuBarZero";
    case law_branch::formula: return "Formula";
    case law_branch::small_n: return "SmallN";
    case law_branch::contracting: return "Contracting";
    }
    return "?";
}

struct period_law_result {
    unsigned mu_bar = 0;
    unsigned entry_index = 0;
    residue entry_value = 0;
    valuation v = valuation::infinite();
    law_branch branch = law_branch::small_n;
    std::uint64_t period = 1;
};

struct entry_valuation {
    residue entry_value;
    valuation v;
};

namespace detail {

inline void require_base3(const ring_modulus& m) {
    if (m.p() != 3) throw not_base3(m.p());
}

/// x_{i*} and the valuation of F^{mu_bar}(x_{i*}) - x_{i*}; mu_bar may be 0.
inline entry_valuation entry_and_valuation(residue x0, residue mu, const ring_modulus& m, unsigned entry) {
    const residue x = iterate(x0, mu, m, entry);
    const big_int diff = eval_f_unreduced(big_int(x), big_int(mu), static_cast<unsigned>(mu % 3)) - x;
    return {x, p_adic_valuation(diff, 3)};
}

} // namespace detail

/// i*: 0 if x0 = 0, 1 if x0 = 2, 2 if x0 = 1 (mod 3).
constexpr unsigned entry_index(std::uint64_t x0) noexcept {
    constexpr unsigned table[3] = {0, 2, 1};
    return table[x0 % 3];
}

/// (x_{i*}, v_{x0}) over Z_{3^n}. Throws mu_divisible_by_3, not_base3.
inline entry_valuation v_of(std::uint64_t x0, std::uint64_t mu, const ring_modulus& m) {
    detail::require_base3(m);
    const residue x = m.reduce(x0);
    const residue u = m.reduce(mu);
    if (u % 3 == 0) throw mu_divisible_by_3();
    return detail::entry_and_valuation(x, u, m, entry_index(x));
}

/// Exact period of x0 under f over Z_{3^n}, without iterating the orbit.
inline period_law_result closed_form_period(std::uint64_t x0_raw, std::uint64_t mu_raw, const ring_modulus& m) {
    detail::require_base3(m);
    const residue x0 = m.reduce(x0_raw);
    const residue mu = m.reduce(mu_raw);

    period_law_result r;
    r.mu_bar = static_cast<unsigned>(mu % 3);
    r.entry_index = entry_index(x0);
    const auto [entry, v] = detail::entry_and_valuation(x0, mu, m, r.entry_index);
    r.entry_value = entry;
    r.v = v;

    if (r.mu_bar == 0) {
        // Every step gains a factor of 3, so 0 is reached within n steps.
        residue y = x0;
        for (unsigned i = 0; i <= m.n() && y != 0; ++i) y = step(y, mu, m);
        if (y != 0) throw std::logic_error("mu = 0 (mod 3) trajectory did not reach 0");
        r.branch = law_branch::mu_bar_zero;
        r.period = 1;
        return r;
    }
    if (r.mu_bar == 2 && x0 % 3 == 1) {
        r.branch = law_branch::contracting;
        r.period = 1;
        return r;
    }
    if (v.is_finite() && m.n() >= v.value()) {
        r.branch = law_branch::formula;
        r.period = r.mu_bar * checked_pow(3, m.n() - v.value());
        return r;
    }
    r.branch = law_branch::small_n;
    r.period = step(entry, mu, m) == entry ? 1 : 2;
    return r;
}

/// The period law applied as stated, also to start values whose trajectory
/// never enters H. Only used to measure where the stated law breaks down.
inline std::uint64_t stated_law_period(std::uint64_t x0_raw, std::uint64_t mu_raw, const ring_modulus& m) {
    detail::require_base3(m);
    const residue x0 = m.reduce(x0_raw);
    const residue mu = m.reduce(mu_raw);
    const unsigned mu_bar = static_cast<unsigned>(mu % 3);
    if (mu_bar == 0) return 1;
    const auto [entry, v] = detail::entry_and_valuation(x0, mu, m, entry_index(x0));
    if (v.is_finite() && m.n() >= v.value()) return mu_bar * checked_pow(3, m.n() - v.value());
    return step(entry, mu, m) == entry ? 1 : 2;
}

// ---------------------------------------------------------------------------
// Maximum period

enum class period_source { formula, brute_force };

struct max_period_report {
    std::uint64_t class_modulus = 3; ///< 3, 9 or 27
    std::uint64_t mu_class = 0;      ///< mu mod class_modulus
    std::uint64_t max_period = 1;
    std::optional<residue> witness;
    period_source source = period_source::formula;
};

/// max over x0 of the oracle period; witness is the smallest periodic point attaining it.
inline max_period_report max_period_bruteforce(std::uint64_t mu_raw, const ring_modulus& m,
                                               const caps& limits = {}) {
    const residue mu = m.reduce(mu_raw);
    const auto table = orbit_table(mu, m, limits);
    max_period_report r;
    r.class_modulus = m.value();
    r.mu_class = mu;
    r.source = period_source::brute_force;
    r.max_period = 0;
    for (residue x = 0; x < table.size(); ++x) {
        if (table[x].pre_period == 0 && table[x].period > r.max_period) {
            r.max_period = table[x].period;
            r.witness = x;
        }
    }
    return r;
}

/// Maximum period over Z_{3^n} from mu's residue class. Falls back to
/// max_period_bruteforce (source == brute_force) when n is too small for the
/// class exponent. The witness is the smallest point of H whose closed-form
/// period attains the maximum.
inline max_period_report max_period_formula(std::uint64_t mu_raw, const ring_modulus& m, const caps& limits = {}) {
    detail::require_base3(m);
    const residue mu = m.reduce(mu_raw);
    const unsigned n = m.n();

    max_period_report r;
    std::uint64_t factor = 1;
    unsigned drop = 0;
    if (mu % 3 == 0) {
        r.class_modulus = 3;
        r.mu_class = 0;
        r.max_period = 1;
        r.witness = 0;
        return r;
    } else if (mu % 3 == 1) {
        r.class_modulus = 3;
        drop = 2;
    } else if (mu % 9 == 2 || mu % 9 == 5) {
        r.class_modulus = 9;
        factor = 2;
        drop = 2;
    } else if (mu % 27 == 17) {
        r.class_modulus = 27;
        factor = 2;
        drop = 4;
    } else {
        r.class_modulus = 27;
        factor = 2;
        drop = 3;
    }
    r.mu_class = mu % r.class_modulus;

    if (n < drop) {
        auto brute = max_period_bruteforce(mu, m, limits);
        brute.class_modulus = r.class_modulus;
        brute.mu_class = r.mu_class;
        return brute;
    }
    r.max_period = factor * checked_pow(3, n - drop);
    for (residue x = 3; x < m.value(); x += 3) {
        if (closed_form_period(x, mu, m).period == r.max_period) {
            r.witness = x;
            break;
        }
    }
    return r;
}

/// True iff x0 has the maximal period over Z_{3^n}, decided from x_{i*} mod 27.
/// The residue sets only cover mu mod 9 in {1,2,4,5,7}; mu = 8 (mod 9) is decided
/// by comparing the closed form with max_period_formula, and n < 4 by the oracle.
inline bool achieves_max_period(std::uint64_t x0_raw, std::uint64_t mu_raw, const ring_modulus& m,
                                const caps& limits = {}) {
    detail::require_base3(m);
    const residue x0 = m.reduce(x0_raw);
    const residue mu = m.reduce(mu_raw);
    if (mu % 3 == 0) throw mu_divisible_by_3();

    if (m.n() < 4)
        return detect_orbit(x0, mu, m, limits).period == max_period_bruteforce(mu, m, limits).max_period;
    if (mu % 9 == 8)
        return closed_form_period(x0, mu, m).period == max_period_formula(mu, m, limits).max_period;

    const residue r = iterate(x0, mu, m, entry_index(x0)) % 27;
    const bool in_a = r == 3 || r == 12 || r == 21;
    const bool in_b = r == 6 || r == 15 || r == 24;
    switch (mu % 9) {
    case 4: return in_a;
    case 7: return in_b;
    default: return in_a || in_b;
    }
}

// ---------------------------------------------------------------------------
// Earlier published maximum-period formula (known to be wrong for several classes)

/// Returns nullopt when the selected exponent would be negative.
inline std::optional<std::uint64_t> legacy_formula_eq4(std::uint64_t mu, unsigned n) {
    if (mu % 3 == 0 || mu % 3 == 2) return 1;
    if (mu % 9 == 1) {
        if (n < 2) return std::nullopt;
        return checked_pow(3, n - 2);
    }
    if (n < 3) return std::nullopt;
    return checked_pow(3, n - 3);
}

struct eq4_counterexample {
    std::uint64_t mu;
    unsigned n;
    std::uint64_t legacy_value;
    std::uint64_t true_value;

    friend bool operator==(const eq4_counterexample&, const eq4_counterexample&) = default;
};

/// Every (mu, n) where the legacy formula disagrees with the brute-force maximum,
/// sorted by mu then n. Tuples where the legacy formula is undefined are skipped.
inline std::vector<eq4_counterexample> find_eq4_counterexamples(std::span<const std::uint64_t> mus,
                                                                std::span<const unsigned> ns,
                                                                const caps& limits = {}) {
    for (unsigned n : ns) require_within(make_modulus(3, n).value(), limits.sweep);
    std::vector<std::uint64_t> sorted_mu(mus.begin(), mus.end());
    std::vector<unsigned> sorted_n(ns.begin(), ns.end());
    std::sort(sorted_mu.begin(), sorted_mu.end());
    sorted_mu.erase(std::unique(sorted_mu.begin(), sorted_mu.end()), sorted_mu.end());
    std::sort(sorted_n.begin(), sorted_n.end());
    sorted_n.erase(std::unique(sorted_n.begin(), sorted_n.end()), sorted_n.end());

    std::vector<eq4_counterexample> out;
    for (std::uint64_t mu : sorted_mu) {
        for (unsigned n : sorted_n) {
            const auto legacy = legacy_formula_eq4(mu, n);
            if (!legacy) continue;
            const auto m = make_modulus(3, n);
            const std::uint64_t truth = max_period_bruteforce(mu, m, limits).max_period;
            if (truth != *legacy) out.push_back({mu, n, *legacy, truth});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Checkers for the congruences the law is built on. Each returns whether the
// congruence holds and throws precondition_unmet when the input is outside its
// hypothesis.

/// (x + k p^w)^e = x^e (mod p^(w+2)) for x in H_{p^n}, e >= 3.
inline bool check_property3(std::uint64_t x, std::uint64_t k, unsigned w, unsigned e, const ring_modulus& m) {
    if (x >= m.value() || !m.in_h(x)) throw precondition_unmet("x must lie in H_{p^n}");
    if (e < 3 || k < 1 || w < 1) throw precondition_unmet("need exponent >= 3, k >= 1, w >= 1");
    const auto q = make_modulus(m.p(), w + 2);
    const residue mod = q.value();
    const residue shifted = (x % mod + detail::mul_mod(k % mod, checked_pow(m.p(), w) % mod, mod)) % mod;
    residue lhs = 1;
    residue rhs = 1;
    for (unsigned i = 0; i < e; ++i) {
        lhs = detail::mul_mod(lhs, shifted, mod);
        rhs = detail::mul_mod(rhs, x % mod, mod);
    }
    return lhs == rhs;
}

/// F^(i*reps)(x) = x + k p^w sum_{j<i} mu^(j*reps) (mod p^(w+2)), where
/// F^reps(x) - x = k p^w with p not dividing k, and sum_{j<reps} mu^j = 0 (mod p).
inline bool check_property4(std::uint64_t x, std::uint64_t mu, unsigned reps, unsigned w, unsigned i,
                            const ring_modulus& m) {
    if (x >= m.value() || !m.in_h(x)) throw precondition_unmet("x must lie in H_{p^n}");
    if (reps < 1 || w < 2 || i < 1) throw precondition_unmet("need reps >= 1, w >= 2, i >= 1");
    const auto q = make_modulus(m.p(), w + 2);
    const residue mod = q.value();
    const residue pw = checked_pow(m.p(), w);
    const residue u = mu % mod;
    const residue xr = x % mod;

    residue mu_sum = 0;
    residue mu_pow = 1;
    for (unsigned j = 0; j < reps; ++j) {
        mu_sum = (mu_sum + mu_pow) % mod;
        mu_pow = detail::mul_mod(mu_pow, u, mod);
    }
    if (mu_sum % m.p() != 0) throw precondition_unmet("sum of mu^j for j < reps is not divisible by p");

    const residue fx = iterate(xr, u, q, reps);
    const residue diff = (fx + mod - xr) % mod;
    if (diff % pw != 0 || diff % (pw * m.p()) == 0)
        throw precondition_unmet("F^reps(x) - x does not have valuation exactly w");
    const residue k = diff / pw;

    const residue mu_reps = mu_pow; // mu^reps mod p^(w+2)
    residue series = 0;
    residue term = 1;
    for (unsigned j = 0; j < i; ++j) {
        series = (series + term) % mod;
        term = detail::mul_mod(term, mu_reps, mod);
    }
    const residue rhs = (xr + detail::mul_mod(detail::mul_mod(k, pw, mod), series, mod)) % mod;
    const residue lhs = iterate(xr, u, q, static_cast<std::uint64_t>(i) * reps);
    return lhs == rhs;
}

/// F^(mu_bar 3^t)(x) = x (mod 3^(w+t)) and != x (mod 3^(w+t+1)), given the
/// same relation holds at t = 0 (exact valuation w, w >= 2).
inline bool check_lifting_lemma(std::uint64_t x, std::uint64_t mu, unsigned w, unsigned t, const ring_modulus& m) {
    detail::require_base3(m);
    if (x >= m.value() || !m.in_h(x)) throw precondition_unmet("x must lie in H_{3^n}");
    if (mu % 3 == 0) throw precondition_unmet("mu must not be divisible by 3");
    if (w < 2) throw precondition_unmet("need w >= 2");
    const unsigned mu_bar = static_cast<unsigned>(mu % 3);

    const auto base = make_modulus(3, w + 1);
    const residue d0 = (iterate(x % base.value(), mu % base.value(), base, mu_bar) + base.value() -
                        x % base.value()) % base.value();
    const residue pw = checked_pow(3, w);
    if (d0 % pw != 0 || d0 == 0) throw precondition_unmet("F^mu_bar(x) - x does not have valuation exactly w");

    const auto q = make_modulus(3, w + t + 1);
    const residue mod = q.value();
    const residue xr = x % mod;
    const residue y = iterate(xr, mu % mod, q, mu_bar * checked_pow(3, t));
    const residue d = (y + mod - xr) % mod;
    const residue lower = checked_pow(3, w + t);
    return d % lower == 0 && d != 0;
}

} // namespace logimap

#endif
