#ifndef LOGIMAP_VERIFY_HPP
#define LOGIMAP_VERIFY_HPP

// Exhaustive invariant sweeps against the brute-force oracle. Each suite walks
// its tuples in ascending (mu, n, x0) order, so the first recorded failure is
// the minimal one.

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "logimap/orbit.hpp"
#include "logimap/period_law.hpp"
#include "logimap/ring.hpp"
#include "logimap/smn.hpp"

namespace logimap {

struct suite_report {
    explicit suite_report(std::string suite) : name(std::move(suite)) {}

    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::uint64_t skipped = 0;
    std::vector<std::string> samples; ///< first few failing tuples
    std::vector<std::string> notes;

    [[nodiscard]] bool passed() const noexcept { return failures == 0; }

    void check(bool ok, const std::function<std::string()>& describe) {
        ++checks;
        if (ok) return;
        if (samples.size() < max_samples) samples.push_back(describe());
        ++failures;
    }

    static constexpr std::size_t max_samples = 5;
};

struct verify_options {
    unsigned n_max = 7;           ///< largest exponent of the Z_{3^n} sweeps
    std::uint64_t mu_limit = 243; ///< mu ranges over [0, mu_limit)
    caps limits{};
};

namespace detail {

template <class... Ts>
std::string tuple_text(const Ts&... parts) {
    std::ostringstream os;
    ((os << parts), ...);
    return os.str();
}

inline std::vector<std::uint64_t> coprime_mus(unsigned p, std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t mu = 1; out.size() < count; ++mu)
        if (mu % p != 0) out.push_back(mu);
    return out;
}

} // namespace detail

/// f restricted to H_{p^n} is a bijection, p in {2,3,5,7}, n <= 5, 50 mu coprime to p.
inline suite_report verify_property1(const verify_options& = {}) {
    suite_report r{"property1"};
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        for (unsigned n = 1; n <= 5; ++n) {
            const auto m = make_modulus(p, n);
            for (std::uint64_t mu_raw : detail::coprime_mus(p, 50)) {
                const residue mu = m.reduce(mu_raw);
                std::vector<bool> hit(m.value(), false);
                bool ok = true;
                for (residue x = 0; x < m.value(); x += p) {
                    const residue y = step(x, mu, m);
                    if (!m.in_h(y) || hit[y]) {
                        ok = false;
                        break;
                    }
                    hit[y] = true;
                }
                r.check(ok, [&] { return detail::tuple_text("p=", p, " n=", n, " mu=", mu_raw); });
            }
        }
    }
    return r;
}

/// Coefficient structure of F^reps for reps <= 6, mu <= 20.
inline suite_report verify_property2(const verify_options& = {}) {
    suite_report r{"property2"};
    for (unsigned mu = 1; mu <= 20; ++mu) {
        for (unsigned reps = 1; reps <= 6; ++reps) {
            const auto poly = compose_poly(mu, reps);
            const big_int bmu = mu;
            big_int square_coeff = 0;
            for (unsigned i = reps; i <= 2 * reps - 1; ++i) square_coeff += boost::multiprecision::pow(bmu, i);
            bool ok = poly.degree() == (1L << reps) && poly.coeff(0) == 0 &&
                      poly.coeff(1) == boost::multiprecision::pow(bmu, reps) && poly.coeff(2) == square_coeff;
            for (long i = 3; ok && i <= poly.degree(); ++i) ok = poly.coeff(static_cast<std::size_t>(i)) > 0;
            r.check(ok, [&] { return detail::tuple_text("mu=", mu, " reps=", reps); });
        }
    }
    return r;
}

/// (x + k 3^w)^e = x^e mod 3^(w+2) over H_{3^6}.
inline suite_report verify_property3(const verify_options& = {}) {
    suite_report r{"property3"};
    const auto m = make_modulus(3, 6);
    for (residue x = 0; x < m.value(); x += 3)
        for (unsigned w = 1; w <= 4; ++w)
            for (std::uint64_t k = 1; k <= 8; ++k)
                for (unsigned e = 3; e <= 6; ++e)
                    r.check(check_property3(x, k, w, e, m),
                            [&] { return detail::tuple_text("x=", x, " k=", k, " w=", w, " e=", e); });
    return r;
}

/// Iterated-shift congruence over H_{3^6}, w <= 4, all precondition-satisfying tuples.
inline suite_report verify_property4(const verify_options& = {}) {
    suite_report r{"property4"};
    const auto m = make_modulus(3, 6);
    for (std::uint64_t mu = 1; mu < 81; ++mu)
        for (unsigned reps = 1; reps <= 4; ++reps)
            for (residue x = 0; x < m.value(); x += 3)
                for (unsigned w = 2; w <= 4; ++w)
                    for (unsigned i = 1; i <= 4; ++i) {
                        try {
                            const bool ok = check_property4(x, mu, reps, w, i, m);
                            r.check(ok, [&] {
                                return detail::tuple_text("mu=", mu, " reps=", reps, " x=", x, " w=", w, " i=", i);
                            });
                        } catch (const precondition_unmet&) {
                            ++r.skipped;
                        }
                    }
    return r;
}

/// Cycle-lifting congruences over H_{3^6}, w <= 4, t <= 3.
inline suite_report verify_lemma1(const verify_options& = {}) {
    suite_report r{"lemma1"};
    const auto m = make_modulus(3, 6);
    for (std::uint64_t mu = 1; mu < 81; ++mu) {
        if (mu % 3 == 0) continue;
        for (residue x = 0; x < m.value(); x += 3)
            for (unsigned w = 2; w <= 4; ++w)
                for (unsigned t = 1; t <= 3; ++t) {
                    try {
                        const bool ok = check_lifting_lemma(x, mu, w, t, m);
                        r.check(ok, [&] { return detail::tuple_text("mu=", mu, " x=", x, " w=", w, " t=", t); });
                    } catch (const precondition_unmet&) {
                        ++r.skipped;
                    }
                }
    }
    return r;
}

/// closed_form_period == oracle period for every mu coprime to 3, n <= n_max, x0.
inline suite_report verify_theorem1(const verify_options& opt = {}) {
    suite_report r{"theorem1"};
    std::uint64_t contracting = 0;
    std::uint64_t stated_law_misses = 0;
    for (std::uint64_t mu = 0; mu < opt.mu_limit; ++mu) {
        if (mu % 3 == 0) continue;
        for (unsigned n = 1; n <= opt.n_max; ++n) {
            const auto m = make_modulus(3, n);
            const auto table = orbit_table(mu, m, opt.limits);
            for (residue x0 = 0; x0 < m.value(); ++x0) {
                const auto law = closed_form_period(x0, mu, m);
                if (law.branch == law_branch::contracting) {
                    ++contracting;
                    if (stated_law_period(x0, mu, m) != table[x0].period) ++stated_law_misses;
                }
                r.check(law.period == table[x0].period, [&] {
                    return detail::tuple_text("mu=", mu, " n=", n, " x0=", x0, " law=", law.period,
                                              " oracle=", table[x0].period);
                });
            }
        }
    }
    r.notes.push_back(detail::tuple_text(contracting, " start values never enter H (mu = 2, x0 = 1 mod 3); ",
                                         stated_law_misses, " of them contradict the uncorrected law"));
    return r;
}

/// Pre-period == i* wherever the trajectory enters H. Start values with
/// mu = 2 and x0 = 1 (mod 3) are checked against the contracting-class law
/// instead: the orbit stays in 1 + 3Z and ends on a fixed point within n steps.
inline suite_report verify_property5(const verify_options& opt = {}) {
    suite_report r{"property5"};
    std::uint64_t contracting = 0;
    for (std::uint64_t mu = 0; mu < opt.mu_limit; ++mu) {
        if (mu % 3 == 0) continue;
        for (unsigned n = 1; n <= opt.n_max; ++n) {
            const auto m = make_modulus(3, n);
            const auto table = orbit_table(mu, m, opt.limits);
            std::uint64_t count[3] = {0, 0, 0};
            for (residue x0 = 0; x0 < m.value(); ++x0) {
                const auto& o = table[x0];
                if (mu % 3 == 2 && x0 % 3 == 1) {
                    ++contracting;
                    r.check(o.period == 1 && o.cycle_entry % 3 == 1 && o.pre_period < n, [&] {
                        return detail::tuple_text("mu=", mu, " n=", n, " x0=", x0, " contracting class");
                    });
                    continue;
                }
                ++count[o.pre_period < 3 ? o.pre_period : 0];
                r.check(o.pre_period == entry_index(x0), [&] {
                    return detail::tuple_text("mu=", mu, " n=", n, " x0=", x0, " pre=", o.pre_period,
                                              " i*=", entry_index(x0));
                });
            }
            const std::uint64_t third = m.h_size();
            const bool counts_ok = mu % 3 == 1 ? (count[0] == third && count[1] == third && count[2] == third)
                                               : (count[0] == third && count[1] == third && count[2] == 0);
            r.check(counts_ok, [&] { return detail::tuple_text("mu=", mu, " n=", n, " class counts"); });
        }
    }
    r.notes.push_back(detail::tuple_text(contracting, " start values checked against the contracting-class law"));
    return r;
}

/// max_period_formula == brute-force maximum, and the formula witness attains it.
inline suite_report verify_corollary1(const verify_options& opt = {}) {
    suite_report r{"corollary1"};
    const unsigned n_hi = std::max(4u, std::min(8u, opt.n_max + 1));
    for (std::uint64_t mu = 0; mu < std::min<std::uint64_t>(opt.mu_limit, 81); ++mu) {
        for (unsigned n = 1; n <= n_hi; ++n) {
            const auto m = make_modulus(3, n);
            const auto formula = max_period_formula(mu, m, opt.limits);
            const auto brute = max_period_bruteforce(mu, m, opt.limits);
            r.check(formula.max_period == brute.max_period, [&] {
                return detail::tuple_text("mu=", mu, " n=", n, " formula=", formula.max_period,
                                          " oracle=", brute.max_period);
            });
            if (formula.witness)
                r.check(closed_form_period(*formula.witness, mu, m).period == formula.max_period,
                        [&] { return detail::tuple_text("mu=", mu, " n=", n, " witness=", *formula.witness); });
        }
    }
    return r;
}

/// achieves_max_period agrees with the oracle for mu mod 9 in {1,2,4,5,7}, 4 <= n <= min(7, n_max).
inline suite_report verify_witness(const verify_options& opt = {}) {
    suite_report r{"witness"};
    const unsigned n_hi = std::min(7u, opt.n_max);
    for (std::uint64_t mu = 0; mu < opt.mu_limit; ++mu) {
        const auto cls = mu % 9;
        if (cls != 1 && cls != 2 && cls != 4 && cls != 5 && cls != 7) continue;
        for (unsigned n = 4; n <= n_hi; ++n) {
            const auto m = make_modulus(3, n);
            const auto table = orbit_table(mu, m, opt.limits);
            std::uint64_t max_period = 0;
            for (const auto& o : table) max_period = std::max(max_period, o.period);
            for (residue x0 = 0; x0 < m.value(); ++x0) {
                const bool claimed = achieves_max_period(x0, mu, m, opt.limits);
                r.check(claimed == (table[x0].period == max_period), [&] {
                    return detail::tuple_text("mu=", mu, " n=", n, " x0=", x0, " claimed=", claimed,
                                              " period=", table[x0].period, " max=", max_period);
                });
            }
        }
    }
    return r;
}

/// Cycle tripling, per-start-value tripling when n >= v, and divisibility of
/// periods between consecutive exponents.
inline suite_report verify_tripling(const verify_options& opt = {}) {
    suite_report r{"tripling"};
    const unsigned n_hi = std::max(3u, std::min(6u, opt.n_max - 1));
    for (std::uint64_t mu : {2u, 17u, 19u, 20u}) {
        for (unsigned n = 3; n <= n_hi; ++n) {
            const auto bad = cycle_expansion_check(mu, n, opt.limits).violations();
            r.check(bad.empty(), [&] {
                return detail::tuple_text("mu=", mu, " n=", n, " cycle@", bad.front().representative,
                                          " length=", bad.front().length, " lifted=", bad.front().lifted_length);
            });
        }
    }
    for (std::uint64_t mu = 1; mu < std::min<std::uint64_t>(opt.mu_limit, 81); ++mu) {
        if (mu % 3 == 0) continue;
        for (unsigned n = 1; n < opt.n_max; ++n) {
            const auto lo = make_modulus(3, n);
            const auto hi = make_modulus(3, n + 1);
            const auto t_lo = orbit_table(mu, lo, opt.limits);
            const auto t_hi = orbit_table(mu, hi, opt.limits);
            for (residue x0 = 0; x0 < lo.value(); ++x0) {
                r.check(t_hi[x0].period % t_lo[x0].period == 0,
                        [&] { return detail::tuple_text("mu=", mu, " n=", n, " x0=", x0, " divisibility"); });
                if (x0 % 3 != 0) continue;
                const auto v = v_of(x0, mu, lo).v;
                if (v.is_finite() && n >= v.value())
                    r.check(t_hi[x0].period == 3 * t_lo[x0].period,
                            [&] { return detail::tuple_text("mu=", mu, " n=", n, " x0=", x0, " tripling"); });
            }
        }
    }
    return r;
}

/// Functional-graph structure over Z_{3^n}: out-degree, cycle nodes, tail depths.
/// For mu = 2 (mod 3) the cycle nodes are H plus the fixed point of 1 + 3Z,
/// and 1 + 3Z hangs off that fixed point at depths up to n - 1.
inline suite_report verify_smn(const verify_options& opt = {}) {
    suite_report r{"smn"};
    const unsigned n_hi = std::min(6u, opt.n_max);
    for (std::uint64_t mu = 1; mu < std::min<std::uint64_t>(opt.mu_limit, 81); ++mu) {
        if (mu % 3 == 0) continue;
        for (unsigned n = 1; n <= n_hi; ++n) {
            const auto m = make_modulus(3, n);
            const auto g = build_smn(mu, m, opt.limits);
            const auto d = decompose(g);
            const auto where = [&] { return detail::tuple_text("mu=", mu, " n=", n); };
            const std::uint64_t third = m.h_size();

            bool cycles_ok = true;
            std::uint64_t off_h_cycle_nodes = 0;
            for (residue x = 0; x < m.value(); ++x) {
                if (d.on_cycle(x) && !m.in_h(x)) ++off_h_cycle_nodes;
                if (m.in_h(x) && !d.on_cycle(x)) cycles_ok = false;
            }
            std::uint64_t cycle_nodes = 0;
            for (const auto& [len, count] : d.cycle_length_multiset) cycle_nodes += len * count;

            if (mu % 3 == 1) {
                r.check(cycles_ok && off_h_cycle_nodes == 0 && cycle_nodes == third, where);
                r.check(d.tail_depth_histogram.size() == 3 && d.tail_depth_histogram.at(0) == third &&
                            d.tail_depth_histogram.at(1) == third && d.tail_depth_histogram.at(2) == third,
                        where);
            } else {
                r.check(cycles_ok && off_h_cycle_nodes == 1 && cycle_nodes == third + 1, where);
                std::uint64_t depth1_in_class2 = 0;
                bool class1_ok = true;
                for (residue x = 0; x < m.value(); ++x) {
                    if (x % 3 == 2) depth1_in_class2 += d.nodes[x].tail_depth == 1;
                    if (x % 3 == 1) {
                        const auto& c = d.cycle_of(x);
                        class1_ok = class1_ok && c.size() == 1 && c.front() % 3 == 1 && d.nodes[x].tail_depth < n;
                    }
                }
                r.check(depth1_in_class2 == third && class1_ok, where);
            }
            r.check(d.max_cycle_length() == max_period_formula(mu, m, opt.limits).max_period, where);
        }
    }
    return r;
}

/// The legacy formula is refuted for every mu = 2, 5 (mod 9) at n = 4 and
/// confirmed for mu = 0 (mod 3) and mu = 1 (mod 9).
inline suite_report verify_eq4(const verify_options& opt = {}) {
    suite_report r{"eq4"};
    std::vector<std::uint64_t> mus;
    for (std::uint64_t mu = 0; mu <= 27; ++mu) mus.push_back(mu);
    const std::vector<unsigned> ns{4};
    const auto found = find_eq4_counterexamples(mus, ns, opt.limits);
    for (std::uint64_t mu : mus) {
        const auto it = std::find_if(found.begin(), found.end(), [&](const auto& c) { return c.mu == mu; });
        const bool listed = it != found.end();
        if (mu % 9 == 2 || mu % 9 == 5)
            r.check(listed && it->legacy_value == 1 && it->true_value == 18,
                    [&] { return detail::tuple_text("mu=", mu, " expected refutation 1 vs 18"); });
        else if (mu % 3 == 0 || mu % 9 == 1)
            r.check(!listed, [&] { return detail::tuple_text("mu=", mu, " unexpected disagreement"); });
    }
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"property1", "property2", "property3", "property4",
                                                "lemma1",    "theorem1",  "property5", "corollary1",
                                                "witness",   "tripling",  "smn",       "eq4"};
    return names;
}

/// Runs one named suite; throws invalid_argument for an unknown name.
inline suite_report run_suite(const std::string& name, const verify_options& opt = {}) {
    if (name == "property1") return verify_property1(opt);
    if (name == "property2") return verify_property2(opt);
    if (name == "property3") return verify_property3(opt);
    if (name == "property4") return verify_property4(opt);
    if (name == "lemma1") return verify_lemma1(opt);
    if (name == "theorem1") return verify_theorem1(opt);
    if (name == "property5") return verify_property5(opt);
    if (name == "corollary1") return verify_corollary1(opt);
    if (name == "witness") return verify_witness(opt);
    if (name == "tripling") return verify_tripling(opt);
    if (name == "smn") return verify_smn(opt);
    if (name == "eq4") return verify_eq4(opt);
    throw invalid_argument("unknown suite '" + name + "'");
}

} // namespace logimap

#endif
