#ifndef LOGIMAP_TOOLS_CLI_HPP
#define LOGIMAP_TOOLS_CLI_HPP

// logimap command-line front end. Exit codes: 0 success, 1 verification
// failure, 2 usage or validation error, 3 resource cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logimap/json.hpp"
#include "logimap/orbit.hpp"
#include "logimap/period_law.hpp"
#include "logimap/smn.hpp"
#include "logimap/verify.hpp"

namespace logimap::cli {

enum exit_code : int { ok = 0, verification_failed = 1, usage_error = 2, cap_error = 3 };

struct run_config {
    long long p = 3;
    long long n = 0;
    std::uint64_t mu = 0;
    std::optional<std::uint64_t> x0;
    std::string format = "text";
    bool check = false;
    bool oracle = false;
    std::string suite = "all";
    std::optional<std::uint64_t> mu_max;
    std::optional<unsigned> n_max;
    std::string out;
    caps limits{};
};

namespace detail {

inline const CLI::Validator decimal_only(
    [](const std::string& text) {
        const bool digits = !text.empty() && text.find_first_not_of("0123456789") == std::string::npos;
        return digits ? std::string() : "expected a non-negative decimal integer, got '" + text + "'";
    },
    "DECIMAL");

inline ring_modulus modulus_of(const run_config& cfg) {
    if (cfg.n < 1) throw invalid_argument("--n must be given and >= 1");
    return make_modulus(cfg.p, cfg.n);
}

inline residue reduce_with_warning(std::uint64_t v, const char* name, const ring_modulus& m, std::ostream& err) {
    const residue r = m.reduce(v);
    if (r != v)
        err << "warning: " << name << " reduced mod " << m.p() << "^" << m.n() << ": " << v << " -> " << r << "\n";
    return r;
}

inline std::string ring_text(const ring_modulus& m) {
    return std::to_string(m.p()) + "^" + std::to_string(m.n());
}

inline std::string period_text(const std::string& head, std::uint64_t value) {
    return head + ": " + std::to_string(value) + "\n";
}

inline int cmd_orbit(const run_config& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.x0) throw invalid_argument("orbit needs --x0");
    const auto m = modulus_of(cfg);
    const residue mu = reduce_with_warning(cfg.mu, "mu", m, err);
    const residue x0 = reduce_with_warning(*cfg.x0, "x0", m, err);
    const auto o = detect_orbit(x0, mu, m, cfg.limits);
    if (cfg.format == "json") {
        ordered_json doc;
        doc["p"] = m.p();
        doc["n"] = m.n();
        doc["mu"] = mu;
        doc["x0"] = x0;
        doc.update(to_json(o));
        out << doc.dump(2) << "\n";
        return ok;
    }
    out << "orbit of x0=" << x0 << " under f(x) = " << mu << " x (x + 1) mod " << ring_text(m) << "\n";
    out << period_text("pre_period", o.pre_period) << period_text("period", o.period)
        << period_text("cycle_entry", o.cycle_entry);
    if (m.p() != 3) out << "note: no closed-form law for p != 3; oracle result only\n";
    return ok;
}

inline int cmd_period(const run_config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.p != 3) throw invalid_argument("period needs p = 3");
    if (!cfg.x0) throw invalid_argument("period needs --x0");
    const auto m = modulus_of(cfg);
    const residue mu = reduce_with_warning(cfg.mu, "mu", m, err);
    const residue x0 = reduce_with_warning(*cfg.x0, "x0", m, err);
    const auto law = closed_form_period(x0, mu, m);
    std::optional<std::uint64_t> oracle;
    if (cfg.check) oracle = detect_orbit(x0, mu, m, cfg.limits).period;

    if (cfg.format == "json") {
        ordered_json doc;
        doc["p"] = 3;
        doc["n"] = m.n();
        doc["mu"] = mu;
        doc["x0"] = x0;
        doc.update(to_json(law));
        if (oracle) {
            doc["oracle_period"] = *oracle;
            doc["verdict"] = *oracle == law.period ? "AGREE" : "DISAGREE";
        }
        out << doc.dump(2) << "\n";
    } else {
        std::ostringstream v;
        v << law.v;
        out << "closed-form period of x0=" << x0 << ", mu=" << mu << " over Z_" << ring_text(m) << "\n";
        out << period_text("mu_bar", law.mu_bar) << period_text("entry_index", law.entry_index)
            << period_text("entry_value", law.entry_value);
        out << "v: " << v.str() << "\n";
        out << "branch: " << to_string(law.branch) << "\n";
        out << period_text("L", law.period);
        if (oracle) {
            out << period_text("oracle", *oracle);
            out << "verdict: " << (*oracle == law.period ? "AGREE" : "DISAGREE") << "\n";
        }
    }
    return oracle && *oracle != law.period ? verification_failed : ok;
}

inline int cmd_maxperiod(const run_config& cfg, std::ostream& out, std::ostream& err) {
    const auto m = modulus_of(cfg);
    const residue mu = reduce_with_warning(cfg.mu, "mu", m, err);
    std::optional<max_period_report> formula;
    std::optional<max_period_report> brute;
    if (m.p() == 3) formula = max_period_formula(mu, m, cfg.limits);
    if (cfg.oracle || m.p() != 3) brute = max_period_bruteforce(mu, m, cfg.limits);
    const auto& shown = brute ? *brute : *formula;

    if (cfg.format == "json") {
        ordered_json doc;
        doc["p"] = m.p();
        doc["n"] = m.n();
        doc["mu"] = mu;
        if (formula) {
            doc["class_modulus"] = formula->class_modulus;
            doc["mu_class"] = formula->mu_class;
            doc["formula"] = formula->max_period;
            doc["source"] = formula->source == period_source::formula ? "formula" : "brute-force";
        } else {
            doc["formula"] = nullptr;
        }
        doc["oracle"] = brute ? ordered_json(brute->max_period) : ordered_json(nullptr);
        doc["witness"] = shown.witness ? ordered_json(*shown.witness) : ordered_json(nullptr);
        out << doc.dump(2) << "\n";
        return ok;
    }
    out << "maximum period of f(x) = " << mu << " x (x + 1) over Z_" << ring_text(m) << "\n";
    if (formula) {
        out << "class: mu mod " << formula->class_modulus << " = " << formula->mu_class << "\n";
        out << period_text("formula", formula->max_period);
        if (formula->source == period_source::brute_force) out << "source: brute-force (n below class exponent)\n";
    }
    if (brute) out << period_text("oracle", brute->max_period);
    if (shown.witness) out << period_text("witness", *shown.witness);
    return ok;
}

inline int cmd_graph(const run_config& cfg, std::ostream& out, std::ostream& err) {
    const auto m = modulus_of(cfg);
    const residue mu = reduce_with_warning(cfg.mu, "mu", m, err);
    const auto g = build_smn(mu, m, cfg.limits);
    const auto d = decompose(g);
    if (cfg.format == "dot") {
        out << export_dot(g, &d);
    } else if (cfg.format == "json") {
        out << to_json(g, d).dump() << "\n";
    } else {
        out << "functional graph of f(x) = " << mu << " x (x + 1) mod " << ring_text(m) << "\n";
        out << "nodes: " << m.value() << "\n";
        out << "cycles: " << d.cycles.size() << "\n";
        for (const auto& [len, count] : d.cycle_length_multiset)
            out << "  length " << len << ": " << count << "\n";
        out << "tail depths:\n";
        for (const auto& [depth, count] : d.tail_depth_histogram)
            out << "  depth " << depth << ": " << count << "\n";
    }
    return ok;
}

inline int cmd_verify(const run_config& cfg, std::ostream& out, std::ostream&) {
    verify_options opt;
    opt.limits = cfg.limits;
    if (cfg.n_max) opt.n_max = *cfg.n_max;
    if (cfg.mu_max) opt.mu_limit = *cfg.mu_max + 1;
    if (opt.n_max < 1) throw invalid_argument("--n-max must be >= 1");

    std::vector<std::string> names;
    if (cfg.suite == "all") {
        names = suite_names();
    } else {
        std::istringstream in(cfg.suite);
        for (std::string s; std::getline(in, s, ',');) names.push_back(s);
    }
    std::vector<suite_report> reports;
    for (const auto& name : names) reports.push_back(run_suite(name, opt));

    bool all_pass = true;
    if (cfg.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json j;
            j["suite"] = r.name;
            j["pass"] = r.passed();
            j["checks"] = r.checks;
            j["failures"] = r.failures;
            j["skipped"] = r.skipped;
            j["failing_tuples"] = r.samples;
            j["notes"] = r.notes;
            doc.push_back(std::move(j));
            all_pass = all_pass && r.passed();
        }
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            out << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " checks=" << r.checks
                << " failures=" << r.failures << " skipped=" << r.skipped << "\n";
            if (!r.passed()) out << "  minimal failing tuple: " << r.samples.front() << "\n";
            for (const auto& note : r.notes) out << "  note: " << note << "\n";
            all_pass = all_pass && r.passed();
        }
        out << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    }
    return all_pass ? ok : verification_failed;
}

inline int cmd_counterexample(const run_config& cfg, std::ostream& out, std::ostream&) {
    std::vector<std::uint64_t> mus;
    if (cfg.mu_max) {
        for (std::uint64_t mu = 0; mu <= *cfg.mu_max; ++mu) mus.push_back(mu);
    } else {
        mus.push_back(cfg.mu);
    }
    std::vector<unsigned> ns;
    if (cfg.n_max) {
        for (unsigned n = 1; n <= *cfg.n_max; ++n) ns.push_back(n);
    } else {
        if (cfg.n < 1) throw invalid_argument("counterexample needs --n or --n-max");
        ns.push_back(static_cast<unsigned>(cfg.n));
    }
    const auto found = find_eq4_counterexamples(mus, ns, cfg.limits);
    if (cfg.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& c : found) doc.push_back(to_json(c));
        out << doc.dump(2) << "\n";
        return ok;
    }
    out << "mu n legacy true\n";
    for (const auto& c : found) out << c.mu << " " << c.n << " " << c.legacy_value << " " << c.true_value << "\n";
    out << "counterexamples: " << found.size() << "\n";
    return ok;
}

} // namespace detail

/// Parses argv and runs one subcommand, writing the report to `out` (or --out).
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Periods and functional graphs of the logistic map mu x (x + 1) mod p^n", "logimap"};
    app.require_subcommand(1);
    run_config cfg;

    const auto add_ring = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "Prime base (default 3)")->check(detail::decimal_only);
        sub->add_option("--n", cfg.n, "Exponent n >= 1")->check(detail::decimal_only);
        sub->add_option("--mu", cfg.mu, "Control parameter mu (decimal)")->check(detail::decimal_only);
    };
    const auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(std::move(formats)));
        sub->add_option("--out", cfg.out, "Write the report to this file instead of standard output");
        sub->add_option("--orbit-cap", cfg.limits.orbit, "Largest ring size for single-orbit scans")->check(detail::decimal_only);
        sub->add_option("--sweep-cap", cfg.limits.sweep, "Largest ring size for exhaustive sweeps")->check(detail::decimal_only);
        sub->add_option("--graph-cap", cfg.limits.graph, "Largest ring size for dense graphs")->check(detail::decimal_only);
    };

    auto* orbit = app.add_subcommand("orbit", "Brute-force pre-period and period of one trajectory");
    add_ring(orbit);
    orbit->add_option("--x0", cfg.x0, "Initial value")->check(detail::decimal_only)->required();
    add_common(orbit, {"text", "json"});

    auto* period = app.add_subcommand("period", "Closed-form period over Z_{3^n}");
    add_ring(period);
    period->add_option("--x0", cfg.x0, "Initial value")->check(detail::decimal_only)->required();
    period->add_flag("--check", cfg.check, "Compare with the brute-force oracle");
    add_common(period, {"text", "json"});

    auto* maxperiod = app.add_subcommand("maxperiod", "Maximum period over all initial values");
    add_ring(maxperiod);
    maxperiod->add_flag("--oracle", cfg.oracle, "Also compute the exhaustive maximum");
    add_common(maxperiod, {"text", "json"});

    auto* graph = app.add_subcommand("graph", "Functional graph as DOT or JSON decomposition");
    add_ring(graph);
    add_common(graph, {"text", "json", "dot"});

    auto* verify = app.add_subcommand("verify", "Run invariant sweeps against the oracle");
    verify->add_option("--suite", cfg.suite, "Suite name, comma-separated list, or 'all'");
    verify->add_option("--n-max", cfg.n_max, "Largest exponent for Z_{3^n} sweeps")->check(detail::decimal_only);
    verify->add_option("--mu-max", cfg.mu_max, "Largest mu for mu sweeps (inclusive)")->check(detail::decimal_only);
    add_common(verify, {"text", "json"});

    auto* counter = app.add_subcommand("counterexample", "Search for disagreements of the legacy max-period formula");
    counter->add_option("--mu", cfg.mu, "Single mu")->check(detail::decimal_only);
    counter->add_option("--mu-max", cfg.mu_max, "Sweep mu over [0, mu-max]")->check(detail::decimal_only);
    counter->add_option("--n", cfg.n, "Single exponent")->check(detail::decimal_only);
    counter->add_option("--n-max", cfg.n_max, "Sweep n over [1, n-max]")->check(detail::decimal_only);
    add_common(counter, {"text", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }
    if (cfg.limits.orbit == 0 || cfg.limits.sweep == 0 || cfg.limits.graph == 0) {
        err << "error: caps must be positive\n";
        return usage_error;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            err << "error: cannot open " << cfg.out << "\n";
            return usage_error;
        }
        sink = &file;
    }

    try {
        if (*orbit) return detail::cmd_orbit(cfg, *sink, err);
        if (*period) return detail::cmd_period(cfg, *sink, err);
        if (*maxperiod) return detail::cmd_maxperiod(cfg, *sink, err);
        if (*graph) return detail::cmd_graph(cfg, *sink, err);
        if (*verify) return detail::cmd_verify(cfg, *sink, err);
        return detail::cmd_counterexample(cfg, *sink, err);
    } catch (const cap_exceeded& e) {
        err << "error: " << e.what() << "\n";
        return cap_error;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
}

} // namespace logimap::cli

#endif
