// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "logimap/json.hpp"
#include "logimap/orbit.hpp"
#include "logimap/period_law.hpp"
#include "logimap/smn.hpp"
#include "logimap/verify.hpp"

using namespace logimap;

namespace {

struct outcome {
    bool pass;
    std::string detail;
};

struct cli_result {
    int code;
    std::string out;
};

cli_result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "logimap");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool has_line(const std::string& text, const std::string& line) {
    return text.find(line + "\n") != std::string::npos;
}

outcome worked_example() {
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_cli({"period", "--n", "7", "--mu", "20", "--x0", "50", "--check"});
    const double t = seconds_since(start);
    const bool ok = r.code == 0 && has_line(r.out, "mu_bar: 2") && has_line(r.out, "v: 2") &&
                    has_line(r.out, "L: 486") && has_line(r.out, "verdict: AGREE") && t < 1.0;
    std::ostringstream d;
    d << "exit " << r.code << ", " << t << " s";
    return {ok, d.str()};
}

outcome theorem_equivalence() {
    std::uint64_t tuples = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t contracting = 0;
    std::string first;
    for (std::uint64_t mu = 1; mu < 243; ++mu) {
        if (mu % 3 == 0) continue;
        for (unsigned n = 1; n <= 7; ++n) {
            const auto m = make_modulus(3, n);
            const auto table = orbit_table(mu, m);
            for (residue x0 = 0; x0 < m.value(); ++x0) {
                ++tuples;
                const auto law = closed_form_period(x0, mu, m);
                if (law.branch == law_branch::contracting) ++contracting;
                if (law.period != table[x0].period) {
                    if (mismatches++ == 0)
                        first = "mu=" + std::to_string(mu) + " n=" + std::to_string(n) + " x0=" + std::to_string(x0);
                }
            }
        }
    }
    std::ostringstream d;
    d << tuples << " tuples, " << mismatches << " mismatches, " << contracting << " in the contracting class";
    if (mismatches) d << ", first " << first;
    return {mismatches == 0, d.str()};
}

outcome corollary() {
    std::uint64_t mismatches = 0;
    std::uint64_t checked = 0;
    std::string first;
    for (std::uint64_t mu : {3u, 19u, 2u, 5u, 8u, 26u, 17u}) {
        for (unsigned n = 4; n <= 8; ++n) {
            const auto m = make_modulus(3, n);
            const auto formula = max_period_formula(mu, m);
            const auto oracle = max_period_bruteforce(mu, m);
            ++checked;
            if (formula.max_period != oracle.max_period && mismatches++ == 0)
                first = "mu=" + std::to_string(mu) + " n=" + std::to_string(n);
        }
    }
    std::ostringstream d;
    d << checked << " (mu, n) pairs, " << mismatches << " mismatches";
    if (mismatches) d << ", first " << first;
    return {mismatches == 0, d.str()};
}

outcome pre_periods() {
    std::uint64_t tuples = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t count_mismatches = 0;
    std::string first;
    for (std::uint64_t mu = 1; mu < 243; ++mu) {
        if (mu % 3 == 0) continue;
        for (unsigned n = 1; n <= 7; ++n) {
            const auto m = make_modulus(3, n);
            const auto table = orbit_table(mu, m);
            std::vector<std::uint64_t> per_class(3, 0);
            for (residue x0 = 0; x0 < m.value(); ++x0) {
                ++tuples;
                const auto pre = table[x0].pre_period;
                if (pre < 3) ++per_class[pre];
                if (pre != entry_index(x0) && mismatches++ == 0)
                    first = "mu=" + std::to_string(mu) + " n=" + std::to_string(n) + " x0=" + std::to_string(x0) +
                            " pre_period=" + std::to_string(pre) + " i*=" + std::to_string(entry_index(x0));
            }
            for (auto c : per_class) count_mismatches += c != m.h_size();
        }
    }
    std::ostringstream d;
    d << tuples << " tuples, " << mismatches << " pre-period mismatches, " << count_mismatches
      << " per-class count mismatches";
    if (mismatches) d << ", first " << first;
    return {mismatches == 0 && count_mismatches == 0, d.str()};
}

outcome from_suites(std::initializer_list<suite_report> reports) {
    bool ok = true;
    std::ostringstream d;
    const char* sep = "";
    for (const auto& r : reports) {
        ok = ok && r.passed();
        d << sep << r.name << " " << r.checks << " checks, " << r.failures << " violations";
        if (r.skipped) d << ", " << r.skipped << " skipped";
        if (!r.samples.empty()) d << " (" << r.samples.front() << ")";
        sep = "; ";
    }
    return {ok, d.str()};
}

outcome eq4_refutation() {
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_cli({"counterexample", "--mu-max", "27", "--n", "4", "--format", "json"});
    const double t = seconds_since(start);
    if (r.code != 0) return {false, "exit " + std::to_string(r.code)};
    const auto doc = nlohmann::json::parse(r.out);
    bool ok = !doc.empty() && t < 10.0;
    std::uint64_t required = 0;
    for (std::uint64_t mu = 0; mu <= 27; ++mu) {
        if (mu % 9 != 2 && mu % 9 != 5) continue;
        ++required;
        bool found = false;
        for (const auto& row : doc)
            found = found || (row["mu"] == mu && row["n"] == 4 && row["legacy"] == 1 && row["true"] == 18);
        ok = ok && found;
    }
    std::ostringstream d;
    d << doc.size() << " counterexamples, " << required << " required mu values, " << t << " s";
    return {ok, d.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

outcome figure_regression() {
    bool ok = true;
    std::ostringstream d;
    for (unsigned n = 1; n <= 4; ++n) {
        const auto g = build_smn(19, make_modulus(3, n));
        const auto dec = decompose(g);
        const std::string produced = to_json(g, dec).dump() + "\n";
        const std::string again = to_json(g, decompose(build_smn(19, make_modulus(3, n)))).dump() + "\n";
        const std::string fixture =
            slurp(std::filesystem::path(LOGIMAP_FIXTURE_DIR) / ("smn_mu19_n" + std::to_string(n) + ".json"));
        if (produced != fixture || produced != again) {
            ok = false;
            d << "n=" << n << " differs; ";
        }
        if (n == 3) {
            const auto& c = dec.cycle_of(3);
            ok = ok && c == std::vector<residue>{3, 12, 21};
        }
        if (n == 4) {
            const auto& c = dec.cycle_of(3);
            bool through = c.size() == 9;
            for (residue x : {3u, 66u, 21u, 30u}) through = through && std::find(c.begin(), c.end(), x) != c.end();
            ok = ok && through;
        }
    }
    const auto a = run_cli({"graph", "--n", "4", "--mu", "19", "--format", "json"});
    const auto b = run_cli({"graph", "--n", "4", "--mu", "19", "--format", "json"});
    ok = ok && a.code == 0 && a.out == b.out;
    d << "fixtures n=1..4, 3-cycle at n=3, 9-cycle at n=4, repeat runs identical";
    return {ok, d.str()};
}

outcome tripling() {
    std::uint64_t lifts = 0;
    std::uint64_t violations = 0;
    std::string first;
    for (std::uint64_t mu : {19u, 20u, 2u, 17u}) {
        for (unsigned n = 3; n <= 6; ++n) {
            const auto report = cycle_expansion_check(mu, n);
            for (const auto& l : report.lifts) lifts += l.in_scope;
            const auto bad = report.violations();
            if (!bad.empty() && violations == 0)
                first = "mu=" + std::to_string(mu) + " n=" + std::to_string(n) + " cycle@" +
                        std::to_string(bad.front().representative);
            violations += bad.size();
        }
    }
    std::ostringstream d;
    d << lifts << " cycles of length >= 3 lifted, " << violations << " violations";
    if (violations) d << ", first " << first;
    return {violations == 0, d.str()};
}

outcome witness() {
    std::uint64_t tuples = 0;
    std::uint64_t disagreements = 0;
    std::string first;
    for (std::uint64_t mu = 1; mu < 243; ++mu) {
        const auto c = mu % 9;
        if (c != 1 && c != 2 && c != 4 && c != 5 && c != 7) continue;
        for (unsigned n = 4; n <= 7; ++n) {
            const auto m = make_modulus(3, n);
            const auto table = orbit_table(mu, m);
            std::uint64_t max_period = 0;
            for (const auto& o : table) max_period = std::max(max_period, o.period);
            for (residue x0 = 0; x0 < m.value(); ++x0) {
                ++tuples;
                const bool predicted = achieves_max_period(x0, mu, m);
                const bool actual = table[x0].period == max_period;
                if (predicted != actual && disagreements++ == 0)
                    first = "mu=" + std::to_string(mu) + " n=" + std::to_string(n) + " x0=" + std::to_string(x0);
            }
        }
    }
    std::ostringstream d;
    d << tuples << " tuples, " << disagreements << " disagreements";
    if (disagreements) d << ", first " << first;
    return {disagreements == 0, d.str()};
}

} // namespace

int main() {
    struct criterion {
        const char* name;
        outcome (*run)();
    };
    const std::vector<criterion> criteria{
        {"worked example L(50; 20, 3^7) = 486", worked_example},
        {"closed-form period equals oracle period", theorem_equivalence},
        {"maximum-period formula equals oracle maximum", corollary},
        {"pre-period equals entry index", pre_periods},
        {"f permutes H_{p^n}", [] { return from_suites({verify_property1()}); }},
        {"coefficient, shift and lifting congruences",
         [] { return from_suites({verify_property2(), verify_property3(), verify_property4(), verify_lemma1()}); }},
        {"legacy maximum-period formula refuted", eq4_refutation},
        {"mu = 19 functional graph regression", figure_regression},
        {"cycle tripling under modulus lift", tripling},
        {"A/B witness condition matches oracle maximality", witness},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].name << ": " << o.detail
                  << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}
