#ifndef LOGIMAP_SMN_HPP
#define LOGIMAP_SMN_HPP

// State-mapping network (functional graph) of f over Z_{p^n}: one node per
// ring element, one edge x -> f(x).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "logimap/orbit.hpp"
#include "logimap/ring.hpp"

namespace logimap {

struct smn_graph {
    ring_modulus modulus;
    residue mu;
    std::vector<residue> successor;
};

struct smn_node {
    std::size_t cycle_id;    ///< index into smn_decomposition::cycles of the cycle this node reaches
    std::uint64_t tail_depth; ///< 0 for cycle nodes
};

struct smn_decomposition {
    /// Each cycle starts at its minimum element, in traversal order; cycles sorted by that minimum.
    std::vector<std::vector<residue>> cycles;
    std::vector<smn_node> nodes;
    std::map<std::uint64_t, std::uint64_t> cycle_length_multiset; ///< length -> count
    std::map<std::uint64_t, std::uint64_t> tail_depth_histogram;  ///< depth -> count

    [[nodiscard]] bool on_cycle(residue x) const { return nodes.at(x).tail_depth == 0; }
    [[nodiscard]] std::uint64_t max_cycle_length() const {
        return cycle_length_multiset.empty() ? 0 : cycle_length_multiset.rbegin()->first;
    }
    [[nodiscard]] const std::vector<residue>& cycle_of(residue x) const { return cycles.at(nodes.at(x).cycle_id); }
};

inline smn_graph build_smn(std::uint64_t mu, const ring_modulus& m, const caps& limits = {}) {
    require_within(m.value(), limits.graph);
    return {m, m.reduce(mu), successor_table(mu, m)};
}

inline smn_decomposition decompose(const smn_graph& g) {
    const auto& succ = g.successor;
    const std::size_t size = succ.size();
    enum class mark : std::uint8_t { unvisited, in_progress, classified };
    std::vector<mark> marks(size, mark::unvisited);
    std::vector<bool> cyclic(size, false);
    std::vector<std::vector<residue>> raw_cycles;
    std::vector<residue> path;

    for (residue start = 0; start < size; ++start) {
        if (marks[start] != mark::unvisited) continue;
        path.clear();
        residue x = start;
        while (marks[x] == mark::unvisited) {
            marks[x] = mark::in_progress;
            path.push_back(x);
            x = succ[x];
        }
        if (marks[x] == mark::in_progress) {
            auto first = std::find(path.begin(), path.end(), x);
            std::vector<residue> cycle(first, path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            for (residue c : cycle) cyclic[c] = true;
            raw_cycles.push_back(std::move(cycle));
        }
        for (residue p : path) marks[p] = mark::classified;
    }
    std::sort(raw_cycles.begin(), raw_cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    smn_decomposition d;
    d.nodes.assign(size, smn_node{0, 0});

    // Reverse edges in CSR form, then breadth-first from all cycle nodes.
    std::vector<std::size_t> offset(size + 1, 0);
    for (residue x = 0; x < size; ++x)
        if (!cyclic[x]) ++offset[succ[x] + 1];
    for (std::size_t i = 0; i < size; ++i) offset[i + 1] += offset[i];
    std::vector<residue> preds(offset[size]);
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (residue x = 0; x < size; ++x)
            if (!cyclic[x]) preds[fill[succ[x]]++] = x;
    }

    std::vector<residue> queue;
    queue.reserve(size);
    for (std::size_t id = 0; id < raw_cycles.size(); ++id) {
        for (residue c : raw_cycles[id]) {
            d.nodes[c] = {id, 0};
            queue.push_back(c);
        }
        ++d.cycle_length_multiset[raw_cycles[id].size()];
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const residue y = queue[head];
        for (std::size_t k = offset[y]; k < offset[y + 1]; ++k) {
            const residue x = preds[k];
            d.nodes[x] = {d.nodes[y].cycle_id, d.nodes[y].tail_depth + 1};
            queue.push_back(x);
        }
    }
    for (const auto& node : d.nodes) ++d.tail_depth_histogram[node.tail_depth];
    d.cycles = std::move(raw_cycles);
    return d;
}

// ---------------------------------------------------------------------------
// Cycle lifting from Z_{3^n} to Z_{3^(n+1)}

struct cycle_lift {
    residue representative;     ///< minimum element of the cycle over 3^n
    std::uint64_t length;       ///< cycle length over 3^n
    std::uint64_t lifted_length; ///< length of the cycle through the representative over 3^(n+1)
    bool in_scope;              ///< length >= 3
};

struct cycle_expansion_report {
    std::uint64_t mu;
    unsigned n_from;
    std::vector<cycle_lift> lifts;

    /// In-scope cycles that did not exactly triple.
    [[nodiscard]] std::vector<cycle_lift> violations() const {
        std::vector<cycle_lift> out;
        for (const auto& l : lifts)
            if (l.in_scope && l.lifted_length != 3 * l.length) out.push_back(l);
        return out;
    }
};

/// For every cycle over 3^n_from, the length of the cycle through its minimum
/// element over 3^(n_from+1). Cycles of length >= 3 are expected to triple.
inline cycle_expansion_report cycle_expansion_check(std::uint64_t mu, unsigned n_from, const caps& limits = {}) {
    const auto lower = make_modulus(3, n_from);
    const auto upper = make_modulus(3, n_from + 1);
    require_within(upper.value(), limits.graph);
    if (mu % 3 == 0) throw mu_divisible_by_3();

    const auto low = decompose(build_smn(mu, lower, limits));
    const auto high = decompose(build_smn(mu, upper, limits));
    cycle_expansion_report report{mu, n_from, {}};
    for (const auto& cycle : low.cycles) {
        const residue rep = cycle.front();
        const std::uint64_t lifted = high.on_cycle(rep) ? high.cycle_of(rep).size() : 0;
        report.lifts.push_back({rep, cycle.size(), lifted, cycle.size() >= 3});
    }
    return report;
}

// ---------------------------------------------------------------------------
// DOT

/// Graphviz digraph; nodes in ascending order, then one edge per node. Cycle
/// nodes get a color attribute when a decomposition is supplied.
inline std::string export_dot(const smn_graph& g, const smn_decomposition* decomposition = nullptr) {
    std::ostringstream os;
    os << "digraph smn {\n";
    os << "  // f(x) = " << g.mu << " x (x + 1) mod " << g.modulus.p() << "^" << g.modulus.n() << "\n";
    for (residue x = 0; x < g.successor.size(); ++x) {
        os << "  " << x;
        if (decomposition && decomposition->on_cycle(x)) os << " [color=red]";
        os << ";\n";
    }
    for (residue x = 0; x < g.successor.size(); ++x) os << "  " << x << " -> " << g.successor[x] << ";\n";
    os << "}\n";
    return os.str();
}

/// Successor array recovered from export_dot output; nullopt if an edge is
/// missing, duplicated, or refers to an unknown node.
inline std::optional<std::vector<residue>> successors_from_dot(std::string_view dot) {
    std::vector<std::optional<residue>> succ;
    std::istringstream in{std::string(dot)};
    std::string line;
    while (std::getline(in, line)) {
        const auto arrow = line.find("->");
        if (arrow == std::string::npos) continue;
        std::uint64_t from = 0;
        std::uint64_t to = 0;
        std::istringstream lhs(line.substr(0, arrow));
        std::istringstream rhs(line.substr(arrow + 2));
        if (!(lhs >> from) || !(rhs >> to)) return std::nullopt;
        if (from >= succ.size()) succ.resize(from + 1);
        if (succ[from]) return std::nullopt;
        succ[from] = to;
    }
    std::vector<residue> out;
    out.reserve(succ.size());
    for (const auto& s : succ) {
        if (!s || *s >= succ.size()) return std::nullopt;
        out.push_back(*s);
    }
    return out;
}

} // namespace logimap

#endif
