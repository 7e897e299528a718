#pragma once

// The ascending Loewy socle series, stage by stage.
//
// Stage 0 is the zero ideal. Each step quotients the graph by the current
// ideal I(H u S), takes the line points of the quotient, pulls the ordinary
// ones back into H and turns every primed sink v' into a breaking record for
// v, then closes. The series stops at the first repeated state; its index is
// the Loewy length.

#include "structure.hpp"

namespace lpa {

struct SocleStage {
    std::size_t index = 0;
    IdealState state;
    VertexSet new_line_points;         // line points of the previous quotient (primed names kept)
    GraphSpec quotient_snapshot;       // quotient by I(H u S)
    GraphSpec hereditary_snapshot;     // quotient by I(H) alone, every breaking vertex primed

    friend bool operator==(const SocleStage&, const SocleStage&) = default;
};

struct SocleReport {
    std::vector<SocleStage> stages; // ends with the repeated stage
    std::size_t loewy_length = 0;
    bool is_loewy_ring = false;
    bool stabilized = true;

    const IdealState& final_state() const { return stages.back().state; }
    /// Number of socle_step applications performed.
    std::size_t steps() const { return stages.empty() ? 0 : stages.size() - 1; }

    friend bool operator==(const SocleReport&, const SocleReport&) = default;
};

namespace detail {

struct StepResult {
    IdealState next;
    VertexSet line_points; // in the quotient's names
};

inline StepResult socle_step_impl(const GraphSpec& spec, const IdealState& state) {
    auto q = quotient_with_map(spec, state);
    VertexSet lp = line_points(q.graph);

    VertexSet w;
    w.families = lp.families;
    std::vector<std::string> fresh; // breaking vertices whose primed sink is a line point
    for (const auto& name : lp.plain) {
        auto it = q.primed.find(name);
        if (it == q.primed.end())
            w.plain.insert(name);
        else
            fresh.push_back(it->second);
    }

    ComponentTable t(spec);
    Mask h = t.to_mask(state.H);
    std::vector<BreakingRecord> records = state.S;
    for (const auto& v : fresh) records.push_back({v, targets_outside(t, t.require(v), h)});
    std::sort(records.begin(), records.end(), [&](const BreakingRecord& a, const BreakingRecord& b) {
        return t.require(a.vertex) < t.require(b.vertex);
    });

    auto closed = extended_closure(spec, set_union(state.H, w), records);
    IdealState next{closed.H, {}};
    for (auto& r : records)
        if (!closed.H.contains(r.vertex)) next.S.push_back(std::move(r));
    return {std::move(next), std::move(lp)};
}

} // namespace detail

inline IdealState socle_step(const GraphSpec& spec, const IdealState& state) {
    return detail::socle_step_impl(spec, state).next;
}

/// Upper bound on the number of growing steps: each one adds a component to
/// H or a record to S, and only spray sources carry records.
inline std::size_t step_bound(const GraphSpec& spec) {
    return 2 * (spec.components.size() + spec.spray_count());
}

inline SocleReport socle_series(const GraphSpec& spec) {
    require_valid(spec);
    SocleReport report;
    IdealState state;
    report.stages.push_back({0, state, {}, quotient(spec, state), hereditary_quotient(spec, state.H)});

    const std::size_t cap = step_bound(spec) + 1;
    for (std::size_t step = 1;; ++step) {
        if (step > cap) {
            report.stabilized = false;
            break;
        }
        auto r = detail::socle_step_impl(spec, state);
        bool repeat = r.next == state;
        state = std::move(r.next);
        report.stages.push_back({step, state, std::move(r.line_points), quotient(spec, state),
                                 hereditary_quotient(spec, state.H)});
        if (repeat) break;
    }

    report.loewy_length = report.stages.size() - 2;
    report.is_loewy_ring = report.stabilized && report.final_state().H.size() == spec.components.size();
    return report;
}

struct LoewyLength {
    std::size_t length = 0;
    bool is_loewy = false;
    friend bool operator==(const LoewyLength&, const LoewyLength&) = default;
};

inline LoewyLength loewy_length(const GraphSpec& spec) {
    auto r = socle_series(spec);
    return {r.loewy_length, r.is_loewy_ring};
}

struct Classification {
    bool acyclic = false;
    bool row_finite = false;
    bool is_loewy = false;
    std::size_t loewy_length = 0;
    bool vn_regular_implied = false;
    bool corollary_consistent = false;

    friend bool operator==(const Classification&, const Classification&) = default;
};

inline Classification classify(const GraphSpec& spec, const SocleReport& report) {
    Classification c;
    c.acyclic = is_acyclic(spec);
    c.row_finite = is_row_finite(spec);
    c.is_loewy = report.is_loewy_ring;
    c.loewy_length = report.loewy_length;
    const bool finite = !spec.has_families();
    c.vn_regular_implied = c.is_loewy || (finite && c.acyclic);

    bool consistent = !c.is_loewy || c.acyclic;
    if (finite) {
        // Finite E^0 and E^1: Loewy, acyclic and semisimple artinian coincide.
        // The empty graph is the zero ring, which already equals its 0-th socle.
        const bool first_socle_full = report.stages.size() > 1 &&
                                      report.stages[1].state.H.size() == spec.components.size();
        const std::size_t expected = spec.components.empty() ? 0 : 1;
        const bool semisimple = first_socle_full && c.loewy_length == expected;
        consistent = consistent && c.is_loewy == c.acyclic && c.acyclic == semisimple;
    }
    c.corollary_consistent = consistent;
    return c;
}

inline Classification classify(const GraphSpec& spec) { return classify(spec, socle_series(spec)); }

} // namespace lpa
