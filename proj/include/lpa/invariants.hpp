#pragma once

// Structural self-checks run by `lpa check` and by the corpus tests.

#include "algebra.hpp"
#include "socle.hpp"

namespace lpa {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::multiset<std::pair<std::string, std::string>> edge_endpoints(const FiniteGraph& g,
                                                                        const std::set<std::string>& keep) {
    std::multiset<std::pair<std::string, std::string>> out;
    for (const auto& e : g.edges) {
        const auto& s = g.vertices[e.source];
        const auto& t = g.vertices[e.target];
        if (keep.count(s) && keep.count(t)) out.insert({s, t});
    }
    return out;
}

/// True when `small` is the subgraph of `big` induced on small's vertices.
inline bool is_induced_subgraph(const FiniteGraph& small, const FiniteGraph& big) {
    std::set<std::string> vs(small.vertices.begin(), small.vertices.end());
    std::set<std::string> bv(big.vertices.begin(), big.vertices.end());
    if (!std::includes(bv.begin(), bv.end(), vs.begin(), vs.end())) return false;
    return edge_endpoints(small, vs) == edge_endpoints(big, vs);
}

/// Drops the primed sinks a quotient added to `original`, and the rules
/// entering them.
inline GraphSpec strip_primed(const GraphSpec& q, const GraphSpec& original) {
    GraphSpec out;
    for (const auto& c : q.components)
        if (original.find(c.name)) out.components.push_back(c);
    for (const auto& r : q.rules)
        if (original.find(r.target)) out.rules.push_back(r);
    return out;
}

} // namespace detail

/// The defining relations, checked as identities between normal forms for every
/// vertex and edge of a finite graph. Returns the first failure, if any.
inline std::optional<std::string> check_relations(const FiniteGraph& g) {
    LeavittAlgebra alg(g);
    auto nf = [&](const Element& x) { return alg.normal_form(x); };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const std::string& n = g.edges[e].name;
        Element edge = alg.edge(e), ghost = alg.ghost(e);
        Element s = alg.vertex(alg.source(e)), r = alg.vertex(alg.range(e));
        if (alg.multiply(s, edge) != nf(edge) || alg.multiply(edge, r) != nf(edge))
            return "s(e) e = e = e r(e) fails at edge " + n;
        if (alg.multiply(r, ghost) != nf(ghost) || alg.multiply(ghost, s) != nf(ghost))
            return "r(e) e* = e* = e* s(e) fails at edge " + n;
        for (std::size_t f = 0; f < g.edges.size(); ++f) {
            Element want = e == f ? r : Element{};
            if (alg.multiply(ghost, alg.edge(f)) != nf(want))
                return "e* f = delta(e,f) r(e) fails at " + n + "* " + g.edges[f].name;
        }
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (alg.out_edges(v).empty()) continue;
        Element sum;
        for (std::size_t e : alg.out_edges(v)) sum += alg.multiply_raw(alg.edge(e), alg.ghost(e));
        if (nf(sum) != nf(alg.vertex(v))) return "v = sum ee* fails at vertex " + g.vertices[v];
    }
    return std::nullopt;
}

inline std::vector<CheckResult> check_invariants(const GraphSpec& spec) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };

    auto violations = validate(spec);
    add("well-formed", violations.empty(), format_violations(violations));
    if (!violations.empty()) return out;

    VertexSet lp = line_points(spec);
    add("line points are hereditary", is_hereditary(spec, lp));

    VertexSet v1 = saturated_closure(spec, lp);
    bool closure_ok = contains_all(v1, lp) && is_hereditary(spec, v1) && is_saturated(spec, v1) &&
                      saturated_closure(spec, v1) == v1;
    add("saturated closure is hereditary, saturated, extensive and idempotent", closure_ok);

    SocleReport report = socle_series(spec);
    add("socle series stabilizes", report.stabilized);

    bool chain = true, primes_are_line_points = true, snapshots_match = true;
    for (std::size_t i = 0; i + 1 < report.stages.size(); ++i) {
        const auto& a = report.stages[i].state;
        const auto& b = report.stages[i + 1].state;
        bool last = i + 2 == report.stages.size();
        if (!contains_all(b.H, a.H)) chain = false;
        if (last ? !(a == b) : a == b) chain = false;
    }
    for (const auto& st : report.stages) {
        VertexSet qlp = line_points(st.hereditary_snapshot);
        for (const auto& c : st.hereditary_snapshot.components)
            if (!spec.find(c.name) && !qlp.contains(c.name)) primes_are_line_points = false;
        if (detail::strip_primed(st.quotient_snapshot, spec) != delete_components(spec, st.state.H)) snapshots_match = false;
    }
    add("socle chain grows strictly until the terminal repeat", chain);
    add("fixpoint is stable", socle_step(spec, report.final_state()) == report.final_state());
    add("primed sinks are line points of the quotient", primes_are_line_points);
    add("quotient snapshots equal the graph with H deleted", snapshots_match);

    bool acyclic = is_acyclic(spec);
    add("Loewy implies acyclic", !report.is_loewy_ring || acyclic);
    if (is_row_finite(spec))
        add("growing steps within the termination bound", report.loewy_length <= step_bound(spec),
            std::to_string(report.loewy_length) + " <= " + std::to_string(step_bound(spec)));

    add("classification corollaries", classify(spec, report).corollary_consistent);

    bool induced = true;
    for (std::size_t d = 1; d <= 3; ++d)
        induced = induced && detail::is_induced_subgraph(expand_truncation(spec, d), expand_truncation(spec, d + 1));
    add("truncations are nested induced subgraphs", induced);

    std::size_t depth = std::max<std::size_t>(1, spec.components.size());
    add("acyclicity agrees with the truncation", finite_has_cycle(expand_truncation(spec, depth)) == !acyclic);

    if (!spec.has_families()) {
        FiniteGraph g = to_finite(spec);
        std::set<std::size_t> lp_idx;
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (lp.contains(g.vertices[i])) lp_idx.insert(i);
        auto oracle = closure_by_paths(g, lp_idx, g.vertices.size());
        std::set<std::size_t> fix;
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            if (v1.contains(g.vertices[i])) fix.insert(i);
        add("saturated closure matches the path criterion", oracle == fix);
        auto rel = check_relations(g);
        add("defining relations hold after normal form", !rel, rel.value_or(""));
    }
    return out;
}

} // namespace lpa
