#pragma once

// Hereditary and saturated vertex sets, line points, breaking vertices and
// quotient graphs, all computed at component level.

#include "graph_model.hpp"

#include <map>
#include <utility>

namespace lpa {

/// A breaking vertex whose element v - sum(ee*) over the non-H edges e has been
/// put into the ideal. `pending_targets` lists r(e) for those edges, with
/// repetition, frozen at the stage the record was collected.
struct BreakingRecord {
    std::string vertex;
    std::vector<VertexRef> pending_targets;

    friend bool operator==(const BreakingRecord&, const BreakingRecord&) = default;
};

/// A graded ideal I(H u S): H hereditary saturated, S breaking records.
/// S is kept in declaration order of the record vertices.
struct IdealState {
    VertexSet H;
    std::vector<BreakingRecord> S;

    bool has_record(std::string_view v) const {
        return std::any_of(S.begin(), S.end(), [&](const BreakingRecord& r) { return r.vertex == v; });
    }
    friend bool operator==(const IdealState&, const IdealState&) = default;
};

namespace detail {

inline bool is_hereditary(const ComponentTable& t, const Mask& m) {
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (!m[c]) continue;
        for (const auto& a : t.arcs(c))
            if (!m[a.target]) return false;
    }
    return true;
}

/// Regular-vertex saturation to a fixpoint. Only plain vertices can enter:
/// a ray member outside H always has its successor on the ray outside H.
inline void saturate(const ComponentTable& t, Mask& m) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < t.size(); ++c) {
            if (m[c] || t.kind(c) != ComponentKind::Plain || !t.is_regular(c)) continue;
            const auto& arcs = t.arcs(c);
            if (std::all_of(arcs.begin(), arcs.end(), [&](const ComponentTable::Arc& a) { return m[a.target]; })) {
                m[c] = true;
                changed = true;
            }
        }
    }
}

inline Mask line_point_mask(const ComponentTable& t) {
    auto cyc = t.cyclic();
    Mask bad(t.size(), false);
    for (std::size_t c = 0; c < t.size(); ++c) bad[c] = cyc[c] || t.is_bifurcation(c);
    Mask out(t.size(), false);
    for (std::size_t c = 0; c < t.size(); ++c) {
        auto reach = t.reachable_from(c);
        bool ok = true;
        for (std::size_t i = 0; i < t.size() && ok; ++i)
            if (reach[i] && bad[i]) ok = false;
        out[c] = ok;
    }
    return out;
}

/// Breaking vertices of H: infinite emitters outside H whose sprays all land
/// in H and which keep at least one finite edge leaving H.
inline Mask breaking_mask(const ComponentTable& t, const Mask& h) {
    Mask out(t.size(), false);
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (h[c] || !t.has_spray(c)) continue;
        bool sprays_in = true;
        std::size_t outside = 0;
        for (const auto& a : t.arcs(c)) {
            if (a.infinite)
                sprays_in = sprays_in && h[a.target];
            else if (!h[a.target])
                outside += a.multiplicity;
        }
        out[c] = sprays_in && outside > 0;
    }
    return out;
}

inline VertexRef head_ref(const ComponentTable& t, std::size_t c) {
    return t.component(c).is_family() ? VertexRef::member(t.component(c).name, 1)
                                      : VertexRef::plain(t.component(c).name);
}

/// r(e) for every finite edge of plain vertex c leaving H, with repetition.
inline std::vector<VertexRef> targets_outside(const ComponentTable& t, std::size_t c, const Mask& h) {
    std::vector<VertexRef> out;
    for (const auto& a : t.arcs(c)) {
        if (a.infinite || h[a.target]) continue;
        for (unsigned k = 0; k < a.multiplicity; ++k) out.push_back(head_ref(t, a.target));
    }
    return out;
}

inline void require_hereditary(const ComponentTable& t, const Mask& m, const char* op) {
    if (!is_hereditary(t, m)) throw PreconditionError(std::string(op) + ": vertex set is not hereditary");
}

inline void require_hereditary_saturated(const ComponentTable& t, const Mask& m, const char* op) {
    require_hereditary(t, m, op);
    Mask closed = m;
    saturate(t, closed);
    if (closed != m) throw PreconditionError(std::string(op) + ": vertex set is not saturated");
}

} // namespace detail

inline bool is_hereditary(const GraphSpec& spec, const VertexSet& x) {
    detail::ComponentTable t(spec);
    return detail::is_hereditary(t, t.to_mask(x));
}

inline bool is_saturated(const GraphSpec& spec, const VertexSet& x) {
    detail::ComponentTable t(spec);
    auto m = t.to_mask(x);
    auto closed = m;
    detail::saturate(t, closed);
    return closed == m;
}

/// Smallest hereditary saturated set containing the hereditary set `h`.
inline VertexSet saturated_closure(const GraphSpec& spec, const VertexSet& h) {
    detail::ComponentTable t(spec);
    auto m = t.to_mask(h);
    detail::require_hereditary(t, m, "saturated_closure");
    detail::saturate(t, m);
    return t.to_set(m);
}

/// Closure by the path criterion on a finite graph: u is included when for
/// some n <= n_max every path from u ends in H once it has length n, or stops
/// earlier at a sink. Found by explicit path search; independent of the
/// saturation fixpoint.
inline std::set<std::size_t> closure_by_paths(const FiniteGraph& g, const std::set<std::size_t>& h,
                                              std::size_t n_max) {
    const std::size_t nv = g.vertices.size();
    std::vector<std::vector<std::size_t>> succ(nv);
    for (const auto& e : g.edges) succ[e.source].push_back(e.target);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    for (std::size_t v : h)
        for (std::size_t w : succ[v])
            if (!h.count(w)) throw PreconditionError("closure_by_paths: H is not hereditary");

    // True when some path of length <= n from `start` avoids H throughout and
    // either has length exactly n or ends at a sink.
    auto escapes = [&](std::size_t start, std::size_t n) {
        struct Frame {
            std::size_t v, depth, next;
        };
        std::vector<Frame> stack{{start, 0, 0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (h.count(f.v)) {
                stack.pop_back();
                continue;
            }
            if (f.depth == n || succ[f.v].empty()) return true;
            if (f.next == succ[f.v].size()) {
                stack.pop_back();
                continue;
            }
            std::size_t w = succ[f.v][f.next++];
            std::size_t d = f.depth + 1;
            stack.push_back({w, d, 0});
        }
        return false;
    };

    std::set<std::size_t> out;
    for (std::size_t u = 0; u < nv; ++u) {
        for (std::size_t n = 0; n <= n_max; ++n)
            if (!escapes(u, n)) {
                out.insert(u);
                break;
            }
    }
    return out;
}

/// All line points: components whose tree holds no bifurcation and no vertex
/// on a cycle.
inline VertexSet line_points(const GraphSpec& spec) {
    detail::ComponentTable t(spec);
    return t.to_set(detail::line_point_mask(t));
}

inline std::vector<std::string> breaking_vertices(const GraphSpec& spec, const VertexSet& h) {
    detail::ComponentTable t(spec);
    auto m = t.to_mask(h);
    detail::require_hereditary_saturated(t, m, "breaking_vertices");
    auto b = detail::breaking_mask(t, m);
    std::vector<std::string> out;
    for (std::size_t c = 0; c < t.size(); ++c)
        if (b[c]) out.push_back(t.component(c).name);
    return out;
}

/// A quotient graph plus the map from each primed sink to its breaking vertex.
struct QuotientResult {
    GraphSpec graph;
    std::map<std::string, std::string> primed; // v' -> v
};

namespace detail {

inline QuotientResult quotient_impl(const GraphSpec& spec, const IdealState& state, bool prime_all) {
    ComponentTable t(spec);
    Mask h = t.to_mask(state.H);
    require_hereditary_saturated(t, h, "quotient");
    Mask brk = breaking_mask(t, h);
    for (const auto& r : state.S) {
        std::size_t c = t.require(r.vertex);
        if (!brk[c]) throw PreconditionError("quotient: record vertex '" + r.vertex + "' is not a breaking vertex");
    }

    std::set<std::string> names;
    for (const auto& c : spec.components) names.insert(c.name);
    for (const auto& r : spec.rules) names.insert(r.labels.begin(), r.labels.end());

    QuotientResult out;
    std::map<std::string, std::string> prime_of; // v -> v'
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (h[c]) continue;
        const auto& comp = t.component(c);
        out.graph.components.push_back(comp);
        if (brk[c] && (prime_all || !state.has_record(comp.name))) {
            std::string p = comp.name + "'";
            while (names.count(p)) p += "'";
            names.insert(p);
            out.graph.vertex(p);
            prime_of[comp.name] = p;
            out.primed[p] = comp.name;
        }
    }

    auto prime_label = [&](const std::string& l) {
        std::string p = l + "'";
        while (names.count(p)) p += "'";
        names.insert(p);
        return p;
    };
    for (const auto& r : spec.rules) {
        std::size_t s = t.require(r.source), d = t.require(r.target);
        if (h[s] || h[d]) continue;
        out.graph.rules.push_back(r);
        auto it = prime_of.find(r.target);
        if (it != prime_of.end()) {
            EdgeRule copy = r;
            copy.target = it->second;
            for (auto& l : copy.labels) l = prime_label(l);
            out.graph.rules.push_back(std::move(copy));
        }
    }
    return out;
}

} // namespace detail

/// Quotient by I(H u S): H and the edges into H disappear; every breaking
/// vertex without a record in S gets a primed sink v' together with a copy e'
/// of each edge e entering v.
inline QuotientResult quotient_with_map(const GraphSpec& spec, const IdealState& state) {
    return detail::quotient_impl(spec, state, false);
}

inline GraphSpec quotient(const GraphSpec& spec, const IdealState& state) {
    return quotient_with_map(spec, state).graph;
}

/// Quotient by I(H) alone; every breaking vertex of H is primed regardless
/// of S.
inline GraphSpec hereditary_quotient(const GraphSpec& spec, const VertexSet& h) {
    return detail::quotient_impl(spec, IdealState{h, {}}, true).graph;
}

struct ExtendedClosure {
    VertexSet H;
    std::vector<std::string> absorbed; // record vertices that ended up in H, declaration order

    friend bool operator==(const ExtendedClosure&, const ExtendedClosure&) = default;
};

/// E^0 n I(H0 u {v - sum ee* : records}): closes H0 under regular-vertex
/// saturation and under record absorption (a record vertex enters once all
/// its pending targets are inside).
inline ExtendedClosure extended_closure(const GraphSpec& spec, const VertexSet& h0,
                                        const std::vector<BreakingRecord>& records) {
    detail::ComponentTable t(spec);
    auto m = t.to_mask(h0);
    detail::require_hereditary(t, m, "extended_closure");
    std::vector<std::size_t> rec_vertex;
    for (const auto& r : records) rec_vertex.push_back(t.require(r.vertex));

    bool changed = true;
    while (changed) {
        changed = false;
        detail::saturate(t, m);
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (m[rec_vertex[i]]) continue;
            const auto& pend = records[i].pending_targets;
            if (std::all_of(pend.begin(), pend.end(), [&](const VertexRef& v) { return m[t.require(v.component)]; })) {
                m[rec_vertex[i]] = true;
                changed = true;
            }
        }
    }

    ExtendedClosure out{t.to_set(m), {}};
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (!m[c]) continue;
        for (const auto& r : records)
            if (r.vertex == t.component(c).name) {
                out.absorbed.push_back(r.vertex);
                break;
            }
    }
    return out;
}

/// The sub-spec left after deleting the components of `h` and every rule
/// touching them.
inline GraphSpec delete_components(const GraphSpec& spec, const VertexSet& h) {
    GraphSpec out;
    for (const auto& c : spec.components)
        if (!h.contains(c.name)) out.components.push_back(c);
    for (const auto& r : spec.rules)
        if (!h.contains(r.source) && !h.contains(r.target)) out.rules.push_back(r);
    return out;
}

} // namespace lpa
