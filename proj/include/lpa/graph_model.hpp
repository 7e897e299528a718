#pragma once

// Shape graphs: a finite description of a possibly infinite directed graph.
//
// A GraphSpec is built from three kinds of named components:
//   plain vertex   one vertex
//   ray  R         vertices R[1], R[2], ... with internal edges R[j] -> R[j+1]
//   fan  F         sinks F[1], F[2], ... (no edges in or out of the family itself)
// and edge rules that apply uniformly to every member of a family. Because
// all members of a family have the same out-rule profile, every structural
// question (vertex kind, tree, cycles, line points, closures) can be answered
// exactly on the component digraph, without truncation.

#include "error.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lpa {

enum class ComponentKind { Plain, Ray, Fan };

struct Component {
    std::string name;
    ComponentKind kind = ComponentKind::Plain;

    bool is_family() const noexcept { return kind != ComponentKind::Plain; }
    friend bool operator==(const Component&, const Component&) = default;
};

enum class RuleKind { PlainToPlain, PlainToRayHead, RayMembersToPlain, RayMembersToRayHead, SprayToFan };

/// One uniform edge pattern. For RayMembersTo* rules `source` names the ray
/// and every member emits `multiplicity` edges. SprayToFan has no
/// multiplicity: the source emits one edge to each fan member.
/// `labels`, when non-empty, names the individual edges of a rule with a
/// plain source (one label per unit of multiplicity).
struct EdgeRule {
    RuleKind kind = RuleKind::PlainToPlain;
    std::string source;
    std::string target;
    std::optional<unsigned> multiplicity = 1;
    std::vector<std::string> labels;

    friend bool operator==(const EdgeRule&, const EdgeRule&) = default;
};

/// Primed names (`v'`) mark the sinks introduced for breaking vertices by
/// a quotient.
inline bool is_primed_name(std::string_view name) noexcept {
    return !name.empty() && name.back() == '\'';
}

struct GraphSpec {
    std::vector<Component> components; // declaration order is canonical
    std::vector<EdgeRule> rules;

    GraphSpec& vertex(std::string name) {
        components.push_back({std::move(name), ComponentKind::Plain});
        return *this;
    }
    GraphSpec& ray(std::string name) {
        components.push_back({std::move(name), ComponentKind::Ray});
        return *this;
    }
    GraphSpec& fan(std::string name) {
        components.push_back({std::move(name), ComponentKind::Fan});
        return *this;
    }
    GraphSpec& rule(RuleKind kind, std::string source, std::string target, unsigned multiplicity = 1,
                    std::vector<std::string> labels = {}) {
        rules.push_back({kind, std::move(source), std::move(target),
                         kind == RuleKind::SprayToFan ? std::nullopt : std::optional<unsigned>(multiplicity),
                         std::move(labels)});
        return *this;
    }
    GraphSpec& spray(std::string source, std::string fan_name) {
        return rule(RuleKind::SprayToFan, std::move(source), std::move(fan_name));
    }

    const Component* find(std::string_view name) const {
        for (const auto& c : components)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::vector<std::string> names_of(ComponentKind kind) const {
        std::vector<std::string> out;
        for (const auto& c : components)
            if (c.kind == kind) out.push_back(c.name);
        return out;
    }
    std::vector<std::string> plain_vertices() const { return names_of(ComponentKind::Plain); }
    std::vector<std::string> rays() const { return names_of(ComponentKind::Ray); }
    std::vector<std::string> fans() const { return names_of(ComponentKind::Fan); }

    bool has_families() const {
        return std::any_of(components.begin(), components.end(), [](const Component& c) { return c.is_family(); });
    }
    std::size_t spray_count() const {
        return static_cast<std::size_t>(std::count_if(
            rules.begin(), rules.end(), [](const EdgeRule& r) { return r.kind == RuleKind::SprayToFan; }));
    }

    friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

/// A single vertex: a plain vertex (no index) or member `index` (1-based) of
/// a ray or fan.
struct VertexRef {
    std::string component;
    std::optional<std::size_t> index;
    bool primed = false;

    static VertexRef plain(std::string name) {
        bool p = is_primed_name(name);
        return {std::move(name), std::nullopt, p};
    }
    static VertexRef member(std::string family, std::size_t index) { return {std::move(family), index, false}; }

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

inline std::string to_string(const VertexRef& v) {
    if (!v.index) return v.component;
    return v.component + "[" + std::to_string(*v.index) + "]";
}

/// Component-level vertex subset: plain vertices individually, families
/// all-or-none.
struct VertexSet {
    std::set<std::string> plain;
    std::set<std::string> families;

    bool contains(std::string_view component) const {
        return plain.count(std::string(component)) || families.count(std::string(component));
    }
    bool empty() const noexcept { return plain.empty() && families.empty(); }
    std::size_t size() const noexcept { return plain.size() + families.size(); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

/// Builds a VertexSet from component names, classifying each by kind.
inline VertexSet make_vertex_set(const GraphSpec& spec, const std::vector<std::string>& names) {
    VertexSet out;
    for (const auto& n : names) {
        const Component* c = spec.find(n);
        if (!c) throw BadReference("unknown component '" + n + "'");
        (c->is_family() ? out.families : out.plain).insert(n);
    }
    return out;
}

/// Component names of `set` in declaration order.
inline std::vector<std::string> ordered_names(const GraphSpec& spec, const VertexSet& set) {
    std::vector<std::string> out;
    for (const auto& c : spec.components)
        if (set.contains(c.name)) out.push_back(c.name);
    return out;
}

inline bool contains_all(const VertexSet& outer, const VertexSet& inner) {
    return std::includes(outer.plain.begin(), outer.plain.end(), inner.plain.begin(), inner.plain.end()) &&
           std::includes(outer.families.begin(), outer.families.end(), inner.families.begin(),
                         inner.families.end());
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out = a;
    out.plain.insert(b.plain.begin(), b.plain.end());
    out.families.insert(b.families.begin(), b.families.end());
    return out;
}

/// An ordinary finite multigraph; edge endpoints index into `vertices`.
struct FiniteGraph {
    struct Edge {
        std::string name;
        std::size_t source = 0;
        std::size_t target = 0;
        friend bool operator==(const Edge&, const Edge&) = default;
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    std::optional<std::size_t> vertex_index(std::string_view name) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> edge_index(std::string_view name) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].name == name) return i;
        return std::nullopt;
    }
    std::size_t out_degree(std::size_t v) const {
        return static_cast<std::size_t>(
            std::count_if(edges.begin(), edges.end(), [v](const Edge& e) { return e.source == v; }));
    }

    friend bool operator==(const FiniteGraph&, const FiniteGraph&) = default;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
    DuplicateName,
    UnknownComponent,
    FanEmitsEdges,
    BadMultiplicity,
    RuleKindMismatch,
    BadLabels,
};

struct Violation {
    ViolationKind kind;
    std::size_t rule = 0;  // index into rules, when the violation is rule-local
    std::string location;  // offending name or rule text
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::DuplicateName: return "DuplicateName";
    case ViolationKind::UnknownComponent: return "UnknownComponent";
    case ViolationKind::FanEmitsEdges: return "FanEmitsEdges";
    case ViolationKind::BadMultiplicity: return "BadMultiplicity";
    case ViolationKind::RuleKindMismatch: return "RuleKindMismatch";
    case ViolationKind::BadLabels: return "BadLabels";
    }
    return "?";
}

inline std::string describe(const EdgeRule& r) {
    switch (r.kind) {
    case RuleKind::PlainToPlain: return r.source + " -> " + r.target;
    case RuleKind::PlainToRayHead: return r.source + " -> " + r.target + ".head";
    case RuleKind::RayMembersToPlain: return r.source + ".* -> " + r.target;
    case RuleKind::RayMembersToRayHead: return r.source + ".* -> " + r.target + ".head";
    case RuleKind::SprayToFan: return "spray " + r.source + " -> " + r.target;
    }
    return "?";
}

/// Every invariant violation of `spec`; empty iff well-formed.
inline std::vector<Violation> validate(const GraphSpec& spec) {
    std::vector<Violation> out;
    std::unordered_map<std::string, ComponentKind> kinds;
    for (const auto& c : spec.components) {
        if (c.name.empty()) {
            out.push_back({ViolationKind::UnknownComponent, 0, "", "empty component name"});
            continue;
        }
        if (!kinds.emplace(c.name, c.kind).second)
            out.push_back({ViolationKind::DuplicateName, 0, c.name, "component '" + c.name + "' declared twice"});
    }

    std::set<std::string> labels_seen;
    for (std::size_t i = 0; i < spec.rules.size(); ++i) {
        const EdgeRule& r = spec.rules[i];
        const std::string where = describe(r);
        auto src = kinds.find(r.source);
        auto dst = kinds.find(r.target);
        bool known = true;
        if (src == kinds.end()) {
            out.push_back({ViolationKind::UnknownComponent, i, r.source, "rule '" + where + "': unknown source"});
            known = false;
        }
        if (dst == kinds.end()) {
            out.push_back({ViolationKind::UnknownComponent, i, r.target, "rule '" + where + "': unknown target"});
            known = false;
        }
        if (src != kinds.end() && src->second == ComponentKind::Fan)
            out.push_back({ViolationKind::FanEmitsEdges, i, r.source,
                           "rule '" + where + "': fan '" + r.source + "' cannot emit edges"});

        if (r.kind == RuleKind::SprayToFan) {
            if (r.multiplicity)
                out.push_back({ViolationKind::BadMultiplicity, i, where, "spray rules carry no multiplicity"});
        } else if (!r.multiplicity || *r.multiplicity == 0) {
            out.push_back({ViolationKind::BadMultiplicity, i, where, "multiplicity must be a positive integer"});
        }

        if (known) {
            ComponentKind sk = src->second, dk = dst->second;
            ComponentKind want_src = ComponentKind::Plain, want_dst = ComponentKind::Plain;
            switch (r.kind) {
            case RuleKind::PlainToPlain: break;
            case RuleKind::PlainToRayHead: want_dst = ComponentKind::Ray; break;
            case RuleKind::RayMembersToPlain: want_src = ComponentKind::Ray; break;
            case RuleKind::RayMembersToRayHead:
                want_src = ComponentKind::Ray;
                want_dst = ComponentKind::Ray;
                break;
            case RuleKind::SprayToFan: want_dst = ComponentKind::Fan; break;
            }
            if ((sk != want_src && sk != ComponentKind::Fan) || dk != want_dst)
                out.push_back({ViolationKind::RuleKindMismatch, i, where,
                               "rule '" + where + "': endpoint kinds do not match the rule kind"});
        }

        if (!r.labels.empty()) {
            bool plain_source = r.kind == RuleKind::PlainToPlain || r.kind == RuleKind::PlainToRayHead;
            if (!plain_source)
                out.push_back({ViolationKind::BadLabels, i, where, "only rules with a plain source can be labelled"});
            else if (r.multiplicity && r.labels.size() != *r.multiplicity)
                out.push_back({ViolationKind::BadLabels, i, where, "label count must equal the multiplicity"});
            for (const auto& l : r.labels) {
                if (kinds.count(l) || !labels_seen.insert(l).second)
                    out.push_back({ViolationKind::BadLabels, i, l, "edge label '" + l + "' is not unique"});
            }
        }
    }
    return out;
}

inline std::string format_violations(const std::vector<Violation>& vs) {
    std::ostringstream os;
    for (const auto& v : vs) os << to_string(v.kind) << ": " << v.message << "\n";
    return os.str();
}

inline void require_valid(const GraphSpec& spec) {
    auto vs = validate(spec);
    if (!vs.empty()) throw InvalidSpec("invalid graph:\n" + format_violations(vs));
}

// ---------------------------------------------------------------------------
// Component digraph

namespace detail {

using Mask = std::vector<bool>;

/// Component-level adjacency. Ray-internal progression is not an arc; it is
/// implied by the component being a ray.
class ComponentTable {
public:
    struct Arc {
        std::size_t target;
        unsigned multiplicity; // 0 with `infinite` for sprays
        bool infinite;
        std::size_t rule;
    };

    explicit ComponentTable(const GraphSpec& spec) : spec_(&spec), arcs_(spec.components.size()) {
        for (std::size_t i = 0; i < spec.components.size(); ++i) index_.emplace(spec.components[i].name, i);
        for (std::size_t ri = 0; ri < spec.rules.size(); ++ri) {
            const EdgeRule& r = spec.rules[ri];
            auto s = index_.find(r.source);
            auto t = index_.find(r.target);
            if (s == index_.end() || t == index_.end())
                throw InvalidSpec("rule '" + describe(r) + "' references an undeclared component");
            bool inf = r.kind == RuleKind::SprayToFan;
            arcs_[s->second].push_back({t->second, inf ? 0u : r.multiplicity.value_or(1), inf, ri});
        }
    }

    const GraphSpec& spec() const { return *spec_; }
    std::size_t size() const { return arcs_.size(); }
    const Component& component(std::size_t i) const { return spec_->components[i]; }
    ComponentKind kind(std::size_t i) const { return spec_->components[i].kind; }
    const std::vector<Arc>& arcs(std::size_t i) const { return arcs_[i]; }

    std::optional<std::size_t> index(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t require(std::string_view name) const {
        auto i = index(name);
        if (!i) throw BadReference("unknown component '" + std::string(name) + "'");
        return *i;
    }

    bool has_spray(std::size_t c) const {
        return std::any_of(arcs_[c].begin(), arcs_[c].end(), [](const Arc& a) { return a.infinite; });
    }
    /// Finite out-degree of one member of component c (sprays ignored).
    std::size_t finite_out_degree(std::size_t c) const {
        std::size_t d = kind(c) == ComponentKind::Ray ? 1 : 0;
        for (const auto& a : arcs_[c])
            if (!a.infinite) d += a.multiplicity;
        return d;
    }
    bool is_sink(std::size_t c) const { return finite_out_degree(c) == 0 && !has_spray(c); }
    bool is_bifurcation(std::size_t c) const { return has_spray(c) || finite_out_degree(c) >= 2; }
    /// Regular = finite, nonzero out-degree.
    bool is_regular(std::size_t c) const { return !has_spray(c) && finite_out_degree(c) >= 1; }

    Mask reachable_from(std::size_t c) const {
        Mask seen(size(), false);
        std::vector<std::size_t> stack{c};
        seen[c] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (const auto& a : arcs_[x])
                if (!seen[a.target]) {
                    seen[a.target] = true;
                    stack.push_back(a.target);
                }
        }
        return seen;
    }

    /// Components lying on a cycle formed by rule arcs (self-arcs included).
    Mask cyclic() const {
        Mask out(size(), false);
        for (std::size_t c = 0; c < size(); ++c) {
            Mask seen(size(), false);
            std::vector<std::size_t> stack;
            for (const auto& a : arcs_[c])
                if (!seen[a.target]) {
                    seen[a.target] = true;
                    stack.push_back(a.target);
                }
            while (!stack.empty() && !seen[c]) {
                std::size_t x = stack.back();
                stack.pop_back();
                for (const auto& a : arcs_[x])
                    if (!seen[a.target]) {
                        seen[a.target] = true;
                        stack.push_back(a.target);
                    }
            }
            out[c] = seen[c];
        }
        return out;
    }

    Mask to_mask(const VertexSet& set) const {
        Mask m(size(), false);
        for (const auto& n : set.plain) m[require(n)] = true;
        for (const auto& n : set.families) m[require(n)] = true;
        return m;
    }
    VertexSet to_set(const Mask& m) const {
        VertexSet out;
        for (std::size_t i = 0; i < size(); ++i)
            if (m[i]) (component(i).is_family() ? out.families : out.plain).insert(component(i).name);
        return out;
    }

    /// Resolves a VertexRef to its component, checking the index form.
    std::size_t resolve(const VertexRef& v) const {
        std::size_t c = require(v.component);
        bool family = component(c).is_family();
        if (family != v.index.has_value())
            throw BadReference("vertex '" + to_string(v) + "': index must be given exactly for ray/fan members");
        if (v.index && *v.index == 0) throw BadReference("vertex '" + to_string(v) + "': indices start at 1");
        return c;
    }

private:
    const GraphSpec* spec_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<Arc>> arcs_;
};

} // namespace detail

// ---------------------------------------------------------------------------
// Structural queries

enum class VertexKind { Sink, Regular, InfiniteEmitter };

inline const char* to_string(VertexKind k) {
    switch (k) {
    case VertexKind::Sink: return "Sink";
    case VertexKind::Regular: return "Regular";
    case VertexKind::InfiniteEmitter: return "InfiniteEmitter";
    }
    return "?";
}

inline VertexKind vertex_kind(const GraphSpec& spec, const VertexRef& v) {
    detail::ComponentTable t(spec);
    std::size_t c = t.resolve(v);
    if (t.has_spray(c)) return VertexKind::InfiniteEmitter;
    return t.finite_out_degree(c) == 0 ? VertexKind::Sink : VertexKind::Regular;
}

struct TreeShape {
    std::vector<std::string> reachable; // declaration order
    bool has_bifurcation = false;
    bool has_cycle = false;

    friend bool operator==(const TreeShape&, const TreeShape&) = default;
};

/// Shape of T(v). A ray member reaches the rest of its own ray; since every
/// member carries the same rules, the answer does not depend on the index.
inline TreeShape tree_shape(const GraphSpec& spec, const VertexRef& v) {
    detail::ComponentTable t(spec);
    std::size_t c = t.resolve(v);
    auto reach = t.reachable_from(c);
    auto cyc = t.cyclic();
    TreeShape out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!reach[i]) continue;
        out.reachable.push_back(t.component(i).name);
        out.has_bifurcation = out.has_bifurcation || t.is_bifurcation(i);
        out.has_cycle = out.has_cycle || cyc[i];
    }
    return out;
}

inline bool has_cycle_from(const GraphSpec& spec, const VertexRef& v) { return tree_shape(spec, v).has_cycle; }

inline bool is_acyclic(const GraphSpec& spec) {
    detail::ComponentTable t(spec);
    auto cyc = t.cyclic();
    return std::none_of(cyc.begin(), cyc.end(), [](bool b) { return b; });
}

inline bool is_row_finite(const GraphSpec& spec) { return spec.spray_count() == 0; }

// ---------------------------------------------------------------------------
// Truncation

inline std::string member_name(std::string_view family, std::size_t j) {
    return std::string(family) + "[" + std::to_string(j) + "]";
}

/// Replaces every family by its first `depth` members and materializes the
/// induced edges. Plain-sourced rules keep their labels; every other edge
/// gets the next free name of the form e<k>.
inline FiniteGraph expand_truncation(const GraphSpec& spec, std::size_t depth) {
    if (depth == 0) throw PreconditionError("truncation depth must be at least 1");
    detail::ComponentTable t(spec);
    FiniteGraph g;
    std::vector<std::size_t> first(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) {
        first[c] = g.vertices.size();
        const auto& comp = t.component(c);
        if (comp.is_family())
            for (std::size_t j = 1; j <= depth; ++j) g.vertices.push_back(member_name(comp.name, j));
        else
            g.vertices.push_back(comp.name);
    }

    std::set<std::string> taken(g.vertices.begin(), g.vertices.end());
    for (const auto& r : spec.rules) taken.insert(r.labels.begin(), r.labels.end());
    std::size_t counter = 0;
    auto fresh = [&] {
        std::string n;
        do n = "e" + std::to_string(++counter);
        while (taken.count(n));
        taken.insert(n);
        return n;
    };

    for (std::size_t c = 0; c < t.size(); ++c) {
        bool ray = t.kind(c) == ComponentKind::Ray;
        std::size_t members = t.component(c).is_family() ? depth : 1;
        for (std::size_t j = 0; j < members; ++j) {
            std::size_t src = first[c] + j;
            if (ray && j + 1 < depth) g.edges.push_back({fresh(), src, src + 1});
            for (const auto& a : t.arcs(c)) {
                const EdgeRule& rule = spec.rules[a.rule];
                if (a.infinite) {
                    for (std::size_t k = 0; k < depth; ++k) g.edges.push_back({fresh(), src, first[a.target] + k});
                    continue;
                }
                for (unsigned m = 0; m < a.multiplicity; ++m) {
                    std::string name = m < rule.labels.size() ? rule.labels[m] : fresh();
                    g.edges.push_back({std::move(name), src, first[a.target]});
                }
            }
        }
    }
    return g;
}

/// The finite graph of a spec without families (exact, no truncation).
inline FiniteGraph to_finite(const GraphSpec& spec) {
    if (spec.has_families()) throw PreconditionError("graph has ray or fan families; it is not finite");
    return expand_truncation(spec, 1);
}

/// A finite graph as a GraphSpec of plain vertices, one labelled rule per edge.
inline GraphSpec from_finite(const FiniteGraph& g) {
    GraphSpec spec;
    for (const auto& v : g.vertices) spec.vertex(v);
    for (const auto& e : g.edges)
        spec.rule(RuleKind::PlainToPlain, g.vertices[e.source], g.vertices[e.target], 1, {e.name});
    return spec;
}

/// Plain cycle test on a finite graph (three-colour DFS).
inline bool finite_has_cycle(const FiniteGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.vertices.size());
    for (const auto& e : g.edges) adj[e.source].push_back(e.target);
    std::vector<int> colour(g.vertices.size(), 0);
    for (std::size_t root = 0; root < g.vertices.size(); ++root) {
        if (colour[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < adj[v].size()) {
                std::size_t w = adj[v][next++];
                if (colour[w] == 1) return true;
                if (colour[w] == 0) {
                    colour[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                colour[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace lpa
