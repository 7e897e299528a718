#pragma once

// Shared helpers for the unit and acceptance binaries: corpus loading,
// seeded random graphs, and brute-force oracles that only look at a
// FiniteGraph's edge list.

#include <lpa/lpa.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace lpa_test {

using namespace lpa;
namespace fs = std::filesystem;

inline fs::path corpus_dir() { return LPA_CORPUS_DIR; }
inline fs::path fixture_dir() { return LPA_FIXTURE_DIR; }
inline fs::path golden_dir() { return LPA_GOLDEN_DIR; }

inline std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct NamedSpec {
    std::string name;
    GraphSpec spec;
};

/// Every .lpa file under corpus/, sorted by file name.
inline std::vector<NamedSpec> load_corpus() {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".lpa") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<NamedSpec> out;
    for (const auto& p : files) out.push_back({p.stem().string(), parse_graph(read_file(p))});
    return out;
}

/// Generator output for every family at a spread of sizes.
inline std::vector<NamedSpec> generated_families() {
    std::vector<NamedSpec> out;
    for (std::size_t n = 1; n <= 8; ++n) {
        out.push_back({"pyramid" + std::to_string(n), generate_family("pyramid", n)});
        out.push_back({"qpyramid" + std::to_string(n), generate_family("qpyramid", n)});
    }
    for (std::size_t n = 1; n <= 6; ++n) {
        out.push_back({"clock" + std::to_string(n), generate_family("clock", n)});
        out.push_back({"discrete" + std::to_string(n), generate_family("discrete", n)});
    }
    out.push_back({"clock_omega", generate_family("clock", "omega")});
    out.push_back({"discrete_omega", generate_family("discrete", "omega")});
    for (const char* f : {"p0", "line", "loopgraph", "tgraph"}) out.push_back({f, generate_family(f)});
    return out;
}

inline std::vector<NamedSpec> full_corpus() {
    auto out = load_corpus();
    auto gen = generated_families();
    out.insert(out.end(), gen.begin(), gen.end());
    return out;
}

// -- random finite graphs ----------------------------------------------------

struct RandomGraphOptions {
    std::size_t min_vertices = 1;
    std::size_t max_vertices = 12;
    double edge_probability = 0.18;
    bool acyclic = false;
    bool allow_parallel = true;
};

inline FiniteGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> nv(opt.min_vertices, opt.max_vertices);
    std::bernoulli_distribution coin(opt.edge_probability);
    std::bernoulli_distribution twice(0.15);
    FiniteGraph g;
    std::size_t n = nv(rng);
    for (std::size_t i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
    std::size_t k = 0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            if (opt.acyclic && t <= s) continue;
            if (!coin(rng)) continue;
            std::size_t copies = opt.allow_parallel && twice(rng) ? 2 : 1;
            for (std::size_t c = 0; c < copies; ++c) g.edges.push_back({"e" + std::to_string(k++), s, t});
        }
    return g;
}

// -- oracles on FiniteGraph --------------------------------------------------

inline std::vector<std::vector<std::size_t>> successors(const FiniteGraph& g) {
    std::vector<std::vector<std::size_t>> s(g.vertices.size());
    for (const auto& e : g.edges) s[e.source].push_back(e.target);
    return s;
}

/// Kahn's algorithm.
inline bool oracle_acyclic(const FiniteGraph& g) {
    std::vector<std::size_t> indeg(g.vertices.size(), 0);
    for (const auto& e : g.edges) ++indeg[e.target];
    auto succ = successors(g);
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < indeg.size(); ++v)
        if (!indeg[v]) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t v = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t w : succ[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    return seen == g.vertices.size();
}

/// Vertices reachable from `start` by paths that stay outside `removed`.
inline std::set<std::size_t> reach_outside(const FiniteGraph& g, std::size_t start, const std::set<std::size_t>& removed) {
    auto succ = successors(g);
    std::set<std::size_t> seen{start};
    std::vector<std::size_t> todo{start};
    while (!todo.empty()) {
        std::size_t v = todo.back();
        todo.pop_back();
        for (std::size_t w : succ[v])
            if (!removed.count(w) && seen.insert(w).second) todo.push_back(w);
    }
    return seen;
}

/// True when u returns to itself by a nonempty path outside `removed`.
inline bool on_cycle_outside(const FiniteGraph& g, std::size_t u, const std::set<std::size_t>& removed) {
    auto succ = successors(g);
    for (std::size_t w : succ[u]) {
        if (removed.count(w)) continue;
        if (reach_outside(g, w, removed).count(u)) return true;
    }
    return false;
}

/// The set of w outside V such that every vertex of T(w) \ V emits at most one
/// edge landing outside V. With `forbid_cycles`, T(w) \ V must also contain no
/// vertex on a cycle of E \ V.
inline std::set<std::size_t> oracle_w_set(const FiniteGraph& g, const std::set<std::size_t>& v_alpha, bool forbid_cycles) {
    std::vector<std::size_t> out_edges(g.vertices.size(), 0);
    for (const auto& e : g.edges)
        if (!v_alpha.count(e.target)) ++out_edges[e.source];
    std::set<std::size_t> out;
    for (std::size_t w = 0; w < g.vertices.size(); ++w) {
        if (v_alpha.count(w)) continue;
        bool ok = true;
        for (std::size_t u : reach_outside(g, w, v_alpha)) {
            if (out_edges[u] > 1) ok = false;
            if (forbid_cycles && on_cycle_outside(g, u, v_alpha)) ok = false;
        }
        if (ok) out.insert(w);
    }
    return out;
}

inline std::set<std::size_t> indices_of(const FiniteGraph& g, const VertexSet& s) {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (s.contains(g.vertices[i])) out.insert(i);
    return out;
}

/// Forward closure of a seed set: the smallest hereditary set containing it.
inline std::set<std::size_t> hereditary_hull(const FiniteGraph& g, const std::set<std::size_t>& seed) {
    std::set<std::size_t> out;
    for (std::size_t v : seed) {
        auto r = reach_outside(g, v, {});
        out.insert(r.begin(), r.end());
    }
    return out;
}

/// Length of the longest path in an acyclic graph.
inline std::size_t longest_path(const FiniteGraph& g) {
    auto succ = successors(g);
    std::vector<std::optional<std::size_t>> memo(g.vertices.size());
    std::function<std::size_t(std::size_t)> go = [&](std::size_t v) -> std::size_t {
        if (memo[v]) return *memo[v];
        std::size_t best = 0;
        for (std::size_t w : succ[v]) best = std::max(best, 1 + go(w));
        return *(memo[v] = best);
    };
    std::size_t best = 0;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) best = std::max(best, go(v));
    return best;
}

/// Renames components to c0, c1, ... in declaration order; two specs are
/// component-isomorphic (respecting declaration order) iff the results match.
inline GraphSpec canonical_names(const GraphSpec& spec) {
    std::map<std::string, std::string> rename;
    GraphSpec out;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        auto c = spec.components[i];
        rename[c.name] = "c" + std::to_string(i);
        c.name = rename[c.name];
        out.components.push_back(c);
    }
    for (auto r : spec.rules) {
        r.source = rename.at(r.source);
        r.target = rename.at(r.target);
        r.labels.clear();
        out.rules.push_back(r);
    }
    return out;
}

// -- random algebra elements -------------------------------------------------

/// A random path from a random vertex, walking at most `max_len` edges.
inline Path random_path(const FiniteGraph& g, std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> pick_v(0, g.vertices.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_len(0, max_len);
    Path p{pick_v(rng), {}};
    std::size_t len = pick_len(rng);
    std::size_t at = p.source;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (g.edges[e].source == at) out.push_back(e);
        if (out.empty()) break;
        std::size_t e = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        p.edges.push_back(e);
        at = g.edges[e].target;
    }
    return p;
}

inline std::size_t path_range(const FiniteGraph& g, const Path& p) {
    return p.edges.empty() ? p.source : g.edges[p.edges.back()].target;
}

/// A random monomial p q*: q is a random path, p a random path ending where q ends.
inline Monomial random_monomial(const FiniteGraph& g, std::mt19937_64& rng, std::size_t max_len) {
    for (;;) {
        Path p = random_path(g, rng, max_len);
        Path q = random_path(g, rng, max_len);
        if (path_range(g, p) == path_range(g, q)) return {p, q};
        // otherwise resample, now and then settling for p alone
        if (std::bernoulli_distribution(0.3)(rng)) return {p, {path_range(g, p), {}}};
    }
}

inline Element random_element(const FiniteGraph& g, std::mt19937_64& rng, std::size_t max_terms = 4,
                              std::size_t max_len = 3) {
    std::uniform_int_distribution<std::size_t> terms(1, max_terms);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    Element a;
    std::size_t n = terms(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int c = num(rng);
        if (c == 0) c = 1;
        a.add(random_monomial(g, rng, max_len), Rational(c, den(rng)));
    }
    return a;
}

} // namespace lpa_test
