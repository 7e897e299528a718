#pragma once

// Exact arithmetic in the Leavitt path algebra of a finite graph.
//
// Elements are finite sums c * p q^* with r(p) = r(q). Products are reduced
// with the path and ghost relations (e^* f = delta r(e)) directly; the
// Cuntz-Krieger relation v = sum ee^* is oriented as a rewrite rule
// that removes a distinguished edge gamma_v (the first declared edge out of v)
// from the common tail of p and q:
//
//   p0 g (q0 g)^*  ->  p0 q0^* - sum_{f != g, s(f) = v} (p0 f)(q0 f)^*
//
// A monomial is in normal form when p and q do not both end in the same
// distinguished edge.

#include "graph_model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <tuple>

namespace lpa {

using Rational = boost::multiprecision::cpp_rational;

/// A path given by its source vertex and edge sequence; an empty edge list
/// is the vertex itself.
struct Path {
    std::size_t source = 0;
    std::vector<std::size_t> edges;

    std::size_t length() const noexcept { return edges.size(); }
    friend bool operator==(const Path&, const Path&) = default;
    friend auto operator<=>(const Path&, const Path&) = default;
};

/// p q^* (coefficient kept by the enclosing Element).
struct Monomial {
    Path p;
    Path q;

    int degree() const noexcept { return static_cast<int>(p.length()) - static_cast<int>(q.length()); }
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b) {
        // shorter monomials first, then lexicographic
        auto ka = std::make_tuple(a.p.edges.size(), a.q.edges.size(), a.p.source, a.q.source);
        auto kb = std::make_tuple(b.p.edges.size(), b.q.edges.size(), b.p.source, b.q.source);
        if (ka != kb) return ka < kb;
        if (a.p.edges != b.p.edges) return a.p.edges < b.p.edges;
        return a.q.edges < b.q.edges;
    }
};

/// Finite linear combination of monomials. Zero coefficients are never stored.
class Element {
public:
    using Terms = std::map<Monomial, Rational>;

    Element() = default;
    Element(Monomial m, Rational c = 1) { add(std::move(m), std::move(c)); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    void add(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    Element& operator*=(const Rational& k) {
        if (k == 0)
            terms_.clear();
        else
            for (auto& [m, c] : terms_) c *= k;
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Rational& k) { return a *= k; }
    friend Element operator*(const Rational& k, Element a) { return a *= k; }
    Element operator-() const { return Element(*this) *= Rational(-1); }

    friend bool operator==(const Element&, const Element&) = default;

private:
    Terms terms_;
};

enum class ReductionOrder { Leftmost, Rightmost };

/// Arithmetic over one finite graph. Holds a copy of the graph plus the
/// adjacency it needs; cheap to construct for desk-scale graphs.
class LeavittAlgebra {
public:
    explicit LeavittAlgebra(FiniteGraph g) : graph_(std::move(g)), out_(graph_.vertices.size()) {
        for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
            const auto& edge = graph_.edges[e];
            if (edge.source >= graph_.vertices.size() || edge.target >= graph_.vertices.size())
                throw BadReference("edge '" + edge.name + "' has an endpoint outside the vertex list");
            out_[edge.source].push_back(e);
        }
    }

    const FiniteGraph& graph() const noexcept { return graph_; }
    std::size_t source(std::size_t e) const { return graph_.edges.at(e).source; }
    std::size_t range(std::size_t e) const { return graph_.edges.at(e).target; }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }

    std::size_t range(const Path& p) const { return p.edges.empty() ? p.source : range(p.edges.back()); }

    /// First-declared edge out of v, if v is regular.
    std::optional<std::size_t> distinguished(std::size_t v) const {
        if (out_.at(v).empty()) return std::nullopt;
        return out_[v].front();
    }

    bool is_path(const Path& p) const {
        if (p.source >= graph_.vertices.size()) return false;
        std::size_t at = p.source;
        for (std::size_t e : p.edges) {
            if (e >= graph_.edges.size() || source(e) != at) return false;
            at = range(e);
        }
        return true;
    }
    bool is_monomial(const Monomial& m) const { return is_path(m.p) && is_path(m.q) && range(m.p) == range(m.q); }

    void require_well_formed(const Element& a) const {
        for (const auto& [m, c] : a.terms())
            if (!is_monomial(m)) throw BadReference("malformed monomial: paths do not compose or ranges differ");
    }

    // -- generators ---------------------------------------------------------

    Element vertex(std::size_t v) const { return Element(Monomial{{v, {}}, {v, {}}}); }
    Element edge(std::size_t e) const { return Element(Monomial{{source(e), {e}}, {range(e), {}}}); }
    Element ghost(std::size_t e) const { return Element(Monomial{{range(e), {}}, {source(e), {e}}}); }
    Element path(const Path& p) const { return Element(Monomial{p, {range(p), {}}}); }
    Element unit() const {
        Element u;
        for (std::size_t v = 0; v < graph_.vertices.size(); ++v) u += vertex(v);
        return u;
    }

    // -- products -------------------------------------------------------------

    /// (p q^*)(u w^*) using e^* f = delta r(e) only; may be reducible.
    std::optional<Monomial> multiply_monomials(const Monomial& a, const Monomial& b) const {
        auto prefix = [](const Path& x, const Path& y) {
            return x.source == y.source && x.edges.size() <= y.edges.size() &&
                   std::equal(x.edges.begin(), x.edges.end(), y.edges.begin());
        };
        if (prefix(a.q, b.p)) { // u = q . tail
            Monomial out{a.p, b.q};
            out.p.edges.insert(out.p.edges.end(), b.p.edges.begin() + a.q.edges.size(), b.p.edges.end());
            return out;
        }
        if (prefix(b.p, a.q)) { // q = u . tail
            Monomial out{a.p, b.q};
            out.q.edges.insert(out.q.edges.end(), a.q.edges.begin() + b.p.edges.size(), a.q.edges.end());
            return out;
        }
        return std::nullopt;
    }

    Element multiply_raw(const Element& a, const Element& b) const {
        Element out;
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms())
                if (auto m = multiply_monomials(ma, mb)) out.add(*m, ca * cb);
        return out;
    }

    Element multiply(const Element& a, const Element& b) const {
        require_well_formed(a);
        require_well_formed(b);
        return normal_form(multiply_raw(a, b));
    }

    /// The involution: (c p q^*)^* = c q p^*.
    static Element star(const Element& a) {
        Element out;
        for (const auto& [m, c] : a.terms()) out.add(Monomial{m.q, m.p}, c);
        return out;
    }

    // -- normal form --------------------------------------------------------

    bool is_reducible(const Monomial& m) const {
        if (m.p.edges.empty() || m.q.edges.empty()) return false;
        std::size_t e = m.p.edges.back();
        if (e != m.q.edges.back()) return false;
        return distinguished(source(e)) == e;
    }

    /// One application of the oriented v = sum ee^* rule to a reducible monomial.
    Element rewrite(const Monomial& m) const {
        std::size_t g = m.p.edges.back();
        std::size_t v = source(g);
        Monomial shorter{m.p, m.q};
        shorter.p.edges.pop_back();
        shorter.q.edges.pop_back();
        Element out(shorter);
        for (std::size_t f : out_[v]) {
            if (f == g) continue;
            Monomial sib = shorter;
            sib.p.edges.push_back(f);
            sib.q.edges.push_back(f);
            out.add(sib, -1);
        }
        return out;
    }

    Element normal_form(const Element& a, ReductionOrder order = ReductionOrder::Leftmost) const {
        require_well_formed(a);
        Element cur = a;
        for (;;) {
            const Element::Terms& t = cur.terms();
            std::optional<std::pair<Monomial, Rational>> pick;
            if (order == ReductionOrder::Leftmost) {
                for (auto it = t.begin(); it != t.end(); ++it)
                    if (is_reducible(it->first)) {
                        pick.emplace(it->first, it->second);
                        break;
                    }
            } else {
                for (auto it = t.rbegin(); it != t.rend(); ++it)
                    if (is_reducible(it->first)) {
                        pick.emplace(it->first, it->second);
                        break;
                    }
            }
            if (!pick) return cur;
            Element step = rewrite(pick->first) * pick->second;
            cur.add(pick->first, -pick->second);
            cur += step;
        }
    }

    bool is_normal(const Element& a) const {
        return std::none_of(a.terms().begin(), a.terms().end(),
                            [&](const auto& kv) { return is_reducible(kv.first); });
    }

    // -- grading and corners --------------------------------------------------

    static std::map<int, Element> degree_decompose(const Element& a) {
        std::map<int, Element> out;
        for (const auto& [m, c] : a.terms()) out[m.degree()].add(m, c);
        return out;
    }

    /// Every path out of v of length <= bound.
    std::vector<Path> paths_from(std::size_t v, std::size_t bound) const {
        std::vector<Path> out{{v, {}}};
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i].length() == bound) continue;
            for (std::size_t e : out_[range(out[i])]) {
                Path p = out[i];
                p.edges.push_back(e);
                out.push_back(std::move(p));
            }
        }
        return out;
    }

    /// Normal monomials p q^* with s(p) = s(q) = v and both lengths <= bound,
    /// i.e. a basis of the part of v L v they span.
    std::vector<Monomial> corner_monomials(std::size_t v, std::size_t bound) const {
        if (v >= graph_.vertices.size()) throw BadReference("unknown vertex index");
        auto paths = paths_from(v, bound);
        std::vector<Monomial> out;
        for (const auto& p : paths)
            for (const auto& q : paths) {
                Monomial m{p, q};
                if (range(p) == range(q) && !is_reducible(m)) out.push_back(std::move(m));
            }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    FiniteGraph graph_;
    std::vector<std::vector<std::size_t>> out_;
};

inline Element multiply(const FiniteGraph& g, const Element& a, const Element& b) {
    return LeavittAlgebra(g).multiply(a, b);
}

inline Element normal_form(const FiniteGraph& g, const Element& a, ReductionOrder order = ReductionOrder::Leftmost) {
    return LeavittAlgebra(g).normal_form(a, order);
}

inline std::map<int, Element> degree_decompose(const Element& a) { return LeavittAlgebra::degree_decompose(a); }

inline std::vector<Monomial> corner_monomials(const FiniteGraph& g, std::string_view v, std::size_t bound) {
    auto idx = g.vertex_index(v);
    if (!idx) throw BadReference("unknown vertex '" + std::string(v) + "'");
    return LeavittAlgebra(g).corner_monomials(*idx, bound);
}

/// Human-readable element text; re-parses to the same element.
inline std::string format_element(const FiniteGraph& g, const Element& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        std::string body;
        if (m.p.edges.empty() && m.q.edges.empty()) {
            body = g.vertices.at(m.p.source);
        } else {
            for (std::size_t e : m.p.edges) body += (body.empty() ? "" : " ") + g.edges.at(e).name;
            for (auto it = m.q.edges.rbegin(); it != m.q.edges.rend(); ++it)
                body += (body.empty() ? "" : " ") + g.edges.at(*it).name + "*";
        }
        Rational mag = c < 0 ? Rational(-c) : c;
        std::string coef = mag == 1 ? "" : mag.str() + " ";
        if (first)
            out += (c < 0 ? "-" : "") + coef + body;
        else
            out += (c < 0 ? " - " : " + ") + coef + body;
        first = false;
    }
    return out;
}

} // namespace lpa
