#pragma once

// Text formats: `.lpa` graph documents, element expressions, and the
// generators for the standard families.
//
// Graph documents are line oriented; `#` starts a comment.
//
//   vertex v w          plain vertices
//   ray R1 R2           rays R[1] -> R[2] -> ...
//   fan F               fans of sinks F[1], F[2], ...
//   edge v -> w         plain edge (optionally `* 3`, optionally `as a b c`)
//   edge v -> R.head    edge into the first member of a ray
//   edge R.* -> w       every member of R emits an edge to w
//   edge R.* -> S.head  every member of R emits an edge to S[1]
//   spray v -> F        v emits one edge to every member of F
//
// Element expressions: identifiers name vertices and edges, postfix `*` is
// the involution, juxtaposition multiplies, `+`/`-` add, coefficients are
// integers or fractions `a/b`, parentheses group.

#include "algebra.hpp"
#include "graph_model.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace lpa {

namespace detail {

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '[' || c == ']';
}

struct LineToken {
    enum Kind { Ident, Arrow, Star, MembersSuffix, HeadSuffix } kind;
    std::string text;
};

inline std::vector<LineToken> tokenize_line(std::string_view line, std::size_t lineno) {
    std::vector<LineToken> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            break;
        } else if (line.substr(i, 2) == "->") {
            out.push_back({LineToken::Arrow, "->"});
            i += 2;
        } else if (c == '*') {
            out.push_back({LineToken::Star, "*"});
            ++i;
        } else if (line.substr(i, 5) == ".head") {
            out.push_back({LineToken::HeadSuffix, ".head"});
            i += 5;
        } else if (line.substr(i, 2) == ".*") {
            out.push_back({LineToken::MembersSuffix, ".*"});
            i += 2;
        } else if (is_ident_char(c)) {
            std::size_t j = i;
            while (j < line.size() && is_ident_char(line[j])) ++j;
            out.push_back({LineToken::Ident, std::string(line.substr(i, j - i))});
            i = j;
        } else {
            throw ParseError(lineno, std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

inline unsigned parse_positive(const std::string& s, std::size_t lineno) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v == 0)
        throw ParseError(lineno, "expected a positive integer, got '" + s + "'");
    return v;
}

} // namespace detail

inline GraphSpec parse_graph(std::string_view text) {
    using detail::LineToken;
    struct PendingRule {
        std::size_t line;
        bool spray;
        std::string source;
        bool source_members;
        std::string target;
        bool target_head;
        unsigned multiplicity;
        std::vector<std::string> labels;
    };

    GraphSpec spec;
    std::vector<std::size_t> decl_line;
    std::vector<PendingRule> pending;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        auto toks = detail::tokenize_line(line, lineno);
        if (toks.empty()) continue;
        if (toks[0].kind != LineToken::Ident) throw ParseError(lineno, "expected a keyword");
        const std::string& kw = toks[0].text;

        auto expect_ident = [&](std::size_t i, const char* what) -> const std::string& {
            if (i >= toks.size() || toks[i].kind != LineToken::Ident)
                throw ParseError(lineno, std::string("expected ") + what);
            return toks[i].text;
        };

        if (kw == "vertex" || kw == "ray" || kw == "fan") {
            if (toks.size() < 2) throw ParseError(lineno, "'" + kw + "' needs at least one name");
            ComponentKind kind = kw == "vertex" ? ComponentKind::Plain
                                 : kw == "ray"  ? ComponentKind::Ray
                                                : ComponentKind::Fan;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                spec.components.push_back({expect_ident(i, "a component name"), kind});
                decl_line.push_back(lineno);
            }
        } else if (kw == "edge" || kw == "spray") {
            PendingRule r{lineno, kw == "spray", "", false, "", false, 1, {}};
            std::size_t i = 1;
            r.source = expect_ident(i++, "a source");
            if (i < toks.size() && toks[i].kind == LineToken::MembersSuffix) {
                if (r.spray) throw ParseError(lineno, "spray sources are plain vertices");
                r.source_members = true;
                ++i;
            }
            if (i >= toks.size() || toks[i].kind != LineToken::Arrow) throw ParseError(lineno, "expected '->'");
            ++i;
            r.target = expect_ident(i++, "a target");
            if (i < toks.size() && toks[i].kind == LineToken::HeadSuffix) {
                if (r.spray) throw ParseError(lineno, "spray targets are fans");
                r.target_head = true;
                ++i;
            }
            if (!r.spray && i < toks.size() && toks[i].kind == LineToken::Star) {
                r.multiplicity = detail::parse_positive(expect_ident(i + 1, "a multiplicity"), lineno);
                i += 2;
            }
            if (!r.spray && i < toks.size() && toks[i].kind == LineToken::Ident && toks[i].text == "as") {
                ++i;
                while (i < toks.size() && toks[i].kind == LineToken::Ident) r.labels.push_back(toks[i++].text);
                if (r.labels.empty()) throw ParseError(lineno, "'as' needs at least one edge label");
            }
            if (i != toks.size()) throw ParseError(lineno, "unexpected '" + toks[i].text + "'");
            pending.push_back(std::move(r));
        } else {
            throw ParseError(lineno, "unknown keyword '" + kw + "'");
        }
    }

    // Resolve rule kinds once every declaration is known.
    std::map<std::string, std::pair<ComponentKind, std::size_t>> declared;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        auto [it, fresh] = declared.emplace(spec.components[i].name, std::pair{spec.components[i].kind, decl_line[i]});
        if (!fresh) throw ParseError(decl_line[i], "component '" + spec.components[i].name + "' declared twice");
    }
    auto lookup = [&](const std::string& n, std::size_t line) {
        auto it = declared.find(n);
        if (it == declared.end()) throw ParseError(line, "undeclared component '" + n + "'");
        return it->second.first;
    };

    std::vector<std::size_t> rule_line;
    for (const auto& p : pending) {
        ComponentKind sk = lookup(p.source, p.line);
        ComponentKind tk = lookup(p.target, p.line);
        if (sk == ComponentKind::Fan) throw ParseError(p.line, "fan '" + p.source + "' cannot emit edges");
        RuleKind kind;
        if (p.spray) {
            if (sk != ComponentKind::Plain) throw ParseError(p.line, "spray source '" + p.source + "' must be a vertex");
            if (tk != ComponentKind::Fan) throw ParseError(p.line, "spray target '" + p.target + "' must be a fan");
            kind = RuleKind::SprayToFan;
        } else {
            if (p.source_members != (sk == ComponentKind::Ray))
                throw ParseError(p.line, p.source_members ? "'" + p.source + ".*' needs a ray"
                                                          : "write '" + p.source + ".*' for the members of a ray");
            if (tk == ComponentKind::Fan)
                throw ParseError(p.line, "edges into fan '" + p.target + "' are written with 'spray'");
            if (p.target_head != (tk == ComponentKind::Ray))
                throw ParseError(p.line, p.target_head ? "'" + p.target + ".head' needs a ray"
                                                       : "write '" + p.target + ".head' to enter a ray");
            kind = p.source_members ? (p.target_head ? RuleKind::RayMembersToRayHead : RuleKind::RayMembersToPlain)
                                    : (p.target_head ? RuleKind::PlainToRayHead : RuleKind::PlainToPlain);
        }
        spec.rule(kind, p.source, p.target, p.multiplicity, p.labels);
        rule_line.push_back(p.line);
    }

    auto violations = validate(spec);
    if (!violations.empty()) {
        const auto& v = violations.front();
        std::size_t line = v.kind == ViolationKind::DuplicateName || spec.rules.empty() ? 0 : rule_line.at(v.rule);
        throw ParseError(line, v.message);
    }
    return spec;
}

/// Canonical document text: consecutive declarations of the same kind share
/// a line; rules follow in order, one per line.
inline std::string serialize_graph(const GraphSpec& spec) {
    std::ostringstream os;
    for (std::size_t i = 0; i < spec.components.size();) {
        ComponentKind k = spec.components[i].kind;
        os << (k == ComponentKind::Plain ? "vertex" : k == ComponentKind::Ray ? "ray" : "fan");
        for (; i < spec.components.size() && spec.components[i].kind == k; ++i) os << ' ' << spec.components[i].name;
        os << '\n';
    }
    for (const auto& r : spec.rules) {
        if (r.kind == RuleKind::SprayToFan) {
            os << "spray " << r.source << " -> " << r.target << '\n';
            continue;
        }
        bool members = r.kind == RuleKind::RayMembersToPlain || r.kind == RuleKind::RayMembersToRayHead;
        bool head = r.kind == RuleKind::PlainToRayHead || r.kind == RuleKind::RayMembersToRayHead;
        os << "edge " << r.source << (members ? ".*" : "") << " -> " << r.target << (head ? ".head" : "");
        if (r.multiplicity && *r.multiplicity != 1) os << " * " << *r.multiplicity;
        if (!r.labels.empty()) {
            os << " as";
            for (const auto& l : r.labels) os << ' ' << l;
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Generators

/// Standard families. `size` is a positive integer, "omega", or empty for
/// families without a size parameter.
inline GraphSpec generate_family(std::string_view name, std::string_view size = "") {
    const bool omega = size == "omega";
    std::size_t n = 0;
    if (!size.empty() && !omega) {
        auto [p, ec] = std::from_chars(size.data(), size.data() + size.size(), n);
        if (ec != std::errc() || p != size.data() + size.size() || n == 0)
            throw PreconditionError("family size must be a positive integer or 'omega', got '" + std::string(size) + "'");
    }
    auto fixed = [&] {
        if (!size.empty()) throw PreconditionError("family '" + std::string(name) + "' takes no size");
    };
    auto sized = [&] {
        if (size.empty()) throw PreconditionError("family '" + std::string(name) + "' needs a size");
    };

    GraphSpec g;
    if (name == "p0") {
        fixed();
        g.vertex("v");
    } else if (name == "line") {
        fixed();
        g.ray("R1");
    } else if (name == "pyramid" || name == "qpyramid") {
        sized();
        if (omega)
            throw Unrepresentable("'" + std::string(name) +
                                  " omega' needs infinitely many rays; only finite sizes are representable");
        const bool down = name == "pyramid";
        const std::string stem = down ? "R" : "W";
        for (std::size_t i = 1; i <= n; ++i) g.ray(stem + std::to_string(i));
        for (std::size_t i = 1; i < n; ++i) {
            if (down)
                g.rule(RuleKind::RayMembersToRayHead, stem + std::to_string(i + 1), stem + std::to_string(i));
            else
                g.rule(RuleKind::RayMembersToRayHead, stem + std::to_string(i), stem + std::to_string(i + 1));
        }
    } else if (name == "clock") {
        sized();
        g.vertex("v");
        if (omega) {
            g.fan("F");
            g.spray("v", "F");
        } else {
            for (std::size_t i = 1; i <= n; ++i) g.vertex("u" + std::to_string(i));
            for (std::size_t i = 1; i <= n; ++i) {
                std::string label = n <= 22 ? std::string(1, static_cast<char>('e' + i - 1)) : "e" + std::to_string(i);
                g.rule(RuleKind::PlainToPlain, "v", "u" + std::to_string(i), 1, {label});
            }
        }
    } else if (name == "discrete") {
        sized();
        if (omega)
            g.fan("F");
        else
            for (std::size_t i = 1; i <= n; ++i) g.vertex("v" + std::to_string(i));
    } else if (name == "loopgraph") {
        fixed();
        g.vertex("v");
        g.rule(RuleKind::PlainToPlain, "v", "v", 1, {"x"});
    } else if (name == "tgraph") {
        fixed();
        g.vertex("v").vertex("u");
        g.rule(RuleKind::PlainToPlain, "v", "v", 1, {"x"});
        g.rule(RuleKind::PlainToPlain, "v", "u", 1, {"e"});
    } else {
        throw BadReference("unknown family '" + std::string(name) + "'");
    }
    return g;
}

inline GraphSpec generate_family(std::string_view name, std::size_t n) {
    return generate_family(name, std::to_string(n));
}

/// Reads compact family tokens such as `pyramid5`, `clock2`, `clock_omega`
/// or `tgraph`. Returns nullopt when the token does not name a family.
inline std::optional<GraphSpec> family_from_token(std::string_view token) {
    static const char* fixed[] = {"p0", "line", "loopgraph", "tgraph"};
    for (const char* f : fixed)
        if (token == f) return generate_family(token);
    static const char* sized[] = {"qpyramid", "pyramid", "clock", "discrete"};
    for (const char* s : sized) {
        std::string_view stem(s);
        if (token.substr(0, stem.size()) != stem) continue;
        std::string_view rest = token.substr(stem.size());
        if (!rest.empty() && (rest.front() == '_' || rest.front() == ':')) rest.remove_prefix(1);
        if (rest.empty()) return std::nullopt;
        if (rest != "omega" && !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
            continue;
        return generate_family(stem, rest);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Element expressions

namespace detail {

class ElementParser {
public:
    ElementParser(std::string_view text, const LeavittAlgebra& alg) : text_(text), alg_(alg) { lex(); }

    Element parse() {
        Element e = expr();
        if (pos_ != toks_.size()) fail("unexpected '" + toks_[pos_].text + "'");
        return e;
    }

private:
    struct Tok {
        enum Kind { Ident, Number, Plus, Minus, Star, Slash, LParen, RParen } kind;
        std::string text;
    };
    // Endpoints of an atomic factor, for the composition check.
    struct Span {
        enum Kind { None, Forward, Backward } kind = None;
        std::size_t from = 0, to = 0;
        std::string text;
    };

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(0, "element: " + what); }

    void lex() {
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            auto single = [&](Tok::Kind k) {
                toks_.push_back({k, std::string(1, c)});
                ++i;
            };
            switch (c) {
            case '+': single(Tok::Plus); continue;
            case '-': single(Tok::Minus); continue;
            case '*': single(Tok::Star); continue;
            case '/': single(Tok::Slash); continue;
            case '(': single(Tok::LParen); continue;
            case ')': single(Tok::RParen); continue;
            default: break;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
                toks_.push_back({Tok::Number, std::string(text_.substr(i, j - i))});
                i = j;
            } else if (is_ident_char(c)) {
                std::size_t j = i;
                while (j < text_.size() && is_ident_char(text_[j])) ++j;
                toks_.push_back({Tok::Ident, std::string(text_.substr(i, j - i))});
                i = j;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
        }
    }

    bool at(Tok::Kind k) const { return pos_ < toks_.size() && toks_[pos_].kind == k; }
    bool starts_factor() const { return at(Tok::Ident) || at(Tok::Number) || at(Tok::LParen); }

    Element expr() {
        Element acc;
        bool negate = false;
        if (at(Tok::Plus) || at(Tok::Minus)) negate = toks_[pos_++].kind == Tok::Minus;
        acc = term();
        if (negate) acc = -acc;
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = toks_[pos_++].kind == Tok::Minus;
            Element t = term();
            minus ? acc -= t : acc += t;
        }
        return acc;
    }

    Element term() {
        if (!starts_factor()) fail(pos_ < toks_.size() ? "unexpected '" + toks_[pos_].text + "'" : "unexpected end");
        Span prev;
        Element acc = factor(prev);
        while (starts_factor()) {
            Span cur;
            Element f = factor(cur);
            check_composes(prev, cur);
            acc = alg_.multiply_raw(acc, f);
            prev = cur;
        }
        return acc;
    }

    void check_composes(const Span& a, const Span& b) const {
        if (a.kind == Span::None || a.kind != b.kind) return;
        bool ok = a.kind == Span::Forward ? a.to == b.from : b.to == a.from;
        if (!ok) throw CompositionError("'" + a.text + "' and '" + b.text + "' do not compose");
    }

    Element factor(Span& span) {
        Element e = primary(span);
        while (at(Tok::Star)) {
            ++pos_;
            e = LeavittAlgebra::star(e);
            if (span.kind == Span::Forward && span.from != span.to) {
                span.kind = Span::Backward;
                span.text += "*";
            } else if (span.kind == Span::Backward) {
                span.kind = Span::Forward;
            }
        }
        return e;
    }

    Element primary(Span& span) {
        const Tok& t = toks_[pos_++];
        if (t.kind == Tok::LParen) {
            Element e = expr();
            if (!at(Tok::RParen)) fail("missing ')'");
            ++pos_;
            return e;
        }
        if (t.kind == Tok::Number) {
            Rational value(t.text);
            if (at(Tok::Slash)) {
                ++pos_;
                if (!at(Tok::Number)) fail("expected a denominator");
                Rational den(toks_[pos_++].text);
                if (den == 0) fail("zero denominator");
                value /= den;
            }
            return alg_.unit() * value;
        }
        const auto& g = alg_.graph();
        auto v = g.vertex_index(t.text);
        auto e = g.edge_index(t.text);
        if (v && e) fail("'" + t.text + "' names both a vertex and an edge");
        if (v) {
            span = {Span::Forward, *v, *v, t.text};
            return alg_.vertex(*v);
        }
        if (e) {
            span = {Span::Forward, alg_.source(*e), alg_.range(*e), t.text};
            return alg_.edge(*e);
        }
        fail("unknown vertex or edge '" + t.text + "'");
    }

    std::string_view text_;
    const LeavittAlgebra& alg_;
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an element expression over a finite graph and returns its normal form.
inline Element parse_element(std::string_view text, const FiniteGraph& graph) {
    LeavittAlgebra alg(graph);
    return alg.normal_form(detail::ElementParser(text, alg).parse());
}

} // namespace lpa
