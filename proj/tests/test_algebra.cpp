#include "support.hpp"

#include <gtest/gtest.h>

using namespace lpa;
using namespace lpa_test;

namespace {

FiniteGraph clock2() { return to_finite(generate_family("clock", 2)); }

std::vector<FiniteGraph> finite_corpus() {
    std::vector<FiniteGraph> out;
    for (const auto& [name, spec] : load_corpus())
        if (!spec.has_families()) out.push_back(to_finite(spec));
    return out;
}

Element el(const FiniteGraph& g, const std::string& text) { return parse_element(text, g); }

} // namespace

TEST(Multiply, GhostTimesSiblingIsZero) {
    auto g = clock2();
    LeavittAlgebra alg(g);
    EXPECT_TRUE(alg.multiply(alg.ghost(0), alg.edge(1)).is_zero());
    EXPECT_EQ(alg.multiply(alg.ghost(0), alg.edge(0)), alg.vertex(1));
}

TEST(Multiply, PathStarPath) {
    auto g = to_finite(parse_graph(read_file(corpus_dir() / "diamond.lpa")));
    LeavittAlgebra alg(g);
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (const auto& p : alg.paths_from(v, 3)) {
            Element mu = alg.path(p);
            EXPECT_EQ(alg.multiply(LeavittAlgebra::star(mu), mu), alg.vertex(alg.range(p)));
        }
}

TEST(Multiply, OnlyEdgeGivesVertex) {
    auto g = to_finite(parse_graph(read_file(corpus_dir() / "finite_line.lpa")));
    LeavittAlgebra alg(g);
    EXPECT_EQ(alg.multiply(alg.edge(0), alg.ghost(0)), alg.vertex(0));
}

TEST(Multiply, MonomialRule) {
    auto g = to_finite(generate_family("tgraph"));
    LeavittAlgebra alg(g);
    // (x x)(x)* reduces at the junction; x* (x e) = e; x* (x x) = x
    Monomial xx_x{{0, {0, 0}}, {0, {0}}};
    EXPECT_EQ(alg.normal_form(Element(xx_x)), el(g, "x x x*"));
    EXPECT_EQ(alg.multiply(el(g, "x*"), el(g, "x e")), el(g, "e"));
    EXPECT_EQ(alg.multiply(el(g, "x*"), el(g, "x x")), el(g, "x"));
    // x x* is not v here: v also emits e
    EXPECT_EQ(alg.multiply(el(g, "x"), el(g, "x* x*")), el(g, "x* - e e* x*"));
    EXPECT_TRUE(alg.multiply(el(g, "e*"), el(g, "x")).is_zero());
    EXPECT_TRUE(alg.multiply(el(g, "u"), el(g, "v")).is_zero());
}

TEST(Multiply, MalformedRejected) {
    auto g = clock2();
    LeavittAlgebra alg(g);
    Element bad(Monomial{{0, {0}}, {0, {}}}); // r(e) != r(q)
    EXPECT_THROW(alg.multiply(bad, alg.vertex(0)), lpa::Error);
    EXPECT_THROW(alg.normal_form(bad), lpa::Error);
}

TEST(NormalForm, Examples) {
    auto g = clock2();
    EXPECT_EQ(el(g, "e e* + f f*"), el(g, "v"));
    LeavittAlgebra alg(g);
    Element ee = alg.multiply_raw(alg.edge(0), alg.ghost(0));
    EXPECT_EQ(alg.normal_form(ee), alg.vertex(0) - alg.multiply_raw(alg.edge(1), alg.ghost(1)));
    Element ff = alg.multiply_raw(alg.edge(1), alg.ghost(1));
    EXPECT_EQ(alg.normal_form(ff), ff);
    EXPECT_TRUE(alg.is_normal(ff));
    EXPECT_FALSE(alg.is_normal(ee));
}

TEST(NormalForm, LoopCollapses) {
    auto g = to_finite(generate_family("loopgraph"));
    EXPECT_EQ(el(g, "x x*"), el(g, "v"));
    EXPECT_EQ(el(g, "x x x* x*"), el(g, "v"));
    EXPECT_EQ(el(g, "x* x"), el(g, "v"));
}

TEST(NormalForm, ConfluenceOnCorpus) {
    std::mt19937_64 rng(11);
    for (const auto& g : finite_corpus()) {
        if (g.vertices.empty()) continue;
        LeavittAlgebra alg(g);
        for (int i = 0; i < 100; ++i) {
            auto a = random_element(g, rng, 5, 4);
            auto l = alg.normal_form(a, ReductionOrder::Leftmost);
            EXPECT_EQ(l, alg.normal_form(a, ReductionOrder::Rightmost));
            EXPECT_TRUE(alg.is_normal(l));
            EXPECT_EQ(alg.normal_form(l), l);
        }
    }
}

TEST(Ring, AssociativeAndDistributive) {
    std::mt19937_64 rng(12);
    for (const auto& g : finite_corpus()) {
        if (g.vertices.empty()) continue;
        LeavittAlgebra alg(g);
        for (int i = 0; i < 40; ++i) {
            auto a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
            EXPECT_EQ(alg.multiply(alg.multiply(a, b), c), alg.multiply(a, alg.multiply(b, c)));
            EXPECT_EQ(alg.multiply(a, b + c), alg.multiply(a, b) + alg.multiply(a, c));
            EXPECT_EQ(alg.multiply(a + b, c), alg.multiply(a, c) + alg.multiply(b, c));
        }
    }
}

TEST(Ring, UnitAndStar) {
    std::mt19937_64 rng(13);
    for (const auto& g : finite_corpus()) {
        if (g.vertices.empty()) continue;
        LeavittAlgebra alg(g);
        for (int i = 0; i < 30; ++i) {
            auto a = alg.normal_form(random_element(g, rng));
            EXPECT_EQ(alg.multiply(alg.unit(), a), a);
            EXPECT_EQ(alg.multiply(a, alg.unit()), a);
            auto b = random_element(g, rng);
            // (ab)* = b* a*
            EXPECT_EQ(alg.normal_form(LeavittAlgebra::star(alg.multiply(a, b))),
                      alg.multiply(LeavittAlgebra::star(b), LeavittAlgebra::star(a)));
        }
    }
}

TEST(Relations, HoldOnCorpus) {
    for (const auto& g : finite_corpus()) EXPECT_EQ(check_relations(g), std::nullopt);
}

TEST(Grading, Decompose) {
    auto g = clock2();
    LeavittAlgebra alg(g);
    auto d = degree_decompose(alg.edge(0));
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.at(1), alg.edge(0));
    EXPECT_EQ(degree_decompose(alg.vertex(0)).at(0), alg.vertex(0));
    auto mixed = degree_decompose(alg.edge(0) + alg.ghost(1));
    EXPECT_EQ(mixed.at(1), alg.edge(0));
    EXPECT_EQ(mixed.at(-1), alg.ghost(1));
}

TEST(Grading, GradedLaw) {
    std::mt19937_64 rng(14);
    for (const auto& g : finite_corpus()) {
        if (g.vertices.empty()) continue;
        LeavittAlgebra alg(g);
        for (int i = 0; i < 30; ++i) {
            auto a = random_element(g, rng), b = random_element(g, rng);
            auto da = degree_decompose(a), db = degree_decompose(b);
            auto dab = degree_decompose(alg.multiply(a, b));
            std::map<int, Element> want;
            for (const auto& [i1, x] : da)
                for (const auto& [j1, y] : db) want[i1 + j1] += alg.multiply(x, y);
            for (auto it = want.begin(); it != want.end();)
                it = it->second.is_zero() ? want.erase(it) : std::next(it);
            EXPECT_EQ(dab, want);
            Element sum;
            for (const auto& [k, x] : da) sum += x;
            EXPECT_EQ(sum, a);
        }
    }
}

TEST(Corner, LinePointsAreFields) {
    auto g = to_finite(parse_graph(read_file(corpus_dir() / "finite_line.lpa")));
    for (std::size_t b = 0; b <= 5; ++b) {
        auto c = corner_monomials(g, "v1", b);
        ASSERT_EQ(c.size(), 1u);
        EXPECT_EQ(c[0], (Monomial{{0, {}}, {0, {}}}));
    }
    auto t = to_finite(generate_family("tgraph"));
    EXPECT_EQ(corner_monomials(t, "u", 4).size(), 1u);
    EXPECT_THROW(corner_monomials(t, "nope", 1), BadReference);
}

TEST(Corner, LoopGivesLaurentBasis) {
    auto g = to_finite(generate_family("loopgraph"));
    for (std::size_t L = 0; L <= 6; ++L) EXPECT_EQ(corner_monomials(g, "v", L).size(), 2 * L + 1) << L;
}

TEST(Corner, BifurcationHasBiggerCorner) {
    auto g = clock2();
    EXPECT_EQ(corner_monomials(g, "v", 0).size(), 1u);
    EXPECT_GE(corner_monomials(g, "v", 1).size(), 2u);
}

TEST(Format, RoundTrips) {
    std::mt19937_64 rng(15);
    for (const auto& g : finite_corpus()) {
        if (g.vertices.empty()) continue;
        LeavittAlgebra alg(g);
        for (int i = 0; i < 30; ++i) {
            auto a = alg.normal_form(random_element(g, rng));
            EXPECT_EQ(parse_element(format_element(g, a), g), a) << format_element(g, a);
        }
    }
    auto g = clock2();
    EXPECT_EQ(format_element(g, Element{}), "0");
    EXPECT_EQ(format_element(g, el(g, "e e*")), "v - f f*");
    EXPECT_EQ(format_element(g, el(g, "-1/2 e")), "-1/2 e");
}
