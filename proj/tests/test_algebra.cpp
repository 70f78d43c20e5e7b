#include <doctest.h>

#include "support.hpp"

using namespace lpa;

namespace {

/// c^z as an element, z possibly negative (ghost powers).
AlgebraElement cycle_power(const FinPath& c, int z) {
    if (z >= 0) return AlgebraElement::real_path(c.repeated(static_cast<std::size_t>(z)));
    return AlgebraElement::ghost_path(c.repeated(static_cast<std::size_t>(-z)));
}

AlgebraElement geometric(const FinPath& c, std::size_t n) {
    AlgebraElement out = AlgebraElement::zero(c.graph());
    for (std::size_t j = 0; j < n; ++j)
        out = out + AlgebraElement::real_path(c.repeated(j));
    return out;
}

} // namespace

TEST_CASE("products collapse by the ghost relations") {
    Graph g = testing::r2();
    CHECK(testing::expr(g, "e* e") == testing::expr(g, "v"));
    CHECK(testing::expr(g, "e* f").is_zero());
    CHECK(multiply(testing::expr(g, "v - e e*"), testing::expr(g, "e")).is_zero());
    // Cross-check the last identity on the module side: both factors agree
    // on a path starting with e.
    ChenElement t = ChenElement::basis(testing::spec(g, "rat: (e)^inf"));
    CHECK(act(testing::expr(g, "v - e e*"), t).is_zero());
}

TEST_CASE("normal form rewrites the special-edge pair") {
    Graph g = testing::r2();
    AlgebraElement lhs = testing::expr(g, "e e*");
    AlgebraElement rhs = testing::expr(g, "v - f f*");
    CHECK(lhs == rhs);
    // Both sides act identically on paths through either loop.
    for (const char* probe : {"rat: (e)^inf", "rat: f (e)^inf", "rat: (f)^inf"}) {
        ChenElement t = ChenElement::basis(testing::spec(g, probe));
        CHECK(act(lhs, t) == act(rhs, t));
    }

    CHECK(testing::expr(g, "v") == AlgebraElement::vertex(g, g.vertex("v")));

    AlgebraElement idem = testing::expr(g, "e f f* e*");
    CHECK(multiply(idem, idem) == idem);
}

TEST_CASE("identity element and associativity on fixed cases") {
    Graph g = testing::en(2);
    AlgebraElement one = AlgebraElement::one(g);
    AlgebraElement a = testing::expr(g, "d e1 f* + 2 w - 1/3 e2*");
    CHECK(multiply(one, a) == a);
    CHECK(multiply(a, one) == a);
}

TEST_CASE("relation suite on random elements") {
    std::mt19937_64 rng(101);
    Graph g2 = testing::r2();
    Graph ge = testing::en(2);
    for (const Graph* gp : {&g2, &ge}) {
        const Graph& g = *gp;
        // (CK1) e^* e' = delta r(e).
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            for (EdgeId f = 0; f < g.edge_count(); ++f) {
                FinPath pe(g, std::vector<EdgeId>{e});
                FinPath pf(g, std::vector<EdgeId>{f});
                auto prod = multiply(AlgebraElement::ghost_path(pe), AlgebraElement::real_path(pf));
                if (e == f)
                    CHECK(prod == AlgebraElement::vertex(g, g.rng(e)));
                else
                    CHECK(prod.is_zero());
            }
        // (CK2) at every regular vertex.
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (g.is_sink(v)) continue;
            AlgebraElement sum = AlgebraElement::zero(g);
            for (EdgeId e : g.out_edges(v)) {
                FinPath pe(g, std::vector<EdgeId>{e});
                sum = sum + multiply(AlgebraElement::real_path(pe), AlgebraElement::ghost_path(pe));
            }
            CHECK(sum == AlgebraElement::vertex(g, v));
        }
        for (int iter = 0; iter < 300; ++iter) {
            auto a = testing::random_element(rng, g, 2, 2);
            auto b = testing::random_element(rng, g, 2, 2);
            auto c = testing::random_element(rng, g, 2, 2);
            CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
            CHECK(multiply(a, b + c) == multiply(a, b) + multiply(a, c));
        }
    }
}

TEST_CASE("reduction is confluent under randomized orders") {
    std::mt19937_64 rng(555);
    Graph g = testing::en(3);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<std::pair<Monomial, Scalar>> terms;
        for (int i = 0; i < 5; ++i)
            terms.emplace_back(testing::random_monomial(rng, g, 3), testing::random_scalar(rng));
        auto reference = AlgebraElement::from_terms(g, terms);
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            CHECK(AlgebraElement::from_terms(g, terms, seed) == reference);
    }
}

TEST_CASE("distinct normal forms are separated by the module action") {
    Graph g = testing::r2();
    auto a = testing::expr(g, "e");
    auto b = testing::expr(g, "f");
    CHECK(testing::separated_by_action(a, b, 3));

    std::mt19937_64 rng(77);
    int separated = 0, flagged = 0;
    for (int iter = 0; iter < 30; ++iter) {
        auto x = testing::random_element(rng, g, 2, 2);
        auto y = testing::random_element(rng, g, 2, 2);
        if (x == y) continue;
        if (testing::separated_by_action(x, y, 3))
            ++separated;
        else
            ++flagged; // not separated at this depth; agreement is necessary only
    }
    CHECK(separated > 0);
}

TEST_CASE("cycle powers differ from the base vertex by a multiple of c - v") {
    Graph g1 = testing::r1();
    Graph g2 = testing::r2();
    std::vector<FinPath> cycles{testing::path(g1, "d"), testing::path(g2, "e"),
                                testing::path(g2, "e f")};
    for (const FinPath& c : cycles) {
        const Graph& g = c.graph();
        AlgebraElement v = AlgebraElement::vertex(g, c.src());
        AlgebraElement step = AlgebraElement::real_path(c) - v;
        for (int z = -4; z <= 4; ++z) {
            AlgebraElement target = cycle_power(c, z) - v;
            AlgebraElement factor = AlgebraElement::zero(g);
            if (z > 0) factor = geometric(c, static_cast<std::size_t>(z));
            if (z < 0)
                factor = multiply(cycle_power(c, z), geometric(c, static_cast<std::size_t>(-z)))
                             .scaled(Scalar(-1));
            CHECK(multiply(factor, step) == target);
        }
    }
}

TEST_CASE("right multiplication by c - v is injective") {
    std::mt19937_64 rng(99);
    Graph g = testing::r2();
    FinPath c = testing::path(g, "e f");
    AlgebraElement step = AlgebraElement::real_path(c) - AlgebraElement::vertex(g, c.src());
    for (int iter = 0; iter < 100; ++iter) {
        auto r = testing::random_element(rng, g, 2, 2);
        if (r.is_zero()) continue;
        CHECK_FALSE(multiply(r, step).is_zero());
    }
}

TEST_CASE("f_sum") {
    Graph g2 = testing::r2();
    CHECK(f_sum(g2, testing::path(g2, "e f"), 0) == testing::expr(g2, "f f*"));

    Graph g1 = testing::r1();
    CHECK(f_sum(g1, testing::path(g1, "d"), 0).is_zero());

    Graph ge = testing::en(2);
    CHECK(f_sum(ge, testing::path(ge, "e1"), 0) == testing::expr(ge, "d d* + e2 e2*"));

    // s(e_{i+1}) - F_i == e_{i+1} e_{i+1}^* and F_i e_{i+1} == 0.
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 40; ++iter) {
        Graph g = testing::random_graph(rng);
        FinPath beta = testing::random_path(rng, g, 4);
        for (std::size_t i = 0; i < beta.length(); ++i) {
            EdgeId next = beta.edge(i);
            FinPath pn(g, std::vector<EdgeId>{next});
            AlgebraElement fi = f_sum(g, beta, i);
            CHECK(AlgebraElement::vertex(g, g.src(next)) - fi ==
                  multiply(AlgebraElement::real_path(pn), AlgebraElement::ghost_path(pn)));
            CHECK(multiply(fi, AlgebraElement::real_path(pn)).is_zero());
        }
    }
}

TEST_CASE("expansion along a path") {
    Graph g1 = testing::r1();
    auto parts = solve_for_q_expansion(testing::expr(g1, "v"), testing::path(g1, "d"),
                                       testing::expr(g1, "d"));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == testing::expr(g1, "v")); // d d^* reduces to v
    CHECK(parts[1].is_zero());

    auto zero_parts = solve_for_q_expansion(AlgebraElement::zero(g1), testing::path(g1, "d"),
                                            AlgebraElement::zero(g1));
    for (const auto& p : zero_parts) CHECK(p.is_zero());

    Graph g2 = testing::r2();
    auto q = testing::expr(g2, "f f*");
    auto parts2 = solve_for_q_expansion(q, testing::path(g2, "e"), AlgebraElement::zero(g2));
    REQUIRE(parts2.size() == 2);
    CHECK(parts2[0].is_zero());
    CHECK(parts2[1] == q); // f f^* . f f^* = f f^*

    CHECK_THROWS_AS(
        solve_for_q_expansion(q, testing::path(g2, "e"), testing::expr(g2, "v")),
        DomainError);

    // The components always reassemble to q.
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 50; ++iter) {
        Graph g = testing::random_graph_with_cycle(rng);
        auto qq = testing::random_element(rng, g, 2, 2);
        FinPath alpha = testing::random_path(rng, g, 3);
        auto x = multiply(qq, AlgebraElement::real_path(alpha));
        auto expansion = solve_for_q_expansion(qq, alpha, x);
        AlgebraElement sum = AlgebraElement::zero(g);
        for (const auto& p : expansion) sum = sum + p;
        CHECK(sum == qq);
    }
}

TEST_CASE("annihilator decomposition") {
    Graph g = testing::r2();
    auto zero = annihilator_decomposition(AlgebraElement::zero(g), testing::path(g, "e"));
    for (const auto& t : zero) CHECK(t.is_zero());

    auto x = testing::expr(g, "f f*");
    auto parts = annihilator_decomposition(x, testing::path(g, "e"));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == x);

    auto x2 = testing::expr(g, "v - e e*");
    auto parts2 = annihilator_decomposition(x2, testing::path(g, "e"));
    REQUIRE(parts2.size() == 1);
    CHECK(parts2[0] == testing::expr(g, "f f*"));

    CHECK_THROWS_AS(annihilator_decomposition(testing::expr(g, "v"), testing::path(g, "e")),
                    DomainError);

    // Components sum back to x and are killed by beta.
    std::mt19937_64 rng(29);
    for (int iter = 0; iter < 40; ++iter) {
        Graph gr = testing::random_graph_with_cycle(rng);
        FinPath beta = testing::random_path(rng, gr, 3);
        if (beta.empty()) continue;
        auto r = testing::random_element(rng, gr, 2, 2);
        // Manufacture an annihilator: project r onto the left kernel of beta.
        auto xx = multiply(r, AlgebraElement::vertex(gr, beta.src()));
        xx = xx - multiply(multiply(xx, AlgebraElement::real_path(beta)),
                           AlgebraElement::ghost_path(beta));
        if (!multiply(xx, AlgebraElement::real_path(beta)).is_zero()) continue;
        auto parts3 = annihilator_decomposition(xx, beta);
        AlgebraElement sum = AlgebraElement::zero(gr);
        for (const auto& t : parts3) sum = sum + t;
        CHECK(sum == xx);
    }
}

TEST_CASE("monomial classification against a cycle") {
    Graph g2 = testing::r2();
    FinPath c = testing::path(g2, "e");

    Graph ge = testing::en(1);
    // A vertex away from the cycle source is killed immediately.
    Monomial w(FinPath(ge, ge.vertex("w")), FinPath(ge, ge.vertex("w")));
    auto cw = classify_monomial(w, testing::path(ge, "d"));
    CHECK(std::holds_alternative<S1Class>(cw));

    Monomial v(FinPath(g2, g2.vertex("v")), FinPath(g2, g2.vertex("v")));
    auto cv = classify_monomial(v, c);
    REQUIRE(std::holds_alternative<S2Class>(cv));
    CHECK(std::get<S2Class>(cv).i == 0);
    CHECK(std::get<S2Class>(cv).n == 0);

    // f^* e^*: ghost of the path e f; one more cycle step kills it.
    Monomial ghost(FinPath(g2, g2.vertex("v")), testing::path(g2, "e f"));
    auto cg = classify_monomial(ghost, c);
    REQUIRE(std::holds_alternative<S1Class>(cg));
    CHECK(std::get<S1Class>(cg).nilpotency == 2);

    // Ghost powers of the cycle stay alive.
    Monomial alive(testing::path(g2, "f"), testing::path(g2, "e e e"));
    auto ca = classify_monomial(alive, c);
    REQUIRE(std::holds_alternative<S2Class>(ca));
    CHECK(std::get<S2Class>(ca).i == 0);
    CHECK(std::get<S2Class>(ca).n == 3);

    // The classification matches the defining property mu . c^N == 0.
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 80; ++iter) {
        Monomial mu = testing::random_monomial(rng, g2, 3);
        auto cls = classify_monomial(mu, c);
        AlgebraElement power = AlgebraElement::monomial(mu);
        AlgebraElement ce = AlgebraElement::real_path(c);
        bool killed = false;
        for (int n = 0; n < 6 && !killed; ++n) {
            power = multiply(power, ce);
            killed = power.is_zero();
        }
        CHECK(std::holds_alternative<S1Class>(cls) == killed);
        if (const auto* s2 = std::get_if<S2Class>(&cls)) {
            // mu == alpha c_i^* (c^*)^n exactly.
            AlgebraElement rebuilt = AlgebraElement::real_path(s2->alpha);
            rebuilt = multiply(rebuilt, AlgebraElement::ghost_path(c.prefix(s2->i)));
            rebuilt = multiply(rebuilt, AlgebraElement::ghost_path(c.repeated(s2->n)));
            CHECK(rebuilt == AlgebraElement::monomial(mu));
        }
    }
}

TEST_CASE("classification against a sink anchor") {
    Graph g = testing::chain2();
    FinPath anchor(g, g.vertex("w"));
    Monomial at_w(testing::path(g, "a"), FinPath(g, g.vertex("w")));
    CHECK(std::holds_alternative<S2Class>(classify_monomial(at_w, anchor)));
    Monomial at_u(FinPath(g, g.vertex("u")), FinPath(g, g.vertex("u")));
    CHECK(std::holds_alternative<S1Class>(classify_monomial(at_u, anchor)));
}
