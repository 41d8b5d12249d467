#include <catch_amalgamated.hpp>

#include "torus_skein/brauer.hpp"

using namespace tsk;

namespace {

ColoredConnector vertical(int c) {
    ColoredConnector d(Connector::identity(1));
    d.color[1] = c;
    return d;
}

ColoredConnector e_diagram() { return ColoredConnector(Connector::from_pairs(2, {{1, 2}, {3, 4}})); }
ColoredConnector s_diagram() { return ColoredConnector(Connector::from_pairs(2, {{1, 3}, {2, 4}})); }

ColoredConnector random_colored(std::mt19937_64& rng, int n, int maxc) {
    auto all = enumerate_connectors(n);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> col(-maxc, maxc);
    ColoredConnector d(all[pick(rng)]);
    for (int v = 1; v <= 2 * n; ++v)
        if (d.conn.partner[v] > v) d.color[v] = col(rng);
    return d;
}

BrauerElem random_elem(std::mt19937_64& rng, int n, const RingContext& ctx) {
    BrauerElem e(n);
    std::uniform_int_distribution<int> k(1, 3), co(-2, 2);
    int terms = k(rng);
    for (int i = 0; i < terms; ++i) {
        RingElem c = RingElem(co(rng)) + RingElem::lambda(co(rng)) * ctx.q(1 + (i % 2));
        e.add(random_colored(rng, n, 2), c);
    }
    return e;
}

}  // namespace

TEST_CASE("colored composition examples") {
    RingContext ctx;
    auto [d1, s1] = colored_compose(vertical(1), vertical(2), ctx);
    CHECK(d1 == vertical(3));
    CHECK(s1.is_one());
    auto [d2, s2] = colored_compose(e_diagram(), e_diagram(), ctx);
    CHECK(d2 == e_diagram());
    CHECK(s2 == RingElem::delta(1));
    auto [d3, s3] = colored_compose(vertical(1), vertical(-1), ctx);
    CHECK(d3 == vertical(0));
    CHECK(s3.is_one());
}

TEST_CASE("Brauer multiplication examples") {
    RingContext ctx;
    auto id = BrauerElem::basis(ColoredConnector(Connector::identity(2)));
    for (const auto& c : enumerate_connectors(2)) {
        auto d = BrauerElem::basis(ColoredConnector(c));
        CHECK(brauer_mul(id, d, ctx) == d);
        CHECK(brauer_mul(d, id, ctx) == d);
    }
    auto s = BrauerElem::basis(s_diagram());
    CHECK(brauer_mul(s, s, ctx) == id);
    auto e = BrauerElem::basis(e_diagram());
    CHECK(brauer_mul(e, e, ctx) == e.scaled(RingElem::delta(1)));
}

TEST_CASE("colored caps pick up color sums") {
    RingContext ctx;
    // the loop runs along the bottom cap of `low` then the top cap of `high`, colors 1 and 2 add
    ColoredConnector low = e_diagram();
    low.set_color_from(low.conn.bottom(2), 1);
    ColoredConnector high = e_diagram();
    high.set_color_from(1, 2);
    auto [d, s] = colored_compose(low, high, ctx);
    CHECK(s == ctx.q(3));
    CHECK(d.conn == e_diagram().conn);
}

TEST_CASE("expectation examples") {
    RingContext ctx;
    auto id2 = BrauerElem::basis(ColoredConnector(Connector::identity(2)));
    auto id1 = BrauerElem::basis(ColoredConnector(Connector::identity(1)));
    CHECK(brauer_expect(id2, ctx) == id1);
    for (int r = 1; r <= 3; ++r) {
        auto ex = brauer_expect(BrauerElem::basis(vertical(r)), ctx);
        auto empty = BrauerElem::basis(ColoredConnector(Connector::identity(0)), ctx.q(r) * RingElem::delta(-1));
        CHECK(ex == empty);
    }
    auto ee = brauer_expect(BrauerElem::basis(e_diagram()), ctx);
    CHECK(ee == id1.scaled(RingElem::delta(-1)));
}

TEST_CASE("trace examples") {
    RingContext ctx;
    for (int n = 0; n <= 3; ++n)
        CHECK(brauer_trace(BrauerElem::basis(ColoredConnector(Connector::identity(n))), ctx).is_one());
    CHECK(brauer_trace(BrauerElem::basis(vertical(1)), ctx) == ctx.q(1) * RingElem::delta(-1));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        auto d = random_colored(rng, 1 + i % 3, 2);
        auto prod = brauer_mul(BrauerElem::basis(d), BrauerElem::basis(brauer_reflect(d)), ctx);
        CHECK(brauer_trace(prod, ctx).is_one());
    }
}

TEST_CASE("reflection") {
    CHECK(brauer_reflect(ColoredConnector(Connector::identity(3))) == ColoredConnector(Connector::identity(3)));
    CHECK(brauer_reflect(vertical(3)) == vertical(-3));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        auto d = random_colored(rng, 1 + i % 4, 3);
        CHECK(brauer_reflect(brauer_reflect(d)) == d);
    }
}

TEST_CASE("Gram matrix examples") {
    RingContext ctx;
    auto g1 = gram_matrix({ColoredConnector(Connector::identity(1))}, ctx);
    CHECK(g1.det.is_one());
    auto g2 = gram_matrix({vertical(1), vertical(-1)}, ctx);
    RingElem qd = ctx.q(2) * RingElem::delta(-1);
    CHECK(g2.matrix[0][0] == qd);
    CHECK(g2.matrix[0][1].is_one());
    CHECK(g2.matrix[1][0].is_one());
    CHECK(g2.matrix[1][1] == qd);
    CHECK(g2.det == qd * qd - 1);
    CHECK_THROWS_AS(gram_matrix({vertical(1)}, ctx), UserError);
    // one entry equal to 1 per row, others of negative delta degree
    std::vector<ColoredConnector> small = enumerate_colored(2, 0);
    auto g3 = gram_matrix(small, ctx);
    for (std::size_t i = 0; i < small.size(); ++i) {
        int ones = 0;
        for (std::size_t j = 0; j < small.size(); ++j) {
            if (g3.matrix[i][j].is_one()) {
                ++ones;
                CHECK(small[j] == brauer_reflect(small[i]));
            } else {
                CHECK(g3.matrix[i][j].delta_degree() < 0);
            }
        }
        CHECK(ones == 1);
    }
    CHECK_FALSE(g3.det.is_zero());
}

TEST_CASE("connector enumeration counts") {
    const int expected[] = {1, 1, 3, 15, 105, 945};
    for (int n = 0; n <= 5; ++n) CHECK(enumerate_connectors(n).size() == std::size_t(expected[n]));
}

TEST_CASE("connector text round trip") {
    auto d = parse_connector(2, "(1 2)(3 4)");
    CHECK(d == e_diagram());
    auto c = parse_connector_auto("(1 4):2(2 3):-1");
    CHECK(parse_connector_auto(c.to_string()) == c);
    CHECK_THROWS_AS(parse_connector(2, "(1 2)(2 3)"), UserError);
}

TEST_CASE("Brauer algebra properties") {
    RingContext ctx;
    std::mt19937_64 rng(21);
    for (int it = 0; it < 60; ++it) {
        int n = 1 + it % 4;
        auto a = BrauerElem::basis(random_colored(rng, n, 2));
        auto b = BrauerElem::basis(random_colored(rng, n, 2));
        auto c = BrauerElem::basis(random_colored(rng, n, 2));
        CHECK(brauer_mul(brauer_mul(a, b, ctx), c, ctx) == brauer_mul(a, brauer_mul(b, c, ctx), ctx));
        CHECK(brauer_trace(brauer_mul(a, b, ctx), ctx) == brauer_trace(brauer_mul(b, a, ctx), ctx));
    }
    for (int it = 0; it < 30; ++it) {
        int n = 1 + it % 3;
        auto x = random_elem(rng, n + 1, ctx);
        auto y = random_elem(rng, n, ctx);
        auto w = random_elem(rng, n, ctx);
        auto lhs = brauer_expect(brauer_mul(brauer_mul(brauer_include(y), x, ctx), brauer_include(w), ctx), ctx);
        auto rhs = brauer_mul(brauer_mul(y, brauer_expect(x, ctx), ctx), w, ctx);
        CHECK(lhs == rhs);
        CHECK(brauer_expect(brauer_include(y), ctx) == y);
    }
}
