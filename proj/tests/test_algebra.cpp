#include <catch_amalgamated.hpp>

#include <random>

#include "torus_skein/algebra.hpp"
#include "torus_skein/qtable.hpp"

using namespace tsk;

namespace {

AlgebraElement prod(const std::vector<AlgebraElement>& fs, const RingContext& ctx) {
    AlgebraElement out = AlgebraElement::identity(fs.front().n());
    for (const AlgebraElement& f : fs) out = mul(out, f, ctx);
    return out;
}

AlgebraElement random_element(std::mt19937_64& rng, const std::vector<BasisTriple>& basis, int terms) {
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3), lam(-1, 1);
    AlgebraElement x(basis.front().n());
    for (int k = 0; k < terms; ++k) {
        int c = coef(rng);
        if (c == 0) c = 1;
        x.add(basis[pick(rng)], RingElem(c) * RingElem::lambda(lam(rng)));
    }
    return x;
}

AlgebraElement xpoly_element(int n, const XPoly& p, const RingContext& ctx) {
    AlgebraElement out(n);
    for (const auto& [exps, c] : p.terms()) {
        AlgebraElement m = AlgebraElement::scalar(n, c);
        for (std::size_t j = 0; j < exps.size(); ++j)
            if (exps[j] != 0) m = mul(m, elem_x(n, static_cast<int>(j) + 1, exps[j], ctx), ctx);
        out += m;
    }
    return out;
}

long double_factorial_odd(int n) {
    long v = 1;
    for (int k = 2 * n - 1; k > 1; k -= 2) v *= k;
    return v;
}

}  // namespace

TEST_CASE("basis counts are (2n-1)!! (2c+1)^n") {
    for (int n = 1; n <= 4; ++n) {
        for (int c = 0; c <= 2; ++c) {
            long expected = double_factorial_odd(n);
            for (int k = 0; k < n; ++k) expected *= 2 * c + 1;
            CHECK(static_cast<long>(basis_enumerate(n, c).size()) == expected);
        }
    }
    for (const BasisTriple& t : basis_enumerate(3, 1)) CHECK(t.valid());
}

TEST_CASE("generators in normal form") {
    RingContext ctx;
    const Connector cap = Connector::from_pairs(2, {{1, 2}, {3, 4}});
    const Connector swap = Connector::from_pairs(2, {{1, 3}, {2, 4}});
    const Connector id = Connector::from_pairs(2, {{1, 4}, {2, 3}});
    const AlgebraElement g = elem_g(2, 1, 1, ctx);
    CHECK(g.coeff(BasisTriple::plain(swap)).is_one());
    CHECK(g.coeff(BasisTriple::plain(cap)) == RingElem::z(1));
    CHECK(g.coeff(BasisTriple::plain(id)) == RingElem::z(1) * RingElem(-1));
    CHECK(g.size() == 3);
    CHECK(elem_e(2, 1) == AlgebraElement::basis(BasisTriple::plain(cap)));
    CHECK(elem_x1(2, 2).size() == 1);
    CHECK(mul(elem_x1(2, 3), elem_x1(2, -3), ctx) == AlgebraElement::identity(2));
}

TEST_CASE("cap x1^r cap gives q_r and f_r") {
    RingContext ctx;
    const AlgebraElement e = elem_e(2, 1);
    for (int r = 1; r <= 4; ++r) {
        CHECK(prod({e, elem_x1(2, r), e}, ctx) == e.scaled(ctx.q(r)));
        CHECK(prod({e, elem_x1(2, -r), e}, ctx) == e.scaled(ctx.fpoly(r)));
    }
    CHECK(prod({e, e}, ctx) == e.scaled(RingElem::delta(1)));
    CHECK(mul(e, elem_x1(2, 3), ctx).to_string() == "1 * [0,0|(1 2)(3 4)|3,0]");
    CHECK(prod({e, elem_x1(2, 3), e}, ctx).to_string() == "q3 * [0,0|(1 2)(3 4)|0,0]");
}

TEST_CASE("multiplication is associative on random elements") {
    RingContext ctx(24);
    std::mt19937_64 rng(7);
    for (auto [n, cutoff, trials] : {std::tuple{2, 2, 40}, std::tuple{3, 1, 40}}) {
        const auto basis = basis_enumerate(n, cutoff);
        for (int t = 0; t < trials; ++t) {
            AlgebraElement a = random_element(rng, basis, 2), b = random_element(rng, basis, 2),
                           c = random_element(rng, basis, 1);
            CHECK(mul(mul(a, b, ctx), c, ctx) == mul(a, mul(b, c, ctx), ctx));
        }
    }
}

TEST_CASE("triple words reproduce their triples") {
    RingContext ctx;
    for (int n = 1; n <= 3; ++n)
        for (const BasisTriple& t : basis_enumerate(n, 1))
            CHECK(gen_product(n, triple_word(t), ctx) == AlgebraElement::basis(t));
}

TEST_CASE("alpha is an anti-automorphism fixing the generators") {
    RingContext ctx(16);
    for (int i = 1; i <= 2; ++i) {
        CHECK(apply_alpha(elem_g(3, i, 1, ctx), ctx) == elem_g(3, i, 1, ctx));
        CHECK(apply_alpha(elem_e(3, i), ctx) == elem_e(3, i));
    }
    CHECK(apply_alpha(elem_x1(3, 2), ctx) == elem_x1(3, 2));
    std::mt19937_64 rng(11);
    const auto basis = basis_enumerate(2, 2);
    for (int t = 0; t < 30; ++t) {
        AlgebraElement a = random_element(rng, basis, 2), b = random_element(rng, basis, 2);
        CHECK(apply_alpha(mul(a, b, ctx), ctx) == mul(apply_alpha(b, ctx), apply_alpha(a, ctx), ctx));
        CHECK(apply_alpha(apply_alpha(a, ctx), ctx) == a);
    }
}

TEST_CASE("normal form of words agrees with generator products") {
    RingContext ctx(16);
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 3; ++n) {
        std::uniform_int_distribution<int> kind(0, 4), pos(1, std::max(1, n - 1));
        for (int t = 0; t < 25; ++t) {
            GenWord w;
            for (int k = 0; k < 5; ++k) {
                const int kk = kind(rng);
                if (n == 1 || kk >= 3) {
                    w.push_back({kk % 2 ? Gen::X : Gen::Xinv, 1});
                } else {
                    w.push_back({kk == 0 ? Gen::G : (kk == 1 ? Gen::Ginv : Gen::E), pos(rng)});
                }
            }
            CHECK(normalize(gen_word_to_tangle(n, w), ctx) == gen_product(n, w, ctx));
        }
    }
}

TEST_CASE("inclusion matches the generators one size up") {
    RingContext ctx(16);
    for (int i = 1; i <= 2; ++i) {
        CHECK(include(elem_g(3, i, 1, ctx)) == elem_g(4, i, 1, ctx));
        CHECK(include(elem_g(3, i, -1, ctx)) == elem_g(4, i, -1, ctx));
        CHECK(include(elem_e(3, i)) == elem_e(4, i));
    }
    CHECK(include(elem_x1(3, -2)) == elem_x1(4, -2));
    std::mt19937_64 rng(3);
    const auto basis = basis_enumerate(2, 1);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement a = random_element(rng, basis, 2), b = random_element(rng, basis, 2);
        CHECK(include(mul(a, b, ctx)) == mul(include(a), include(b), ctx));
    }
}

TEST_CASE("shift moves ordinary generators up by one") {
    RingContext ctx(16);
    for (int i = 1; i <= 2; ++i) {
        CHECK(shift(elem_g(3, i, 1, ctx), ctx) == elem_g(4, i + 1, 1, ctx));
        CHECK(shift(elem_e(3, i), ctx) == elem_e(4, i + 1));
    }
    const AlgebraElement a = elem_x1(2, 1), b = elem_g(2, 1, 1, ctx);
    CHECK(shift(mul(a, b, ctx), ctx) == mul(shift(a, ctx), shift(b, ctx), ctx));
}

TEST_CASE("x_r elements commute pairwise") {
    RingContext ctx(16);
    const AlgebraElement x1 = elem_x(3, 1, 1, ctx), x2 = elem_x(3, 2, 1, ctx), x3 = elem_x(3, 3, 1, ctx);
    CHECK(mul(x1, x2, ctx) == mul(x2, x1, ctx));
    CHECK(mul(x2, x3, ctx) == mul(x3, x2, ctx));
    CHECK(mul(x1, x3, ctx) == mul(x3, x1, ctx));
    CHECK(mul(elem_x(3, 2, 2, ctx), elem_x(3, 2, -2, ctx), ctx) == AlgebraElement::identity(3));
    CHECK(mul(elem_xprime(3, 2, 1, ctx), elem_xprime(3, 2, -1, ctx), ctx) == AlgebraElement::identity(3));
}

TEST_CASE("f_k forms agree") {
    RingContext ctx(16);
    for (int k = 1; k <= 3; ++k) {
        const AlgebraElement d = fk(k, FkForm::Diamond, 2 * k, ctx);
        CHECK(d == fk(k, FkForm::Recursive, 2 * k, ctx));
        CHECK(d == elem_Fk(k));
    }
    CHECK(fk(1, FkForm::Diamond, 2, ctx) == elem_e(2, 1));
}

TEST_CASE("permutation braids from reduced words") {
    RingContext ctx;
    CHECK(perm_braid(3, {1, 2, 1}, ctx) == perm_braid(3, {2, 1, 2}, ctx));
    CHECK(perm_braid(3, {1, 2, 1}, ctx) == prod({elem_g(3, 1, 1, ctx), elem_g(3, 2, 1, ctx), elem_g(3, 1, 1, ctx)}, ctx));
    CHECK_THROWS_AS(perm_braid(3, {1, 1}, ctx), UserError);
    CHECK(word_permutation(3, {1, 2}) == std::vector<int>{2, 3, 1});
    CHECK(perm_braid(3, {}, ctx) == AlgebraElement::identity(3));
}

TEST_CASE("expectation values") {
    RingContext ctx;
    const RingElem di = RingElem::delta(-1);
    CHECK(expect(AlgebraElement::identity(2), ctx) == AlgebraElement::identity(1));
    CHECK(expect(elem_e(2, 1), ctx) == AlgebraElement::identity(1).scaled(di));
    CHECK(expect(elem_g(2, 1, 1, ctx), ctx) == AlgebraElement::identity(1).scaled(RingElem::lambda(1) * di));
    CHECK(expect(elem_g(2, 1, -1, ctx), ctx) == AlgebraElement::identity(1).scaled(RingElem::lambda(-1) * di));
    for (int r = 1; r <= 3; ++r) {
        CHECK(trace(elem_x1(1, r), ctx) == ctx.q(r) * di);
        CHECK(trace(elem_x1(1, -r), ctx) == ctx.fpoly(r) * di);
    }
    CHECK(trace(AlgebraElement::identity(3), ctx) == RingElem::one());
    CHECK(trace(elem_g(2, 1, 1, ctx), ctx) == RingElem::lambda(1) * di);
}

TEST_CASE("expectation is a bimodule map over the smaller algebra") {
    RingContext ctx(24);
    std::mt19937_64 rng(9);
    const auto small = basis_enumerate(1, 2), big = basis_enumerate(2, 1);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement a = random_element(rng, small, 1), b = random_element(rng, small, 1);
        AlgebraElement x = random_element(rng, big, 2);
        CHECK(expect(prod({include(a), x, include(b)}, ctx), ctx) == prod({a, expect(x, ctx), b}, ctx));
    }
}

TEST_CASE("trace is symmetric") {
    RingContext ctx(24);
    std::mt19937_64 rng(13);
    const auto basis = basis_enumerate(2, 1);
    for (int t = 0; t < 15; ++t) {
        AlgebraElement a = random_element(rng, basis, 2), b = random_element(rng, basis, 2);
        CHECK(trace(mul(a, b, ctx), ctx) == trace(mul(b, a, ctx), ctx));
    }
}

TEST_CASE("connector image is multiplicative") {
    RingContext ctx(24);
    std::mt19937_64 rng(17);
    for (int n = 2; n <= 3; ++n) {
        const auto basis = basis_enumerate(n, 1);
        for (int t = 0; t < 20; ++t) {
            AlgebraElement a = random_element(rng, basis, 2), b = random_element(rng, basis, 2);
            CHECK(connector_map(mul(a, b, ctx)) == brauer_mul(connector_map(a), connector_map(b), ctx));
        }
    }
}

TEST_CASE("connector colors of basis triples") {
    const BasisTriple t{{0, -2}, Connector::from_pairs(2, {{1, 2}, {3, 4}}), {3, 0}};
    CHECK(t.valid());
    const ColoredConnector c = triple_connector(t);
    CHECK(c.to_string() == "(1 2):3(3 4):2");
}

TEST_CASE("q table entries") {
    RingContext ctx(16);
    CHECK(q_table(0, 0, ctx) == XPoly::constant(0, RingElem::delta(1)));
    for (int m = 1; m <= 3; ++m) {
        CHECK(q_table(0, m, ctx) == XPoly::constant(0, ctx.q(m)));
        CHECK(q_table(0, -m, ctx) == XPoly::constant(0, ctx.fpoly(m)));
    }
    for (int k = 1; k <= 2; ++k)
        for (int r = 1; r <= 3; ++r) CHECK(q_table(k, -r, ctx) == q_table_negative_via_fpoly(k, r, ctx));
}

TEST_CASE("q table matches caps around x_{k+1}") {
    RingContext ctx(16);
    for (int k = 1; k <= 2; ++k) {
        const int n = k + 2;
        const AlgebraElement e = elem_e(n, k + 1);
        for (int m : {-2, -1, 1, 2}) {
            const AlgebraElement lhs = prod({e, elem_x(n, k + 1, m, ctx), e}, ctx);
            CHECK(lhs == mul(xpoly_element(n, q_table(k, m, ctx), ctx), e, ctx));
        }
    }
}

TEST_CASE("canonical text round trip") {
    RingContext ctx(24);
    std::mt19937_64 rng(19);
    for (int n = 1; n <= 3; ++n) {
        const auto basis = basis_enumerate(n, 2);
        for (int t = 0; t < 20; ++t) {
            AlgebraElement a = random_element(rng, basis, 3).scaled(RingElem::z(1) + ctx.q(2));
            CHECK(parse_element_text(n, a.to_string(), ctx) == a);
        }
    }
    CHECK(AlgebraElement(2).to_string() == "0");
    CHECK(parse_element_text(2, "0", ctx).is_zero());
}

TEST_CASE("numeric evaluation agrees with ring arithmetic") {
    RingContext ctx(24);
    std::mt19937_64 rng(23);
    const auto basis = basis_enumerate(2, 1);
    for (int t = 0; t < 10; ++t) {
        AlgebraElement a = random_element(rng, basis, 2), b = random_element(rng, basis, 2);
        const NumericPoint p = ctx.random_generic_point(rng, 24);
        auto lhs = evaluate_element(a + b, p);
        auto ea = evaluate_element(a, p), eb = evaluate_element(b, p);
        for (const auto& [k, v] : eb) ea[k] += v;
        std::erase_if(ea, [](const auto& kv) { return kv.second == 0; });
        CHECK(lhs == ea);
    }
}

TEST_CASE("relation suite is clean") {
    RingContext ctx(16);
    for (int n = 1; n <= 3; ++n) CHECK(verify_relations(n, 3, ctx).empty());
    CHECK(psi_identities(4, ctx).empty());
}

TEST_CASE("ideal ranks") {
    RingContext ctx(16);
    CHECK(ideal_rank(2, 1, 0, 1, ctx) == 1);
    CHECK(ideal_rank(3, 1, 0, 1, ctx) == 9);
    CHECK_THROWS_AS(ideal_rank(1, 1, 0, 1, ctx), UserError);
}
