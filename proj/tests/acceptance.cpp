#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "torus_skein/algebra.hpp"

using namespace tsk;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

AlgebraElement random_element(std::mt19937_64& rng, const std::vector<BasisTriple>& basis, int terms) {
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3), lam(-1, 1);
    AlgebraElement x(basis.front().n());
    for (int k = 0; k < terms; ++k) {
        int c = coef(rng);
        if (c == 0) c = 2;
        x.add(basis[pick(rng)], RingElem(c) * RingElem::lambda(lam(rng)));
    }
    return x;
}

AlgebraElement prod(const std::vector<AlgebraElement>& fs, const RingContext& ctx) {
    AlgebraElement out = AlgebraElement::identity(fs.front().n());
    for (const AlgebraElement& f : fs) out = mul(out, f, ctx);
    return out;
}

std::vector<std::vector<mpq_class>> evaluate_matrix(const std::vector<std::vector<RingElem>>& m,
                                                    const NumericPoint& p) {
    std::vector<std::vector<mpq_class>> out;
    for (const auto& row : m) {
        std::vector<mpq_class> r;
        for (const RingElem& v : row) r.push_back(evaluate(v, p));
        out.push_back(std::move(r));
    }
    return out;
}

Outcome relation_suite() {
    RingContext ctx;
    Outcome o;
    for (int n = 2; n <= 4; ++n) {
        const auto v = verify_relations(n, 4, ctx);
        o.detail += "n=" + std::to_string(n) + ": " + std::to_string(v.size()) + " violations; ";
        if (!v.empty()) {
            o.pass = false;
            o.detail += "first: " + v.front().relation + "; ";
        }
    }
    return o;
}

Outcome ordinary_freeness() {
    RingContext ctx;
    Outcome o;
    const auto basis = basis_enumerate(3, 0);
    std::set<Connector> span;
    for (const BasisTriple& t : basis) span.insert(t.d);
    int outside = 0;
    for (const BasisTriple& a : basis) {
        for (const BasisTriple& b : basis) {
            const AlgebraElement p = mul(AlgebraElement::basis(a), AlgebraElement::basis(b), ctx);
            for (const auto& [t, c] : p.terms())
                if (t.max_winding() != 0 || !span.count(t.d)) ++outside;
        }
    }
    std::vector<ColoredConnector> images;
    for (const BasisTriple& t : basis) {
        const BrauerElem c = connector_map(AlgebraElement::basis(t));
        if (c.terms().size() != 1 || !c.terms().begin()->second.is_one()) ++outside;
        images.push_back(c.terms().begin()->first);
    }
    std::mt19937_64 rng(2024);
    const NumericPoint p = ctx.random_e_point(rng, ctx.q_index_bound());
    const int rank = rational_rank(evaluate_matrix(gram_matrix(images, ctx).matrix, p));
    o.pass = outside == 0 && rank == 15 && basis.size() == 15;
    o.detail = std::to_string(basis.size()) + " basis elements, " + std::to_string(outside) +
               " terms outside the span, Gram rank " + std::to_string(rank);
    return o;
}

Outcome affine_independence() {
    RingContext ctx;
    Outcome o;
    const auto basis = basis_enumerate(2, 2);
    std::set<ColoredConnector> images;
    for (const BasisTriple& t : basis) images.insert(triple_connector(t));
    const bool distinct = images.size() == basis.size();
    std::vector<std::vector<RingElem>> gram;
    for (int r = -3; r <= 3; ++r) {
        std::vector<RingElem> row;
        for (int s = -3; s <= 3; ++s) row.push_back(trace(mul(elem_x1(1, r), elem_x1(1, s), ctx), ctx));
        gram.push_back(std::move(row));
    }
    const RingElem det = ring_determinant(gram);
    o.pass = distinct && !det.is_zero();
    o.detail = std::to_string(images.size()) + "/" + std::to_string(basis.size()) +
               " distinct images at n=2 cutoff 2; n=1 Gram determinant has " + std::to_string(det.size()) +
               " terms" + (det.is_zero() ? " (zero)" : " (nonzero)");
    return o;
}

Outcome fpoly_two_ways() {
    RingContext ctx;
    Outcome o;
    const AlgebraElement e = elem_e(2, 1);
    for (int r = 1; r <= 4; ++r) {
        const bool ok = prod({e, elem_x1(2, -r), e}, ctx) == e.scaled(ctx.fpoly(r));
        o.pass = o.pass && ok;
        o.detail += "r=" + std::to_string(r) + (ok ? " ok; " : " mismatch; ");
    }
    return o;
}

Outcome psi_recursion() {
    RingContext ctx;
    Outcome o;
    const auto v = psi_identities(4, ctx);
    o.pass = v.empty();
    o.detail = std::to_string(v.size()) + " violations";
    if (!v.empty()) o.detail += "; first: " + v.front().relation;
    return o;
}

Outcome markov_trace() {
    RingContext ctx(16);
    Outcome o;
    const RingElem di = RingElem::delta(-1);
    int checked = 0, failed = 0, absolute_ok = 0, absolute_total = 0;
    for (int n = 2; n <= 3; ++n) {
        const AlgebraElement gp = elem_g(n, n - 1, 1, ctx), gm = elem_g(n, n - 1, -1, ctx), e = elem_e(n, n - 1);
        std::vector<AlgebraElement> xp;
        for (int r = 1; r <= 3; ++r) xp.push_back(elem_xprime(n, n, r, ctx));
        for (const BasisTriple& t : basis_enumerate(n - 1, 1)) {
            const AlgebraElement b = AlgebraElement::basis(t);
            const AlgebraElement ib = include(b);
            const RingElem tb = trace(b, ctx);
            const RingElem tbe = trace(mul(ib, e, ctx), ctx);
            auto tally = [&](bool ok) {
                ++checked;
                if (!ok) ++failed;
            };
            tally(trace(mul(ib, gp, ctx), ctx) == RingElem::lambda(1) * di * tb);
            tally(trace(mul(ib, gm, ctx), ctx) == RingElem::lambda(-1) * di * tb);
            tally(tbe == di * tb);
            for (int r = 1; r <= 3; ++r) {
                const RingElem tx = trace(mul(ib, xp[r - 1], ctx), ctx);
                tally(tx == ctx.q(r) * tbe);
                ++absolute_total;
                if (tx == ctx.q(r) * di * tb) ++absolute_ok;
            }
        }
    }
    o.pass = failed == 0;
    o.detail = std::to_string(checked - failed) + "/" + std::to_string(checked) +
               " identities hold; measured eps(b x'_n^r) = q_r d^-1 eps(b) in " + std::to_string(absolute_ok) + "/" +
               std::to_string(absolute_total) + " cases";
    return o;
}

Outcome trace_symmetry_bimodule() {
    RingContext ctx(16);
    Outcome o;
    std::mt19937_64 rng(77);
    int checked = 0, failed = 0;
    for (int n = 2; n <= 3; ++n) {
        const auto big = basis_enumerate(n, 1), small = basis_enumerate(n - 1, 1);
        for (int t = 0; t < 50; ++t) {
            const AlgebraElement a = random_element(rng, big, 2), b = random_element(rng, big, 2);
            ++checked;
            if (trace(mul(a, b, ctx), ctx) != trace(mul(b, a, ctx), ctx)) ++failed;
            const AlgebraElement l = random_element(rng, small, 1), r = random_element(rng, small, 1);
            const AlgebraElement x = random_element(rng, big, 2);
            ++checked;
            if (expect(prod({include(l), x, include(r)}, ctx), ctx) != prod({l, expect(x, ctx), r}, ctx)) ++failed;
        }
    }
    o.pass = failed == 0;
    o.detail = std::to_string(checked - failed) + "/" + std::to_string(checked) + " checks hold (50 pairs per n)";
    return o;
}

Outcome fk_forms() {
    RingContext ctx(16);
    Outcome o;
    int checked = 0, failed = 0;
    for (int k = 1; k <= 3; ++k) {
        const int n = 2 * k;
        const AlgebraElement f = fk(k, FkForm::Diamond, n, ctx);
        ++checked;
        if (f != fk(k, FkForm::Recursive, n, ctx)) ++failed;
        for (int i = 1; i < k; ++i) {
            const int j = 2 * k - i;
            ++checked;
            if (mul(elem_e(n, i), f, ctx) != mul(elem_e(n, j), f, ctx)) ++failed;
            for (int s : {1, -1}) {
                ++checked;
                if (mul(elem_g(n, i, s, ctx), f, ctx) != mul(elem_g(n, j, s, ctx), f, ctx)) ++failed;
            }
        }
    }
    o.pass = failed == 0;
    o.detail = std::to_string(checked - failed) + "/" + std::to_string(checked) + " identities hold";
    return o;
}

int inversions(const std::vector<int>& perm) {
    int c = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++c;
    return c;
}

Outcome permutation_braids() {
    RingContext ctx(16);
    Outcome o;
    const int n = 4;
    std::map<std::vector<int>, std::vector<std::vector<int>>> reduced;
    std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& w, int len) {
        const std::vector<int> p = word_permutation(n, w);
        if (inversions(p) != static_cast<int>(w.size())) return;
        reduced[p].push_back(w);
        if (static_cast<int>(w.size()) == len) return;
        for (int s = 1; s < n; ++s) {
            w.push_back(s);
            grow(w, len);
            w.pop_back();
        }
    };
    std::vector<int> w;
    grow(w, 6);
    int words = 0, mismatched = 0;
    std::map<std::vector<int>, AlgebraElement> g;
    for (const auto& [p, ws] : reduced) {
        const AlgebraElement ref = perm_braid(n, ws.front(), ctx);
        g.emplace(p, ref);
        for (const auto& word : ws) {
            ++words;
            if (perm_braid(n, word, ctx) != ref) ++mismatched;
        }
    }
    const std::vector<std::vector<int>> parabolic = {{}, {1}, {3}, {1, 3}};
    int factored = 0, shuffle_failed = 0;
    for (const auto& [p, ws] : reduced) {
        const int len = inversions(p);
        bool found = false;
        for (const auto& [q, qw] : reduced) {
            for (const auto& v : parabolic) {
                std::vector<int> uv = qw.front();
                uv.insert(uv.end(), v.begin(), v.end());
                if (word_permutation(n, uv) != p || inversions(q) + static_cast<int>(v.size()) != len) continue;
                bool is_shuffle = true;
                for (int s : {1, 3}) {
                    std::vector<int> qs = qw.front();
                    qs.push_back(s);
                    if (inversions(word_permutation(n, qs)) < inversions(q)) is_shuffle = false;
                }
                if (!is_shuffle) continue;
                found = true;
                const AlgebraElement gv = v.empty() ? AlgebraElement::identity(n) : perm_braid(n, v, ctx);
                if (mul(g.at(q), gv, ctx) != g.at(p)) ++shuffle_failed;
            }
        }
        if (found) ++factored;
        else ++shuffle_failed;
    }
    o.pass = reduced.size() == 24 && mismatched == 0 && shuffle_failed == 0;
    o.detail = std::to_string(reduced.size()) + " permutations, " + std::to_string(words) + " reduced words, " +
               std::to_string(mismatched) + " mismatches; " + std::to_string(factored) +
               " shuffle factorizations verified, " + std::to_string(shuffle_failed) + " failures";
    return o;
}

Outcome ideal_ranks() {
    RingContext ctx;
    Outcome o;
    std::vector<int> r2, r3;
    for (std::uint64_t s : {11u, 23u, 57u}) {
        r2.push_back(ideal_rank(2, 1, 0, s, ctx));
        r3.push_back(ideal_rank(3, 1, 0, s, ctx));
    }
    auto all = [](const std::vector<int>& v, int x) { return std::all_of(v.begin(), v.end(), [x](int y) { return y == x; }); };
    o.pass = all(r2, 1) && all(r3, 9);
    o.detail = "ranks (2,1,0): " + std::to_string(r2[0]) + "," + std::to_string(r2[1]) + "," + std::to_string(r2[2]) +
               "; (3,1,0): " + std::to_string(r3[0]) + "," + std::to_string(r3[1]) + "," + std::to_string(r3[2]);
    return o;
}

Outcome commuting_diagrams() {
    RingContext ctx(16);
    Outcome o;
    std::mt19937_64 rng(99);
    int checked = 0, failed = 0;
    for (int n = 2; n <= 3; ++n) {
        const auto basis = basis_enumerate(n, 2);
        for (int t = 0; t < 20; ++t) {
            const AlgebraElement x = random_element(rng, basis, 3);
            checked += 2;
            if (connector_map(expect(x, ctx)) != brauer_expect(connector_map(x), ctx)) ++failed;
            if (brauer_trace(connector_map(x), ctx) != e_specialize(trace(x, ctx))) ++failed;
        }
    }
    o.pass = failed == 0;
    o.detail = std::to_string(checked - failed) + "/" + std::to_string(checked) + " checks hold";
    return o;
}

mpq_class eval_monomial(const Monomial& m, const NumericPoint& p) {
    mpq_class v = 1;
    for (int i = 0; i < std::abs(m.a); ++i) v *= m.a > 0 ? p.lambda : mpq_class(1 / p.lambda);
    for (int i = 0; i < std::abs(m.b); ++i) v *= m.b > 0 ? p.z : mpq_class(1 / p.z);
    for (int i = 0; i < std::abs(m.c); ++i) v *= m.c > 0 ? p.delta : mpq_class(1 / p.delta);
    for (const auto& [r, e] : m.q)
        for (int i = 0; i < e; ++i) v *= p.q.at(r);
    return v;
}

Outcome ring_soundness() {
    RingContext ctx(16);
    Outcome o;
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> op(0, 5), nterms(1, 4), ea(-3, 3), eb(0, 3), ec(-3, 3), eq(0, 2), coef(-5, 5),
        pw(0, 3);
    auto raw = [&](FormalPoly& fp) {
        fp.clear();
        for (int k = nterms(rng); k > 0; --k) {
            Monomial m;
            m.a = ea(rng);
            m.b = eb(rng);
            m.c = ec(rng);
            for (int j = 1; j <= 4; ++j)
                if (int e = eq(rng)) m.q.emplace_back(j, e);
            fp.emplace_back(m, coef(rng));
        }
    };
    auto eval_raw = [&](const FormalPoly& fp, const NumericPoint& p) {
        mpq_class v = 0;
        for (const auto& [m, c] : fp) v += mpq_class(c) * eval_monomial(m, p);
        return v;
    };
    const auto basis = basis_enumerate(2, 1);
    int mismatches = 0;
    const int total = 10000;
    FormalPoly fa, fb;
    for (int it = 0; it < total; ++it) {
        raw(fa);
        raw(fb);
        const NumericPoint p = ctx.random_generic_point(rng, 8);
        const RingElem a = ring_normalize(fa), b = ring_normalize(fb);
        const mpq_class va = eval_raw(fa, p), vb = eval_raw(fb, p);
        bool ok = true;
        switch (op(rng)) {
            case 0: ok = evaluate(a, p) == va; break;
            case 1: ok = evaluate(a + b, p) == va + vb; break;
            case 2: ok = evaluate(a * b, p) == va * vb; break;
            case 3: {
                const int e = pw(rng);
                mpq_class v = 1;
                for (int k = 0; k < e; ++k) v *= va;
                ok = evaluate(a.pow(e), p) == v;
                break;
            }
            case 4: {
                const NumericPoint pe = ctx.random_e_point(rng, 8);
                ok = evaluate(e_specialize(a), pe) == eval_raw(fa, pe);
                break;
            }
            default: {
                const AlgebraElement x = random_element(rng, basis, 2), y = random_element(rng, basis, 1);
                const auto lhs = evaluate_element(mul(x.scaled(a), y.scaled(b), ctx), p);
                auto rhs = evaluate_element(mul(x, y, ctx), p);
                for (auto& [t, v] : rhs) v *= va * vb;
                std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
                ok = lhs == rhs;
                break;
            }
        }
        if (!ok) ++mismatches;
    }
    o.pass = mismatches == 0;
    o.detail = std::to_string(total) + " operations, " + std::to_string(mismatches) + " numeric mismatches";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"relation suite at n=2,3,4 with powers up to 4", relation_suite},
        {"ordinary basis closure and Gram rank at n=3", ordinary_freeness},
        {"affine basis independence", affine_independence},
        {"cap x1^-r cap equals f_r cap", fpoly_two_ways},
        {"psi recursion identities", psi_recursion},
        {"Markov trace properties", markov_trace},
        {"trace symmetry and expectation bimodule property", trace_symmetry_bimodule},
        {"f_k forms and transfer identities", fk_forms},
        {"positive permutation braids in S4", permutation_braids},
        {"ideal ranks", ideal_ranks},
        {"connector map commutes with expectation and trace", commuting_diagrams},
        {"ring soundness under numeric specialization", ring_soundness},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
             << o.detail << ") [" << secs << " s]";
        std::cout << line.str() << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
