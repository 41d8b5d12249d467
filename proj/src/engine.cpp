#include "torus_skein/engine.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "torus_skein/layout.hpp"
#include "torus_skein/qtable.hpp"

namespace tsk::engine {

namespace {

using Vec = std::vector<int>;

struct Raw {
    RingElem c;
    Vec mu;
    Connector d;
    Vec nu;
};

/** Memo table with atomic insert-or-get; values live in stable map nodes. */
template <class K, class V>
class Memo {
public:
    template <class F>
    const V& get(const K& key, F compute) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V v = compute();
        std::lock_guard<std::mutex> lock(mu_);
        return map_.emplace(key, std::move(v)).first->second;
    }

private:
    std::mutex mu_;
    std::map<K, V> map_;
};

TangleWord gen_tangle(int n, const Gen& g) {
    switch (g.kind) {
        case Gen::G: return word_G(n, g.i, 1);
        case Gen::Ginv: return word_G(n, g.i, -1);
        case Gen::E: return word_E(n, g.i);
        default: throw InternalError("ordinary product with a pole generator");
    }
}

int sgn(int v) { return v > 0 ? 1 : -1; }

void check_terms(const AlgebraElement& x) { Guard::global().check(x.size()); }

/**
 * One unit of winding moved off slot `pos` (bottom row when `bottom`),
 * expressed exactly as raw terms. Bottom moves use the under layout for the
 * moved term and the over layout for the correction left behind; top moves
 * use the opposite pair.
 */
std::vector<Raw> unit_move(const Vec& mu, const Connector& d, const Vec& nu, bool bottom, int pos) {
    const int s = sgn(bottom ? mu[pos - 1] : nu[pos - 1]);
    const int v = bottom ? d.bottom(pos) : Connector::top(pos);
    const int w = d.partner[v];
    Vec mu2 = mu, nu2 = nu;
    RingElem factor = RingElem::one();
    if (bottom) {
        mu2[pos - 1] -= s;
        if (d.is_top(w)) {
            nu2[w - 1] += s;
        } else {
            mu2[d.position(w) - 1] -= s;
            factor = RingElem::lambda(-2 * s);
        }
    } else {
        nu2[pos - 1] -= s;
        if (d.is_top(w)) {
            nu2[w - 1] -= s;
            factor = RingElem::lambda(-2 * s);
        } else {
            mu2[d.position(w) - 1] += s;
        }
    }
    const bool moved_over = bottom ? s < 0 : s > 0;
    std::vector<Raw> out;
    out.push_back({factor, mu2, d, nu2});
    for (const auto& [d1, c] : layout_correction(d, v, moved_over)) out.push_back({factor * c, mu2, d1, nu2});
    for (const auto& [d2, c] : layout_correction(d, v, !moved_over)) out.push_back({-c, mu, d2, nu});
    return out;
}

/** Lowest bottom slot holding an exponent at a terminal vertex, else 0. */
int invalid_bottom(const Vec& mu, const Connector& d) {
    for (int j = 1; j <= d.n; ++j)
        if (mu[j - 1] != 0 && !d.is_initial(d.bottom(j))) return j;
    return 0;
}

int invalid_top(const Vec& nu, const Connector& d) {
    for (int a = 1; a <= d.n; ++a)
        if (nu[a - 1] != 0 && !d.is_initial(a)) return a;
    return 0;
}

AlgebraElement sum_reduced(const std::vector<Raw>& raws, const RingContext& ctx) {
    AlgebraElement out(raws.empty() ? 0 : raws.front().d.n);
    for (const Raw& r : raws) {
        out.add_scaled(reduce(r.mu, r.d, r.nu, ctx), r.c);
        check_terms(out);
    }
    return out;
}

using TripleKey = std::tuple<Vec, Connector, Vec>;
using GenKey = std::tuple<Vec, Connector, Vec, Gen>;
using CoreKey = std::tuple<Vec, Connector, int, Gen>;

Memo<TripleKey, AlgebraElement>& reduce_memo() {
    static Memo<TripleKey, AlgebraElement> m;
    return m;
}
Memo<GenKey, AlgebraElement>& gen_memo() {
    static Memo<GenKey, AlgebraElement> m;
    return m;
}
Memo<CoreKey, AlgebraElement>& core_memo() {
    static Memo<CoreKey, AlgebraElement> m;
    return m;
}

AlgebraElement compute_reduce(const Vec& mu, const Connector& d, const Vec& nu, const RingContext& ctx) {
    if (int j = invalid_bottom(mu, d)) return sum_reduced(unit_move(mu, d, nu, true, j), ctx);
    if (int a = invalid_top(nu, d)) return sum_reduced(unit_move(mu, d, nu, false, a), ctx);
    return AlgebraElement::basis(BasisTriple{mu, d, nu});
}

const AlgebraElement& core(const Vec& mu, const Connector& d, int m, const Gen& s, const RingContext& ctx);

AlgebraElement times_gen_raws(const std::vector<Raw>& raws, const Gen& s, const RingContext& ctx) {
    AlgebraElement out(raws.front().d.n);
    for (const Raw& r : raws) {
        out.add_scaled(times_gen(r.mu, r.d, r.nu, s, ctx), r.c);
        check_terms(out);
    }
    return out;
}

Vec unit(int n, int j, int k) {
    Vec v(n, 0);
    v[j - 1] = k;
    return v;
}

/** x^mu T_d x_i^m s for s in {g_i, g_i^{-1}, e_i}. */
AlgebraElement compute_core(const Vec& mu, const Connector& d, int m, const Gen& s, const RingContext& ctx) {
    const int n = d.n;
    const int i = s.i;
    AlgebraElement out(n);
    if (m == 0) {
        for (const auto& [d1, c] : ordinary_product(d, s)) {
            out.add_scaled(reduce(mu, d1, Vec(n, 0), ctx), c);
            check_terms(out);
        }
        return out;
    }
    const RingElem z = RingElem::z(1);
    if (s.kind == Gen::E) {
        const int w = d.partner[i];
        if (w == i + 1) {
            for (const auto& [gamma, c] : q_table(i - 1, m, ctx).terms()) {
                Vec nu(n, 0);
                for (int j = 0; j < i - 1; ++j) nu[j] = gamma[j];
                out.add_scaled(reduce(mu, d, nu, ctx), c);
                check_terms(out);
            }
            return out;
        }
        return times_gen_raws(unit_move(mu, d, unit(n, i, m), false, i), s, ctx);
    }
    const Gen inv{Gen::Ginv, i};
    const Gen pos{Gen::G, i};
    const Gen e{Gen::E, i};
    if (m > 0) {
        out = times_x(core(mu, d, m - 1, inv, ctx), i + 1, 1, ctx);
        if (s.kind == Gen::Ginv) {
            out.add_scaled(times_gen(mu, d, unit(n, i, m), e, ctx), -z);
            out.add_scaled(reduce(mu, d, unit(n, i, m), ctx), z);
        }
    } else {
        out = times_x(core(mu, d, m + 1, pos, ctx), i + 1, -1, ctx);
        if (s.kind == Gen::G) {
            out.add_scaled(times_gen(mu, d, unit(n, i, m), e, ctx), z);
            out.add_scaled(reduce(mu, d, unit(n, i, m), ctx), -z);
        }
    }
    check_terms(out);
    return out;
}

const AlgebraElement& core(const Vec& mu, const Connector& d, int m, const Gen& s, const RingContext& ctx) {
    return core_memo().get(CoreKey{mu, d, m, s}, [&] { return compute_core(mu, d, m, s, ctx); });
}

AlgebraElement compute_times_gen(const Vec& mu, const Connector& d, const Vec& nu, const Gen& g,
                                 const RingContext& ctx) {
    const int n = d.n;
    if (g.kind == Gen::X || g.kind == Gen::Xinv) {
        Vec nu2 = nu;
        nu2[0] += g.kind == Gen::X ? 1 : -1;
        return reduce(mu, d, nu2, ctx);
    }
    const int i = g.i;
    if (i < 1 || i >= n) throw UserError("IndexOutOfRange", "generator index " + std::to_string(i));
    const int a = nu[i - 1], b = nu[i];
    AlgebraElement out = core(mu, d, a - b, g, ctx);
    if (b != 0) {
        if (g.kind == Gen::E) {
            out = out.scaled(RingElem::lambda(-2 * b));
        } else {
            out = times_x(times_x(out, i, b, ctx), i + 1, b, ctx);
        }
    }
    for (int j = 1; j <= n; ++j) {
        if (j == i || j == i + 1 || nu[j - 1] == 0) continue;
        out = times_x(out, j, nu[j - 1], ctx);
    }
    return out;
}

}  // namespace

const OrdinaryResult& layout_correction(const Connector& d, int vertex, bool over) {
    static Memo<std::tuple<Connector, int, bool>, OrdinaryResult> memo;
    return memo.get({d, vertex, over}, [&] {
        OrdinaryResult r = normalize_ordinary(minimal_layout(d, vertex, over ? Override::Over : Override::Under));
        auto it = r.find(d);
        if (it == r.end() || !it->second.is_one())
            throw InternalError("override layout does not reduce to its connector at top order");
        r.erase(it);
        for (const auto& [d1, c] : r) {
            if (d1.crossing_number() >= d.crossing_number())
                throw InternalError("layout correction is not of lower order");
        }
        return r;
    });
}

const OrdinaryResult& ordinary_product(const Connector& d, const Gen& g) {
    static Memo<std::pair<Connector, Gen>, OrdinaryResult> memo;
    return memo.get({d, g}, [&] { return normalize_ordinary(minimal_layout(d) + gen_tangle(d.n, g)); });
}

const AlgebraElement& reduce(const Vec& mu, const Connector& d, const Vec& nu, const RingContext& ctx) {
    return reduce_memo().get(TripleKey{mu, d, nu}, [&] { return compute_reduce(mu, d, nu, ctx); });
}

const AlgebraElement& times_gen(const Vec& mu, const Connector& d, const Vec& nu, const Gen& g,
                                const RingContext& ctx) {
    return gen_memo().get(GenKey{mu, d, nu, g}, [&] { return compute_times_gen(mu, d, nu, g, ctx); });
}

AlgebraElement times_x(const AlgebraElement& x, int j, int k, const RingContext& ctx) {
    if (k == 0) return x;
    AlgebraElement out(x.n());
    for (const auto& [t, c] : x.terms()) {
        Vec nu = t.nu;
        nu[j - 1] += k;
        out.add_scaled(reduce(t.mu, t.d, nu, ctx), c);
        check_terms(out);
    }
    return out;
}

}  // namespace tsk::engine
