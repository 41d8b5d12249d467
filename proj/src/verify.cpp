#include <functional>

#include "torus_skein/algebra.hpp"

namespace tsk {

namespace {

class Suite {
public:
    Suite(int n, const RingContext& ctx) : n_(n), ctx_(ctx) {}

    AlgebraElement one() const { return AlgebraElement::identity(n_); }
    AlgebraElement g(int i) const { return elem_g(n_, i, 1, ctx_); }
    AlgebraElement gi(int i) const { return elem_g(n_, i, -1, ctx_); }
    AlgebraElement e(int i) const { return elem_e(n_, i); }
    AlgebraElement x1(int p) const { return p == 0 ? one() : elem_x1(n_, p); }
    AlgebraElement x(int r, int p) const { return p == 0 ? one() : elem_x(n_, r, p, ctx_); }

    AlgebraElement prod(std::initializer_list<AlgebraElement> fs) const {
        AlgebraElement out = one();
        for (const AlgebraElement& f : fs) out = mul(out, f, ctx_);
        return out;
    }

    void check(const std::string& name, const AlgebraElement& lhs, const AlgebraElement& rhs) {
        if (lhs == rhs) return;
        AlgebraElement diff = lhs - rhs;
        violations_.push_back({name, "lhs - rhs =\n" + diff.to_string()});
    }

    std::vector<Violation> take() { return std::move(violations_); }
    int n() const { return n_; }
    const RingContext& ctx() const { return ctx_; }

private:
    int n_;
    const RingContext& ctx_;
    std::vector<Violation> violations_;
};

std::string idx(const char* base, int i) { return std::string(base) + std::to_string(i); }

void defining_relations(Suite& s, int max_r) {
    const int n = s.n();
    const RingElem l = RingElem::lambda(1), li = RingElem::lambda(-1), z = RingElem::z(1), d = RingElem::delta(1);
    s.check("x1 x1^-1 = 1", s.prod({s.x1(1), s.x1(-1)}), s.one());
    s.check("x1^-1 x1 = 1", s.prod({s.x1(-1), s.x1(1)}), s.one());
    for (int i = 1; i < n; ++i) {
        const std::string I = std::to_string(i);
        s.check("g" + I + " g" + I + "^-1 = 1", s.prod({s.g(i), s.gi(i)}), s.one());
        s.check("g" + I + "^-1 g" + I + " = 1", s.prod({s.gi(i), s.g(i)}), s.one());
        s.check("e" + I + "^2 = d e" + I, s.prod({s.e(i), s.e(i)}), s.e(i).scaled(d));
        s.check("g" + I + " - g" + I + "^-1 = z(e" + I + " - 1)", s.g(i) - s.gi(i), (s.e(i) - s.one()).scaled(z));
        s.check("g" + I + " e" + I + " = l^-1 e" + I, s.prod({s.g(i), s.e(i)}), s.e(i).scaled(li));
        s.check("e" + I + " g" + I + " = l^-1 e" + I, s.prod({s.e(i), s.g(i)}), s.e(i).scaled(li));
        s.check("g" + I + "^2 = 1 + l^-1 z e" + I + " - z g" + I, s.prod({s.g(i), s.g(i)}),
                s.one() + s.e(i).scaled(li * z) - s.g(i).scaled(z));
        for (int j = 1; j < n; ++j) {
            const std::string J = std::to_string(j);
            if (std::abs(i - j) >= 2) {
                s.check("g" + I + " g" + J + " = g" + J + " g" + I, s.prod({s.g(i), s.g(j)}), s.prod({s.g(j), s.g(i)}));
                s.check("g" + I + " e" + J + " = e" + J + " g" + I, s.prod({s.g(i), s.e(j)}), s.prod({s.e(j), s.g(i)}));
                s.check("e" + I + " e" + J + " = e" + J + " e" + I, s.prod({s.e(i), s.e(j)}), s.prod({s.e(j), s.e(i)}));
            }
            if (std::abs(i - j) == 1) {
                s.check("e" + I + " e" + J + " e" + I + " = e" + I, s.prod({s.e(i), s.e(j), s.e(i)}), s.e(i));
                s.check("g" + I + " g" + J + " e" + I + " = e" + J + " e" + I, s.prod({s.g(i), s.g(j), s.e(i)}),
                        s.prod({s.e(j), s.e(i)}));
                s.check("e" + I + " g" + J + " g" + I + " = e" + I + " e" + J, s.prod({s.e(i), s.g(j), s.g(i)}),
                        s.prod({s.e(i), s.e(j)}));
                s.check("e" + I + " g" + J + " e" + I + " = l e" + I, s.prod({s.e(i), s.g(j), s.e(i)}), s.e(i).scaled(l));
                if (j == i + 1)
                    s.check("g" + I + " g" + J + " g" + I + " = g" + J + " g" + I + " g" + J,
                            s.prod({s.g(i), s.g(j), s.g(i)}), s.prod({s.g(j), s.g(i), s.g(j)}));
            }
        }
        if (i >= 2) {
            s.check("x1 g" + I + " = g" + I + " x1", s.prod({s.x1(1), s.g(i)}), s.prod({s.g(i), s.x1(1)}));
            s.check("x1 e" + I + " = e" + I + " x1", s.prod({s.x1(1), s.e(i)}), s.prod({s.e(i), s.x1(1)}));
        }
    }
    if (n >= 2) {
        s.check("x1 g1 x1 g1 = g1 x1 g1 x1", s.prod({s.x1(1), s.g(1), s.x1(1), s.g(1)}),
                s.prod({s.g(1), s.x1(1), s.g(1), s.x1(1)}));
        s.check("e1 x1 g1 x1 = l^-1 e1", s.prod({s.e(1), s.x1(1), s.g(1), s.x1(1)}), s.e(1).scaled(li));
        s.check("x1 g1 x1 e1 = l^-1 e1", s.prod({s.x1(1), s.g(1), s.x1(1), s.e(1)}), s.e(1).scaled(li));
        for (int r = 1; r <= max_r; ++r) {
            s.check(idx("e1 x1^r e1 = q_r e1, r=", r), s.prod({s.e(1), s.x1(r), s.e(1)}), s.e(1).scaled(s.ctx().q(r)));
            s.check(idx("e1 x1^-r e1 = f_r e1, r=", r), s.prod({s.e(1), s.x1(-r), s.e(1)}),
                    s.e(1).scaled(s.ctx().fpoly(r)));
        }
    }
}

void x_relations(Suite& s, int max_r) {
    const int n = s.n();
    const RingElem l2 = RingElem::lambda(2), lm2 = RingElem::lambda(-2), li = RingElem::lambda(-1),
                   z = RingElem::z(1);
    for (int r = 1; r <= n; ++r) {
        const std::string R = std::to_string(r);
        for (int j = 1; j < n; ++j) {
            if (j == r || j == r - 1) continue;
            const std::string J = std::to_string(j);
            s.check("g" + J + " x" + R + " = x" + R + " g" + J, s.prod({s.g(j), s.x(r, 1)}), s.prod({s.x(r, 1), s.g(j)}));
            s.check("e" + J + " x" + R + " = x" + R + " e" + J, s.prod({s.e(j), s.x(r, 1)}), s.prod({s.x(r, 1), s.e(j)}));
        }
        for (int j = 1; j < r; ++j) {
            const std::string J = std::to_string(j);
            s.check("x" + J + " x" + R + " = x" + R + " x" + J, s.prod({s.x(j, 1), s.x(r, 1)}),
                    s.prod({s.x(r, 1), s.x(j, 1)}));
        }
    }
    for (int r = 1; r < n; ++r) {
        const std::string R = std::to_string(r), R1 = std::to_string(r + 1);
        AlgebraElement xr = s.x(r, 1), xr1 = s.x(r + 1, 1), xri = s.x(r, -1), xr1i = s.x(r + 1, -1);
        s.check("g" + R + " x" + R + " = x" + R1 + " g" + R + "^-1", s.prod({s.g(r), xr}), s.prod({xr1, s.gi(r)}));
        s.check("g" + R + "^-1 x" + R1 + " = x" + R + " g" + R, s.prod({s.gi(r), xr1}), s.prod({xr, s.g(r)}));
        s.check("g" + R + " x" + R1 + " = x" + R + " g" + R + " - z x" + R1 + " + z e" + R + " x" + R1,
                s.prod({s.g(r), xr1}),
                s.prod({xr, s.g(r)}) - xr1.scaled(z) + s.prod({s.e(r), xr1}).scaled(z));
        s.check("g" + R + "^-1 x" + R + " = x" + R1 + " g" + R + "^-1 + z x" + R + " - z e" + R + " x" + R,
                s.prod({s.gi(r), xr}),
                s.prod({xr1, s.gi(r)}) + xr.scaled(z) - s.prod({s.e(r), xr}).scaled(z));
        s.check("e" + R + " x" + R + " = l^-2 e" + R + " x" + R1 + "^-1", s.prod({s.e(r), xr}),
                s.prod({s.e(r), xr1i}).scaled(lm2));
        s.check("x" + R + " e" + R + " = l^-2 x" + R1 + "^-1 e" + R, s.prod({xr, s.e(r)}),
                s.prod({xr1i, s.e(r)}).scaled(lm2));
        s.check("e" + R + " x" + R + "^-1 = l^2 e" + R + " x" + R1, s.prod({s.e(r), xri}), s.prod({s.e(r), xr1}).scaled(l2));
        s.check("x" + R + "^-1 e" + R + " = l^2 x" + R1 + " e" + R, s.prod({xri, s.e(r)}), s.prod({xr1, s.e(r)}).scaled(l2));
        s.check("g" + R + " x" + R + " g" + R + " x" + R + " = x" + R + " g" + R + " x" + R + " g" + R,
                s.prod({s.g(r), xr, s.g(r), xr}), s.prod({xr, s.g(r), xr, s.g(r)}));
        s.check("e" + R + " x" + R + " g" + R + " x" + R + " = l^-1 e" + R, s.prod({s.e(r), xr, s.g(r), xr}),
                s.e(r).scaled(li));
        for (int k = 1; k <= max_r; ++k) {
            const std::string K = std::to_string(k);
            s.check("e" + R + " x" + R + "^" + K + " g" + R + " x" + R + " = l^-2 e" + R + " x" + R + "^" +
                        std::to_string(k - 1) + " g" + R + "^-1",
                    s.prod({s.e(r), s.x(r, k), s.g(r), xr}), s.prod({s.e(r), s.x(r, k - 1), s.gi(r)}).scaled(lm2));
            s.check("e" + R + " x" + R + "^-" + K + " g" + R + "^-1 x" + R + "^-1 = l^2 e" + R + " x" + R + "^" +
                        std::to_string(1 - k) + " g" + R,
                    s.prod({s.e(r), s.x(r, -k), s.gi(r), xri}), s.prod({s.e(r), s.x(r, 1 - k), s.g(r)}).scaled(l2));
        }
    }
}

}  // namespace

std::vector<Violation> psi_identities(int max_sum, const RingContext& ctx) {
    Suite s(2, ctx);
    const RingElem l = RingElem::lambda(1), l2 = RingElem::lambda(2), li = RingElem::lambda(-1), z = RingElem::z(1);
    auto psi = [&](int r) { return s.prod({s.e(1), s.x1(r), s.e(1)}); };
    auto psi2 = [&](int a, int b, int sign) {
        return s.prod({s.e(1), s.x1(-b), sign > 0 ? s.g(1) : s.gi(1), s.x1(a), s.e(1)});
    };
    auto tag = [](const char* f, int a, int b) {
        return std::string(f) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    };
    for (int r = 1; r <= max_sum; ++r) {
        s.check("psi_-r = l psi(1,r-1), r=" + std::to_string(r), psi(-r), psi2(1, r - 1, 1).scaled(l));
        s.check("psi_-r = f_r e1, r=" + std::to_string(r), psi(-r), s.e(1).scaled(ctx.fpoly(r)));
    }
    for (int a = 1; a <= max_sum; ++a) {
        s.check(tag("psi", a, 0) + " = l^-1 q_a e1", psi2(a, 0, 1), s.e(1).scaled(li * ctx.q(a)));
        for (int b = 1; a + b <= max_sum; ++b) {
            s.check(tag("psi-", a, b) + " = l^2 " + tag("psi", a + 1, b - 1), psi2(a, b, -1),
                    psi2(a + 1, b - 1, 1).scaled(l2));
            s.check(tag("psi", a, b) + " = " + tag("psi-", a, b) + " + z(q_a psi_-b - psi_(a-b))", psi2(a, b, 1),
                    psi2(a, b, -1) + (psi(-b).scaled(ctx.q(a)) - psi(a - b)).scaled(z));
        }
    }
    return s.take();
}

std::vector<Violation> verify_relations(int n, int max_r, const RingContext& ctx) {
    if (n < 1) throw UserError("IndexOutOfRange", "verify needs n >= 1");
    if (max_r < 0) throw UserError("IndexOutOfRange", "max_r must be >= 0");
    if (max_r > 0) ctx.check_index(max_r);
    Suite s(n, ctx);
    defining_relations(s, max_r);
    x_relations(s, max_r);
    std::vector<Violation> out = s.take();
    if (n >= 2) {
        std::vector<Violation> p = psi_identities(max_r, ctx);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

}  // namespace tsk
