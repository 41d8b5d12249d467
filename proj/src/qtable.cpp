#include "torus_skein/qtable.hpp"

#include <mutex>

#include "torus_skein/ring_theta.ipp"
#include "torus_skein/tangle.hpp"

namespace tsk {

XPoly XPoly::constant(int k, const RingElem& c) {
    XPoly p(k);
    p.add(std::vector<int>(k, 0), c);
    return p;
}

XPoly XPoly::monomial(int k, int j, int e, const RingElem& c) {
    XPoly p(k);
    std::vector<int> v(k, 0);
    v.at(j - 1) = e;
    p.add(v, c);
    return p;
}

void XPoly::add(const std::vector<int>& e, const RingElem& c) {
    if (static_cast<int>(e.size()) != k_) throw InternalError("XPoly variable count mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

XPoly& XPoly::operator+=(const XPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    if (a.k_ != b.k_) throw InternalError("XPoly variable count mismatch");
    XPoly r(a.k_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            std::vector<int> e(ea);
            for (int i = 0; i < a.k_; ++i) e[i] += eb[i];
            r.add(e, ca * cb);
        }
    }
    return r;
}

XPoly XPoly::scaled(const RingElem& c) const {
    XPoly r(k_);
    for (const auto& [e, x] : terms_) r.add(e, x * c);
    return r;
}

XPoly XPoly::widened() const {
    XPoly r(k_ + 1);
    for (const auto& [e, c] : terms_) {
        std::vector<int> w(e);
        w.push_back(0);
        r.terms_.emplace(std::move(w), c);
    }
    return r;
}

std::string XPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        for (int i = 0; i < k_; ++i)
            if (e[i] != 0) out += "*x" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    }
    return out;
}

XPoly beta_xpoly(const XPoly& p, const RingContext& ctx) {
    XPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) {
        std::vector<int> inv(e);
        for (int& v : inv) v = -v;
        r.add(inv, beta_ring(c, ctx));
    }
    return r;
}

namespace {

std::mutex g_q_mu;
std::map<std::pair<int, int>, XPoly> g_q_memo;

XPoly compute_positive(int k, int m, const RingContext& ctx) {
    const RingElem lam = RingElem::lambda(1), lam_inv = RingElem::lambda(-1), z = RingElem::z(1);
    const RingElem d = RingElem::delta(1), d_inv = RingElem::delta(-1);
    auto qprev = [&](int i) { return q_table(k - 1, i, ctx).widened(); };
    auto x = [&](int e) { return XPoly::monomial(k, k, e); };
    auto cst = [&](const RingElem& c) { return XPoly::constant(k, c); };

    // V(i) and its g^{-1} companion for i = 0..m
    std::vector<XPoly> V(m + 1, XPoly(k)), Vm(m + 1, XPoly(k));
    V[0] = cst(lam_inv * d_inv);
    Vm[0] = cst(lam * d_inv);
    for (int i = 1; i <= m; ++i) {
        V[i] = (Vm[i - 1] * x(-1)).scaled(RingElem::lambda(-2));
        Vm[i] = V[i] - qprev(i).scaled(z * d_inv) + x(i).scaled(z * d_inv);
    }
    // T(j) for j = 0..m-1
    std::vector<XPoly> T(m, XPoly(k));
    T[0] = cst(lam * d_inv);
    for (int j = 1; j < m; ++j) {
        T[j] = T[j - 1] * x(1) - q_table(k, j, ctx).scaled(z * d_inv) +
               x(-j).scaled(z * RingElem::lambda(-2 * j) * d_inv);
    }
    // delta W(m) = Q'_m - lambda z x^m + z delta V(m)
    XPoly S = (qprev(m) - x(m).scaled(lam * z) + V[m].scaled(z * d)).scaled(d_inv);
    for (int j = 1; j <= m - 1; ++j) {
        S -= (x(m - j) * T[j]).scaled(z);
        S += (x(-j) * V[m - j]).scaled(z * RingElem::lambda(-2 * j));
    }
    return S.scaled(d);
}

}  // namespace

const XPoly& q_table(int k, int m, const RingContext& ctx) {
    if (k < 0) throw InternalError("negative Q-table level");
    if (m != 0) ctx.check_index(m < 0 ? -m : m);
    auto key = std::make_pair(k, m);
    {
        std::lock_guard<std::mutex> lock(g_q_mu);
        auto it = g_q_memo.find(key);
        if (it != g_q_memo.end()) return it->second;
    }
    XPoly v(k);
    if (m == 0) {
        v = XPoly::constant(k, RingElem::delta(1));
    } else if (k == 0) {
        v = XPoly::constant(0, m > 0 ? ctx.q(m) : ctx.fpoly(-m));
    } else if (m > 0) {
        v = compute_positive(k, m, ctx);
    } else {
        v = beta_xpoly(q_table(k, -m, ctx), ctx);
    }
    std::lock_guard<std::mutex> lock(g_q_mu);
    return g_q_memo.emplace(key, std::move(v)).first->second;
}

XPoly q_table_negative_via_fpoly(int k, int r, const RingContext& ctx) {
    auto theta = [&](int s) { return q_table(k, s, ctx); };
    auto mul = [](const XPoly& a, const XPoly& b) { return a * b; };
    auto add = [](const XPoly& a, const XPoly& b, int sign) { return sign > 0 ? a + b : a - b; };
    auto scale = [](const RingElem& c, const XPoly& t) { return t.scaled(c); };
    return theta_negative<XPoly>(r, theta, XPoly::constant(k, RingElem::delta(1)), mul, add, scale);
}

}  // namespace tsk
