#pragma once

#include <map>
#include <vector>

#include "torus_skein/ring.hpp"

namespace tsk {

/** Laurent polynomial in commuting x_1..x_k with ground-ring coefficients. */
class XPoly {
public:
    using Terms = std::map<std::vector<int>, RingElem>;

    explicit XPoly(int k = 0) : k_(k) {}
    static XPoly constant(int k, const RingElem& c);
    /** c * x_j^e (j is 1-based). */
    static XPoly monomial(int k, int j, int e, const RingElem& c = RingElem::one());

    int vars() const { return k_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const std::vector<int>& e, const RingElem& c);

    XPoly& operator+=(const XPoly& o);
    XPoly& operator-=(const XPoly& o);
    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    XPoly scaled(const RingElem& c) const;
    /** Same polynomial viewed in k+1 variables. */
    XPoly widened() const;

    bool operator==(const XPoly& o) const { return k_ == o.k_ && terms_ == o.terms_; }
    std::string to_string() const;

private:
    int k_;
    Terms terms_;
};

/**
 * Q_{k,m}: the element with e_{k+1} x_{k+1}^m e_{k+1} = Q_{k,m} e_{k+1}, a Laurent
 * polynomial in x_1..x_k. Q_{0,m} is q_m (m > 0), delta (m = 0) or f_{|m|} (m < 0).
 * Negative m are obtained by applying the crossing-reversal symmetry to Q_{k,|m|}.
 */
const XPoly& q_table(int k, int m, const RingContext& ctx);

/** Negative-m entries recomputed through the f_r recursion with q_s replaced by Q_{k,s}. */
XPoly q_table_negative_via_fpoly(int k, int r, const RingContext& ctx);

/** Crossing-reversal symmetry on coefficients and x_i -> x_i^{-1}. */
XPoly beta_xpoly(const XPoly& p, const RingContext& ctx);

}  // namespace tsk
