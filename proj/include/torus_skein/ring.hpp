#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torus_skein/errors.hpp"

namespace tsk {

/**
 * Monomial lambda^a z^b delta^c prod q_r^{e_r}.
 * `q` is sorted by index and stores only positive exponents.
 */
struct Monomial {
    int a = 0;
    int b = 0;
    int c = 0;
    std::vector<std::pair<int, int>> q;

    bool is_normal() const { return b == 0 || c == 0; }
    bool is_one() const { return a == 0 && b == 0 && c == 0 && q.empty(); }
    int max_q_index() const { return q.empty() ? 0 : q.back().first; }

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

/** Product of monomials without normalization (z and delta may co-occur). */
Monomial monomial_product(const Monomial& x, const Monomial& y);

/**
 * Element of the ground ring in normal form: a finite map from NORMAL monomials
 * to nonzero big-integer coefficients.
 */
class RingElem {
public:
    using Terms = std::map<Monomial, mpz_class>;

    RingElem() = default;
    RingElem(long v);  // NOLINT(google-explicit-constructor): integers embed naturally
    explicit RingElem(const mpz_class& v);

    static RingElem zero() { return RingElem(); }
    static RingElem one() { return RingElem(1); }
    static RingElem lambda(int power = 1);
    static RingElem z(int power = 1);
    static RingElem delta(int power = 1);

    /** Build from an arbitrary (possibly non-normal) monomial; normalizes. */
    static RingElem from_monomial(const Monomial& m, const mpz_class& coef = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t size() const { return terms_.size(); }
    int max_q_index() const;

    /** Constant-term integer if the element is an integer, else false. */
    bool as_integer(mpz_class& out) const;

    RingElem operator-() const;
    RingElem& operator+=(const RingElem& o);
    RingElem& operator-=(const RingElem& o);
    RingElem& operator*=(const RingElem& o);
    friend RingElem operator+(RingElem x, const RingElem& y) { return x += y; }
    friend RingElem operator-(RingElem x, const RingElem& y) { return x -= y; }
    friend RingElem operator*(const RingElem& x, const RingElem& y);
    RingElem pow(int e) const;  // e >= 0 unless the element is a unit monomial

    /** Exact structural equality of normal forms. */
    bool operator==(const RingElem& o) const { return terms_ == o.terms_; }
    auto operator<=>(const RingElem& o) const { return terms_ <=> o.terms_; }

    /** Add c * m where m is any monomial (normalized on insertion). */
    void add_monomial(const Monomial& m, const mpz_class& c);

    /** Largest delta exponent occurring (0 for the zero element). */
    int delta_degree() const;

    std::string to_string() const;

private:
    void add_normal(const Monomial& m, const mpz_class& c);
    Terms terms_;
};

/** Unnormalized formal Laurent polynomial; ring_normalize maps it into the ring. */
using FormalPoly = std::vector<std::pair<Monomial, mpz_class>>;
RingElem ring_normalize(const FormalPoly& p);

/** Generic substitution homomorphism target values. Inverses supplied explicitly. */
struct RingSubstitution {
    RingElem lambda, lambda_inv, z, delta, delta_inv;
    std::map<int, RingElem> q;  // missing entries map q_r to itself
};
RingElem substitute(const RingElem& x, const RingSubstitution& s);

/** Rational point of evaluation. */
struct NumericPoint {
    mpq_class lambda, z, delta;
    std::map<int, mpq_class> q;
};

/**
 * Validate that a numeric point respects lambda^{-1} - lambda = z (delta - 1).
 * Throws UserError("InvalidAssignment") or UserError("DivisionByZero").
 */
void check_point(const NumericPoint& p);

/** Evaluate at a rational point; throws on division by zero or missing q values. */
mpq_class evaluate(const RingElem& x, const NumericPoint& p);

/** Image of x under lambda -> 1, z -> 0 (delta and q unchanged). */
RingElem e_specialize(const RingElem& x);

/**
 * Ring context: owns the q index bound and the f_r memo table.
 * Thread-safe insert-or-get on the memo.
 */
class RingContext {
public:
    explicit RingContext(int q_index_bound = 8);

    int q_index_bound() const { return bound_; }
    /** q_r, or GuardError QIndexOverflow when r exceeds the bound. */
    RingElem q(int r) const;
    void check_index(int r) const;
    void check(const RingElem& x) const;

    /** f_r from the Theta recursion, memoized. */
    RingElem fpoly(int r) const;

    /** Parse a ring literal such as "l^-2*q2 + 3*z*d^-1". */
    RingElem parse(std::string_view text) const;

    /** Random rational point with delta derived (z != 0 generic branch). */
    NumericPoint random_generic_point(std::mt19937_64& rng, int max_q) const;
    /** Random point on the e-branch: lambda = 1, z = 0, random delta and q. */
    NumericPoint random_e_point(std::mt19937_64& rng, int max_q) const;

private:
    int bound_;
    mutable std::mutex mu_;
    mutable std::map<int, RingElem> fpoly_memo_;
};

/**
 * Equality of normal forms. When `cross_checks` > 0 the verdict is compared
 * with that many random evaluations; a disagreement throws InternalError.
 */
bool ring_eq(const RingElem& x, const RingElem& y);
bool ring_eq_checked(const RingElem& x, const RingElem& y, const RingContext& ctx,
                     std::mt19937_64& rng, int cross_checks = 20);

/** Random small nonzero rational. */
mpq_class random_nonzero_rational(std::mt19937_64& rng, int max_abs = 9);

/**
 * Theta recursion for f_r over any commutative ring type T. `theta(s)` returns
 * Theta_s for s >= 1, `theta0` is Theta_0, and `lam`/`lam_inv`/`zz` are the
 * scalars lambda, lambda^{-1}, z embedded in T. Memo is local to the call.
 */
template <class T, class ThetaPos, class Mul, class Add, class Scale>
T theta_negative(int r, const ThetaPos& theta, const T& theta0, Mul mul, Add add,
                 Scale scale);

}  // namespace tsk

#include "torus_skein/ring_theta.ipp"
