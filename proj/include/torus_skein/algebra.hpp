#pragma once

#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "torus_skein/brauer.hpp"
#include "torus_skein/ring.hpp"
#include "torus_skein/tangle.hpp"

namespace tsk {

/**
 * Basis element x^mu T_d x^nu of the affine algebra: mu sits on the bottom
 * boundary, nu on the top boundary, T_d is the descending diagram of d.
 * Exponent slots are nonzero only at a strand's initial vertex.
 */
struct BasisTriple {
    std::vector<int> mu;
    Connector d;
    std::vector<int> nu;

    int n() const { return d.n; }
    static BasisTriple plain(const Connector& d);
    /** True when every nonzero exponent sits at an initial vertex. */
    bool valid() const;
    /** Largest absolute exponent. */
    int max_winding() const;
    /** Text "mu|connector|nu" with comma-separated exponents. */
    std::string to_string() const;

    auto operator<=>(const BasisTriple&) const = default;
    bool operator==(const BasisTriple&) const = default;
};

/** Linear combination of basis triples; no zero coefficients are stored. */
class AlgebraElement {
public:
    using Terms = std::map<BasisTriple, RingElem>;

    explicit AlgebraElement(int n = 0) : n_(n) {}
    static AlgebraElement identity(int n);
    static AlgebraElement basis(const BasisTriple& t, const RingElem& c = RingElem::one());
    static AlgebraElement scalar(int n, const RingElem& c);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /** Coefficient of a triple (zero when absent). */
    RingElem coeff(const BasisTriple& t) const;

    void add(const BasisTriple& t, const RingElem& c);
    void add_scaled(const AlgebraElement& o, const RingElem& c);
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    AlgebraElement scaled(const RingElem& c) const;
    int max_q_index() const;

    bool operator==(const AlgebraElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    /** Canonical text: one line "<coeff> * [mu|connector|nu]" per term, sorted by triple. */
    std::string to_string() const;

private:
    int n_;
    Terms terms_;
};

/** Parse canonical element text (the output of to_string) at size n. */
AlgebraElement parse_element_text(int n, std::string_view text, const RingContext& ctx);

/** Product with the left factor below the right factor. */
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y, const RingContext& ctx);
/** Product of generator letters at size n. */
AlgebraElement gen_product(int n, const GenWord& w, const RingContext& ctx);
/** Generator word whose product is the basis triple. */
GenWord triple_word(const BasisTriple& t);
/** Right multiplication by one generator letter. */
AlgebraElement mul_gen(const AlgebraElement& x, const Gen& g, const RingContext& ctx);

/** Named elements. */
AlgebraElement elem_g(int n, int i, int sign, const RingContext& ctx);
AlgebraElement elem_e(int n, int i);
AlgebraElement elem_x1(int n, int power = 1);
/** x_r = g_{r-1}..g_1 x_1 g_1..g_{r-1}, raised to a power. */
AlgebraElement elem_x(int n, int r, int power, const RingContext& ctx);
/** x'_r = g_{r-1}..g_1 x_1 g_1^{-1}..g_{r-1}^{-1}, raised to a power. */
AlgebraElement elem_xprime(int n, int r, int power, const RingContext& ctx);
/** Diagram with top p_i joined to p_{2k+1-i} and the mirror pairs on the bottom, no crossings. */
AlgebraElement elem_Fk(int k);

/** Positive permutation braid g_pi from a reduced word of simple transpositions. Throws NotReduced. */
AlgebraElement perm_braid(int n, const std::vector<int>& word, const RingContext& ctx);
/** Permutation (one-line, 1-based images) of a word of simple transpositions, applied left to right. */
std::vector<int> word_permutation(int n, const std::vector<int>& word);

enum class FkForm { Recursive, Diamond };
/** f_k at size n >= 2k. */
AlgebraElement fk(int k, FkForm form, int n, const RingContext& ctx);

/** Inclusion into size n+1 (a vertical strand on the right). */
AlgebraElement include(const AlgebraElement& x);
/** S(x) = w x w^{-1} in size n+1 with w = g_1 g_2 .. g_n, so that S(g_i) = g_{i+1}. */
AlgebraElement shift(const AlgebraElement& x, const RingContext& ctx);
/** Anti-automorphism flipping diagrams top to bottom. */
AlgebraElement apply_alpha(const AlgebraElement& x, const RingContext& ctx);

/** Conditional expectation eps_n into size n-1. */
AlgebraElement expect(const AlgebraElement& x, const RingContext& ctx);
/** Markov trace eps = eps_1 o ... o eps_n. */
RingElem trace(const AlgebraElement& x, const RingContext& ctx);

/** Colored connector image with e-specialized coefficients. */
BrauerElem connector_map(const AlgebraElement& x);
ColoredConnector triple_connector(const BasisTriple& t);

/** Normal form of an arbitrary valid (n,n) slice word. */
AlgebraElement normalize(const TangleWord& w, const RingContext& ctx);

/**
 * Normal form of a descending word without closed loops. Windings are moved
 * to initial endpoints by the transport rewriting, so the result is in
 * general a combination of triples.
 */
AlgebraElement transport_windings(const TangleWord& w, const RingContext& ctx);

/** All basis triples of size n with exponents bounded by cutoff. */
std::vector<BasisTriple> basis_enumerate(int n, int cutoff);

/** Rank of the span {a (e_1 e_3 .. e_{2k-1}) b} at a random rational point. */
int ideal_rank(int n, int k, int cutoff, std::uint64_t seed, const RingContext& ctx);

struct Violation {
    std::string relation;
    std::string detail;
};
/** Evaluate the defining relations and derived identities at size n with powers up to max_r. */
std::vector<Violation> verify_relations(int n, int max_r, const RingContext& ctx);
/** Recursion identities among e_1 x_1^{-b} g_1^{+-1} x_1^a e_1 for a + b <= max_sum, at n = 2. */
std::vector<Violation> psi_identities(int max_sum, const RingContext& ctx);

/** Numeric image of an element at a rational point, keyed by triple. */
std::map<BasisTriple, mpq_class> evaluate_element(const AlgebraElement& x, const NumericPoint& p);

}  // namespace tsk
