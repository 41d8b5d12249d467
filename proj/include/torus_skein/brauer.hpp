#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torus_skein/ring.hpp"

namespace tsk {

/**
 * Perfect matching on the 2n boundary points of an (n,n) diagram.
 * Top vertex p_i has index i, bottom vertex p-bar_j has index 2n+1-j, so the
 * boundary order p_1 < ... < p_n < p-bar_n < ... < p-bar_1 is index order.
 * `partner` is 1-based (entry 0 unused).
 */
struct Connector {
    int n = 0;
    std::vector<int> partner;

    Connector() : partner(1, 0) {}
    static Connector identity(int n);
    /** Builds a connector from pairs of 1-based vertex indices; validates. */
    static Connector from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    static int top(int i) { return i; }
    int bottom(int j) const { return 2 * n + 1 - j; }
    bool is_top(int v) const { return v <= n; }
    /** Position (1..n) of a vertex on its boundary row. */
    int position(int v) const { return v <= n ? v : 2 * n + 1 - v; }
    bool is_initial(int v) const { return v < partner[v]; }

    /** Number of interleaved strand pairs (minimal crossing number). */
    int crossing_number() const;
    /** Number of strands joining top to bottom. */
    int through_count() const;

    void validate() const;
    std::string to_string() const;

    auto operator<=>(const Connector&) const = default;
    bool operator==(const Connector&) const = default;
};

/** Connector with an integer color per strand, stored at the initial vertex. */
struct ColoredConnector {
    Connector conn;
    std::vector<int> color;  // 1-based, nonzero only at initial vertices

    ColoredConnector() : color(1, 0) {}
    explicit ColoredConnector(Connector c);
    int n() const { return conn.n; }
    /** Color of the strand through v, read for traversal starting at v. */
    int color_from(int v) const;
    void set_color_from(int v, int c);

    std::string to_string() const;

    auto operator<=>(const ColoredConnector&) const = default;
    bool operator==(const ColoredConnector&) const = default;
};

/** Parse "(i j)(k l)" or the colored form "(i j):c(k l):c". */
ColoredConnector parse_connector(int n, std::string_view text);
/** Parse a connector, inferring n from the largest vertex index. */
ColoredConnector parse_connector_auto(std::string_view text);

/** Linear combination of colored connectors. */
class BrauerElem {
public:
    using Terms = std::map<ColoredConnector, RingElem>;

    explicit BrauerElem(int n = 0) : n_(n) {}
    static BrauerElem basis(const ColoredConnector& d, RingElem coef = RingElem::one());

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const ColoredConnector& d, const RingElem& c);
    BrauerElem& operator+=(const BrauerElem& o);
    BrauerElem scaled(const RingElem& c) const;

    bool operator==(const BrauerElem& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    std::string to_string() const;

private:
    int n_;
    Terms terms_;
};

/** Stack x above y, summing colors along composite strands; returns diagram and loop scalar. */
std::pair<ColoredConnector, RingElem> colored_compose(const ColoredConnector& x,
                                                      const ColoredConnector& y,
                                                      const RingContext& ctx);

/** Product with the engine's stacking order: the left factor sits below the right factor. */
BrauerElem brauer_mul(const BrauerElem& x, const BrauerElem& y, const RingContext& ctx);

/** Conditional expectation: close strand n and divide by delta. */
BrauerElem brauer_expect(const BrauerElem& x, const RingContext& ctx);
/** Embedding of size n into size n+1 by adding a vertical color-0 strand on the right. */
BrauerElem brauer_include(const BrauerElem& x);
ColoredConnector include_connector(const ColoredConnector& d);
RingElem brauer_trace(const BrauerElem& x, const RingContext& ctx);

/** Vertical mirror with every strand color negated. */
ColoredConnector brauer_reflect(const ColoredConnector& d);

/** All n-connectors in a fixed canonical order; count (2n-1)!!. */
std::vector<Connector> enumerate_connectors(int n);
/** All colored n-connectors with colors in [-cutoff, cutoff]. */
std::vector<ColoredConnector> enumerate_colored(int n, int cutoff);

struct GramResult {
    std::vector<std::vector<RingElem>> matrix;
    RingElem det;
};

/** Gram matrix (trace of products) and its exact determinant; S must be reflection closed. */
GramResult gram_matrix(const std::vector<ColoredConnector>& S, const RingContext& ctx);

/** Division-free determinant over the ground ring (subset expansion). */
RingElem ring_determinant(const std::vector<std::vector<RingElem>>& m);

/** Rank of a rational matrix by exact Gaussian elimination. */
int rational_rank(std::vector<std::vector<mpq_class>> m);

}  // namespace tsk
