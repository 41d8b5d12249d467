#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "torus_skein/algebra.hpp"

namespace tsk {

/**
 * Expression tree for the command-line algebra syntax:
 *   expr  := ['+'|'-'] term (('+'|'-') term)*
 *   term  := factor ('*'? factor)*
 *   factor:= primary ('^' SIGNED_INT)?
 *   primary := 'g' INT | 'e' INT | 'x' INT | '(' expr ')' | ring atom (INT, l, z, d, q INT)
 * Products read left to right are stacked bottom to top. `x1` is the affine
 * generator; `x<r>` for r >= 2 is the Jucys-Murphy type element x_r.
 */
struct Expr {
    enum Kind { Sum, Product, Power, G, E, X, Scalar };
    Kind kind = Scalar;
    int index = 0;                 // generator index (G, E, X)
    int power = 1;                 // exponent (Power, G, E, X)
    std::vector<int> signs;        // Sum: +1/-1 per child
    std::vector<Expr> children;    // Sum, Product, Power
    RingElem scalar = RingElem::one();
    std::size_t offset = 0;        // byte offset of the node in the source text
};

/** Parses and checks indices against size n. Throws ParseError, UserError (NegativeEPower, IndexOutOfRange). */
Expr parse_expression(std::string_view text, int n, const RingContext& ctx);

/** Evaluates an expression tree to a normal form element of size n. */
AlgebraElement evaluate_expression(const Expr& e, int n, const RingContext& ctx);

/** parse_expression followed by evaluate_expression. */
AlgebraElement eval_expression(std::string_view text, int n, const RingContext& ctx);

}  // namespace tsk
