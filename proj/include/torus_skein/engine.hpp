#pragma once

#include <vector>

#include "torus_skein/algebra.hpp"
#include "torus_skein/tangle.hpp"

namespace tsk::engine {

/**
 * Normal form of x^mu T_d x^nu for arbitrary exponent vectors: exponents at
 * terminal vertices are transported to initial vertices one unit at a time,
 * and the lower-order corrections are reduced recursively.
 */
const AlgebraElement& reduce(const std::vector<int>& mu, const Connector& d,
                             const std::vector<int>& nu, const RingContext& ctx);

/** Normal form of (x^mu T_d x^nu) * g for one generator letter. */
const AlgebraElement& times_gen(const std::vector<int>& mu, const Connector& d,
                                const std::vector<int>& nu, const Gen& g, const RingContext& ctx);

/** Right multiplication of an element by x_j^k. */
AlgebraElement times_x(const AlgebraElement& x, int j, int k, const RingContext& ctx);

/** Ordinary product T_d * g for g in {g_i, g_i^{-1}, e_i}. */
const OrdinaryResult& ordinary_product(const Connector& d, const Gen& g);

/**
 * normalize(layout of d with the strand through `vertex` over or under all
 * others) minus T_d: the lower-order part, supported on connectors with
 * fewer crossings.
 */
const OrdinaryResult& layout_correction(const Connector& d, int vertex, bool over);

}  // namespace tsk::engine
