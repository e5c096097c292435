#ifndef ANSTAR_QUADRATURE_HPP
#define ANSTAR_QUADRATURE_HPP

// Classical 1D quadrature rules used by the oscillatory-integral evaluators.

#include <vector>

#include "anstar/common.hpp"

namespace anstar {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss–Legendre rule on [-1, 1].
QuadRule gauss_legendre(int order);

// Gauss–Legendre rule mapped to [a, b].
QuadRule gauss_legendre(int order, double a, double b);

// Gauss–Hermite rule: integrates f against exp(-t^2) dt over the real line.
// Weights include the exp(-t^2) factor, i.e. sum_i w_i f(t_i) ~ ∫ e^{-t^2} f.
QuadRule gauss_hermite(int order);

}  // namespace anstar

#endif  // ANSTAR_QUADRATURE_HPP
