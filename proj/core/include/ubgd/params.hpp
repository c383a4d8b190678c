#pragma once

#include <stdexcept>

namespace ubgd {

// Armijo line-search parameters. alpha is the sufficient-decrease factor,
// beta the grid ratio, delta0 the grid anchor: candidate steps live on
// {beta^m * delta0, m integer}. grad_tol is the criticality threshold below
// which no search is attempted; max_halvings bounds the search in either
// direction.
struct LineSearchParams {
    double alpha = 0.5;
    double beta = 0.5;
    double delta0 = 1.0;
    double grad_tol = 1e-10;
    int max_halvings = 200;
};

inline void validate(const LineSearchParams& p) {
    if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw std::invalid_argument("LineSearchParams: alpha must be in (0,1)");
    if (!(p.beta > 0.0 && p.beta < 1.0)) throw std::invalid_argument("LineSearchParams: beta must be in (0,1)");
    if (!(p.delta0 > 0.0)) throw std::invalid_argument("LineSearchParams: delta0 must be > 0");
    if (!(p.grad_tol > 0.0)) throw std::invalid_argument("LineSearchParams: grad_tol must be > 0");
    if (p.max_halvings < 1) throw std::invalid_argument("LineSearchParams: max_halvings must be >= 1");
}

// beta^m * delta0 computed by repeated multiplication (m >= 0) or repeated
// division (m < 0) so that equal exponents always give bit-identical deltas.
inline double delta_for_exponent(int exponent, const LineSearchParams& p) {
    double d = p.delta0;
    if (exponent >= 0) {
        for (int i = 0; i < exponent; ++i) d *= p.beta;
    } else {
        for (int i = 0; i < -exponent; ++i) d /= p.beta;
    }
    return d;
}

}  // namespace ubgd
