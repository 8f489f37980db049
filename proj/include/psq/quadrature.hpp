#pragma once

#include <Eigen/Core>

namespace psq {

/// Nodes and weights of a one-dimensional quadrature rule. For Gauss-Hermite
/// rules the weights are the "envelope-compensated" values w_i * exp(t_i^2),
/// so that sum_i weights[i] * f(nodes[i]) approximates the plain integral of
/// any f that itself decays like exp(-t^2). This avoids underflow in the raw
/// weights at large node count.
struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

/// Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Hermite rule with envelope-compensated weights (see above).
QuadratureRule gauss_hermite(int n);

}  // namespace psq
