#include "psq/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace psq {

namespace {

std::mutex cache_mutex;

// Gauss-Legendre on [-1, 1] via the Golub-Welsch eigenproblem.
const QuadratureRule& legendre_reference(int n) {
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    QuadratureRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double v0 = solver.eigenvectors()(0, i);
        rule.weights(i) = 2.0 * v0 * v0;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    const QuadratureRule& ref = legendre_reference(n);
    QuadratureRule rule;
    rule.nodes = 0.5 * (a + b) + 0.5 * (b - a) * ref.nodes.array();
    rule.weights = 0.5 * (b - a) * ref.weights;
    return rule;
}

QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    QuadratureRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    // Envelope-compensated Christoffel weights 1 / sum_k psi_k(t)^2 with the
    // orthonormal Hermite functions psi_k; stable for any node count, unlike
    // the raw weights, which underflow at the extreme nodes.
    for (int i = 0; i < n; ++i) {
        double t = rule.nodes(i);
        double prev = 0.0;
        double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
        double sum = cur * cur;
        for (int k = 1; k < n; ++k) {
            double next = std::sqrt(2.0 / k) * t * cur - std::sqrt((k - 1.0) / k) * prev;
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        rule.weights(i) = 1.0 / sum;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace psq
