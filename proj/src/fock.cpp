#include "psq/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psq/quadrature.hpp"

namespace psq {

namespace {

constexpr double kPi = std::numbers::pi;

Complex coherent_amplitude(double x, double p, const FockConfig& c) {
    return Complex(x / c.l, c.l * p / c.hbar) / std::numbers::sqrt2;
}

int wigner_quadrature_order(int cutoff) { return cutoff + 96; }

}  // namespace

void FockConfig::validate() const {
    if (cutoff < 2) throw std::invalid_argument("FockConfig: cutoff must be at least 2");
    if (!(hbar > 0.0)) throw std::invalid_argument("FockConfig: hbar must be positive");
    if (!(l > 0.0)) throw std::invalid_argument("FockConfig: l must be positive");
}

bool FockMatrix::is_hermitian(double tol) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, mat.cwiseAbs().maxCoeff());
}

void PhaseGrid::validate() const {
    if (!(x_min < x_max) || !(p_min < p_max))
        throw std::invalid_argument("PhaseGrid: bounds must be increasing");
    if (nx < 2 || np < 2) throw std::invalid_argument("PhaseGrid: need at least 2 nodes per axis");
}

PhaseGrid default_phase_grid(const FockConfig& config) {
    config.validate();
    double radius = std::numbers::sqrt2 * (std::sqrt(static_cast<double>(config.cutoff)) + 4.0);
    double ex = radius * config.l;
    double ep = radius * config.hbar / config.l;
    int n = 2 * config.cutoff + 80;
    return PhaseGrid{-ex, ex, -ep, ep, n, n};
}

LadderOps build_ladder(const FockConfig& config) {
    config.validate();
    int n = config.cutoff;
    CMatrix a = CMatrix::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    CMatrix adag = a.adjoint();
    CMatrix x = config.l / std::numbers::sqrt2 * (a + adag);
    CMatrix p = Complex(0, 1) * config.hbar / (std::numbers::sqrt2 * config.l) * (adag - a);
    return LadderOps{{a, config}, {adag, config}, {x, config}, {p, config}};
}

Eigen::VectorXd hermite_functions(int count, double q, double l) {
    Eigen::VectorXd out(count);
    double t = q / l;
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) / std::sqrt(l) * std::exp(-0.5 * t * t);
    for (int k = 0; k < count; ++k) {
        out(k) = cur;
        double next = std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return out;
}

FockMatrix op_to_matrix(const OpPoly& a, const FockConfig& config) {
    config.validate();
    // Evaluating with a halo of max_word_length extra levels and cropping
    // yields the exact compression P_N A P_N: a word of length k moves any
    // retained level by at most k, so no intermediate state is lost.
    FockConfig work = config;
    work.cutoff += a.max_word_length();
    LadderOps ops = build_ladder(work);
    int n = work.cutoff;
    auto letter_matrix = [&](char c) -> const CMatrix& {
        switch (c) {
            case 'X': return ops.x.mat;
            case 'P': return ops.p.mat;
            case 'a': return ops.a.mat;
            default: return ops.adag.mat;
        }
    };
    CMatrix acc = CMatrix::Zero(n, n);
    for (const auto& [w, c] : a.terms()) {
        CMatrix word = CMatrix::Identity(n, n);
        for (char letter : w) word = word * letter_matrix(letter);
        acc += c.evaluate_approx(config.hbar, config.l) * word;
    }
    return FockMatrix{acc.topLeftCorner(config.cutoff, config.cutoff), config};
}

CVector coherent_state(double x, double p, const FockConfig& config) {
    config.validate();
    Complex alpha = coherent_amplitude(x, p, config);
    CVector v(config.cutoff);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k < config.cutoff; ++k) v(k) = v(k - 1) * alpha / std::sqrt(static_cast<double>(k));
    return v;
}

bool coherent_truncation_ok(double x, double p, const FockConfig& config) {
    return std::norm(coherent_amplitude(x, p, config)) <= config.cutoff / 4.0;
}

FockMatrix coherent_projector(double x, double p, const FockConfig& config) {
    CVector v = coherent_state(x, p, config);
    v.normalize();
    return FockMatrix{v * v.adjoint(), config};
}

FockMatrix toeplitz_quantize_fn(const std::function<double(double, double)>& a,
                                const FockConfig& config, const PhaseGrid& grid) {
    config.validate();
    grid.validate();
    QuadratureRule rx = gauss_legendre(grid.nx, grid.x_min, grid.x_max);
    QuadratureRule rp = gauss_legendre(grid.np, grid.p_min, grid.p_max);
    const int n = config.cutoff;
    const double measure = 1.0 / (2.0 * kPi * config.hbar);
    CMatrix acc = CMatrix::Zero(n, n);

    const int total = grid.nx * grid.np;
    const int chunk = std::max(1, std::min(total, 1 << 13));
    CMatrix states(n, chunk);
    CMatrix weighted(n, chunk);
    int filled = 0;
    auto flush = [&]() {
        if (filled == 0) return;
        acc.noalias() += weighted.leftCols(filled) * states.leftCols(filled).adjoint();
        filled = 0;
    };
    for (int ix = 0; ix < grid.nx; ++ix) {
        for (int ip = 0; ip < grid.np; ++ip) {
            double xv = rx.nodes(ix), pv = rp.nodes(ip);
            double weight = rx.weights(ix) * rp.weights(ip) * measure * a(xv, pv);
            states.col(filled) = coherent_state(xv, pv, config);
            weighted.col(filled) = weight * states.col(filled);
            if (++filled == chunk) flush();
        }
    }
    flush();
    return FockMatrix{std::move(acc), config};
}

FockMatrix toeplitz_quantize(const PhasePoly& a, const FockConfig& config, const PhaseGrid& grid) {
    if (!a.is_real()) throw std::invalid_argument("toeplitz_quantize: polynomial must be real");
    return toeplitz_quantize_fn(
        [&](double xv, double pv) {
            return a.evaluate_approx(xv, pv, config.hbar, config.l).real();
        },
        config, grid);
}

double toeplitz_identity_error(const FockConfig& config, const PhaseGrid& grid) {
    FockMatrix t = toeplitz_quantize(PhasePoly::one(), config, grid);
    int m = config.cutoff / 2;
    return (t.mat.topLeftCorner(m, m) - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
}

namespace {

// Shared machinery for the y-integral of the symbol transform at one x:
// tabulates s(t_i) = <x + l t_i| M |x - l t_i> over the Gauss-Hermite nodes.
struct WignerSlice {
    CVector samples;  // s(t_i)
};

WignerSlice wigner_slice(const CMatrix& m, double x, const FockConfig& config,
                         const QuadratureRule& rule) {
    int n = static_cast<int>(m.rows());
    int order = static_cast<int>(rule.nodes.size());
    WignerSlice slice;
    slice.samples.resize(order);
    for (int i = 0; i < order; ++i) {
        double y = config.l * rule.nodes(i);
        Eigen::VectorXd up = hermite_functions(n, x + y, config.l);
        Eigen::VectorXd dn = hermite_functions(n, x - y, config.l);
        slice.samples(i) = up.cast<Complex>().dot(m * dn.cast<Complex>());
    }
    return slice;
}

double wigner_sum(const WignerSlice& slice, double p, const FockConfig& config,
                  const QuadratureRule& rule) {
    Complex acc = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i) {
        double y = config.l * rule.nodes(i);
        acc += rule.weights(i) * std::polar(1.0, -2.0 * p * y / config.hbar) * slice.samples(i);
    }
    acc *= 2.0 * config.l;
    if (std::abs(acc.imag()) > 1e-9 * std::max(1.0, std::abs(acc.real())))
        throw std::runtime_error("wigner_symbol: imaginary residue above tolerance");
    return acc.real();
}

}  // namespace

double wigner_symbol(const FockMatrix& m, double x, double p) {
    m.config.validate();
    if (!m.is_hermitian()) throw std::invalid_argument("wigner_symbol: matrix must be Hermitian");
    const QuadratureRule& rule = gauss_hermite(wigner_quadrature_order(m.dim()));
    WignerSlice slice = wigner_slice(m.mat, x, m.config, rule);
    return wigner_sum(slice, p, m.config, rule);
}

double wigner_function(const FockMatrix& m, double x, double p) {
    return wigner_symbol(m, x, p) / (2.0 * kPi * m.config.hbar);
}

Eigen::MatrixXd wigner_symbol_grid(const FockMatrix& m, const PhaseGrid& grid) {
    m.config.validate();
    grid.validate();
    if (!m.is_hermitian()) throw std::invalid_argument("wigner_symbol: matrix must be Hermitian");
    const QuadratureRule rule = gauss_hermite(wigner_quadrature_order(m.dim()));
    Eigen::MatrixXd out(grid.nx, grid.np);
    for (int ix = 0; ix < grid.nx; ++ix) {
        double x = grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1.0);
        WignerSlice slice = wigner_slice(m.mat, x, m.config, rule);
        for (int ip = 0; ip < grid.np; ++ip) {
            double p = grid.p_min + (grid.p_max - grid.p_min) * ip / (grid.np - 1.0);
            out(ix, ip) = wigner_sum(slice, p, m.config, rule);
        }
    }
    return out;
}

Eigen::MatrixXd wigner_function_grid(const FockMatrix& m, const PhaseGrid& grid) {
    return wigner_symbol_grid(m, grid) / (2.0 * kPi * m.config.hbar);
}

FockMatrix position_range_projector(double lo, double hi, const FockConfig& config) {
    config.validate();
    if (!(lo < hi)) throw std::invalid_argument("position_range_projector: need lo < hi");
    int n = config.cutoff;
    // All retained eigenfunctions are negligible beyond the classical turning
    // point plus margin; clipping keeps the quadrature nodes where the
    // integrand lives.
    double reach = config.l * (std::sqrt(2.0 * n + 1.0) + 8.0);
    double a = std::max(lo, -reach), b = std::min(hi, reach);
    if (!(a < b)) return FockMatrix{CMatrix::Zero(n, n), config};
    int order = std::max(n + 96, static_cast<int>((b - a) * std::sqrt(2.0 * n + 1.0) / config.l) + 64);
    QuadratureRule rule = gauss_legendre(order, a, b);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < rule.nodes.size(); ++i) {
        Eigen::VectorXd phi = hermite_functions(n, rule.nodes(i), config.l);
        acc.noalias() += rule.weights(i) * phi * phi.transpose();
    }
    return FockMatrix{acc.cast<Complex>(), config};
}

void validate_density(const FockMatrix& rho, double tol) {
    rho.config.validate();
    if (!rho.is_hermitian(tol)) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.mat.trace().real() - 1.0) > tol || std::abs(rho.mat.trace().imag()) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.mat, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

namespace {

double husimi_value(const FockMatrix& rho, const CVector& state) {
    double raw = state.dot(rho.mat * state).real() / (2.0 * kPi * rho.config.hbar);
    if (raw < -1e-12) throw std::runtime_error("husimi: negative value beyond tolerance");
    return std::max(raw, 0.0);
}

}  // namespace

double husimi(const FockMatrix& rho, double x, double p) {
    validate_density(rho);
    return husimi_value(rho, coherent_state(x, p, rho.config));
}

Eigen::MatrixXd husimi_grid(const FockMatrix& rho, const PhaseGrid& grid) {
    validate_density(rho);
    grid.validate();
    Eigen::MatrixXd out(grid.nx, grid.np);
    for (int ix = 0; ix < grid.nx; ++ix) {
        double x = grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1.0);
        for (int ip = 0; ip < grid.np; ++ip) {
            double p = grid.p_min + (grid.p_max - grid.p_min) * ip / (grid.np - 1.0);
            out(ix, ip) = husimi_value(rho, coherent_state(x, p, rho.config));
        }
    }
    return out;
}

double husimi_expectation(const PhasePoly& a, const FockMatrix& rho, const PhaseGrid& grid) {
    if (!a.is_real()) throw std::invalid_argument("husimi_expectation: polynomial must be real");
    validate_density(rho);
    grid.validate();
    const FockConfig& config = rho.config;
    QuadratureRule rx = gauss_legendre(grid.nx, grid.x_min, grid.x_max);
    QuadratureRule rp = gauss_legendre(grid.np, grid.p_min, grid.p_max);
    double expectation = 0.0;
    double mass = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        for (int ip = 0; ip < grid.np; ++ip) {
            double xv = rx.nodes(ix), pv = rp.nodes(ip);
            double q = husimi_value(rho, coherent_state(xv, pv, config));
            double w = rx.weights(ix) * rp.weights(ip);
            mass += w * q;
            expectation += w * q * a.evaluate_approx(xv, pv, config.hbar, config.l).real();
        }
    }
    if (std::abs(mass - 1.0) > 1e-6)
        throw std::runtime_error("husimi_expectation: grid does not capture the Husimi mass");
    return expectation;
}

BohmianField bohmian_momentum(const Eigen::VectorXd& x, const CVector& psi, double hbar) {
    const int n = static_cast<int>(x.size());
    if (psi.size() != n || n < 3)
        throw std::invalid_argument("bohmian_momentum: need matching grids with at least 3 points");
    const double dx = x(1) - x(0);
    const double floor_b = 1e-10 * psi.cwiseAbs().maxCoeff();

    std::vector<bool> valid(n, true);
    valid.front() = valid.back() = false;
    for (int j = 0; j < n; ++j) {
        if (std::abs(psi(j)) >= floor_b) continue;
        for (int k = std::max(0, j - 3); k <= std::min(n - 1, j + 3); ++k) valid[k] = false;
    }

    BohmianField field;
    field.momentum = Eigen::VectorXd::Zero(n);
    field.valid = std::move(valid);
    for (int j = 1; j + 1 < n; ++j) {
        if (!field.valid[j]) continue;
        Complex derivative = (psi(j + 1) - psi(j - 1)) / (2.0 * dx);
        field.momentum(j) = hbar * (derivative / psi(j)).imag();
    }
    return field;
}

double bohmian_p2_expectation(const BohmianField& field, const CVector& psi) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < psi.size(); ++j) {
        double w = std::norm(psi(j));
        den += w;
        if (field.valid[j]) num += w * field.momentum(j) * field.momentum(j);
    }
    if (den == 0.0) throw std::invalid_argument("bohmian_p2_expectation: zero wave function");
    return num / den;
}

double block_distance(const CMatrix& a, const CMatrix& b, int m) {
    return (a.topLeftCorner(m, m) - b.topLeftCorner(m, m)).norm();
}

}  // namespace psq
