#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <vector>

#include "psq/op_poly.hpp"
#include "psq/phase_poly.hpp"

namespace psq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Truncated number-basis description: dimension and the two unit scales.
/// l = sqrt(hbar/(m omega)) is the oscillator length of the coherent-state
/// family; defaults are hbar = l = 1.
struct FockConfig {
    int cutoff = 2;
    double hbar = 1.0;
    double l = 1.0;

    void validate() const;
    friend bool operator==(const FockConfig&, const FockConfig&) = default;
};

/// Dense operator in the number basis at a finite cutoff.
struct FockMatrix {
    CMatrix mat;
    FockConfig config;

    int dim() const { return static_cast<int>(mat.rows()); }
    bool is_hermitian(double tol = 1e-10) const;
};

/// Rectangular evaluation window in phase space. For integrals nx/np are the
/// Gauss-Legendre orders per axis; for CSV dumps they are uniform sample
/// counts.
struct PhaseGrid {
    double x_min, x_max;
    double p_min, p_max;
    int nx, np;

    void validate() const;
};

/// Grid that comfortably covers the phase-space support of the retained Fock
/// levels (coherent spread sqrt(cutoff) plus margin).
PhaseGrid default_phase_grid(const FockConfig& config);

struct LadderOps {
    FockMatrix a;     // annihilation: a|n> = sqrt(n)|n-1>
    FockMatrix adag;  // creation (truncated adjoint)
    FockMatrix x;     // l/sqrt2 (a + adag)
    FockMatrix p;     // i hbar/(sqrt2 l) (adag - a)
};

LadderOps build_ladder(const FockConfig& config);

/// Values of the first `count` orthonormal oscillator eigenfunctions (length
/// scale l) at position q.
Eigen::VectorXd hermite_functions(int count, double q, double l);

/// Evaluates an operator polynomial on the ladder matrices; hbar/l/sqrt2
/// powers in the coefficients are evaluated at the config values.
FockMatrix op_to_matrix(const OpPoly& a, const FockConfig& config);

/// Number-basis components <n|(x,p)> of the canonical coherent state at the
/// phase-space point; accurate while |alpha|^2 stays well below the cutoff.
CVector coherent_state(double x, double p, const FockConfig& config);

/// True when |alpha|^2 <= cutoff/4, the documented accuracy threshold.
bool coherent_truncation_ok(double x, double p, const FockConfig& config);

/// Normalized projector |(x,p)><(x,p)| on the truncated space.
FockMatrix coherent_projector(double x, double p, const FockConfig& config);

/// Coherent-state (Toeplitz) quantization by tensor Gauss-Legendre quadrature
/// of (1/2 pi hbar) integral A(x,p) |(x,p)><(x,p)| dx dp over the grid.
FockMatrix toeplitz_quantize(const PhasePoly& a, const FockConfig& config,
                             const PhaseGrid& grid);

/// Same quadrature for a general real-valued weight function, e.g. the
/// narrow Gaussians whose Toeplitz operators approach a coherent projector.
FockMatrix toeplitz_quantize_fn(const std::function<double(double, double)>& a,
                                const FockConfig& config, const PhaseGrid& grid);

/// Max-abs deviation of toeplitz_quantize(1) from the identity on the leading
/// cutoff/2 block; large values flag an unsuitable grid.
double toeplitz_identity_error(const FockConfig& config, const PhaseGrid& grid);

/// Phase-space symbol of a Hermitian operator,
///   2 * integral exp(-2ipy/hbar) <x+y|M|x-y> dy,
/// by Gauss-Hermite quadrature in y over the oscillator eigenfunctions.
/// Equals the polynomial itself on images of weyl_quantize (up to
/// truncation). Throws on non-Hermitian input or a visible imaginary residue.
double wigner_symbol(const FockMatrix& m, double x, double p);

/// Normalized quasi-distribution: wigner_symbol / (2 pi hbar), so that the
/// full phase-space integral of a density matrix is 1 and a coherent
/// projector peaks at 1/(pi hbar).
double wigner_function(const FockMatrix& m, double x, double p);

/// Uniform-sample evaluation over the grid (row index x, column index p);
/// shares the per-x quadrature tables, much faster than point-wise calls.
Eigen::MatrixXd wigner_symbol_grid(const FockMatrix& m, const PhaseGrid& grid);
Eigen::MatrixXd wigner_function_grid(const FockMatrix& m, const PhaseGrid& grid);

/// Projector onto positions in [lo, hi]: entries are Gauss-Legendre
/// quadratures of phi_j(q) phi_k(q) over the interval.
FockMatrix position_range_projector(double lo, double hi, const FockConfig& config);

/// Throws unless rho is Hermitian, unit-trace and positive semidefinite
/// (all within `tol`).
void validate_density(const FockMatrix& rho, double tol = 1e-10);

/// Husimi function Q(x,p) = <(x,p)|rho|(x,p)> / (2 pi hbar). The 1/(2 pi
/// hbar) prefactor normalizes the dx dp integral to 1 (the d^2alpha
/// convention would use 1/pi instead). Validates rho; never negative.
double husimi(const FockMatrix& rho, double x, double p);

/// Uniform-sample Husimi values over the grid (validates rho once).
Eigen::MatrixXd husimi_grid(const FockMatrix& rho, const PhaseGrid& grid);

/// Phase-space average integral A(x,p) Q(x,p) dx dp by tensor Gauss-Legendre
/// quadrature. Requires a real polynomial and a grid that captures the whole
/// Husimi mass (checked via integral Q = 1 within 1e-6). Agrees with
/// Tr(op_to_matrix(antiwick_quantize(A)) rho).
double husimi_expectation(const PhasePoly& a, const FockMatrix& rho, const PhaseGrid& grid);

/// Guidance-equation momentum field hbar Im(psi'/psi) on a uniform grid by
/// central differences. Grid points within three spacings of a node of psi
/// (|psi| < 1e-10 max|psi|) and the two endpoints are marked invalid.
struct BohmianField {
    Eigen::VectorXd momentum;
    std::vector<bool> valid;
};

BohmianField bohmian_momentum(const Eigen::VectorXd& x, const CVector& psi, double hbar);

/// |psi|^2-weighted average of momentum^2 over the valid points.
double bohmian_p2_expectation(const BohmianField& field, const CVector& psi);

/// Frobenius distance restricted to the leading m x m block.
double block_distance(const CMatrix& a, const CMatrix& b, int m);

}  // namespace psq
