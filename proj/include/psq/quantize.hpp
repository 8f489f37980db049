#pragma once

#include "psq/op_poly.hpp"
#include "psq/phase_poly.hpp"

namespace psq {

enum class Scheme { Weyl, AntiWick };

const char* to_string(Scheme s);

/// Weyl quantization: x^j p^k maps to the full symmetrization of j position
/// and k momentum letters, computed via the closed form
///   2^-j sum_r C(j,r) X^r P^k X^(j-r),
/// returned in standard order over the XP alphabet. Linear; self-adjoint on
/// real polynomials.
OpPoly weyl_quantize(const PhasePoly& a);

/// Inverse of weyl_quantize on operator polynomials: exact triangular change
/// of basis from standard-ordered words to symmetrized images. Total on both
/// alphabets; weyl_symbol(weyl_quantize(f)) == f.
PhasePoly weyl_symbol(const OpPoly& a);

/// Anti-Wick (coherent-state) quantization: rewrite the polynomial in the
/// complex pair alpha = (x/l + i l p/hbar)/sqrt2 and its conjugate, then read
/// alpha^m alpha*^n as the anti-normal word a^m ad^n.
OpPoly antiwick_quantize(const PhasePoly& a);

/// Inverse of antiwick_quantize: anti-normal order the operator and replace
/// a^m ad^n with alpha^m alpha*^n. Total; exact round trip.
PhasePoly antiwick_symbol(const OpPoly& a);

OpPoly quantize(const PhasePoly& a, Scheme scheme);
PhasePoly symbol(const OpPoly& a, Scheme scheme);

/// Gaussian smoothing with the coherent-state kernel (x-variance l^2/2,
/// p-variance hbar^2/(2 l^2), independent), evaluated exactly through even
/// moments. Maps anti-Wick symbols to Weyl symbols.
PhasePoly weierstrass_transform(const PhasePoly& a);

/// The helper polynomials of the alpha substitution, exposed for tests:
/// phase_to_alpha rewrites A(x,p) over the (alpha, alpha*) pair and
/// alpha_to_phase undoes it.
PhasePoly phase_to_alpha(const PhasePoly& a);
PhasePoly alpha_to_phase(const PhasePoly& a);

/// Outcome of quantizing two variables, multiplying the operators and pulling
/// the product back through the scheme's symbol map.
struct DiscrepancyReport {
    Scheme scheme;
    PhasePoly a;
    PhasePoly b;
    PhasePoly product_symbol;     // symbol of (quantize a)(quantize b)
    PhasePoly classical_product;  // a * b
    PhasePoly discrepancy;        // product_symbol - classical_product
    bool commute;                 // [quantize a, quantize b] == 0
};

DiscrepancyReport ks2b_report(const PhasePoly& a, const PhasePoly& b, Scheme scheme);

}  // namespace psq
