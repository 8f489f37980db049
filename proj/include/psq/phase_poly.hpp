#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "psq/scalar.hpp"

namespace psq {

/// Exponent pair of one monomial x^j p^k. Also reused for polynomials in the
/// complex pair (alpha, alpha*) during anti-Wick conversions.
struct Monomial {
    int x = 0;
    int p = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Commutative polynomial in the phase-space variables with Scalar
/// coefficients. Zero coefficients are never stored.
class PhasePoly {
  public:
    PhasePoly() = default;  // zero
    PhasePoly(const Scalar& c) { add_term({0, 0}, c); }
    PhasePoly(long n) : PhasePoly(Scalar(n)) {}

    static PhasePoly zero() { return {}; }
    static PhasePoly one() { return PhasePoly(Scalar::one()); }
    static PhasePoly x(int pow = 1) { return monomial({pow, 0}, Scalar::one()); }
    static PhasePoly p(int pow = 1) { return monomial({0, pow}, Scalar::one()); }
    static PhasePoly monomial(Monomial m, const Scalar& c);

    void add_term(Monomial m, const Scalar& c);

    bool is_zero() const { return coeffs_.empty(); }
    /// True when the polynomial is a constant (possibly zero).
    bool is_constant() const;
    /// The constant coefficient (zero Scalar when absent).
    Scalar constant_term() const;
    bool is_real() const;
    int total_degree() const;

    PhasePoly conj() const;
    PhasePoly pow(int e) const;

    PhasePoly& operator+=(const PhasePoly& o);
    PhasePoly& operator-=(const PhasePoly& o);
    PhasePoly& operator*=(const PhasePoly& o);
    PhasePoly& operator*=(const Scalar& s);
    friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
    friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
    friend PhasePoly operator*(PhasePoly a, const PhasePoly& b) { return a *= b; }
    friend PhasePoly operator*(PhasePoly a, const Scalar& s) { return a *= s; }
    friend PhasePoly operator*(const Scalar& s, PhasePoly a) { return a *= s; }
    friend PhasePoly operator-(const PhasePoly& a);
    friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Exact substitution homomorphism. Throws on zero substituted into a
    /// negative symbolic power or on an odd sqrt2 power.
    GaussianRational evaluate(const Rational& x_val, const Rational& p_val,
                              const Rational& hbar_val, const Rational& l_val) const;

    /// Floating evaluation (sqrt2 admitted).
    std::complex<double> evaluate_approx(double x_val, double p_val, double hbar_val,
                                         double l_val) const;

    /// Substitutes polynomials for the two variables: A(x, p) -> A(sx, sp).
    PhasePoly compose(const PhasePoly& sx, const PhasePoly& sp) const;

    const std::map<Monomial, Scalar>& terms() const { return coeffs_; }

    std::string to_string() const;

  private:
    std::map<Monomial, Scalar> coeffs_;
};

/// Names the two variables used when printing; Alpha prints "al"/"alc"
/// (the conjugate pair) instead of "x"/"p".
std::string poly_to_string(const PhasePoly& poly, const char* xname, const char* pname);

}  // namespace psq
