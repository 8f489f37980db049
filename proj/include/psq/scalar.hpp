#pragma once

#include <complex>
#include <compare>
#include <map>
#include <string>

#include "psq/rational.hpp"

namespace psq {

/// Exponent triple (hbar, l, sqrt2) identifying one symbolic unit.
struct ScalarKey {
    int hbar = 0;
    int len = 0;
    int sqrt2 = 0;  // canonical form keeps this in {0, 1}
    friend auto operator<=>(const ScalarKey&, const ScalarKey&) = default;
};

/// Exact coefficient: finite sum of Gaussian rationals times integer powers
/// of hbar and l and a residual sqrt2 factor. Powers of sqrt2 are folded so
/// that 2^(s div 2) lands in the rational part and the stored exponent is
/// 0 or 1. Zero terms are never stored, so equality is plain map equality.
class Scalar {
  public:
    Scalar() = default;  // zero
    Scalar(long n) { insert({}, GaussianRational(n)); }
    Scalar(const Rational& q) { insert({}, GaussianRational(q)); }
    Scalar(const GaussianRational& q) { insert({}, q); }

    static Scalar zero() { return {}; }
    static Scalar one() { return Scalar(1); }
    static Scalar unit_i() { return Scalar(GaussianRational::unit_i()); }
    static Scalar rational(long num, long den);
    static Scalar hbar(int pow = 1);
    static Scalar length(int pow = 1);
    static Scalar sqrt2(int pow = 1);
    /// q * hbar^h * l^lp * sqrt2^s (s arbitrary, folded on construction).
    static Scalar term(const GaussianRational& q, int h, int lp, int s);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// True when the value is invariant under complex conjugation.
    bool is_real() const;
    /// True when the value is a plain Gaussian rational (no hbar/l/sqrt2).
    bool is_numeric() const;
    /// True when a single stored term (the invertible case).
    bool is_monomial() const { return terms_.size() == 1; }

    Scalar conj() const;
    /// Multiplicative inverse; defined only for single-term Scalars.
    Scalar inverse() const;
    Scalar pow(int e) const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

    /// Exact evaluation at rational hbar and l. Throws if any term carries an
    /// odd sqrt2 power (not representable as a Gaussian rational) or if a
    /// negative exponent meets a zero substitution.
    GaussianRational evaluate(const Rational& hbar_val, const Rational& l_val) const;

    /// Floating evaluation; sqrt2 is admitted here.
    std::complex<double> evaluate_approx(double hbar_val, double l_val) const;

    const std::map<ScalarKey, GaussianRational>& terms() const { return terms_; }

    /// Grammar-conformant rendering, e.g. "1/2*i*hbar" or "3*l/(4*hbar^2)".
    /// Multi-term or complex-sum values are parenthesized when
    /// `as_product_factor` so the result can be glued to a monomial with '*'.
    std::string to_string(bool as_product_factor = false) const;

    /// Splits off a leading minus sign for pretty sum printing. Returns true
    /// and fills `magnitude` when the value prints more naturally negated;
    /// multi-term values always return false.
    bool negative_form(std::string& magnitude, bool as_product_factor) const;

  private:
    void insert(ScalarKey key, GaussianRational value);

    std::map<ScalarKey, GaussianRational> terms_;
};

}  // namespace psq
