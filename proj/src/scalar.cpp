#include "psq/scalar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace psq {

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

namespace {

Rational rational_pow(const Rational& base, int e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("Scalar: zero substituted for symbol with negative exponent");
        return Rational(0);
    }
    Rational acc(1);
    Rational b = e > 0 ? base : Rational(1) / base;
    for (int k = std::abs(e); k > 0; --k) acc *= b;
    return acc;
}

// 2^e for integer e (possibly negative).
Rational pow2(long e) {
    Rational r(1);
    for (long k = 0; k < std::labs(e); ++k) r *= 2;
    return e >= 0 ? r : Rational(1) / r;
}

}  // namespace

void Scalar::insert(ScalarKey key, GaussianRational value) {
    if (value.is_zero()) return;
    // Fold sqrt2^(2m) into the rational part; floored division keeps the
    // residue in {0,1} for negative exponents as well.
    long s = key.sqrt2;
    long q = (s >= 0) ? s / 2 : -((-s + 1) / 2);
    long rem = s - 2 * q;
    if (q != 0) {
        GaussianRational f(pow2(q));
        value *= f;
    }
    key.sqrt2 = static_cast<int>(rem);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(value));
    } else {
        it->second += value;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    return Scalar(Rational(num, den));
}

Scalar Scalar::hbar(int pow) {
    Scalar s;
    s.insert({pow, 0, 0}, GaussianRational(1L));
    return s;
}

Scalar Scalar::length(int pow) {
    Scalar s;
    s.insert({0, pow, 0}, GaussianRational(1L));
    return s;
}

Scalar Scalar::sqrt2(int pow) {
    Scalar s;
    s.insert({0, 0, pow}, GaussianRational(1L));
    return s;
}

Scalar Scalar::term(const GaussianRational& q, int h, int lp, int s) {
    Scalar out;
    out.insert({h, lp, s}, q);
    return out;
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ScalarKey{} &&
           terms_.begin()->second == GaussianRational(1L);
}

bool Scalar::is_real() const {
    for (const auto& [key, q] : terms_)
        if (q.im != 0) return false;
    return true;
}

bool Scalar::is_numeric() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == ScalarKey{};
}

Scalar Scalar::conj() const {
    Scalar out;
    for (const auto& [key, q] : terms_) out.terms_.emplace(key, q.conj());
    return out;
}

Scalar Scalar::inverse() const {
    if (terms_.size() != 1)
        throw std::domain_error("Scalar: only single-term values are invertible");
    const auto& [key, q] = *terms_.begin();
    Scalar out;
    GaussianRational qi = q.inverse();
    // 1/sqrt2 = sqrt2/2
    if (key.sqrt2 == 1) qi *= GaussianRational(Rational(1, 2));
    out.insert({-key.hbar, -key.len, key.sqrt2}, qi);
    return out;
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = one();
    for (int k = 0; k < e; ++k) acc *= *this;
    return acc;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (const auto& [key, q] : o.terms_) insert(key, q);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (const auto& [key, q] : o.terms_) insert(key, -q);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    Scalar out;
    for (const auto& [ka, qa] : terms_)
        for (const auto& [kb, qb] : o.terms_)
            out.insert({ka.hbar + kb.hbar, ka.len + kb.len, ka.sqrt2 + kb.sqrt2}, qa * qb);
    terms_ = std::move(out.terms_);
    return *this;
}

Scalar operator-(const Scalar& a) {
    Scalar out;
    for (const auto& [key, q] : a.terms_) out.terms_.emplace(key, -q);
    return out;
}

GaussianRational Scalar::evaluate(const Rational& hbar_val, const Rational& l_val) const {
    GaussianRational acc;
    for (const auto& [key, q] : terms_) {
        if (key.sqrt2 != 0)
            throw std::domain_error("Scalar: odd sqrt2 power has no exact rational value");
        GaussianRational t = q;
        t *= GaussianRational(rational_pow(hbar_val, key.hbar) * rational_pow(l_val, key.len));
        acc += t;
    }
    return acc;
}

std::complex<double> Scalar::evaluate_approx(double hbar_val, double l_val) const {
    std::complex<double> acc = 0.0;
    for (const auto& [key, q] : terms_) {
        double mag = std::pow(hbar_val, key.hbar) * std::pow(l_val, key.len);
        if (key.sqrt2 == 1) mag *= std::numbers::sqrt2;
        acc += std::complex<double>(to_double(q.re), to_double(q.im)) * mag;
    }
    return acc;
}

namespace {

void push_power(std::vector<std::string>& num, std::vector<std::string>& den,
                const char* name, int e) {
    if (e == 0) return;
    auto& side = e > 0 ? num : den;
    int a = std::abs(e);
    side.push_back(a == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(a));
}

// One canonical term as a product string. `q` must be nonzero.
std::string term_to_string(const ScalarKey& key, const GaussianRational& q) {
    std::vector<std::string> num, den;
    if (q.im == 0) {
        if (numerator(q.re) != 1 || key == ScalarKey{}) num.push_back(numerator(q.re).str());
        if (denominator(q.re) != 1) den.push_back(denominator(q.re).str());
    } else if (q.re == 0) {
        if (numerator(q.im) != 1) num.push_back(numerator(q.im).str());
        if (denominator(q.im) != 1) den.push_back(denominator(q.im).str());
        num.push_back("i");
    } else {
        std::string rhs = rational_to_string(boost::multiprecision::abs(q.im)) + "*i";
        if (q.im < 0) rhs = "- " + rhs;
        num.push_back("(" + rational_to_string(q.re) + (q.im < 0 ? " " : " + ") + rhs + ")");
    }
    push_power(num, den, "hbar", key.hbar);
    push_power(num, den, "l", key.len);
    push_power(num, den, "sqrt2", key.sqrt2);
    std::string out;
    if (num.empty()) {
        out = "1";
    } else {
        for (size_t k = 0; k < num.size(); ++k) out += (k ? "*" : "") + num[k];
    }
    if (!den.empty()) {
        if (den.size() == 1) {
            out += "/" + den[0];
        } else {
            out += "/(";
            for (size_t k = 0; k < den.size(); ++k) out += (k ? "*" : "") + den[k];
            out += ")";
        }
    }
    return out;
}

// Sign-of-term for pretty printing: negative when the real part (or, failing
// that, the imaginary part) is negative.
bool term_prints_negative(const GaussianRational& q) {
    if (q.re != 0) return q.re < 0;
    return q.im < 0;
}

}  // namespace

bool Scalar::negative_form(std::string& magnitude, bool as_product_factor) const {
    if (terms_.size() != 1) return false;
    const auto& [key, q] = *terms_.begin();
    if (!term_prints_negative(q)) return false;
    magnitude = (-*this).to_string(as_product_factor);
    return true;
}

std::string Scalar::to_string(bool as_product_factor) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, q] : terms_) {
        if (first) {
            out = term_to_string(key, q);
            if (term_prints_negative(q) && q.re != 0 && q.im != 0) {
                // complex pair already parenthesized with internal signs
            } else if (term_prints_negative(q)) {
                out = "-" + term_to_string(key, -q);
            }
            first = false;
        } else if (term_prints_negative(q) && !(q.re != 0 && q.im != 0)) {
            out += " - " + term_to_string(key, -q);
        } else {
            out += " + " + term_to_string(key, q);
        }
    }
    if (as_product_factor && terms_.size() > 1) out = "(" + out + ")";
    return out;
}

}  // namespace psq
