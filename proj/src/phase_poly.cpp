#include "psq/phase_poly.hpp"

#include <algorithm>
#include <vector>

namespace psq {

PhasePoly PhasePoly::monomial(Monomial m, const Scalar& c) {
    PhasePoly out;
    out.add_term(m, c);
    return out;
}

void PhasePoly::add_term(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    if (m.x < 0 || m.p < 0) throw std::domain_error("PhasePoly: negative variable exponent");
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
        coeffs_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

bool PhasePoly::is_constant() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == Monomial{});
}

Scalar PhasePoly::constant_term() const {
    auto it = coeffs_.find({0, 0});
    return it == coeffs_.end() ? Scalar::zero() : it->second;
}

bool PhasePoly::is_real() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return kv.second.is_real(); });
}

int PhasePoly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : coeffs_) d = std::max(d, m.x + m.p);
    return d;
}

PhasePoly PhasePoly::conj() const {
    PhasePoly out;
    for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, c.conj());
    return out;
}

PhasePoly PhasePoly::pow(int e) const {
    if (e < 0) throw std::domain_error("PhasePoly: negative exponent");
    PhasePoly acc = one();
    for (int k = 0; k < e; ++k) acc *= *this;
    return acc;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
    for (const auto& [m, c] : o.coeffs_) add_term(m, c);
    return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
    for (const auto& [m, c] : o.coeffs_) add_term(m, -c);
    return *this;
}

PhasePoly& PhasePoly::operator*=(const PhasePoly& o) {
    PhasePoly out;
    for (const auto& [ma, ca] : coeffs_)
        for (const auto& [mb, cb] : o.coeffs_)
            out.add_term({ma.x + mb.x, ma.p + mb.p}, ca * cb);
    coeffs_ = std::move(out.coeffs_);
    return *this;
}

PhasePoly& PhasePoly::operator*=(const Scalar& s) {
    PhasePoly out;
    for (const auto& [m, c] : coeffs_) out.add_term(m, c * s);
    coeffs_ = std::move(out.coeffs_);
    return *this;
}

PhasePoly operator-(const PhasePoly& a) {
    PhasePoly out;
    for (const auto& [m, c] : a.coeffs_) out.coeffs_.emplace(m, -c);
    return out;
}

GaussianRational PhasePoly::evaluate(const Rational& x_val, const Rational& p_val,
                                     const Rational& hbar_val, const Rational& l_val) const {
    auto ipow = [](const Rational& b, int e) {
        Rational acc(1);
        for (int k = 0; k < e; ++k) acc *= b;
        return acc;
    };
    GaussianRational acc;
    for (const auto& [m, c] : coeffs_) {
        GaussianRational t = c.evaluate(hbar_val, l_val);
        t *= GaussianRational(ipow(x_val, m.x) * ipow(p_val, m.p));
        acc += t;
    }
    return acc;
}

std::complex<double> PhasePoly::evaluate_approx(double x_val, double p_val, double hbar_val,
                                                double l_val) const {
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : coeffs_)
        acc += c.evaluate_approx(hbar_val, l_val) * std::pow(x_val, m.x) * std::pow(p_val, m.p);
    return acc;
}

PhasePoly PhasePoly::compose(const PhasePoly& sx, const PhasePoly& sp) const {
    // Power tables keep repeated substitution cheap.
    std::vector<PhasePoly> xp{PhasePoly::one()}, pp{PhasePoly::one()};
    auto power = [](std::vector<PhasePoly>& table, const PhasePoly& base, int e) {
        while (static_cast<int>(table.size()) <= e) table.push_back(table.back() * base);
        return table[e];
    };
    PhasePoly acc;
    for (const auto& [m, c] : coeffs_)
        acc += Scalar(c) * power(xp, sx, m.x) * power(pp, sp, m.p);
    return acc;
}

std::string poly_to_string(const PhasePoly& poly, const char* xname, const char* pname) {
    if (poly.is_zero()) return "0";
    // Graded ordering, highest total degree first, x-heavy terms first.
    std::vector<std::pair<Monomial, Scalar>> terms(poly.terms().begin(), poly.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first.x + a.first.p, db = b.first.x + b.first.p;
        if (da != db) return da > db;
        return a.first.x > b.first.x;
    });
    auto monomial_str = [&](const Monomial& m) {
        std::string s;
        if (m.x > 0) s += std::string(xname) + (m.x > 1 ? "^" + std::to_string(m.x) : "");
        if (m.p > 0)
            s += (s.empty() ? "" : "*") + std::string(pname) +
                 (m.p > 1 ? "^" + std::to_string(m.p) : "");
        return s;
    };
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        std::string mono = monomial_str(m);
        std::string mag;
        bool neg = c.negative_form(mag, !mono.empty());
        if (!neg) mag = c.to_string(!mono.empty());
        std::string body;
        if (mono.empty()) {
            body = mag;
        } else if (mag == "1") {
            body = mono;
        } else {
            body = mag + "*" + mono;
        }
        if (first) {
            out = neg ? "-" + body : body;
            first = false;
        } else if (neg) {
            out += " - " + body;
        } else if (!body.empty() && body[0] == '-') {
            // A flat multi-term coefficient may lead with its own minus.
            out += " - " + body.substr(1);
        } else {
            out += " + " + body;
        }
    }
    return out;
}

std::string PhasePoly::to_string() const { return poly_to_string(*this, "x", "p"); }

}  // namespace psq
