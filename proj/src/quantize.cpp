#include "psq/quantize.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace psq {

const char* to_string(Scheme s) { return s == Scheme::Weyl ? "weyl" : "antiwick"; }

namespace {

Rational binomial(int n, int k) {
    BigInt num = 1, den = 1;
    for (int j = 0; j < k; ++j) {
        num *= n - j;
        den *= j + 1;
    }
    return Rational(num, den);
}

// Symmetrized image of one monomial, standard order.
OpPoly weyl_monomial(int j, int k) {
    OpPoly raw(Alphabet::XP);
    const Scalar scale(Rational(1, BigInt(1) << j));
    for (int r = 0; r <= j; ++r) {
        Word w = Word(r, 'X') + Word(k, 'P') + Word(j - r, 'X');
        raw.add_term(w, scale * Scalar(binomial(j, r)));
    }
    return canonicalize(raw, OrderTag::Standard);
}

// Weyl symbol of the standard word X^j P^k, memoized. Recursion: the
// symmetrization of x^j p^k has X^j P^k as its unique leading word, so
//   symbol(X^j P^k) = x^j p^k - sum of symbols of the lower-degree words
// appearing in weyl_monomial(j,k).
const PhasePoly& weyl_symbol_of_word(int j, int k) {
    static std::map<std::pair<int, int>, PhasePoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto resolve = [&](int jj, int kk, auto&& self) -> const PhasePoly& {
        auto it = cache.find({jj, kk});
        if (it != cache.end()) return it->second;
        PhasePoly sym = PhasePoly::monomial({jj, kk}, Scalar::one());
        const OpPoly image = weyl_monomial(jj, kk);
        for (const auto& [w, c] : image.terms()) {
            int wj = static_cast<int>(std::count(w.begin(), w.end(), 'X'));
            int wk = static_cast<int>(w.size()) - wj;
            if (wj == jj && wk == kk) continue;  // the leading word
            sym -= self(wj, wk, self) * c;
        }
        return cache.emplace(std::make_pair(jj, kk), std::move(sym)).first->second;
    };
    return resolve(j, k, resolve);
}

}  // namespace

OpPoly weyl_quantize(const PhasePoly& a) {
    OpPoly out(Alphabet::XP);
    for (const auto& [m, c] : a.terms()) {
        OpPoly q = weyl_monomial(m.x, m.p);
        out += q * c;
    }
    return canonicalize(out, OrderTag::Standard);
}

PhasePoly weyl_symbol(const OpPoly& a) {
    OpPoly xp = a.alphabet() == Alphabet::XP ? canonicalize(a, OrderTag::Standard)
                                             : change_alphabet(a, Alphabet::XP);
    PhasePoly out;
    for (const auto& [w, c] : xp.terms()) {
        int j = static_cast<int>(std::count(w.begin(), w.end(), 'X'));
        int k = static_cast<int>(w.size()) - j;
        out += weyl_symbol_of_word(j, k) * c;
    }
    return out;
}

PhasePoly phase_to_alpha(const PhasePoly& a) {
    // x = l/sqrt2 (alpha + alpha*),  p = i hbar/(sqrt2 l) (alpha* - alpha)
    const Scalar inv_sqrt2 = Scalar::sqrt2(-1);
    PhasePoly x_sub, p_sub;
    x_sub.add_term({1, 0}, Scalar::length() * inv_sqrt2);
    x_sub.add_term({0, 1}, Scalar::length() * inv_sqrt2);
    Scalar pc = Scalar::unit_i() * Scalar::hbar() * Scalar::length(-1) * inv_sqrt2;
    p_sub.add_term({0, 1}, pc);
    p_sub.add_term({1, 0}, -pc);
    return a.compose(x_sub, p_sub);
}

PhasePoly alpha_to_phase(const PhasePoly& a) {
    // alpha = (x/l + i l p/hbar)/sqrt2 and its conjugate.
    const Scalar inv_sqrt2 = Scalar::sqrt2(-1);
    PhasePoly alpha, alpha_c;
    alpha.add_term({1, 0}, Scalar::length(-1) * inv_sqrt2);
    alpha.add_term({0, 1}, Scalar::unit_i() * Scalar::length() * Scalar::hbar(-1) * inv_sqrt2);
    alpha_c.add_term({1, 0}, Scalar::length(-1) * inv_sqrt2);
    alpha_c.add_term({0, 1}, -Scalar::unit_i() * Scalar::length() * Scalar::hbar(-1) * inv_sqrt2);
    return a.compose(alpha, alpha_c);
}

OpPoly antiwick_quantize(const PhasePoly& a) {
    PhasePoly alpha_poly = phase_to_alpha(a);
    OpPoly out(Alphabet::Ladder);
    for (const auto& [m, c] : alpha_poly.terms())
        out.add_term(Word(m.x, 'a') + Word(m.p, 'd'), c);
    return canonicalize(out, OrderTag::AntiNormal);
}

PhasePoly antiwick_symbol(const OpPoly& a) {
    OpPoly ladder = a.alphabet() == Alphabet::Ladder ? canonicalize(a, OrderTag::AntiNormal)
                                                     : change_alphabet(a, Alphabet::Ladder);
    PhasePoly alpha_poly;
    for (const auto& [w, c] : ladder.terms()) {
        int m = static_cast<int>(std::count(w.begin(), w.end(), 'a'));
        int n = static_cast<int>(w.size()) - m;
        alpha_poly.add_term({m, n}, c);
    }
    return alpha_to_phase(alpha_poly);
}

OpPoly quantize(const PhasePoly& a, Scheme scheme) {
    return scheme == Scheme::Weyl ? weyl_quantize(a) : antiwick_quantize(a);
}

PhasePoly symbol(const OpPoly& a, Scheme scheme) {
    return scheme == Scheme::Weyl ? weyl_symbol(a) : antiwick_symbol(a);
}

PhasePoly weierstrass_transform(const PhasePoly& a) {
    PhasePoly out;
    for (const auto& [m, c] : a.terms()) {
        for (int r = 0; r <= m.x; r += 2) {
            for (int s = 0; s <= m.p; s += 2) {
                // Even central moments of the kernel: (r-1)!! (l^2/2)^(r/2)
                // in x and (s-1)!! (hbar^2/(2 l^2))^(s/2) in p.
                Rational dfr = 1, dfs = 1;
                for (int t = r - 1; t > 1; t -= 2) dfr *= t;
                for (int t = s - 1; t > 1; t -= 2) dfs *= t;
                Scalar moment = Scalar(binomial(m.x, r) * binomial(m.p, s) * dfr * dfs *
                                       Rational(1, BigInt(1) << ((r + s) / 2))) *
                                Scalar::length(r - s) * Scalar::hbar(s);
                out.add_term({m.x - r, m.p - s}, c * moment);
            }
        }
    }
    return out;
}

DiscrepancyReport ks2b_report(const PhasePoly& a, const PhasePoly& b, Scheme scheme) {
    OpPoly qa = quantize(a, scheme);
    OpPoly qb = quantize(b, scheme);
    OpPoly product = op_mul(qa, qb);
    DiscrepancyReport report{scheme, a, b, symbol(product, scheme), a * b, PhasePoly(), false};
    report.discrepancy = report.product_symbol - report.classical_product;
    report.commute = commutator(qa, qb).is_zero();
    return report;
}

}  // namespace psq
