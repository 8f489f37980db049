#pragma once

#include <random>

#include "psq/op_poly.hpp"
#include "psq/phase_poly.hpp"

namespace psq::testgen {

using Rng = std::mt19937;

inline Rational rand_rational(Rng& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 6);
    Rational r;
    do {
        r = Rational(num(rng), den(rng));
    } while (nonzero && r == 0);
    return r;
}

inline Scalar rand_scalar(Rng& rng, bool complex_ok = true) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> power(-2, 2);
    std::uniform_int_distribution<int> s2(0, 1);
    std::uniform_int_distribution<int> coin(0, 1);
    Scalar s;
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        GaussianRational q(rand_rational(rng));
        if (complex_ok && coin(rng)) q.im = rand_rational(rng);
        s += Scalar::term(q, power(rng), power(rng), s2(rng));
    }
    return s;
}

inline PhasePoly rand_phase_poly(Rng& rng, int max_degree, bool real_only = false,
                                 bool rational_coeffs = false) {
    std::uniform_int_distribution<int> nterms(1, 5);
    PhasePoly poly;
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        std::uniform_int_distribution<int> dx(0, max_degree);
        int j = dx(rng);
        std::uniform_int_distribution<int> dp(0, max_degree - j);
        int kk = dp(rng);
        Scalar c = rational_coeffs ? Scalar(rand_rational(rng)) : rand_scalar(rng, !real_only);
        if (real_only && !rational_coeffs) c = c + c.conj();
        poly.add_term({j, kk}, c);
    }
    return poly;
}

inline OpPoly rand_op_poly(Rng& rng, Alphabet alphabet, int max_len) {
    std::uniform_int_distribution<int> nterms(1, 4);
    OpPoly op(alphabet);
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        std::uniform_int_distribution<int> len(0, max_len);
        int m = len(rng);
        Word w;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int t = 0; t < m; ++t)
            w += alphabet == Alphabet::XP ? (coin(rng) ? 'X' : 'P') : (coin(rng) ? 'a' : 'd');
        op.add_term(w, rand_scalar(rng));
    }
    return op;
}

}  // namespace psq::testgen
