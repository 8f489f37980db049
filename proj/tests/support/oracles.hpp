#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "psq/kscolor.hpp"
#include "psq/op_poly.hpp"

namespace psq::oracle {

/// Literal symmetrization of x^j p^k: average over all (j+k)! permutations of
/// the letter tuple (X,...,X,P,...,P), independent of the closed form used by
/// the implementation.
inline OpPoly weyl_permutation_sum(int j, int k) {
    std::vector<int> index(j + k);
    std::iota(index.begin(), index.end(), 0);
    Word letters = Word(j, 'X') + Word(k, 'P');
    OpPoly raw(Alphabet::XP);
    BigInt count = 0;
    do {
        Word w;
        for (int pos : index) w += letters[pos];
        raw.add_term(w, Scalar::one());
        ++count;
    } while (std::next_permutation(index.begin(), index.end()));
    OpPoly sum = canonicalize(raw, OrderTag::Standard);
    return sum * Scalar(Rational(1, count == 0 ? BigInt(1) : count));
}

/// Exhaustive check over all 2^n assignments; the reference for the
/// backtracking solver on small inputs.
inline bool brute_force_colorable(const BasisList& bl, long* witness_count = nullptr) {
    const int n = bl.vector_count;
    long found = 0;
    bool any = false;
    for (long mask = 0; mask < (1L << n); ++mask) {
        bool ok = true;
        for (const auto& basis : bl.bases) {
            int sum = 0;
            for (int v : basis) sum += (mask >> v) & 1;
            if (sum != 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            any = true;
            ++found;
            if (!witness_count) return true;
        }
    }
    if (witness_count) *witness_count = found;
    return any;
}

}  // namespace psq::oracle
