#pragma once

#include <map>
#include <string>

#include "psq/scalar.hpp"

namespace psq {

enum class Alphabet { XP, Ladder };
enum class OrderTag { Standard, Normal, AntiNormal, Unordered };

/// Letters: 'X','P' in the position/momentum alphabet, 'a' (annihilation)
/// and 'd' (creation) in the ladder alphabet. A word is a product read left
/// to right; the empty word is the identity.
using Word = std::string;

const char* to_string(Alphabet a);
const char* to_string(OrderTag t);
OrderTag default_order(Alphabet a);
bool order_compatible(Alphabet a, OrderTag t);

/// Noncommutative polynomial over one alphabet with Scalar coefficients.
/// The order tag records which canonical order the stored words satisfy;
/// arithmetic that can break the order downgrades it to Unordered, and
/// canonicalize() restores a canonical representation. Equality compares
/// canonical forms.
class OpPoly {
  public:
    explicit OpPoly(Alphabet a = Alphabet::XP) : alphabet_(a) {}

    static OpPoly zero(Alphabet a) { return OpPoly(a); }
    static OpPoly constant(const Scalar& c, Alphabet a);
    static OpPoly identity(Alphabet a) { return constant(Scalar::one(), a); }
    static OpPoly from_word(Word w, const Scalar& c, Alphabet a);
    static OpPoly position() { return from_word("X", Scalar::one(), Alphabet::XP); }
    static OpPoly momentum() { return from_word("P", Scalar::one(), Alphabet::XP); }
    static OpPoly annihilation() { return from_word("a", Scalar::one(), Alphabet::Ladder); }
    static OpPoly creation() { return from_word("d", Scalar::one(), Alphabet::Ladder); }

    Alphabet alphabet() const { return alphabet_; }
    OrderTag order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    /// True when the polynomial is a multiple of the identity word.
    bool is_constant() const;
    Scalar constant_term() const;
    int max_word_length() const;
    const std::map<Word, Scalar>& terms() const { return terms_; }

    void add_term(const Word& w, const Scalar& c);

    OpPoly& operator+=(const OpPoly& o);
    OpPoly& operator-=(const OpPoly& o);
    OpPoly& operator*=(const Scalar& s);
    friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
    friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
    friend OpPoly operator*(OpPoly a, const Scalar& s) { return a *= s; }
    friend OpPoly operator*(const Scalar& s, OpPoly a) { return a *= s; }
    friend OpPoly operator-(const OpPoly& a);

    std::string to_string() const;

  private:
    friend OpPoly canonicalize(const OpPoly&, OrderTag);
    Alphabet alphabet_;
    OrderTag order_ = OrderTag::Unordered;
    std::map<Word, Scalar> terms_;
};

/// Canonical form of `a` in `target` order (must be compatible with the
/// alphabet). Rewrites the leftmost out-of-order adjacent pair with its
/// commutator remainder until every word conforms.
OpPoly canonicalize(const OpPoly& a, OrderTag target);
inline OpPoly canonicalize(const OpPoly& a) { return canonicalize(a, default_order(a.alphabet())); }

/// Product, canonicalized in the alphabet's default order. Throws on
/// alphabet mismatch.
OpPoly op_mul(const OpPoly& a, const OpPoly& b);

/// Exact alphabet change via X = l/sqrt2 (a + ad), P = i hbar/(sqrt2 l) (ad - a)
/// and its inverse; a round trip is the identity.
OpPoly change_alphabet(const OpPoly& a, Alphabet target);

/// AB - BA, canonicalized. Throws on alphabet mismatch.
OpPoly commutator(const OpPoly& a, const OpPoly& b);

/// Hermitian adjoint: conjugates coefficients, reverses words, swaps the
/// ladder letters. Result is canonicalized.
OpPoly adjoint(const OpPoly& a);

/// Operator equality across representations (converts alphabets as needed).
bool op_equal(const OpPoly& a, const OpPoly& b);

/// n-th power (n >= 0) via repeated op_mul.
OpPoly op_pow(const OpPoly& a, int n);

}  // namespace psq
