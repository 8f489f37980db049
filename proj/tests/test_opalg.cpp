#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psq/fock.hpp"
#include "psq/op_poly.hpp"
#include "psq/parse.hpp"
#include "support/generators.hpp"

using namespace psq;

namespace {
const Scalar kIHbar = Scalar::unit_i() * Scalar::hbar();
}

TEST_CASE("op_mul examples") {
    OpPoly x = OpPoly::position(), p = OpPoly::momentum();

    // P X = X P - i hbar
    OpPoly px = op_mul(p, x);
    OpPoly expect(Alphabet::XP);
    expect.add_term("XP", Scalar::one());
    expect.add_term("", -kIHbar);
    CHECK(px.terms() == expect.terms());
    CHECK(px.order() == OrderTag::Standard);

    // (1/2 (XP + PX))^2 = X^2 P^2 - 2 i hbar X P - hbar^2/4
    OpPoly sym = parse_op_expr("(X*P + P*X)/2");
    OpPoly square = op_mul(sym, sym);
    CHECK(op_equal(square, parse_op_expr("X^2*P^2 - 2*i*hbar*X*P - hbar^2/4")));

    CHECK(op_equal(op_mul(x, x), parse_op_expr("X^2")));
    CHECK_THROWS_AS(op_mul(x, OpPoly::annihilation()), std::invalid_argument);
}

TEST_CASE("canonicalize examples") {
    // ad a  ->  a ad - 1 in anti-normal order
    OpPoly number(Alphabet::Ladder);
    number.add_term("da", Scalar::one());
    OpPoly anti = canonicalize(number, OrderTag::AntiNormal);
    OpPoly expect(Alphabet::Ladder);
    expect.add_term("ad", Scalar::one());
    expect.add_term("", -Scalar::one());
    CHECK(anti.terms() == expect.terms());

    // 1/2 (XP + PX) -> XP - i hbar/2
    OpPoly sym = canonicalize(parse_op_expr("(X*P + P*X)/2"), OrderTag::Standard);
    OpPoly expect2(Alphabet::XP);
    expect2.add_term("XP", Scalar::one());
    expect2.add_term("", -kIHbar * Scalar::rational(1, 2));
    CHECK(sym.terms() == expect2.terms());

    // X^2 in the ladder alphabet, anti-normal:
    //   l^2/2 (a^2 + 2 a ad + ad^2) - l^2/2
    OpPoly x2_ladder = change_alphabet(parse_op_expr("X^2"), Alphabet::Ladder);
    OpPoly expect3 =
        parse_op_expr("l^2/2 * (a^2 + 2*a*ad + ad^2) - l^2/2");
    CHECK(x2_ladder.terms() == expect3.terms());

    CHECK_THROWS_AS(canonicalize(parse_op_expr("X"), OrderTag::Normal), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize(parse_op_expr("a"), OrderTag::Standard), std::invalid_argument);
}

TEST_CASE("change_alphabet examples and round trip") {
    // a = 1/sqrt2 (X/l + i l P/hbar)
    OpPoly a_xp = change_alphabet(OpPoly::annihilation(), Alphabet::XP);
    CHECK(op_equal(a_xp, parse_op_expr("(X/l + i*l*P/hbar)/sqrt2")));

    // X = l/sqrt2 (a + ad)
    OpPoly x_ladder = change_alphabet(OpPoly::position(), Alphabet::Ladder);
    CHECK(op_equal(x_ladder, parse_op_expr("l/sqrt2*(a + ad)")));

    testgen::Rng rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        OpPoly a = testgen::rand_op_poly(rng, Alphabet::XP, 4);
        CHECK(op_equal(change_alphabet(change_alphabet(a, Alphabet::Ladder), Alphabet::XP), a));
        OpPoly b = testgen::rand_op_poly(rng, Alphabet::Ladder, 4);
        CHECK(op_equal(change_alphabet(change_alphabet(b, Alphabet::XP), Alphabet::Ladder), b));
    }
}

TEST_CASE("commutator examples") {
    CHECK(op_equal(commutator(OpPoly::position(), OpPoly::momentum()),
                   parse_op_expr("i*hbar")));
    CHECK(op_equal(commutator(OpPoly::annihilation(), OpPoly::creation()),
                   parse_op_expr("1 + 0*a")));
    CHECK(op_equal(commutator(parse_op_expr("X^2"), parse_op_expr("P")),
                   parse_op_expr("2*i*hbar*X")));
    CHECK_THROWS_AS(commutator(OpPoly::position(), OpPoly::creation()), std::invalid_argument);
}

TEST_CASE("commutator algebra on random inputs") {
    testgen::Rng rng(1234);
    for (int iter = 0; iter < 40; ++iter) {
        OpPoly a = testgen::rand_op_poly(rng, Alphabet::XP, 3);
        OpPoly b = testgen::rand_op_poly(rng, Alphabet::XP, 3);
        OpPoly c = testgen::rand_op_poly(rng, Alphabet::XP, 3);
        CHECK((commutator(a, b) + commutator(b, a)).is_zero());
        // Leibniz: [A, BC] = [A,B] C + B [A,C]
        OpPoly lhs = commutator(a, op_mul(b, c));
        OpPoly rhs = op_mul(commutator(a, b), c) + op_mul(b, commutator(a, c));
        CHECK(op_equal(lhs, rhs));
        // Jacobi
        OpPoly jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                        commutator(c, commutator(a, b));
        CHECK(jacobi.is_zero());
    }
}

TEST_CASE("adjoint examples and involution") {
    // (X P)+ = P X = X P - i hbar
    OpPoly xp(Alphabet::XP);
    xp.add_term("XP", Scalar::one());
    CHECK(op_equal(adjoint(xp), parse_op_expr("X*P - i*hbar")));

    CHECK(op_equal(adjoint(parse_op_expr("i*hbar")), parse_op_expr("0 - i*hbar")));

    OpPoly sym = parse_op_expr("(X*P + P*X)/2");
    CHECK(op_equal(adjoint(sym), sym));

    testgen::Rng rng(5150);
    for (int iter = 0; iter < 60; ++iter) {
        Alphabet alpha = iter % 2 ? Alphabet::XP : Alphabet::Ladder;
        OpPoly a = testgen::rand_op_poly(rng, alpha, 4);
        OpPoly b = testgen::rand_op_poly(rng, alpha, 4);
        CHECK(op_equal(adjoint(adjoint(a)), a));
        CHECK(op_equal(adjoint(op_mul(a, b)), op_mul(adjoint(b), adjoint(a))));
    }
}

TEST_CASE("canonicalization is confluent across association orders") {
    testgen::Rng rng(31415);
    for (int iter = 0; iter < 30; ++iter) {
        Alphabet alpha = iter % 2 ? Alphabet::XP : Alphabet::Ladder;
        std::vector<OpPoly> factors;
        for (int k = 0; k < 5; ++k) factors.push_back(testgen::rand_op_poly(rng, alpha, 2));
        // left fold
        OpPoly left = factors[0];
        for (int k = 1; k < 5; ++k) left = op_mul(left, factors[k]);
        // right fold
        OpPoly right = factors[4];
        for (int k = 3; k >= 0; --k) right = op_mul(factors[k], right);
        // mixed association
        OpPoly mixed = op_mul(op_mul(factors[0], factors[1]),
                              op_mul(factors[2], op_mul(factors[3], factors[4])));
        CHECK(op_equal(left, right));
        CHECK(op_equal(left, mixed));
    }
}

TEST_CASE("canonicalize preserves the operator numerically") {
    // Spot check against the Fock backend: the unordered word sum and its
    // canonical form evaluate to the same matrix on the leading block.
    testgen::Rng rng(2718);
    FockConfig config{32, 1.0, 1.0};
    for (int iter = 0; iter < 10; ++iter) {
        Alphabet alpha = iter % 2 ? Alphabet::XP : Alphabet::Ladder;
        OpPoly raw = testgen::rand_op_poly(rng, alpha, 4);
        OpPoly canon = canonicalize(raw, default_order(alpha));
        FockMatrix m_raw = op_to_matrix(raw, config);
        FockMatrix m_canon = op_to_matrix(canon, config);
        CHECK(block_distance(m_raw.mat, m_canon.mat, 16) < 1e-10);
    }
}
