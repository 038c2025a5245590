#include <doctest.h>

#include <random>

#include "dq/moyal.hpp"
#include "dq/weyl.hpp"

using namespace dq;

namespace {

HPoly ih(CRational c = CRational(1)) { return HPoly::hbar(1, c * CRational::i()); }

PhasePoly random_poly(std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> C(-3, 3);
    PhasePoly f;
    for (int a = 0; a <= maxdeg; ++a)
        for (int b = 0; a + b <= maxdeg; ++b)
            if (rng() % 2) f.add(a, b, HPoly(C(rng)));
    return f;
}

} // namespace

TEST_CASE("op_mul rewrites through the CCR") {
    OperatorPoly x = OperatorPoly::x_pow(1);
    OperatorPoly p = OperatorPoly::p_pow(1);

    OperatorPoly px = op_mul(p, x);
    CHECK(px.coeff(1, 1) == HPoly(1));
    CHECK(px.coeff(0, 0) == -ih());

    CHECK(op_mul(x, p) == OperatorPoly::word(1, 1));
    CHECK(op_mul(x, OperatorPoly::word(1, 1)) == OperatorPoly::word(2, 1));

    // Associativity spot checks on words.
    OperatorPoly a = OperatorPoly::word(2, 1);
    OperatorPoly b = OperatorPoly::word(1, 2);
    OperatorPoly c = OperatorPoly::word(0, 3);
    CHECK(op_mul(op_mul(a, b), c) == op_mul(a, op_mul(b, c)));
}

TEST_CASE("commutator basics") {
    OperatorPoly x = OperatorPoly::x_pow(1);
    OperatorPoly p = OperatorPoly::p_pow(1);
    OperatorPoly c = commutator(x, p);
    CHECK(c == OperatorPoly(ih()));
    CHECK(commutator(OperatorPoly::word(2, 3), OperatorPoly::word(2, 3)).is_zero());

    // [x^3, p^3] = 3 i hbar (x^2 p^2 + x p^2 x + p^2 x^2), normal-ordered.
    OperatorPoly lhs = commutator(OperatorPoly::x_pow(3), OperatorPoly::p_pow(3));
    OperatorPoly rhs = HPoly::hbar(1, CRational(Rational(3)) * CRational::i()) *
                       (op_mul(OperatorPoly::x_pow(2), OperatorPoly::p_pow(2)) +
                        op_mul(OperatorPoly::x_pow(1),
                               op_mul(OperatorPoly::p_pow(2), OperatorPoly::x_pow(1))) +
                        op_mul(OperatorPoly::p_pow(2), OperatorPoly::x_pow(2)));
    CHECK(lhs == rhs);
}

TEST_CASE("commutator is a Lie bracket: Jacobi and Leibniz") {
    std::mt19937 rng(3);
    auto random_op = [&](int maxdeg) {
        std::uniform_int_distribution<int> C(-2, 2);
        OperatorPoly A;
        for (int a = 0; a <= maxdeg; ++a)
            for (int b = 0; a + b <= maxdeg; ++b)
                if (rng() % 2) A.add(a, b, HPoly(C(rng)));
        return A;
    };
    for (int k = 0; k < 100; ++k) {
        OperatorPoly A = random_op(3), B = random_op(3), C = random_op(3);
        OperatorPoly jac = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) +
                           commutator(C, commutator(A, B));
        CHECK(jac.is_zero());
    }
    for (int k = 0; k < 20; ++k) {
        OperatorPoly A = random_op(2), B = random_op(2), C = random_op(2);
        OperatorPoly lhs = commutator(op_mul(A, B), C);
        OperatorPoly rhs = op_mul(A, commutator(B, C)) + op_mul(commutator(A, C), B);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("power-commutator closed form") {
    CHECK(xnpm_commutator_closed(1, 1) == OperatorPoly(ih()));
    CHECK(xnpm_commutator_closed(3, 1) ==
          HPoly::hbar(1, CRational(Rational(3)) * CRational::i()) * OperatorPoly::x_pow(2));
    // (2,3) -> 3 i hbar (x p^2 + p^2 x), normal-ordered.
    OperatorPoly expect = HPoly::hbar(1, CRational(Rational(3)) * CRational::i()) *
                          (op_mul(OperatorPoly::x_pow(1), OperatorPoly::p_pow(2)) +
                           op_mul(OperatorPoly::p_pow(2), OperatorPoly::x_pow(1)));
    CHECK(xnpm_commutator_closed(2, 3) == expect);

    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m)
            CHECK(xnpm_commutator_closed(n, m) ==
                  commutator(OperatorPoly::x_pow(n), OperatorPoly::p_pow(m)));

    CHECK_THROWS(xnpm_commutator_closed(0, 1));
}

TEST_CASE("groenewold anomaly") {
    GroenewoldResult r = groenewold_check();
    CHECK(r.classical.is_zero());
    HPoly expect = HPoly::hbar(2, CRational(Rational(-3)));
    CHECK(r.quantum == expect);
    CHECK(std::abs(r.quantum.eval(1.0) - cplx(-3.0)) == 0.0);
}

TEST_CASE("weyl quantization of monomials") {
    CHECK(weyl_quantize_poly(PhasePoly::monomial(2, 0)) == OperatorPoly::x_pow(2));
    // xp -> (XP + PX)/2 = XP - i hbar / 2.
    OperatorPoly q = weyl_quantize_poly(PhasePoly::monomial(1, 1));
    CHECK(q.coeff(1, 1) == HPoly(1));
    CHECK(q.coeff(0, 0) == HPoly::hbar(1, CRational(Rational(0), Rational(-1, 2))));
}

TEST_CASE("weyl symbol inverts the quantization") {
    PhasePoly s = weyl_symbol(OperatorPoly::word(1, 1));
    CHECK(s.coeff(1, 1) == HPoly(1));
    CHECK(s.coeff(0, 0) == HPoly::hbar(1, CRational(Rational(0), Rational(1, 2))));
    CHECK(weyl_symbol(OperatorPoly::x_pow(2)) == PhasePoly::monomial(2, 0));

    std::mt19937 rng(5);
    for (int k = 0; k < 30; ++k) {
        PhasePoly f = random_poly(rng, 5);
        CHECK(weyl_symbol(weyl_quantize_poly(f)) == f);
    }
}

TEST_CASE("homomorphism bridge: Q(f star g) = Q(f) Q(g)") {
    std::mt19937 rng(9);
    for (int k = 0; k < 100; ++k) {
        PhasePoly f = random_poly(rng, 4);
        PhasePoly g = random_poly(rng, 4);
        CHECK(weyl_quantize_poly(moyal_star(f, g)) ==
              op_mul(weyl_quantize_poly(f), weyl_quantize_poly(g)));
    }
}
