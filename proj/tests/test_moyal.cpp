#include <doctest.h>

#include <cmath>
#include <random>

#include "dq/moyal.hpp"
#include "dq/star_exp.hpp"
#include "dq/weyl.hpp"

using namespace dq;

namespace {

PhasePoly ho_hamiltonian() {
    // H = p^2/2 + x^2/2 (m = omega = 1).
    PhasePoly H;
    H.add(0, 2, HPoly(CRational(Rational(1, 2))));
    H.add(2, 0, HPoly(CRational(Rational(1, 2))));
    return H;
}

PhasePoly random_poly(std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> C(-3, 3);
    PhasePoly f;
    for (int a = 0; a <= maxdeg; ++a)
        for (int b = 0; a + b <= maxdeg; ++b)
            if (rng() % 2) f.add(a, b, HPoly(C(rng)));
    return f;
}

// Oracle wavefunctions: harmonic oscillator eigenstates, m = omega = hbar = 1.
cplx ho_eigenstate(int n, double x) {
    double h = 0.0;
    switch (n) {
        case 0: h = 1.0; break;
        case 1: h = 2.0 * x; break;
        case 2: h = 4.0 * x * x - 2.0; break;
        default: REQUIRE(false);
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double norm = std::pow(M_PI, -0.25) / std::sqrt(std::pow(2.0, n) * fact);
    return norm * h * std::exp(-0.5 * x * x);
}

} // namespace

TEST_CASE("poisson bracket") {
    PhasePoly x3 = PhasePoly::monomial(3, 0), p3 = PhasePoly::monomial(0, 3);
    PhasePoly r = poisson_bracket(x3, p3);
    CHECK(r == PhasePoly::monomial(2, 2, HPoly(9)));
    CHECK(poisson_bracket(PhasePoly::monomial(0, 2), x3) ==
          PhasePoly::monomial(2, 1, HPoly(-6)));
    PhasePoly f = PhasePoly::monomial(2, 1) + PhasePoly::monomial(1, 0, HPoly(4));
    CHECK(poisson_bracket(f, f).is_zero());
}

TEST_CASE("moyal star: canonical pair and unit") {
    PhasePoly x = PhasePoly::x(), p = PhasePoly::p();
    PhasePoly xy = moyal_star(x, p);
    CHECK(xy.coeff(1, 1) == HPoly(1));
    CHECK(xy.coeff(0, 0) == HPoly::hbar(1, CRational(Rational(0), Rational(1, 2))));
    PhasePoly yx = moyal_star(p, x);
    CHECK(yx.coeff(0, 0) == HPoly::hbar(1, CRational(Rational(0), Rational(-1, 2))));
    CHECK((xy - yx) == PhasePoly(HPoly::hbar(1, CRational::i())));

    std::mt19937 rng(2);
    PhasePoly f = random_poly(rng, 4);
    CHECK(moyal_star(f, PhasePoly(1)) == f);
    CHECK(moyal_star(PhasePoly(1), f) == f);
}

TEST_CASE("moyal star: oscillator square against the operator bridge") {
    PhasePoly H = ho_hamiltonian();
    PhasePoly HH = moyal_star(H, H);
    CHECK(weyl_quantize_poly(HH) == op_mul(weyl_quantize_poly(H), weyl_quantize_poly(H)));
    // H star H = H^2 - hbar^2/4 for m = omega = 1.
    PhasePoly expect = H * H;
    expect.add(0, 0, HPoly::hbar(2, CRational(Rational(-1, 4))));
    CHECK(HH == expect);
}

TEST_CASE("moyal star associativity and classical limits") {
    std::mt19937 rng(4);
    for (int k = 0; k < 100; ++k) {
        PhasePoly f = random_poly(rng, 3), g = random_poly(rng, 3), h = random_poly(rng, 3);
        CHECK(moyal_star(moyal_star(f, g), h) == moyal_star(f, moyal_star(g, h)));
    }
    for (int k = 0; k < 25; ++k) {
        PhasePoly f = random_poly(rng, 4), g = random_poly(rng, 4);
        CHECK(moyal_star(f, g).hbar_order(0) == (f * g).hbar_order(0));
        PhasePoly mb = moyal_bracket(f, g);
        CHECK(mb.hbar_order(0) == poisson_bracket(f, g).hbar_order(0));
    }
}

TEST_CASE("moyal bracket examples") {
    PhasePoly x = PhasePoly::x(), p = PhasePoly::p();
    CHECK(moyal_bracket(x, p) == PhasePoly(1));
    PhasePoly x3 = PhasePoly::monomial(3, 0), p3 = PhasePoly::monomial(0, 3);
    CHECK(moyal_bracket(x3, p3).hbar_order(0) == PhasePoly::monomial(2, 2, HPoly(9)).hbar_order(0));
    PhasePoly f = PhasePoly::monomial(2, 2) + PhasePoly::monomial(1, 1);
    CHECK(moyal_bracket(f, f).is_zero());
}

TEST_CASE("standard star product and transition operator") {
    PhasePoly x = PhasePoly::x(), p = PhasePoly::p();
    PhasePoly sp = standard_star(x, p);
    CHECK(sp.coeff(0, 0) == HPoly::hbar(1, CRational::i()));
    CHECK(standard_star(p, x) == PhasePoly::monomial(1, 1));

    CHECK(t_transition(x, TDirection::Forward) == x);
    PhasePoly txp = t_transition(PhasePoly::monomial(1, 1), TDirection::Forward);
    CHECK(txp.coeff(0, 0) == HPoly::hbar(1, CRational(Rational(0), Rational(-1, 2))));

    // Forward then inverse is the identity.
    std::mt19937 rng(6);
    for (int k = 0; k < 20; ++k) {
        PhasePoly f = random_poly(rng, 4);
        CHECK(t_transition(t_transition(f, TDirection::Forward), TDirection::Inverse) == f);
    }

    // The orientation that holds exactly: T(f *_S g) = T f *_M T g.
    for (int k = 0; k < 100; ++k) {
        PhasePoly f = random_poly(rng, 4), g = random_poly(rng, 4);
        CHECK(t_transition(standard_star(f, g), TDirection::Forward) ==
              moyal_star(t_transition(f, TDirection::Forward),
                         t_transition(g, TDirection::Forward)));
    }
}

TEST_CASE("star power series approaches the closed form") {
    PhasePoly H = ho_hamiltonian();
    CHECK(star_power_series_exp(H, 0.0, 7, 0.3, 0.4, 1.0) == cplx(1.0));
    CHECK(star_power_series_exp(H, 0.3, 0, 0.3, 0.4, 1.0) == cplx(1.0));

    cplx closed01 = ho_star_exp_closed(1.0, 0.3, 0.4, 0.1, 1.0);
    cplx series01 = star_power_series_exp(H, 0.1, 12, 0.3, 0.4, 1.0);
    CHECK(std::abs(series01 - closed01) < 1e-8);

    cplx closed05 = ho_star_exp_closed(1.0, 0.3, 0.4, 0.5, 1.0);
    cplx series05 = star_power_series_exp(H, 0.5, 12, 0.3, 0.4, 1.0);
    CHECK(std::abs(series05 - closed05) < 1e-3);
}

TEST_CASE("star-genvalue residuals for the oscillator Wigner functions") {
    PhasePoly H = ho_hamiltonian();
    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) grid.push_back({-2.0 + i, -2.0 + j});
    for (int n = 0; n <= 5; ++n) {
        GaussianSymbol rho = wigner_laguerre_symbol(n, 1.0, 1.0);
        double resid = star_genvalue_residual(H, rho, n + 0.5, grid);
        CHECK(resid < 1e-9);
    }
    GaussianSymbol rho0 = wigner_laguerre_symbol(0, 1.0, 1.0);
    double wrong = star_genvalue_residual(H, rho0, 0.0, grid);
    CHECK(wrong > 0.1); // ~ (hbar w / 2) rho_0(0,0) = 1/(2 pi)
}

TEST_CASE("quadrature Wigner function matches the Laguerre closed form") {
    for (int n = 0; n <= 2; ++n) {
        auto psi = [n](double x) { return ho_eigenstate(n, x); };
        for (double x : {-0.5, 0.0, 0.7})
            for (double p : {-0.4, 0.0, 0.8}) {
                double w = wigner_from_wavefunction(psi, x, p, 1.0);
                CHECK(std::abs(w - wigner_laguerre(n, x, p, 1.0, 1.0)) < 1e-7);
            }
    }
    auto psi0 = [](double x) { return ho_eigenstate(0, x); };
    auto psi1 = [](double x) { return ho_eigenstate(1, x); };
    CHECK(std::abs(wigner_from_wavefunction(psi0, 0.0, 0.0, 1.0) - 1.0 / M_PI) < 1e-9);
    CHECK(std::abs(wigner_from_wavefunction(psi1, 0.0, 0.0, 1.0) + 1.0 / M_PI) < 1e-9);

    // Non-decaying wavefunction: window search must fail.
    auto flat = [](double) { return cplx(1.0); };
    CHECK_THROWS(wigner_from_wavefunction(flat, 0.0, 0.0, 1.0));
}
