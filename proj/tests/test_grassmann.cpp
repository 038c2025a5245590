#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "dq/grassmann.hpp"

using namespace dq;

namespace {

GrassmannElement random_element(const RegistryPtr& reg, std::mt19937& rng) {
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    GrassmannElement e(reg);
    std::uint32_t full = (1u << reg->size()) - 1u;
    for (std::uint32_t m = 0; m <= full; ++m)
        if (rng() % 3 == 0) e.set(m, cplx(U(rng), U(rng)));
    return e;
}

} // namespace

TEST_CASE("anticommutation and nilpotency") {
    auto reg = make_registry({"t1", "t2"});
    auto t1 = GrassmannElement::generator(reg, "t1");
    auto t2 = GrassmannElement::generator(reg, "t2");
    CHECK((t1 * t2).coeff({"t1", "t2"}) == cplx(1.0));
    CHECK((t2 * t1).coeff({"t1", "t2"}) == cplx(-1.0));
    CHECK((t1 * t1).is_zero());

    GrassmannElement one(reg, 1.0);
    GrassmannElement prod = (one + t1) * (one + t2);
    CHECK(prod.coeff(std::uint32_t(0)) == cplx(1.0));
    CHECK(prod.coeff({"t1"}) == cplx(1.0));
    CHECK(prod.coeff({"t2"}) == cplx(1.0));
    CHECK(prod.coeff({"t1", "t2"}) == cplx(1.0));
}

TEST_CASE("associativity: exhaustive basis n=4 and random triples") {
    auto reg = make_registry({"a", "b", "c", "d"});
    std::vector<GrassmannElement> basis;
    for (std::uint32_t m = 0; m < 16; ++m) {
        GrassmannElement e(reg);
        e.set(m, 1.0);
        basis.push_back(e);
    }
    for (auto& x : basis)
        for (auto& y : basis)
            for (auto& z : basis) CHECK(((x * y) * z).distance(x * (y * z)) == 0.0);

    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
        auto x = random_element(reg, rng);
        auto y = random_element(reg, rng);
        auto z = random_element(reg, rng);
        CHECK(((x * y) * z).distance(x * (y * z)) < 1e-12);
    }
}

TEST_CASE("graded commutativity for homogeneous elements") {
    auto reg = make_registry({"a", "b", "c", "d"});
    for (std::uint32_t ma = 0; ma < 16; ++ma)
        for (std::uint32_t mb = 0; mb < 16; ++mb) {
            GrassmannElement x(reg), y(reg);
            x.set(ma, 1.0);
            y.set(mb, 1.0);
            int pq = std::popcount(ma) * std::popcount(mb);
            GrassmannElement lhs = x * y;
            GrassmannElement rhs = (pq % 2 ? -1.0 : 1.0) * (y * x);
            CHECK(lhs.distance(rhs) == 0.0);
        }
}

TEST_CASE("left derivatives: examples and algebra") {
    auto reg = make_registry({"t1", "t2", "t3", "t4"});
    auto t1 = GrassmannElement::generator(reg, "t1");
    auto t2 = GrassmannElement::generator(reg, "t2");

    CHECK(left_derivative(t1 * t2, "t1").distance(t2) == 0.0);
    CHECK(left_derivative(t1 * t2, "t2").distance(-t1) == 0.0);
    CHECK(left_derivative(GrassmannElement(reg, 5.0), "t1").is_zero());

    // d_i d_j + d_j d_i = 0 and d_i^2 = 0 on every basis monomial.
    for (std::uint32_t m = 0; m < 16; ++m) {
        GrassmannElement e(reg);
        e.set(m, 1.0);
        for (int i = 0; i < 4; ++i) {
            std::string gi = reg->name(i);
            CHECK(left_derivative(left_derivative(e, gi), gi).is_zero());
            for (int j = 0; j < 4; ++j) {
                std::string gj = reg->name(j);
                GrassmannElement anti = left_derivative(left_derivative(e, gi), gj) +
                                        left_derivative(left_derivative(e, gj), gi);
                CHECK(anti.is_zero());
                // {d_i, theta_j} = delta_ij as an operator identity.
                GrassmannElement tj = GrassmannElement::generator(reg, gj);
                GrassmannElement op = left_derivative(tj * e, gi) + tj * left_derivative(e, gi);
                GrassmannElement expect = (i == j) ? e : GrassmannElement(reg);
                CHECK(op.distance(expect) == 0.0);
            }
        }
    }
}

TEST_CASE("berezin integration conventions") {
    auto reg = make_registry({"psi1", "psi2"});
    auto psi1 = GrassmannElement::generator(reg, "psi1");
    GrassmannElement one(reg, 1.0);

    // Weinberg orientations: psi dpsi = 1, dpsi psi = -1.
    CHECK(berezin_integrate(psi1, {"psi1"}, MeasureSide::Right).scalar_part() == cplx(1.0));
    CHECK(berezin_integrate(psi1, {"psi1"}, MeasureSide::Left).scalar_part() == cplx(-1.0));
    CHECK(berezin_integrate(one, {"psi1"}, MeasureSide::Right).is_zero());

    // Das orientation (I = D): the left derivative is the integral, dtheta theta = 1.
    CHECK(left_derivative(psi1, "psi1").scalar_part() == cplx(1.0));

    // Composite measure D psi = dpsi2 dpsi1, right measure: psi1 psi2 -> -1.
    auto psi2 = GrassmannElement::generator(reg, "psi2");
    CHECK(berezin_integrate(psi1 * psi2, {"psi1", "psi2"}, MeasureSide::Right).scalar_part() ==
          cplx(-1.0));

    // Integration over one generator equals the left derivative up to the
    // measure-side sign, on all basis monomials.
    for (std::uint32_t m = 0; m < 4; ++m) {
        GrassmannElement e(reg);
        e.set(m, 1.0);
        GrassmannElement l = berezin_integrate(e, {"psi1"}, MeasureSide::Left);
        CHECK(l.distance(-1.0 * left_derivative(e, "psi1")) == 0.0);
    }

    CHECK_THROWS(berezin_integrate(psi1, {"psi1", "psi1"}, MeasureSide::Right));
    CHECK_THROWS(berezin_integrate(psi1, {"nope"}, MeasureSide::Right));
}

TEST_CASE("grassmann_exp: truncation and body-soul split") {
    auto reg = make_registry({"t1", "t2"});
    auto t1 = GrassmannElement::generator(reg, "t1");
    auto t2 = GrassmannElement::generator(reg, "t2");
    GrassmannElement n = t1 * t2;

    GrassmannElement e1 = grassmann_exp(n);
    CHECK(e1.scalar_part() == cplx(1.0));
    CHECK(e1.coeff({"t1", "t2"}) == cplx(1.0));

    CHECK(grassmann_exp(GrassmannElement(reg)).distance(GrassmannElement(reg, 1.0)) == 0.0);

    GrassmannElement e2 = grassmann_exp(GrassmannElement(reg, 2.0) + n);
    double ea = std::exp(2.0);
    CHECK(std::abs(e2.scalar_part() - ea) < 1e-12);
    CHECK(std::abs(e2.coeff({"t1", "t2"}) - ea) < 1e-12);
}

TEST_CASE("parity") {
    auto reg = make_registry({"t1", "t2"});
    auto t1 = GrassmannElement::generator(reg, "t1");
    auto t2 = GrassmannElement::generator(reg, "t2");
    CHECK(parity(t1) == Parity::Odd);
    CHECK(parity(t1 * t2) == Parity::Even);
    CHECK(parity(GrassmannElement(reg, 1.0) + t1) == Parity::Mixed);
    CHECK(parity(GrassmannElement(reg)) == Parity::Even);

    // Multiplicative on homogeneous inputs.
    for (std::uint32_t ma = 0; ma < 4; ++ma)
        for (std::uint32_t mb = 0; mb < 4; ++mb) {
            if (ma & mb) continue;
            GrassmannElement a(reg), b(reg);
            a.set(ma, 1.0);
            b.set(mb, 1.0);
            int expect = (std::popcount(ma) + std::popcount(mb)) % 2;
            CHECK(parity(a * b) == (expect ? Parity::Odd : Parity::Even));
        }
}

TEST_CASE("grassmann delta") {
    auto reg = make_registry({"theta", "lam", "psi0", "psi"});
    auto theta = GrassmannElement::generator(reg, "theta");

    // delta(theta) = theta, and int dtheta delta(theta) f(theta) = f(0) in the
    // I = D orientation.
    OddLinear arg;
    arg.parts = {{reg->index("theta"), cplx(1.0)}};
    GrassmannElement d = grassmann_delta(reg, {arg});
    CHECK(d.distance(theta) == 0.0);
    GrassmannElement f = GrassmannElement(reg, 3.0) + 2.0 * theta; // f(0) = 3
    CHECK(left_derivative(d * f, "theta").scalar_part() == cplx(3.0));

    // Scaling: delta(psi0 - psi - (hbar/2) lam) = -(hbar/2) delta(lam - (2/hbar)(psi0 - psi)).
    double hbar = 0.7;
    OddLinear lhs_arg;
    lhs_arg.parts = {{reg->index("psi0"), 1.0},
                     {reg->index("psi"), -1.0},
                     {reg->index("lam"), -hbar / 2.0}};
    OddLinear rhs_arg;
    rhs_arg.parts = {{reg->index("lam"), 1.0},
                     {reg->index("psi0"), -2.0 / hbar},
                     {reg->index("psi"), 2.0 / hbar}};
    GrassmannElement lhs = grassmann_delta(reg, {lhs_arg});
    GrassmannElement rhs = grassmann_delta(reg, {rhs_arg});
    CHECK(lhs.distance(cplx(-hbar / 2.0) * rhs) < 1e-15);

    OddLinear even_arg; // empty combination is even -> rejected
    CHECK_THROWS(grassmann_delta(reg, {even_arg}));
}

TEST_CASE("gaussian berezin integral: closed form equals brute force") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
        for (int i = 1; i <= n; ++i) names.push_back("v" + std::to_string(i));
        for (int i = 1; i <= n; ++i) names.push_back("sa" + std::to_string(i));
        for (int i = 1; i <= n; ++i) names.push_back("sb" + std::to_string(i));
        auto reg = make_registry(names);
        auto src_reg = [&] {
            std::vector<std::string> s(names.begin() + 2 * n, names.end());
            return make_registry(s);
        }();

        int trials = 17; // ~50 across n = 1..3
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<std::vector<cplx>> M(n, std::vector<cplx>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M[i][j] = cplx(U(rng), U(rng));
            std::vector<GrassmannElement> a, b, a_full, b_full;
            for (int i = 1; i <= n; ++i) {
                a.push_back(GrassmannElement::generator(src_reg, "sa" + std::to_string(i)));
                b.push_back(GrassmannElement::generator(src_reg, "sb" + std::to_string(i)));
                a_full.push_back(GrassmannElement::generator(reg, "sa" + std::to_string(i)));
                b_full.push_back(GrassmannElement::generator(reg, "sb" + std::to_string(i)));
            }
            std::vector<std::string> un(names.begin(), names.begin() + n);
            std::vector<std::string> vn(names.begin() + n, names.begin() + 2 * n);
            GrassmannElement closed = gaussian_berezin_closed(M, a, b);
            GrassmannElement brute = gaussian_berezin_brute(M, a, b, reg, un, vn);
            CHECK(transport(closed, reg).distance(brute) < 1e-12);
        }
    }
}

TEST_CASE("gaussian berezin examples") {
    // n = 1, no sources: the integral is det(M).
    auto src = make_registry({"a1", "b1"});
    std::vector<std::vector<cplx>> M = {{cplx(2.0)}};
    std::vector<GrassmannElement> a = {GrassmannElement(src)};
    std::vector<GrassmannElement> b = {GrassmannElement(src)};
    GrassmannElement r0 = gaussian_berezin_closed(M, a, b);
    CHECK(r0.scalar_part() == cplx(2.0));

    // With sources the brute-force oracle fixes the source-term sign:
    // det(M) exp(+a M^-1 b), here 2 + a1 b1.
    a = {GrassmannElement::generator(src, "a1")};
    b = {GrassmannElement::generator(src, "b1")};
    GrassmannElement r1 = gaussian_berezin_closed(M, a, b);
    CHECK(r1.scalar_part() == cplx(2.0));
    CHECK(r1.coeff({"a1", "b1"}) == cplx(1.0));

    auto full = make_registry({"u1", "v1", "a1", "b1"});
    GrassmannElement brute = gaussian_berezin_brute(M, a, b, full, {"u1"}, {"v1"});
    CHECK(transport(r1, full).distance(brute) == 0.0);

    std::vector<std::vector<cplx>> Msing = {{cplx(0.0)}};
    CHECK_THROWS(gaussian_berezin_closed(Msing, a, b));
}

TEST_CASE("substitute and transport") {
    auto reg = make_registry({"x", "y"});
    auto target = make_registry({"a", "b", "y"});
    auto x = GrassmannElement::generator(reg, "x");
    auto y = GrassmannElement::generator(reg, "y");
    GrassmannElement f = GrassmannElement(reg, 2.0) + x * y;
    GrassmannElement repl = GrassmannElement::generator(target, "a") +
                            GrassmannElement::generator(target, "b");
    GrassmannElement g = substitute(f, "x", repl);
    CHECK(g.scalar_part() == cplx(2.0));
    CHECK(g.coeff({"a", "y"}) == cplx(1.0));
    CHECK(g.coeff({"b", "y"}) == cplx(1.0));
}
