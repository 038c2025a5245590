#include "dq/moyal.hpp"

#include <cmath>
#include <stdexcept>

namespace dq {

PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g) {
    return f.dx() * g.dp() - f.dp() * g.dx();
}

namespace {

HPoly ih_half_pow(int k) {
    // (i hbar / 2)^k exactly.
    CRational c(1);
    CRational ih2 = CRational(Rational(0), Rational(1, 2));
    for (int j = 0; j < k; ++j) c = c * ih2;
    return HPoly::hbar(k, c);
}

Rational inv_factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(1, f);
}

} // namespace

PhasePoly moyal_star(const PhasePoly& f, const PhasePoly& g) {
    PhasePoly r;
    int mmax = f.deg_p();
    int nmax = f.deg_x();
    for (int m = 0; m <= mmax; ++m) {
        PhasePoly fm = f;
        for (int j = 0; j < m; ++j) fm = fm.dp();
        for (int n = 0; n <= nmax; ++n) {
            PhasePoly fmn = fm;
            for (int j = 0; j < n; ++j) fmn = fmn.dx();
            if (fmn.is_zero()) continue;
            PhasePoly gnm = g;
            for (int j = 0; j < n; ++j) gnm = gnm.dp();
            for (int j = 0; j < m; ++j) gnm = gnm.dx();
            if (gnm.is_zero()) continue;
            CRational sign = (m & 1) ? CRational(-1) : CRational(1);
            HPoly c = ih_half_pow(m + n) *
                      HPoly(CRational(inv_factorial(m) * inv_factorial(n)) * sign);
            r += c * (fmn * gnm);
        }
    }
    return r;
}

namespace {

// Shared bidifferential series for one polynomial and one Gaussian factor.
// poly_left: f polynomial, g Gaussian; otherwise f Gaussian, g polynomial.
GaussianSymbol star_poly_gauss(const PhasePoly& poly, const GaussianSymbol& gauss,
                               bool poly_left) {
    double hb = gauss.hbar;
    cplx ih2 = cplx(0.0, hb / 2.0);
    GaussianSymbol base = gauss.with_pref(CPoly2(cplx(0.0)));
    GaussianSymbol acc = base;

    // Derivative ladders of the polynomial factor terminate the series.
    int mmax = poly.deg_p();
    int nmax = poly.deg_x();
    for (int m = 0; m <= mmax; ++m) {
        for (int n = 0; n <= nmax; ++n) {
            PhasePoly fd = poly;
            for (int j = 0; j < (poly_left ? m : n); ++j) fd = fd.dp();
            for (int j = 0; j < (poly_left ? n : m); ++j) fd = fd.dx();
            if (fd.is_zero()) continue;
            GaussianSymbol gd = gauss;
            for (int j = 0; j < (poly_left ? n : m); ++j) gd = gd.dp();
            for (int j = 0; j < (poly_left ? m : n); ++j) gd = gd.dx();
            // Coefficient (i hbar/2)^{m+n} (-1)^m / (m! n!).
            cplx c = 1.0;
            for (int j = 0; j < m + n; ++j) c *= ih2;
            double fact = 1.0;
            for (int j = 2; j <= m; ++j) fact *= j;
            for (int j = 2; j <= n; ++j) fact *= j;
            c /= fact;
            if (m & 1) c = -c;
            CPoly2 fpoly;
            for (auto& [k, hc] : fd.terms())
                fpoly.add(k.first, k.second, hc.eval(hb));
            acc.pref += c * (fpoly * gd.pref);
        }
    }
    return acc;
}

} // namespace

GaussianSymbol moyal_star(const PhasePoly& f, const GaussianSymbol& g) {
    return star_poly_gauss(f, g, true);
}

GaussianSymbol moyal_star(const GaussianSymbol& f, const PhasePoly& g) {
    return star_poly_gauss(g, f, false);
}

PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g) {
    PhasePoly d = moyal_star(f, g) - moyal_star(g, f);
    PhasePoly r;
    for (auto& [k, c] : d.terms()) {
        PhasePoly t = PhasePoly::monomial(k.first, k.second, c.div_i_hbar());
        r += t;
    }
    return r;
}

PhasePoly standard_star(const PhasePoly& f, const PhasePoly& g) {
    PhasePoly r;
    int kmax = std::min(f.deg_x(), g.deg_p());
    PhasePoly fk = f;
    PhasePoly gk = g;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) {
            fk = fk.dx();
            gk = gk.dp();
        }
        CRational ik(1);
        for (int j = 0; j < k; ++j) ik = ik * CRational::i();
        HPoly c = HPoly::hbar(k, ik * CRational(inv_factorial(k)));
        r += c * (fk * gk);
    }
    return r;
}

PhasePoly t_transition(const PhasePoly& f, TDirection dir) {
    PhasePoly r;
    int kmax = std::min(f.deg_x(), f.deg_p());
    PhasePoly fk = f;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) fk = fk.dx().dp();
        CRational c(1);
        CRational step = CRational(Rational(0), dir == TDirection::Forward ? Rational(-1, 2)
                                                                           : Rational(1, 2));
        for (int j = 0; j < k; ++j) c = c * step;
        r += HPoly::hbar(k, c * CRational(inv_factorial(k))) * fk;
    }
    return r;
}

cplx star_power_series_exp(const PhasePoly& H, double t, int order, cplx x, cplx p, double hbar) {
    cplx sum = 1.0;
    PhasePoly power(1);
    cplx factor = 1.0;
    cplx z = cplx(0.0, -t / hbar);
    for (int n = 1; n <= order; ++n) {
        power = moyal_star(power, H);
        factor *= z / static_cast<double>(n);
        sum += factor * power.eval(x, p, hbar);
    }
    return sum;
}

double star_genvalue_residual(const PhasePoly& H, const GaussianSymbol& rho, double E,
                              const std::vector<std::pair<double, double>>& samples) {
    GaussianSymbol Hr = moyal_star(H, rho);
    double worst = 0.0;
    for (auto& [xv, pv] : samples) {
        cplx lhs = Hr.eval(xv, pv);
        cplx rhs = E * rho.eval(xv, pv);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

namespace {

struct SimpsonWork {
    const std::function<cplx(double)>* f;
    int depth_limit;
    int evals = 0;

    cplx eval(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        cplx flm = (*f)(lm), frm = (*f)(rm);
        evals += 2;
        cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        cplx delta = left + right - whole;
        if (depth >= depth_limit) throw std::runtime_error("wigner quadrature: depth exceeded");
        if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        return eval(a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
               eval(m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
    }
};

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double tol,
                      int depth_limit) {
    SimpsonWork w{&f, depth_limit};
    double m = 0.5 * (a + b);
    cplx fa = f(a), fm = f(m), fb = f(b);
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return w.eval(a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace

double wigner_from_wavefunction(const std::function<cplx(double)>& psi, double x, double p,
                                double hbar, const QuadratureParams& params) {
    // Find a window [-L, L] where both wavefunction arguments have decayed.
    double L = 4.0;
    for (;;) {
        if (std::abs(psi(x + L / 2.0)) < params.boundary_eps &&
            std::abs(psi(x - L / 2.0)) < params.boundary_eps)
            break;
        L *= 1.5;
        if (L > params.max_window)
            throw std::runtime_error("wigner quadrature: window too small / no decay");
    }
    auto integrand = [&](double y) {
        return psi(x + 0.5 * y) * std::conj(psi(x - 0.5 * y)) *
               std::exp(cplx(0.0, -y * p / hbar));
    };
    cplx val = adaptive_simpson(integrand, -L, L, params.tol, params.max_depth);
    val /= 2.0 * M_PI * hbar;
    if (std::abs(val.imag()) > 1e-9)
        throw std::runtime_error("wigner quadrature: imaginary residue above 1e-9");
    return val.real();
}

cplx GaussianSymbol::integrate_plane() const {
    // Int exp(A x^2 + B x p + C p^2 + u x + v p + w) dx dp
    //   = 2 pi / sqrt(4 A C - B^2) * exp(w + (C u^2 - B u v + A v^2) / (B^2 - 4AC)),
    // valid when the real part of the quadratic form is negative definite.
    if (!(A.real() < 0.0 && (A.real() * C.real() - 0.25 * B.real() * B.real()) > 0.0))
        throw std::domain_error("GaussianSymbol::integrate_plane: form not negative definite");
    cplx disc = B * B - 4.0 * A * C;
    cplx shift = (C * u * u - B * u * v + A * v * v) / disc;
    return 2.0 * M_PI / std::sqrt(-disc) * std::exp(w + shift);
}

} // namespace dq
