#include "dq/star_exp.hpp"

#include <cmath>
#include <stdexcept>

namespace dq {

namespace {
double ho_energy(double omega, double q, double p) {
    return 0.5 * (p * p + omega * omega * q * q); // m = 1
}
} // namespace

cplx ho_star_exp_closed(double omega, double q, double p, double t, double hbar) {
    double half = 0.5 * omega * t;
    if (std::abs(std::cos(half)) < 1e-12)
        throw std::domain_error("ho_star_exp_closed: omega t at an odd multiple of pi");
    double H = ho_energy(omega, q, p);
    cplx expo = 2.0 * H / (cplx(0.0, 1.0) * omega * hbar) * std::tan(half);
    return std::exp(expo) / std::cos(half);
}

cplx ho_star_exp_wick(double omega, double q, double p, double tau, double hbar) {
    double half = 0.5 * omega * tau;
    double H = ho_energy(omega, q, p);
    return std::exp(-2.0 * H / (omega * hbar) * std::tanh(half)) / std::cosh(half);
}

GaussianSymbol ho_star_exp_wick_symbol(double omega, double tau, double hbar) {
    double th = std::tanh(0.5 * omega * tau);
    GaussianSymbol g;
    g.hbar = hbar;
    g.pref = CPoly2(cplx(1.0 / std::cosh(0.5 * omega * tau)));
    g.A = -th * omega / hbar;
    g.C = -th / (omega * hbar);
    return g;
}

GaussianSymbol ho_star_exp_symbol(double omega, double t, double hbar) {
    double tn = std::tan(0.5 * omega * t);
    GaussianSymbol g;
    g.hbar = hbar;
    g.pref = CPoly2(cplx(1.0 / std::cos(0.5 * omega * t)));
    g.A = cplx(0.0, -1.0) * tn * omega / hbar;
    g.C = cplx(0.0, -1.0) * tn / (omega * hbar);
    return g;
}

namespace {

// 2 * amplitude * Int exp(a2 q'^2 + a1 q' + a0) dq' with the exponent fitted
// exactly from three samples (it is quadratic by construction).
cplx transform_from_exponent(cplx amplitude, const std::function<cplx(double)>& expo,
                             double delta) {
    cplx e0 = expo(0.0), ep = expo(delta), em = expo(-delta);
    cplx a1 = (ep - em) / (2.0 * delta);
    cplx a2 = (ep + em - 2.0 * e0) / (2.0 * delta * delta);
    if (a2 == cplx(0.0)) throw std::domain_error("star exp transform: kernel not Gaussian in q'");
    cplx integral = std::sqrt(-M_PI / a2) * std::exp(e0 - a1 * a1 / (4.0 * a2));
    return 2.0 * amplitude * integral;
}

} // namespace

cplx star_exp_from_propagator_ho(double m, double omega, double q, double p, double t,
                                 double hbar) {
    double s = std::sin(omega * t);
    if (!(omega * t > 0.0 && omega * t < M_PI))
        throw std::domain_error("star_exp_from_propagator_ho: need 0 < omega t < pi");
    cplx amplitude = std::sqrt(m * omega / (2.0 * M_PI * hbar * s) / cplx(0.0, 1.0));
    auto expo = [&](double qp) {
        double xf = q + qp, x0 = q - qp;
        cplx phase = cplx(0.0, 1.0) * (m * omega / (2.0 * hbar * s)) *
                     ((xf * xf + x0 * x0) * std::cos(omega * t) - 2.0 * xf * x0);
        return phase + cplx(0.0, -2.0 * qp * p / hbar);
    };
    return transform_from_exponent(amplitude, expo, 1.0);
}

cplx star_exp_from_propagator_quadratic(const QuadraticSpec& spec, double q, double p, double t) {
    auto action = [&](double qp) {
        return quadratic_propagator(spec, q + qp, t, q - qp, 0.0).action;
    };
    QuadraticPropagatorResult base = quadratic_propagator(spec, q, t, q, 0.0);
    cplx amplitude =
        std::sqrt(spec.m / (2.0 * M_PI * spec.hbar * base.phi_tf) / cplx(0.0, 1.0));
    auto expo = [&](double qp) {
        return cplx(0.0, action(qp) / spec.hbar) + cplx(0.0, -2.0 * qp * p / spec.hbar);
    };
    return transform_from_exponent(amplitude, expo, 0.5);
}

FourierDirichlet fourier_dirichlet_check(double omega, double tau, int N, double hbar) {
    if (!(omega * tau > 0.0)) throw std::invalid_argument("fourier_dirichlet_check: omega tau > 0");
    GaussianSymbol g = ho_star_exp_wick_symbol(omega, tau, hbar);
    cplx plane = g.pref.coeff(0, 0) * g.integrate_plane();
    FourierDirichlet out;
    out.lhs = (plane / (2.0 * M_PI * hbar)).real();
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::exp(-tau * omega * (n + 0.5));
    out.partial_sum = sum;
    return out;
}

namespace {
double laguerre(int n, double z) {
    double lkm1 = 1.0, lk = 1.0 - z;
    if (n == 0) return lkm1;
    for (int k = 1; k < n; ++k) {
        double lkp1 = ((2.0 * k + 1.0 - z) * lk - k * lkm1) / (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}
} // namespace

double wigner_laguerre(int n, double q, double p, double omega, double hbar) {
    if (n < 0) throw std::invalid_argument("wigner_laguerre: n >= 0");
    double H = ho_energy(omega, q, p);
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign / (M_PI * hbar) * std::exp(-2.0 * H / (omega * hbar)) *
           laguerre(n, 4.0 * H / (omega * hbar));
}

GaussianSymbol wigner_laguerre_symbol(int n, double omega, double hbar) {
    // z = 4H / (w hbar) = (2/(w hbar)) (p^2 + w^2 q^2) as a polynomial.
    CPoly2 z;
    z.add(0, 2, 2.0 / (omega * hbar));
    z.add(2, 0, 2.0 * omega / hbar);
    CPoly2 lkm1(cplx(1.0));
    CPoly2 lk = CPoly2(cplx(1.0)) - z;
    for (int k = 1; k < n; ++k) {
        CPoly2 lkp1 = (1.0 / (k + 1.0)) *
                      ((CPoly2(cplx(2.0 * k + 1.0)) - z) * lk - cplx(double(k)) * lkm1);
        lkm1 = lk;
        lk = lkp1;
    }
    CPoly2 L = (n == 0) ? lkm1 : lk;
    GaussianSymbol g;
    g.hbar = hbar;
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    g.pref = (sign / (M_PI * hbar)) * L;
    g.A = -omega / hbar;
    g.C = -1.0 / (omega * hbar);
    return g;
}

namespace {

// Delete one generator from every canonical monomial that contains it, with
// no transposition sign. This is the thesis's naive integration rule for the
// offset variable; the graded rule differs by position-dependent signs and
// that difference is exactly the parity anomaly of the naive scheme.
GrassmannElement naive_extract(const GrassmannElement& f, const std::string& gen) {
    std::uint32_t bit = 1u << f.registry()->index(gen);
    GrassmannElement r(f.registry());
    for (auto& [m, c] : f.terms())
        if (m & bit) r.add(m ^ bit, c);
    return r;
}

// Drop unused generators, keeping the remaining names in order.
GrassmannElement project_registry(const GrassmannElement& f,
                                  const std::vector<std::string>& keep) {
    RegistryPtr target = make_registry(keep);
    return transport(f, target);
}

} // namespace

FermiStarExp fermi_star_exp_naive(const FermiPropagator& K) {
    if (K.basis != FermiBasis::Naive)
        throw std::invalid_argument("fermi_star_exp_naive: propagator must be in the naive basis");
    bool driven = K.element.registry()->has("alpha");
    std::vector<std::string> names = {"pi", "PsiPrime", "Psi"};
    if (driven) {
        names.push_back("alpha");
        names.push_back("alphastar");
    }
    // The endpoint names ride along until both substitutions are done.
    names.push_back("psi_f");
    names.push_back("psi_0");
    RegistryPtr reg = make_registry(names);
    auto g = [&](const char* nm) { return GrassmannElement::generator(reg, nm); };

    GrassmannElement Kw = transport(K.element, reg);
    Kw = substitute(Kw, "psi_f", g("Psi") + g("PsiPrime"));
    Kw = substitute(Kw, "psi_0", g("Psi") - g("PsiPrime"));

    GrassmannElement kernel =
        GrassmannElement(reg, 1.0) + cplx(0.0, -2.0 / K.hbar) * (g("pi") * g("PsiPrime"));
    GrassmannElement integrand = kernel * Kw;
    GrassmannElement extracted = naive_extract(integrand, "PsiPrime");

    std::vector<std::string> keep = {"pi", "Psi"};
    if (driven) {
        keep.push_back("alpha");
        keep.push_back("alphastar");
    }
    FermiStarExp out;
    out.element = project_registry(extracted, keep);
    out.scheme = FermiBasis::Naive;
    out.parity_report = parity(out.element);
    return out;
}

FermiStarExp fermi_star_exp_meticulous(const FermiPropagator& K) {
    if (K.basis != FermiBasis::Meticulous)
        throw std::invalid_argument(
            "fermi_star_exp_meticulous: propagator must be in the meticulous basis");
    bool driven = K.element.registry()->has("alpha");
    std::vector<std::string> names = {"Pi", "PiPrime", "Psi", "PsiPrime"};
    if (driven) {
        names.push_back("alpha");
        names.push_back("alphastar");
    }
    names.push_back("pi_f");
    names.push_back("psi_0");
    RegistryPtr reg = make_registry(names);
    auto g = [&](const char* nm) { return GrassmannElement::generator(reg, nm); };

    GrassmannElement Kw = transport(K.element, reg);
    Kw = substitute(Kw, "pi_f", g("Pi") + g("PiPrime"));
    Kw = substitute(Kw, "psi_0", g("Psi") - g("PsiPrime"));

    GrassmannElement kernel =
        GrassmannElement(reg, 1.0) + cplx(0.0, -2.0 / K.hbar) * (g("PiPrime") * g("PsiPrime"));
    GrassmannElement integrand = kernel * Kw;
    GrassmannElement integrated =
        berezin_integrate(integrand, {"PiPrime", "PsiPrime"}, MeasureSide::Right);

    cplx C = meticulous_constant_from_chain(K.hbar);
    GrassmannElement phase =
        grassmann_exp(cplx(0.0, 1.0 / K.hbar) * (g("Pi") * g("Psi")));
    GrassmannElement result = C * (phase * integrated);

    std::vector<std::string> keep = {"Pi", "Psi"};
    if (driven) {
        keep.push_back("alpha");
        keep.push_back("alphastar");
    }
    FermiStarExp out;
    out.element = project_registry(result, keep);
    out.scheme = FermiBasis::Meticulous;
    out.parity_report = parity(out.element);
    if (out.parity_report != Parity::Even)
        throw std::logic_error("fermi_star_exp_meticulous: odd-parity output");
    return out;
}

cplx meticulous_constant_from_chain(double hbar) {
    // Projection chain at n = 1: the transform composed with itself must be
    // the identity, which pins C through
    //   C 2^{-n} (-3i/hbar)^n (10 i / 3 hbar) Int D chi D eta (eta chi) = 1,
    // with the (10/3) cross coefficient taken from the chain's Gaussian step.
    RegistryPtr reg = make_registry({"chi", "eta"});
    GrassmannElement top = GrassmannElement::generator(reg, "eta") *
                           GrassmannElement::generator(reg, "chi");
    cplx I = berezin_integrate(top, {"eta", "chi"}, MeasureSide::Right).scalar_part();
    cplx factor = 0.5 * cplx(0.0, -3.0 / hbar) * cplx(0.0, 10.0 / (3.0 * hbar)) * I;
    return 1.0 / factor;
}

} // namespace dq
