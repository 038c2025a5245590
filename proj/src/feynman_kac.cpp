#include "dq/feynman_kac.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace dq {

TraceFunction trace_from_terms(std::vector<TraceTerm> terms, std::string system,
                               std::string scheme) {
    TraceFunction Z;
    Z.system = std::move(system);
    Z.scheme = std::move(scheme);
    auto held = std::make_shared<std::vector<TraceTerm>>(std::move(terms));
    Z.eval = [held](double tau) {
        cplx s = 0.0;
        for (auto& t : *held) {
            double mag = t.rate * tau;
            cplx v = t.coeff * std::exp(mag);
            for (int l = 0; l < t.tau_power; ++l) v *= tau;
            s += v;
        }
        return s;
    };
    Z.log_abs = [held](double tau) {
        // log-sum-exp over c e^{r tau} tau^l.
        double m = -1e300;
        for (auto& t : *held) {
            if (t.coeff == cplx(0.0)) continue;
            double e = t.rate * tau + t.tau_power * std::log(tau) + std::log(std::abs(t.coeff));
            m = std::max(m, e);
        }
        cplx s = 0.0;
        for (auto& t : *held) {
            if (t.coeff == cplx(0.0)) continue;
            double e = t.rate * tau + t.tau_power * std::log(tau) + std::log(std::abs(t.coeff));
            s += (t.coeff / std::abs(t.coeff)) * std::exp(e - m);
        }
        return m + std::log(std::abs(s));
    };
    return Z;
}

double fk_trace_ho(double omega, double tau, double hbar) {
    if (!(omega > 0.0 && tau > 0.0)) throw std::invalid_argument("fk_trace_ho: omega, tau > 0");
    GaussianSymbol g = ho_star_exp_wick_symbol(omega, tau, hbar);
    cplx plane = g.pref.coeff(0, 0) * g.integrate_plane();
    return (plane / (2.0 * M_PI * hbar)).real();
}

TraceFunction fk_trace_ho_fn(double omega, double hbar) {
    TraceFunction Z;
    Z.system = "ho";
    Z.scheme = "bosonic";
    Z.eval = [omega, hbar](double tau) { return cplx(fk_trace_ho(omega, tau, hbar)); };
    // (1/2) csch(w tau/2) = e^{-w tau/2} / (1 - e^{-w tau}).
    Z.log_abs = [omega](double tau) {
        return -0.5 * omega * tau - std::log1p(-std::exp(-omega * tau));
    };
    return Z;
}

double fk_trace_quadratic(double a, double b, double c, double tau, double hbar) {
    double disc = a * b - c * c;
    if (!(disc > 0.0) || !(a > 0.0) || !(b > 0.0))
        throw std::domain_error("fk_trace_quadratic: need a, b > 0 and ab - c^2 > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("fk_trace_quadratic: tau > 0");
    double root = std::sqrt(disc);
    double k = std::tanh(root * tau) / (hbar * root);
    GaussianSymbol g;
    g.hbar = hbar;
    g.pref = CPoly2(cplx(1.0 / std::cosh(root * tau)));
    g.A = -k * b;
    g.B = -2.0 * k * c;
    g.C = -k * a;
    cplx plane = g.pref.coeff(0, 0) * g.integrate_plane();
    return (plane / (2.0 * M_PI * hbar)).real();
}

TraceFunction fk_trace_quadratic_fn(double a, double b, double c, double hbar) {
    double root = std::sqrt(a * b - c * c);
    TraceFunction Z;
    Z.system = "quadratic";
    Z.scheme = "bosonic";
    Z.eval = [a, b, c, hbar](double tau) { return cplx(fk_trace_quadratic(a, b, c, tau, hbar)); };
    Z.log_abs = [root](double tau) {
        return -root * tau - std::log1p(-std::exp(-2.0 * root * tau));
    };
    return Z;
}

GroundEnergyEstimate ground_energy_limit(const TraceFunction& Z, double hbar,
                                         const Schedule& schedule) {
    if (!(schedule.tau0 > 0.0) || !(schedule.growth > 1.0) || schedule.max_steps < 3)
        throw std::invalid_argument("ground_energy_limit: invalid schedule");
    GroundEnergyEstimate est;
    double tau = schedule.tau0;
    double prev_log = Z.log_abs ? Z.log_abs(tau) : std::log(std::abs(Z.eval(tau)));
    if (!std::isfinite(prev_log)) throw std::domain_error("ground_energy_limit: Z vanished");
    est.taus.push_back(tau);
    double prev_secant = 0.0;
    bool have_secant = false;
    for (int k = 0; k < schedule.max_steps; ++k) {
        double next = tau * schedule.growth;
        double lg = Z.log_abs ? Z.log_abs(next) : std::log(std::abs(Z.eval(next)));
        if (!std::isfinite(lg)) throw std::domain_error("ground_energy_limit: Z vanished");
        double secant = (lg - prev_log) / (next - tau);
        est.taus.push_back(next);
        est.secants.push_back(secant);
        if (have_secant) {
            double diff = std::abs(secant - prev_secant);
            est.diffs.push_back(diff);
            if (diff < schedule.tol) {
                est.value = -hbar * secant;
                est.converged = true;
                return est;
            }
        }
        prev_secant = secant;
        have_secant = true;
        prev_log = lg;
        tau = next;
    }
    est.value = -hbar * prev_secant;
    est.converged = false;
    return est;
}

namespace {

// One Wick-rotated sample of the fermionic trace at tau: run the transform at
// complex time t = -i tau, apply RMD if requested, Berezin-integrate, map
// alphastar*alpha to g^2, report odd leftovers.
struct FermiSample {
    cplx value;
    double odd_norm = 0.0;
};

FermiSample fermi_trace_sample(FermiSystem system, FermiFkScheme scheme, double omega, double g,
                               double hbar, double tau) {
    cplx z = cplx(0.0, -tau); // t = -i tau
    FermiStarExp se;
    if (scheme == FermiFkScheme::NaiveRmd) {
        FermiPropagator K = system == FermiSystem::Ho
                                ? fermi_ho_propagator(omega, z, FermiBasis::Naive, hbar)
                                : fermi_driven_propagator(omega, z, FermiBasis::Naive, hbar);
        se = fermi_star_exp_naive(K);
    } else {
        FermiPropagator K = system == FermiSystem::Ho
                                ? fermi_ho_propagator(omega, z, FermiBasis::Meticulous, hbar)
                                : fermi_driven_propagator(omega, z, FermiBasis::Meticulous, hbar);
        se = fermi_star_exp_meticulous(K);
    }

    const RegistryPtr& reg = se.element.registry();
    std::string pi_name = scheme == FermiFkScheme::NaiveRmd ? "pi" : "Pi";
    GrassmannElement integrand = se.element;
    if (scheme == FermiFkScheme::NaiveRmd) {
        GrassmannElement rmd = GrassmannElement::generator(reg, pi_name) -
                               GrassmannElement::generator(reg, "Psi");
        integrand = integrand * rmd;
    }
    GrassmannElement traced =
        berezin_integrate(integrand, {"Psi", pi_name}, MeasureSide::Right);

    FermiSample out;
    cplx value = traced.scalar_part();
    if (reg->has("alpha")) {
        // alphastar * alpha -> g^2; the canonical monomial is alpha*alphastar,
        // so its coefficient enters with a minus.
        cplx c_aa = traced.coeff({"alpha", "alphastar"});
        value += -c_aa * (g * g);
        double odd = std::max(std::abs(traced.coeff({"alpha"})),
                              std::abs(traced.coeff({"alphastar"})));
        out.odd_norm = odd;
    }
    out.value = value / (2.0 * M_PI * hbar);
    return out;
}

} // namespace

FermiTraceResult fk_fermi_trace(FermiSystem system, FermiFkScheme scheme, double omega, double g,
                                double hbar) {
    FermiTraceResult res;
    std::string sysname = system == FermiSystem::Ho ? "fermi-ho" : "fermi-driven";
    std::string schname = scheme == FermiFkScheme::NaiveRmd ? "naive+rmd" : "meticulous";

    if (system == FermiSystem::Driven && omega == 0.0) {
        // Constant-trace case: the linear-in-tau coefficient vanishes with omega.
        res.structure = {{cplx(1.0), 0.0, 0}};
        res.Z = trace_from_terms(res.structure, sysname, schname);
        res.Z.notes.push_back("omega = 0: constant trace");
        return res;
    }

    // Fit the known time structure from samples at moderate tau, then return a
    // structured trace that stays evaluable in log space for large tau.
    std::vector<TraceTerm> basis;
    if (system == FermiSystem::Ho)
        basis = {{cplx(0.0), 0.5 * omega, 0}, {cplx(0.0), -0.5 * omega, 0}};
    else
        basis = {{cplx(0.0), -omega, 0}, {cplx(0.0), 0.0, 1}, {cplx(0.0), 0.0, 0}};

    double scale = std::max(std::abs(omega), 0.5);
    std::vector<double> samples;
    for (int i = 0; i < 2 * static_cast<int>(basis.size()); ++i)
        samples.push_back((0.17 + 0.31 * i) / scale);

    Eigen::MatrixXcd Amat(samples.size(), basis.size());
    Eigen::VectorXcd rhs(samples.size());
    double odd_norm = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double tau = samples[i];
        FermiSample smp = fermi_trace_sample(system, scheme, omega, g, hbar, tau);
        odd_norm = std::max(odd_norm, smp.odd_norm);
        rhs(i) = smp.value;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            double e = basis[j].rate * tau;
            cplx v = std::exp(e);
            for (int l = 0; l < basis[j].tau_power; ++l) v *= tau;
            Amat(i, j) = v;
        }
    }
    Eigen::VectorXcd coef = Amat.colPivHouseholderQr().solve(rhs);
    double resid = (Amat * coef - rhs).norm();
    double rscale = std::max(1.0, rhs.norm());
    if (resid / rscale > 1e-8)
        throw std::logic_error("fk_fermi_trace: sampled trace does not match expected structure");

    for (std::size_t j = 0; j < basis.size(); ++j) basis[j].coeff = coef(j);
    res.structure = basis;
    res.Z = trace_from_terms(basis, sysname, schname);
    res.Z.notes.push_back("alphastar*alpha mapped to g^2 = " + std::to_string(g * g));
    res.odd_terms_found = odd_norm > 1e-12;
    res.odd_norm = odd_norm;
    if (res.odd_terms_found)
        res.Z.notes.push_back("odd source terms excluded from the scalar trace");
    else
        res.Z.notes.push_back("odd source terms vanished under integration");
    return res;
}

GroundEnergyEstimate fermi_ground_energy(FermiSystem system, FermiFkScheme scheme, double omega,
                                         double g, double hbar, const Schedule& schedule) {
    FermiTraceResult tr = fk_fermi_trace(system, scheme, omega, g, hbar);
    return ground_energy_limit(tr.Z, hbar, schedule);
}

RegimeReport regime_classify(double omega, double g, const RegimeThresholds& thr) {
    if (g < 0.0) throw std::invalid_argument("regime_classify: g >= 0");
    DrivenSpectrum ex = driven_matrix_and_spectrum(omega, g);
    RegimeReport r;
    r.exact_plus = ex.lambda_plus;
    r.exact_minus = ex.lambda_minus;

    auto finish = [&](Regime reg, const std::string& name, double ap, double am, double bound) {
        r.regime = reg;
        r.name = name;
        r.approx_plus = ap;
        r.approx_minus = am;
        r.err_plus = std::abs(ap - r.exact_plus);
        r.err_minus = std::abs(am - r.exact_minus);
        r.bound = bound;
        return r;
    };

    if (g <= thr.weak) {
        double ap = omega > 0.0 ? omega : 0.0;
        double am = omega > 0.0 ? 0.0 : omega;
        double bound = omega != 0.0 ? 2.0 * g * g / std::abs(omega) : 2.0 * g;
        return finish(Regime::WeakCoupling, "weak coupling", ap, am, bound);
    }
    if (g > 0.0 && std::abs(omega / g) <= thr.ratio) {
        // Resonant and strong coupling share the same expansion in omega/g.
        double ap = g + 0.5 * omega + omega * omega / (8.0 * g);
        double am = -g + 0.5 * omega - omega * omega / (8.0 * g);
        double bound = 2.0 * std::pow(omega, 4) / (128.0 * g * g * g);
        return finish(g >= 1.0 ? Regime::StrongCoupling : Regime::Resonant,
                      g >= 1.0 ? "strong coupling" : "resonant", ap, am, bound);
    }
    if (omega != 0.0 && std::abs(g / omega) <= thr.ratio) {
        double corr = g * g / omega;
        double bound = 2.0 * std::pow(g, 4) / std::pow(std::abs(omega), 3);
        if (omega > 0.0)
            return finish(Regime::DispersivePositive, "dispersive (omega > 0)", omega + corr,
                          -corr, bound);
        return finish(Regime::DispersiveNegative, "dispersive (omega < 0)", -corr, omega + corr,
                      bound);
    }
    return finish(Regime::Intermediate, "intermediate - no approximation valid", 0.0, 0.0, 0.0);
}

} // namespace dq
