#include "dq/propagators.hpp"

#include <cmath>
#include <stdexcept>

namespace dq {

cplx ho_propagator(double m, double omega, double x_f, double x_0, double T, double hbar) {
    if (m <= 0.0 || omega <= 0.0) throw std::invalid_argument("ho_propagator: m, omega > 0");
    double s = std::sin(omega * T);
    if (std::abs(s) < 1e-12) throw std::domain_error("ho_propagator: caustic (omega T near k pi)");
    if (!(omega * T > 0.0 && omega * T < M_PI))
        throw std::domain_error("ho_propagator: principal branch requires 0 < omega T < pi");
    cplx pref = std::sqrt(m * omega / (2.0 * M_PI * hbar * s) / cplx(0.0, 1.0));
    cplx phase = cplx(0.0, 1.0) * (m * omega / (2.0 * hbar * s)) *
                 ((x_f * x_f + x_0 * x_0) * std::cos(omega * T) - 2.0 * x_f * x_0);
    return pref * std::exp(phase);
}

cplx free_propagator(double m, double q_f, double q_0, double T, double hbar) {
    cplx pref = std::sqrt(m / (2.0 * M_PI * hbar * T) / cplx(0.0, 1.0));
    double d = q_f - q_0;
    return pref * std::exp(cplx(0.0, 1.0) * m * d * d / (2.0 * hbar * T));
}

namespace {

struct OscState {
    double y, yd;
};

// One RK4 step of m y'' + c(t) y = rhs(t).
OscState rk4_step(const OscState& s, double t, double h, double m,
                  const std::function<double(double)>& c,
                  const std::function<double(double)>& rhs) {
    auto acc = [&](double tt, double yy) {
        double r = rhs ? rhs(tt) : 0.0;
        return (r - c(tt) * yy) / m;
    };
    double k1y = s.yd, k1v = acc(t, s.y);
    double k2y = s.yd + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, s.y + 0.5 * h * k1y);
    double k3y = s.yd + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, s.y + 0.5 * h * k2y);
    double k4y = s.yd + h * k3v, k4v = acc(t + h, s.y + h * k3y);
    return {s.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            s.yd + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

struct Trajectories {
    std::vector<double> t;
    std::vector<double> phi;   // Jacobi field: phi(t0)=0, phi'(t0)=1, homogeneous
    std::vector<double> u, ud; // particular: u(t0)=q0, u'(t0)=0, with drive
    std::vector<double> phid;
};

Trajectories integrate_pair(const QuadraticSpec& spec, double t_0, double t_f, double q_0) {
    int N = std::max(spec.steps, 2000);
    double h = (t_f - t_0) / N;
    Trajectories tr;
    tr.t.resize(N + 1);
    tr.phi.resize(N + 1);
    tr.phid.resize(N + 1);
    tr.u.resize(N + 1);
    tr.ud.resize(N + 1);
    OscState sphi{0.0, 1.0};
    OscState su{q_0, 0.0};
    tr.t[0] = t_0;
    tr.phi[0] = 0.0;
    tr.phid[0] = 1.0;
    tr.u[0] = q_0;
    tr.ud[0] = 0.0;
    for (int i = 0; i < N; ++i) {
        double t = t_0 + i * h;
        sphi = rk4_step(sphi, t, h, spec.m, spec.c, nullptr);
        su = rk4_step(su, t, h, spec.m, spec.c, spec.f);
        tr.t[i + 1] = t + h;
        tr.phi[i + 1] = sphi.y;
        tr.phid[i + 1] = sphi.yd;
        tr.u[i + 1] = su.y;
        tr.ud[i + 1] = su.yd;
    }
    return tr;
}

} // namespace

std::vector<QuadraticPathPoint> quadratic_classical_path(const QuadraticSpec& spec, double q_f,
                                                         double t_f, double q_0, double t_0) {
    Trajectories tr = integrate_pair(spec, t_0, t_f, q_0);
    double phif = tr.phi.back();
    if (std::abs(phif) < 1e-10) throw std::domain_error("quadratic_propagator: caustic");
    double lambda = (q_f - tr.u.back()) / phif;
    std::vector<QuadraticPathPoint> path(tr.t.size());
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        path[i] = {tr.t[i], tr.u[i] + lambda * tr.phi[i], tr.ud[i] + lambda * tr.phid[i]};
    return path;
}

QuadraticPropagatorResult quadratic_propagator(const QuadraticSpec& spec, double q_f, double t_f,
                                               double q_0, double t_0) {
    if (!(t_f > t_0)) throw std::invalid_argument("quadratic_propagator: t_f must exceed t_0");
    Trajectories tr = integrate_pair(spec, t_0, t_f, q_0);
    double phif = tr.phi.back();
    if (std::abs(phif) < 1e-10) throw std::domain_error("quadratic_propagator: caustic");

    int maslov = 0;
    for (std::size_t i = 1; i + 1 < tr.phi.size(); ++i)
        if (tr.phi[i] == 0.0 || (tr.phi[i] > 0.0) != (tr.phi[i + 1] > 0.0)) ++maslov;
    if (maslov > 0)
        throw std::domain_error("quadratic_propagator: caustic crossed (Maslov index > 0)");

    double lambda = (q_f - tr.u.back()) / phif;
    // Classical action by Simpson over the Lagrangian along the path.
    std::size_t N = tr.t.size() - 1;
    auto lagr = [&](std::size_t i) {
        double q = tr.u[i] + lambda * tr.phi[i];
        double qd = tr.ud[i] + lambda * tr.phid[i];
        double t = tr.t[i];
        double drive = spec.f ? spec.f(t) : 0.0;
        return 0.5 * spec.m * qd * qd - 0.5 * spec.c(t) * q * q + drive * q;
    };
    double h = (t_f - t_0) / static_cast<double>(N);
    double S = lagr(0) + lagr(N);
    for (std::size_t i = 1; i < N; ++i) S += (i % 2 ? 4.0 : 2.0) * lagr(i);
    S *= h / 3.0;

    cplx pref = std::sqrt(spec.m / (2.0 * M_PI * spec.hbar * phif) / cplx(0.0, 1.0));
    QuadraticPropagatorResult res;
    res.amplitude = pref * std::exp(cplx(0.0, S / spec.hbar));
    res.action = S;
    res.phi_tf = phif;
    res.maslov = maslov;
    return res;
}

FermiPropagator fermi_ho_propagator(double omega, cplx t, FermiBasis basis, double hbar) {
    std::string first = basis == FermiBasis::Naive ? "psi_f" : "pi_f";
    RegistryPtr reg = make_registry({first, "psi_0"});
    cplx phase = std::exp(cplx(0.0, 0.5) * omega * t);
    cplx decay = std::exp(cplx(0.0, -1.0) * omega * t);
    GrassmannElement kin = GrassmannElement::generator(reg, first) *
                           GrassmannElement::generator(reg, "psi_0");
    FermiPropagator K;
    K.element = phase * grassmann_exp(decay * kin);
    K.basis = basis;
    K.omega = omega;
    K.time = t;
    K.hbar = hbar;
    return K;
}

FermiPropagator fermi_driven_propagator(double omega, cplx t, FermiBasis basis, double hbar) {
    if (omega == 0.0) throw std::invalid_argument("fermi_driven_propagator: omega must be nonzero");
    std::string first = basis == FermiBasis::Naive ? "psi_f" : "pi_f";
    RegistryPtr reg = make_registry({first, "psi_0", "alpha", "alphastar"});
    auto g = [&](const char* nm) { return GrassmannElement::generator(reg, nm); };
    cplx decay = std::exp(cplx(0.0, -1.0) * omega * t);
    cplx k = (1.0 - decay) / omega;
    cplx phi = (cplx(0.0, -1.0) * omega * t + decay - 1.0) / (2.0 * omega);

    GrassmannElement expo = decay * (g(first.c_str()) * g("psi_0"));
    expo -= k * (g("alphastar") * g(first.c_str()) + g("alpha") * g("psi_0"));
    expo -= phi * (g("alphastar") * g("alpha"));

    // First-order expansion of the exponential; exact when the sources vanish.
    FermiPropagator K;
    K.element = GrassmannElement(reg, 1.0) + expo;
    K.basis = basis;
    K.omega = omega;
    K.time = t;
    K.hbar = hbar;
    return K;
}

DrivenSpectrum driven_matrix_and_spectrum(double omega, double g) {
    DrivenSpectrum s;
    s.matrix[0][0] = 0.0;
    s.matrix[0][1] = g;
    s.matrix[1][0] = g;
    s.matrix[1][1] = omega;
    double root = std::sqrt(omega * omega + 4.0 * g * g);
    s.lambda_plus = 0.5 * omega + 0.5 * root;
    s.lambda_minus = 0.5 * omega - 0.5 * root;
    return s;
}

} // namespace dq
