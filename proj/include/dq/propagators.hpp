#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dq/grassmann.hpp"

namespace dq {

// Closed-form harmonic oscillator propagator, principal branch, valid for
// 0 < omega T < pi. Throws near a caustic.
cplx ho_propagator(double m, double omega, double x_f, double x_0, double T, double hbar);

// Free-particle kernel sqrt(m / 2 pi i hbar T) exp(i m (qf-q0)^2 / 2 hbar T).
cplx free_propagator(double m, double q_f, double q_0, double T, double hbar);

struct QuadraticSpec {
    double m = 1.0;
    std::function<double(double)> c; // restoring coefficient c(t)
    std::function<double(double)> f; // drive f(t); may be null for zero
    double hbar = 1.0;
    int steps = 4000; // RK4 steps (spec floor: 2000)
};

struct QuadraticPropagatorResult {
    cplx amplitude;   // full propagator value
    double action;    // classical action S_c
    double phi_tf;    // Jacobi field at t_f
    int maslov;       // zero crossings of phi in (t_0, t_f)
};

// Propagator of the general quadratic Lagrangian
//   L = m qdot^2 / 2 - c(t) q^2 / 2 + f(t) q
// via the Jacobi-field prefactor and the classical action (RK4 + linear
// shooting + Simpson). Throws at caustics (|phi(t_f)| below tolerance) and
// rejects trajectories that cross one (Maslov index >= 1).
QuadraticPropagatorResult quadratic_propagator(const QuadraticSpec& spec, double q_f, double t_f,
                                               double q_0, double t_0);

// Classical path at interior checkpoints (for Euler-Lagrange residual tests).
struct QuadraticPathPoint {
    double t, q, qdot;
};
std::vector<QuadraticPathPoint> quadratic_classical_path(const QuadraticSpec& spec, double q_f,
                                                         double t_f, double q_0, double t_0);

enum class FermiBasis { Naive, Meticulous };

// Fermionic oscillator propagator as an exact two-term Grassmann element:
//   exp(i w t / 2) exp((psi_f | pi_f) e^{-i w t} psi_0).
// Naive basis registry: (psi_f, psi_0); meticulous: (pi_f, psi_0).
// Time enters as a complex parameter so Wick rotations evaluate the same code.
struct FermiPropagator {
    GrassmannElement element;
    FermiBasis basis;
    double omega;
    cplx time;
    double hbar;
};
FermiPropagator fermi_ho_propagator(double omega, cplx t, FermiBasis basis, double hbar);

// Driven oscillator propagator over (pi_f, psi_0, alpha, alphastar):
//   exp{ pi_f e^{-iwt} psi_0 - (1/w)(1 - e^{-iwt})(a* pi_f + a psi_0)
//        - (a* a / 2w)(-iwt + e^{-iwt} - 1) }
// expanded to first order in the exponent (the order at which the closed form
// itself holds; see README notes). The naive variant replaces pi_f by psi_f.
FermiPropagator fermi_driven_propagator(double omega, cplx t, FermiBasis basis, double hbar);

// The driven Hamiltonian's 2x2 matrix form [[0, alpha], [alpha*, omega]] with
// |alpha| = g, and its exact eigenvalues omega/2 +- sqrt(omega^2 + 4 g^2)/2.
struct DrivenSpectrum {
    double matrix[2][2]; // with alpha, alpha* abstracted to g
    double lambda_plus;
    double lambda_minus;
};
DrivenSpectrum driven_matrix_and_spectrum(double omega, double g);

} // namespace dq
