#pragma once

#include <functional>
#include <vector>

#include "dq/gaussian_symbol.hpp"
#include "dq/phase_poly.hpp"

namespace dq {

PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g);

// Moyal product in the differential representation
//   sum_{m,n} (i hbar / 2)^{m+n} (-1)^m / (m! n!) (dp^m dx^n f)(dp^n dx^m g),
// exact (the series terminates on polynomials).
PhasePoly moyal_star(const PhasePoly& f, const PhasePoly& g);

// Exact mixed products: one polynomial factor, one Gaussian factor.
GaussianSymbol moyal_star(const PhasePoly& f, const GaussianSymbol& g);
GaussianSymbol moyal_star(const GaussianSymbol& f, const PhasePoly& g);

// (f * g - g * f) / (i hbar), exact.
PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g);

// f e^{i hbar  <-d_q  ->d_p} g (terminating series on polynomials).
PhasePoly standard_star(const PhasePoly& f, const PhasePoly& g);

enum class TDirection { Forward, Inverse };

// Transition operator T = exp[-(i hbar / 2) d_q d_p] between the standard and
// Moyal products; Inverse applies exp[+(i hbar / 2) d_q d_p]. The orientation
// T(f *_S g) = T f *_M T g holds (fixed by exact tests on monomials).
PhasePoly t_transition(const PhasePoly& f, TDirection dir);

// Partial sum of the star-exponential series sum_n (-i t / hbar)^n H^{*n} / n!
// evaluated at a phase-space point; star powers computed exactly.
cplx star_power_series_exp(const PhasePoly& H, double t, int order, cplx x, cplx p, double hbar);

// max over sample points of |(H * rho)(pt) - E rho(pt)|.
double star_genvalue_residual(const PhasePoly& H, const GaussianSymbol& rho, double E,
                              const std::vector<std::pair<double, double>>& samples);

struct QuadratureParams {
    double tol = 1e-11;
    double boundary_eps = 1e-12; // |psi| must drop below this inside the window
    double max_window = 60.0;
    int max_depth = 48;
};

// Wigner function of a wavefunction by adaptive Simpson quadrature:
// (1 / 2 pi hbar) Int psi(x + y/2) conj(psi(x - y/2)) e^{-i y p / hbar} dy.
// Throws if the window cannot be made large enough or the tolerance or the
// imaginary-residue bound (1e-9) is not met.
double wigner_from_wavefunction(const std::function<cplx(double)>& psi, double x, double p,
                                double hbar, const QuadratureParams& params = {});

} // namespace dq
