#pragma once

#include "dq/gaussian_symbol.hpp"
#include "dq/grassmann.hpp"
#include "dq/propagators.hpp"

namespace dq {

// Closed form sec(w t / 2) exp[(2 H / i w hbar) tan(w t / 2)] for the
// harmonic oscillator with m = 1 understood through H(q, p).
cplx ho_star_exp_closed(double omega, double q, double p, double t, double hbar);

// Wick-rotated form sech(w tau / 2) exp[-(2 H / w hbar) tanh(w tau / 2)].
cplx ho_star_exp_wick(double omega, double q, double p, double tau, double hbar);

// The Wick-rotated oscillator star exponential as a Gaussian symbol (m = 1).
GaussianSymbol ho_star_exp_wick_symbol(double omega, double tau, double hbar);

// Real-time closed form as a Gaussian symbol at fixed t (m = 1).
GaussianSymbol ho_star_exp_symbol(double omega, double t, double hbar);

// Star exponential by the propagator transform
//   2 Int e^{-2 i q' p / hbar} K(q + q', t; q - q', 0) dq',
// the q'-quadratic exponent extracted exactly (three-point fit) and the
// complex Gaussian integral applied on the principal branch.
cplx star_exp_from_propagator_ho(double m, double omega, double q, double p, double t,
                                 double hbar);
cplx star_exp_from_propagator_quadratic(const QuadraticSpec& spec, double q, double p, double t);

struct FourierDirichlet {
    double lhs;         // (1/2 pi hbar) Int Exp_star(-tau H / hbar) dx dp
    double partial_sum; // sum_{n<N} e^{-tau w (n + 1/2)}
};
FourierDirichlet fourier_dirichlet_check(double omega, double tau, int N, double hbar);

// Diagonal Wigner function ((-1)^n / pi hbar) e^{-2H/w hbar} L_n(4H/w hbar).
double wigner_laguerre(int n, double q, double p, double omega, double hbar);
GaussianSymbol wigner_laguerre_symbol(int n, double omega, double hbar);

// Fermionic star exponentials. Coefficients are complex functions of the
// (possibly complex) time carried by the propagator.
struct FermiStarExp {
    GrassmannElement element; // over (pi, Psi [, alpha, alphastar]) or (Pi, Psi [, ...])
    FermiBasis scheme;
    Parity parity_report;
};

// Naive transform Int e^{-2i pi Psi' / hbar} K(Psi + Psi', t, Psi - Psi') D Psi'.
// Reproduces the thesis's extraction rule: the offset variable is stripped
// from the canonical monomial without a transposition sign (registry order
// pi < Psi' < Psi < alpha < alphastar). This is what makes the output parity
// anomalous, which the result reports rather than hides.
FermiStarExp fermi_star_exp_naive(const FermiPropagator& K);

// Meticulous transform
//   C e^{i Pi Psi / hbar} Int D Psi' D Pi' e^{-2i Pi' Psi' / hbar} K(Pi+Pi', t; Psi-Psi')
// with |C| = 2^{n-1} hbar^{n+1} / (5 3^{n-1}) at n = 1 and the sign fixed by
// the normalization chain in this measure convention. Output must be even.
FermiStarExp fermi_star_exp_meticulous(const FermiPropagator& K);

// Recompute the meticulous normalization constant from the projection chain
// (top-form saturation) in this measure convention; |C| must equal hbar^2/5.
cplx meticulous_constant_from_chain(double hbar);

} // namespace dq
