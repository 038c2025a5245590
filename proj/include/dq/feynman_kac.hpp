#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dq/propagators.hpp"
#include "dq/star_exp.hpp"

namespace dq {

// c * e^{rate tau} * tau^power; the structured form keeps ln|Z| computable far
// beyond double range.
struct TraceTerm {
    cplx coeff;
    double rate = 0.0;
    int tau_power = 0;
};

struct TraceFunction {
    std::function<cplx(double)> eval;
    std::function<double(double)> log_abs; // stable; defaults to log|eval|
    std::string system;
    std::string scheme;
    std::vector<std::string> notes;
};

TraceFunction trace_from_terms(std::vector<TraceTerm> terms, std::string system,
                               std::string scheme);

// Bosonic HO trace (1/2 pi hbar) Int Exp_star(-tau H / hbar) dx dp, computed by
// analytic Gaussian integration of the Wick-rotated closed form. Equals
// (1/2) csch(w tau / 2).
double fk_trace_ho(double omega, double tau, double hbar);
TraceFunction fk_trace_ho_fn(double omega, double hbar);

// Quadratic-Hamiltonian trace (1/2) csch(sqrt(ab - c^2) tau) by the same
// Gaussian route; requires a, b > 0 and ab - c^2 > 0.
double fk_trace_quadratic(double a, double b, double c, double tau, double hbar);
TraceFunction fk_trace_quadratic_fn(double a, double b, double c, double hbar);

struct Schedule {
    double tau0 = 1.0;
    double growth = 1.25;
    int max_steps = 40;
    double tol = 1e-3;
};

struct GroundEnergyEstimate {
    double value = 0.0;
    bool converged = false;
    std::vector<double> taus;
    std::vector<double> secants;
    std::vector<double> diffs;
};

// E0 = -hbar * (limiting slope of ln|Z|), estimated by successive secants on a
// geometric tau schedule. The secant cancels constants and kills ln(tau)
// contamination to O(1/tau).
GroundEnergyEstimate ground_energy_limit(const TraceFunction& Z, double hbar,
                                         const Schedule& schedule);

enum class FermiFkScheme { NaiveRmd, Meticulous };
enum class FermiSystem { Ho, Driven };

struct FermiTraceResult {
    TraceFunction Z;
    std::vector<TraceTerm> structure;
    bool odd_terms_found = false;
    double odd_norm = 0.0;
};

// Wick-rotated fermionic trace (1/2 pi hbar) Int Exp_star (RMD?) D Pi D Psi.
// The naive scheme multiplies by the remediation factor (Pi - Psi) before the
// Berezin integration; the meticulous scheme integrates directly. After
// integration the even product alphastar*alpha maps to the real scalar g^2
// (an explicit reinterpretation, recorded in the notes); unpaired odd terms
// are reported and excluded.
FermiTraceResult fk_fermi_trace(FermiSystem system, FermiFkScheme scheme, double omega, double g,
                                double hbar);

// Composes fk_fermi_trace with the limit estimator. omega = 0 for the driven
// system is the constant-trace case (limit 0).
GroundEnergyEstimate fermi_ground_energy(FermiSystem system, FermiFkScheme scheme, double omega,
                                         double g, double hbar, const Schedule& schedule);

enum class Regime {
    Resonant,
    DispersivePositive,
    DispersiveNegative,
    StrongCoupling,
    WeakCoupling,
    Intermediate
};

struct RegimeReport {
    Regime regime;
    std::string name;
    double approx_plus = 0.0, approx_minus = 0.0;
    double exact_plus = 0.0, exact_minus = 0.0;
    double err_plus = 0.0, err_minus = 0.0;
    double bound = 0.0; // next-order magnitude; 0 when no approximation applies
};

struct RegimeThresholds {
    double ratio = 0.2;  // smallness cutoff for |w/g| or |g/w|
    double weak = 1e-3;  // absolute cutoff for weak coupling
};

RegimeReport regime_classify(double omega, double g, const RegimeThresholds& thr = {});

} // namespace dq
