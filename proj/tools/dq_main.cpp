// Command-line surface of the deformation-quantization engine.

#include <CLI11.hpp>
#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "dq/config.hpp"
#include "dq/dsl.hpp"
#include "dq/feynman_kac.hpp"
#include "dq/fermi.hpp"
#include "dq/moyal.hpp"
#include "dq/propagators.hpp"
#include "dq/report.hpp"
#include "dq/star_exp.hpp"
#include "dq/verify.hpp"

namespace {

using dq::cplx;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_cplx(cplx v) {
    if (v.imag() == 0.0) return fmt_double(v.real());
    if (v.real() == 0.0) return fmt_double(v.imag()) + "i";
    std::string s = "(" + fmt_double(v.real());
    if (v.imag() >= 0.0) s += "+";
    s += fmt_double(v.imag()) + "i)";
    return s;
}

bool parse_point(const std::string& s, double& q, double& p) {
    std::istringstream is(s);
    char comma = 0;
    return static_cast<bool>(is >> q >> comma >> p) && comma == ',';
}

dq::FermiPropagator make_fermi_propagator(const std::string& system, const std::string& scheme,
                                          double omega, cplx t, double hbar) {
    dq::FermiBasis basis =
        scheme == "naive" ? dq::FermiBasis::Naive : dq::FermiBasis::Meticulous;
    if (system == "fermi-ho") return dq::fermi_ho_propagator(omega, t, basis, hbar);
    return dq::fermi_driven_propagator(omega, t, basis, hbar);
}

void emit(const dq::ReportDocument& doc, bool json) {
    if (json)
        std::cout << doc.to_json() << "\n";
    else
        std::cout << doc.to_text();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dq - phase-space quantization engine"};
    app.require_subcommand(1);

    bool json = false;
    std::string config_path;
    app.add_flag("--json", json, "emit a structured JSON document");
    app.add_option("--config", config_path, "configuration file (key = value lines)");

    // star-product
    auto* sp = app.add_subcommand("star-product", "Moyal star product of two expressions");
    std::string statistics = "bose";
    std::vector<std::string> exprs;
    sp->add_option("--statistics", statistics, "bose|fermi")->default_val("bose");
    sp->add_option("exprs", exprs, "two expressions")->expected(2);

    // star-exp
    auto* se = app.add_subcommand("star-exp", "star exponential of a standard system");
    std::string se_system = "ho", se_scheme = "closed", se_point = "0,0";
    double se_omega = 1.0, se_g = 0.0, se_t = 1.0, se_tau = 0.0, se_mass = 1.0;
    bool se_have_tau = false;
    se->add_option("--system", se_system, "ho|quadratic|fermi-ho|fermi-driven")->required();
    se->add_option("--scheme", se_scheme, "closed|propagator|naive|meticulous");
    se->add_option("--omega", se_omega, "frequency")->required();
    se->add_option("--g", se_g, "driver magnitude |alpha|");
    se->add_option("--mass", se_mass, "mass (bosonic systems)");
    auto* topt = se->add_option("--t", se_t, "real time");
    auto* tauopt = se->add_option("--tau", se_tau, "Wick-rotated time");
    se->add_option("--point", se_point, "phase-space point q,p");
    topt->excludes(tauopt);

    // ground-energy
    auto* ge = app.add_subcommand("ground-energy", "Feynman-Kac ground-state energy");
    std::string ge_system = "ho", ge_scheme = "meticulous", ge_schedule;
    double ge_omega = 1.0, ge_g = 0.0, ge_a = 1.0, ge_b = 1.0, ge_c = 0.0;
    ge->add_option("--system", ge_system, "ho|quadratic|fermi-ho|fermi-driven")->required();
    ge->add_option("--scheme", ge_scheme, "naive|meticulous (fermionic systems)");
    ge->add_option("--omega", ge_omega, "frequency");
    ge->add_option("--g", ge_g, "driver magnitude |alpha|");
    ge->add_option("--a", ge_a, "quadratic coefficient a");
    ge->add_option("--b", ge_b, "quadratic coefficient b");
    ge->add_option("--c", ge_c, "quadratic coefficient c");
    ge->add_option("--schedule", ge_schedule, "tau0,growth,max_steps,tol");

    // propagator
    auto* pr = app.add_subcommand("propagator", "quantum propagator of a standard system");
    std::string pr_system = "ho", pr_endpoints = "0,0", pr_scheme = "meticulous";
    std::string pr_cexpr, pr_fexpr, pr_ctable, pr_ftable;
    double pr_omega = 1.0, pr_mass = 1.0, pr_t = 1.0, pr_t0 = 0.0;
    pr->add_option("--system", pr_system, "ho|quadratic|fermi-ho|fermi-driven")->required();
    pr->add_option("--omega", pr_omega, "frequency");
    pr->add_option("--mass", pr_mass, "mass");
    pr->add_option("--endpoints", pr_endpoints, "x0,xf");
    pr->add_option("--t", pr_t, "final time")->required();
    pr->add_option("--t0", pr_t0, "initial time");
    pr->add_option("--basis", pr_scheme, "naive|meticulous (fermionic)");
    pr->add_option("--c-expr", pr_cexpr, "c(t) as a DSL expression in t");
    pr->add_option("--f-expr", pr_fexpr, "f(t) as a DSL expression in t");
    pr->add_option("--c-table", pr_ctable, "c(t) as tabulated (time value) lines");
    pr->add_option("--f-table", pr_ftable, "f(t) as tabulated (time value) lines");

    // verify
    auto* vf = app.add_subcommand("verify", "run the module invariant suites");
    std::string vf_suite = "all";
    vf->add_option("--suite", vf_suite, "all|grassmann|weyl|moyal|fermi|starexp|fk");

    CLI11_PARSE(app, argc, argv);

    dq::Config cfg = dq::Config::defaults();
    try {
        if (!config_path.empty()) cfg = dq::load_config(config_path);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }

    dq::ReportDocument doc;
    try {
        if (sp->parsed()) {
            doc.command = "star-product";
            doc.params = {{"statistics", statistics}, {"a", exprs[0]}, {"b", exprs[1]}};
            dq::ExprPtr ea = dq::parse(exprs[0]);
            dq::ExprPtr eb = dq::parse(exprs[1]);
            if (statistics == "bose") {
                dq::PhasePoly fa = dq::elaborate_bosonic(ea);
                dq::PhasePoly fb = dq::elaborate_bosonic(eb);
                dq::PhasePoly r = dq::moyal_star(fa, fb);
                doc.results.push_back({"star_product", r.str(), 0.0, "exact", "moyal differential"});
            } else if (statistics == "fermi") {
                dq::FermionicValue fa = dq::elaborate_fermionic(ea, cfg.hbar);
                dq::FermionicValue fbv = dq::elaborate_fermionic(eb, cfg.hbar);
                // Carry the second factor into the first factor's registry.
                dq::GrassmannElement b_in_a = dq::transport(fbv.element, fa.space.reg);
                dq::GrassmannElement r = dq::fermi_star(fa.space, fa.element, b_in_a);
                doc.results.push_back(
                    {"star_product", r.str(), 0.0, "exact", "fermionic differential"});
            } else {
                std::cerr << "error: unknown statistics '" << statistics << "'\n";
                return 2;
            }
        } else if (se->parsed()) {
            doc.command = "star-exp";
            double q = 0.0, p = 0.0;
            if (!parse_point(se_point, q, p)) {
                std::cerr << "error: --point expects q,p\n";
                return 2;
            }
            se_have_tau = tauopt->count() > 0;
            doc.params = {{"system", se_system},
                          {"scheme", se_scheme},
                          {"omega", fmt_double(se_omega)},
                          {"point", se_point},
                          {se_have_tau ? "tau" : "t", fmt_double(se_have_tau ? se_tau : se_t)}};
            if (se_system == "ho") {
                if (se_have_tau) {
                    cplx v = dq::ho_star_exp_wick(se_omega, q, p, se_tau, cfg.hbar);
                    doc.results.push_back({"star_exp", fmt_cplx(v), 0.0, "closed-form", "wick"});
                } else if (se_scheme == "propagator") {
                    cplx v = dq::star_exp_from_propagator_ho(se_mass, se_omega, q, p, se_t,
                                                             cfg.hbar);
                    doc.results.push_back(
                        {"star_exp", fmt_cplx(v), 0.0, "from-propagator", "gaussian transform"});
                } else {
                    cplx v = dq::ho_star_exp_closed(se_omega, q, p, se_t, cfg.hbar);
                    doc.results.push_back({"star_exp", fmt_cplx(v), 0.0, "closed-form", "real time"});
                }
            } else if (se_system == "quadratic") {
                dq::QuadraticSpec spec;
                spec.m = se_mass;
                double w = se_omega;
                spec.c = [w, &spec](double) { return spec.m * w * w; };
                spec.hbar = cfg.hbar;
                cplx v = dq::star_exp_from_propagator_quadratic(spec, q, p, se_t);
                doc.results.push_back(
                    {"star_exp", fmt_cplx(v), 0.0, "from-propagator", "quadratic BVP"});
            } else if (se_system == "fermi-ho" || se_system == "fermi-driven") {
                cplx t = se_have_tau ? cplx(0.0, -se_tau) : cplx(se_t, 0.0);
                std::string scheme = se_scheme == "naive" ? "naive" : "meticulous";
                dq::FermiPropagator K =
                    make_fermi_propagator(se_system, scheme, se_omega, t, cfg.hbar);
                dq::FermiStarExp res = scheme == "naive" ? dq::fermi_star_exp_naive(K)
                                                         : dq::fermi_star_exp_meticulous(K);
                doc.results.push_back({"star_exp", res.element.str(), 0.0, "from-propagator",
                                       scheme + " transform"});
                doc.results.push_back(
                    {"parity", dq::parity_name(res.parity_report), 0.0, "exact", "grading"});
            } else {
                std::cerr << "error: unknown system\n";
                return 2;
            }
        } else if (ge->parsed()) {
            doc.command = "ground-energy";
            dq::Schedule sched;
            sched.tau0 = cfg.fk_tau0;
            sched.growth = cfg.fk_growth;
            sched.max_steps = cfg.fk_max_steps;
            sched.tol = cfg.fk_tol;
            if (!ge_schedule.empty()) {
                std::istringstream is(ge_schedule);
                char c1, c2, c3;
                if (!(is >> sched.tau0 >> c1 >> sched.growth >> c2 >> sched.max_steps >> c3 >>
                      sched.tol)) {
                    std::cerr << "error: --schedule expects tau0,growth,max_steps,tol\n";
                    return 2;
                }
            }
            doc.params = {{"system", ge_system}};
            dq::GroundEnergyEstimate est;
            if (ge_system == "ho") {
                doc.params.push_back({"omega", fmt_double(ge_omega)});
                est = dq::ground_energy_limit(dq::fk_trace_ho_fn(ge_omega, cfg.hbar), cfg.hbar,
                                              sched);
            } else if (ge_system == "quadratic") {
                doc.params.push_back({"a", fmt_double(ge_a)});
                doc.params.push_back({"b", fmt_double(ge_b)});
                doc.params.push_back({"c", fmt_double(ge_c)});
                est = dq::ground_energy_limit(
                    dq::fk_trace_quadratic_fn(ge_a, ge_b, ge_c, cfg.hbar), cfg.hbar, sched);
            } else if (ge_system == "fermi-ho" || ge_system == "fermi-driven") {
                doc.params.push_back({"omega", fmt_double(ge_omega)});
                doc.params.push_back({"g", fmt_double(ge_g)});
                doc.params.push_back({"scheme", ge_scheme});
                dq::FermiFkScheme sch = ge_scheme == "naive" ? dq::FermiFkScheme::NaiveRmd
                                                             : dq::FermiFkScheme::Meticulous;
                dq::FermiSystem sys =
                    ge_system == "fermi-ho" ? dq::FermiSystem::Ho : dq::FermiSystem::Driven;
                est = dq::fermi_ground_energy(sys, sch, ge_omega, ge_g, cfg.hbar, sched);
            } else {
                std::cerr << "error: unknown system\n";
                return 2;
            }
            doc.results.push_back(
                {"E0", fmt_double(est.value), sched.tol, "estimator", "secant slope of ln|Z|"});
            doc.results.push_back(
                {"converged", est.converged ? "true" : "false", 0.0, "estimator", ""});
            std::ostringstream taus;
            taus << "tau schedule: " << est.taus.front() << " .. " << est.taus.back() << " ("
                 << est.taus.size() << " points)";
            doc.diagnostics.push_back(taus.str());
        } else if (pr->parsed()) {
            doc.command = "propagator";
            doc.params = {{"system", pr_system}, {"t", fmt_double(pr_t)}};
            if (pr_system == "ho" || pr_system == "quadratic") {
                double x0 = 0.0, xf = 0.0;
                if (!parse_point(pr_endpoints, x0, xf)) {
                    std::cerr << "error: --endpoints expects x0,xf\n";
                    return 2;
                }
                doc.params.push_back({"endpoints", pr_endpoints});
                if (pr_system == "ho") {
                    cplx K = dq::ho_propagator(pr_mass, pr_omega, xf, x0, pr_t - pr_t0, cfg.hbar);
                    doc.results.push_back({"K", fmt_cplx(K), 0.0, "closed-form", "ho"});
                } else {
                    dq::QuadraticSpec spec;
                    spec.m = pr_mass;
                    spec.hbar = cfg.hbar;
                    if (!pr_cexpr.empty()) {
                        auto fn = dq::elaborate_time_function(dq::parse(pr_cexpr));
                        spec.c = fn;
                    } else if (!pr_ctable.empty()) {
                        spec.c = dq::load_table_function(pr_ctable);
                    } else {
                        double w = pr_omega, m = pr_mass;
                        spec.c = [w, m](double) { return m * w * w; };
                    }
                    if (!pr_fexpr.empty()) spec.f = dq::elaborate_time_function(dq::parse(pr_fexpr));
                    if (!pr_ftable.empty()) spec.f = dq::load_table_function(pr_ftable);
                    dq::QuadraticPropagatorResult r =
                        dq::quadratic_propagator(spec, xf, pr_t, x0, pr_t0);
                    doc.results.push_back({"K", fmt_cplx(r.amplitude), 0.0, "numeric", "BVP"});
                    doc.results.push_back({"S_c", fmt_double(r.action), 0.0, "numeric", "simpson"});
                    doc.results.push_back({"phi", fmt_double(r.phi_tf), 0.0, "numeric", "RK4"});
                    doc.results.push_back(
                        {"maslov", std::to_string(r.maslov), 0.0, "numeric", "zero crossings"});
                }
            } else if (pr_system == "fermi-ho" || pr_system == "fermi-driven") {
                doc.params.push_back({"omega", fmt_double(pr_omega)});
                doc.params.push_back({"basis", pr_scheme});
                dq::FermiPropagator K =
                    make_fermi_propagator(pr_system, pr_scheme, pr_omega, cplx(pr_t, 0.0),
                                          cfg.hbar);
                doc.results.push_back({"K", K.element.str(), 0.0, "closed-form", pr_scheme});
                doc.results.push_back(
                    {"parity", dq::parity_name(dq::parity(K.element)), 0.0, "exact", "grading"});
            } else {
                std::cerr << "error: unknown system\n";
                return 2;
            }
        } else if (vf->parsed()) {
            doc.command = "verify";
            doc.params = {{"suite", vf_suite}};
            std::vector<std::string> names =
                vf_suite == "all" ? dq::suite_names() : std::vector<std::string>{vf_suite};
            bool ok = true;
            for (auto& s : dq::run_suites(names, cfg)) {
                doc.suites.push_back(dq::to_suite_entry(s));
                if (s.failed() > 0) ok = false;
                if (!json) {
                    for (auto& c : s.checks)
                        std::cout << s.name << ": " << c.name
                                  << (c.detail.empty() ? "" : " = " + c.detail)
                                  << (c.passed ? "  PASS" : "  FAIL") << "\n";
                }
            }
            emit(doc, json);
            return ok ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    emit(doc, json);
    return 0;
}
