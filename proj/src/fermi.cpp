#include "dq/fermi.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace dq {

namespace {
int popcount(std::uint32_t m) { return std::popcount(m); }
}

FermiSpace FermiSpace::make(int n, double hbar, std::vector<std::string> externals) {
    if (n < 1 || n > 3) throw std::invalid_argument("FermiSpace: n must be 1..3");
    std::vector<std::string> names;
    for (int j = 1; j <= n; ++j) names.push_back("pi" + std::to_string(j));
    for (int j = 1; j <= n; ++j) names.push_back("psi" + std::to_string(j));
    for (auto& e : externals) names.push_back(e);
    FermiSpace sp;
    sp.reg = make_registry(names);
    sp.n = n;
    sp.hbar = hbar;
    sp.externals = std::move(externals);
    sp.ext_reg = make_registry(sp.externals);
    return sp;
}

std::string FermiSpace::pi_name(int j) const { return "pi" + std::to_string(j); }
std::string FermiSpace::psi_name(int j) const { return "psi" + std::to_string(j); }
GrassmannElement FermiSpace::pi(int j) const { return GrassmannElement::generator(reg, pi_name(j)); }
GrassmannElement FermiSpace::psi(int j) const { return GrassmannElement::generator(reg, psi_name(j)); }

std::vector<GrassmannElement> FermiSpace::internal_basis() const {
    std::vector<GrassmannElement> basis;
    std::uint32_t internal_bits = (1u << (2 * n)) - 1u;
    for (std::uint32_t m = 0; m <= internal_bits; ++m) {
        GrassmannElement e(reg);
        e.set(m, 1.0);
        basis.push_back(e);
    }
    return basis;
}

GrassmannElement fermi_star(const FermiSpace& sp, const GrassmannElement& f,
                            const GrassmannElement& g) {
    if (f.registry() != sp.reg || g.registry() != sp.reg)
        throw std::invalid_argument("fermi_star: registry mismatch");

    // Bidifferential labels: for each dof j, (D, E) = (pi_j, psi_j) and
    // (psi_j, pi_j); D acts on f as a right derivative, E on g as a left one.
    struct Label {
        std::string d, e;
    };
    std::vector<Label> labels;
    for (int j = 1; j <= sp.n; ++j) {
        labels.push_back({sp.pi_name(j), sp.psi_name(j)});
        labels.push_back({sp.psi_name(j), sp.pi_name(j)});
    }

    cplx ih2 = cplx(0.0, sp.hbar / 2.0);
    GrassmannElement result = f * g;

    int kmax = 2 * sp.n;
    std::vector<std::size_t> tuple;
    // Iterate ordered k-tuples of labels: coefficient (i hbar/2)^k / k! with the
    // operator-reordering sign (-1)^{k(k-1)/2}.
    for (int k = 1; k <= kmax; ++k) {
        cplx coef = 1.0;
        for (int j = 0; j < k; ++j) coef *= ih2;
        double fact = 1.0;
        for (int j = 2; j <= k; ++j) fact *= j;
        coef /= fact;
        if ((k * (k - 1) / 2) % 2 == 1) coef = -coef;

        tuple.assign(k, 0);
        for (;;) {
            GrassmannElement fd = f;
            for (int j = 0; j < k && !fd.is_zero(); ++j)
                fd = right_derivative(fd, labels[tuple[j]].d);
            if (!fd.is_zero()) {
                GrassmannElement gd = g;
                for (int j = k - 1; j >= 0 && !gd.is_zero(); --j)
                    gd = left_derivative(gd, labels[tuple[j]].e);
                if (!gd.is_zero()) result += coef * (fd * gd);
            }
            // Advance the tuple.
            int pos = k - 1;
            while (pos >= 0 && ++tuple[pos] == labels.size()) tuple[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return result;
}

GrassmannElement fermi_star_integral(const FermiSpace& sp, const GrassmannElement& f,
                                     const GrassmannElement& g) {
    if (f.registry() != sp.reg || g.registry() != sp.reg)
        throw std::invalid_argument("fermi_star_integral: registry mismatch");
    if (sp.n > 2) throw std::invalid_argument("fermi_star_integral: n <= 2 only");

    // Extended registry with primed and double-primed copies.
    std::vector<std::string> names = sp.reg->names();
    for (int j = 1; j <= sp.n; ++j) names.push_back("pi" + std::to_string(j) + "'");
    for (int j = 1; j <= sp.n; ++j) names.push_back("psi" + std::to_string(j) + "'");
    for (int j = 1; j <= sp.n; ++j) names.push_back("pi" + std::to_string(j) + "''");
    for (int j = 1; j <= sp.n; ++j) names.push_back("psi" + std::to_string(j) + "''");
    RegistryPtr ext = make_registry(names);

    auto gen = [&](const std::string& nm) { return GrassmannElement::generator(ext, nm); };

    // f evaluated on the primed copy, g on the double-primed copy.
    GrassmannElement fe = transport(f, ext);
    GrassmannElement ge = transport(g, ext);
    for (int j = 1; j <= sp.n; ++j) {
        fe = substitute(fe, sp.pi_name(j), gen(sp.pi_name(j) + "'"));
        fe = substitute(fe, sp.psi_name(j), gen(sp.psi_name(j) + "'"));
        ge = substitute(ge, sp.pi_name(j), gen(sp.pi_name(j) + "''"));
        ge = substitute(ge, sp.psi_name(j), gen(sp.psi_name(j) + "''"));
    }

    cplx c = cplx(0.0, -2.0 / sp.hbar); // -2i/hbar
    GrassmannElement expo(ext);
    for (int j = 1; j <= sp.n; ++j) {
        GrassmannElement pi = gen(sp.pi_name(j)), psi = gen(sp.psi_name(j));
        GrassmannElement pip = gen(sp.pi_name(j) + "'"), psip = gen(sp.psi_name(j) + "'");
        GrassmannElement pipp = gen(sp.pi_name(j) + "''"), psipp = gen(sp.psi_name(j) + "''");
        expo += c * (pip * (psipp - psi) + pipp * (psi - psip) + pi * (psip - psipp));
    }

    GrassmannElement integrand = fe * ge * grassmann_exp(expo);

    // Measure D pi' D psi' D pi'' D psi'': rightmost block integrates first.
    std::vector<std::string> measure;
    for (int j = 1; j <= sp.n; ++j) measure.push_back(sp.psi_name(j) + "''");
    for (int j = 1; j <= sp.n; ++j) measure.push_back(sp.pi_name(j) + "''");
    for (int j = 1; j <= sp.n; ++j) measure.push_back(sp.psi_name(j) + "'");
    for (int j = 1; j <= sp.n; ++j) measure.push_back(sp.pi_name(j) + "'");
    GrassmannElement integrated = berezin_integrate(integrand, measure, MeasureSide::Right);

    cplx pref = 1.0;
    cplx ih2 = cplx(0.0, sp.hbar / 2.0);
    for (int j = 0; j < 2 * sp.n; ++j) pref *= ih2;

    return pref * transport(integrated, sp.reg);
}

FockOperator::FockOperator(int n, RegistryPtr ext_reg) : n_(n), ext_(std::move(ext_reg)) {
    m_.assign(static_cast<std::size_t>(dim()) * dim(), GrassmannElement(ext_));
}

FockOperator FockOperator::identity(int n, RegistryPtr ext_reg) {
    FockOperator I(n, std::move(ext_reg));
    for (int i = 0; i < I.dim(); ++i) I.at(i, i) = GrassmannElement(I.ext_, 1.0);
    return I;
}

FockOperator FockOperator::operator-() const {
    FockOperator r = *this;
    for (auto& e : r.m_) e = -e;
    return r;
}

FockOperator operator+(const FockOperator& A, const FockOperator& B) {
    if (A.n_ != B.n_) throw std::invalid_argument("FockOperator: size mismatch");
    FockOperator r = A;
    for (std::size_t i = 0; i < r.m_.size(); ++i) r.m_[i] += B.m_[i];
    return r;
}

FockOperator operator-(const FockOperator& A, const FockOperator& B) { return A + (-B); }

FockOperator operator*(cplx s, const FockOperator& A) {
    FockOperator r = A;
    for (auto& e : r.m_) e = s * e;
    return r;
}

FockOperator operator*(const GrassmannElement& s, const FockOperator& A) {
    FockOperator r = A;
    for (auto& e : r.m_) e = s * e;
    return r;
}

FockOperator operator*(const FockOperator& A, const FockOperator& B) {
    if (A.n_ != B.n_) throw std::invalid_argument("FockOperator: size mismatch");
    FockOperator r(A.n_, A.ext_);
    int d = A.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            GrassmannElement s(A.ext_);
            for (int k = 0; k < d; ++k) s += A.at(i, k) * B.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

double FockOperator::distance(const FockOperator& o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i) d = std::max(d, m_[i].distance(o.m_[i]));
    return d;
}

namespace {

// Jordan-Wigner annihilator for mode j (1-based) on occupation bitstrings.
FockOperator jw_annihilator(int n, const RegistryPtr& ext, int j) {
    FockOperator A(n, ext);
    int bit = 1 << (j - 1);
    for (int b = 0; b < (1 << n); ++b) {
        if (!(b & bit)) continue;
        int below = popcount(static_cast<std::uint32_t>(b & (bit - 1)));
        A.at(b ^ bit, b) = GrassmannElement(ext, (below & 1) ? -1.0 : 1.0);
    }
    return A;
}

FockOperator jw_creator(int n, const RegistryPtr& ext, int j) {
    FockOperator A(n, ext);
    int bit = 1 << (j - 1);
    for (int b = 0; b < (1 << n); ++b) {
        if (b & bit) continue;
        int below = popcount(static_cast<std::uint32_t>(b & (bit - 1)));
        A.at(b ^ bit, b) = GrassmannElement(ext, (below & 1) ? -1.0 : 1.0);
    }
    return A;
}

} // namespace

FockOperator fock_psi(const FermiSpace& sp, int j) {
    return std::sqrt(sp.hbar) * jw_annihilator(sp.n, sp.ext_reg, j);
}

FockOperator fock_pi(const FermiSpace& sp, int j) {
    return cplx(0.0, 1.0) * std::sqrt(sp.hbar) * jw_creator(sp.n, sp.ext_reg, j);
}

FockOperator fermi_weyl_quantize(const FermiSpace& sp, const GrassmannElement& f) {
    if (f.registry() != sp.reg) throw std::invalid_argument("fermi_weyl_quantize: registry mismatch");
    RegistryPtr ext = sp.ext_reg;
    FockOperator result(sp.n, ext);

    // Cache the generator matrices in registry order: pi1..pin, psi1..psin.
    std::vector<FockOperator> gens;
    for (int j = 1; j <= sp.n; ++j) gens.push_back(fock_pi(sp, j));
    for (int j = 1; j <= sp.n; ++j) gens.push_back(fock_psi(sp, j));

    for (auto& [mask, c] : f.terms()) {
        std::vector<int> internal;
        GrassmannElement extpart(ext, 1.0);
        for (std::size_t i = 0; i < sp.reg->size(); ++i) {
            if (!(mask & (1u << i))) continue;
            if (i < static_cast<std::size_t>(2 * sp.n))
                internal.push_back(static_cast<int>(i));
            else
                extpart = extpart * GrassmannElement::generator(ext, sp.reg->name(i));
        }
        // Antisymmetrized average over operator orderings of the internal part.
        FockOperator sym(sp.n, ext);
        std::vector<int> perm(internal.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::size_t count = 0;
        do {
            // Permutation sign.
            int sign = 1;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) sign = -sign;
            FockOperator prod = FockOperator::identity(sp.n, ext);
            for (std::size_t i = 0; i < perm.size(); ++i)
                prod = prod * gens[internal[static_cast<std::size_t>(perm[i])]];
            sym = sym + static_cast<double>(sign) * prod;
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        sym = (1.0 / static_cast<double>(count)) * sym;
        // External factors stand right of the internal ones in canonical order.
        FockOperator term = sym;
        for (int r = 0; r < term.dim(); ++r)
            for (int col = 0; col < term.dim(); ++col) term.at(r, col) = term.at(r, col) * extpart;
        result = result + c * term;
    }
    return result;
}

GrassmannElement fermi_trace(const FermiSpace& sp, const FockOperator& A) {
    GrassmannElement s(A.ext_registry());
    for (int i = 0; i < A.dim(); ++i) s += A.at(i, i);
    cplx pref = 1.0;
    for (int j = 0; j < sp.n; ++j) pref /= cplx(0.0, sp.hbar);
    return pref * s;
}

Parity fock_parity(const FockOperator& A) {
    bool even = false, odd = false;
    for (int r = 0; r < A.dim(); ++r)
        for (int c = 0; c < A.dim(); ++c) {
            const GrassmannElement& e = A.at(r, c);
            int block = (popcount(static_cast<std::uint32_t>(r)) +
                         popcount(static_cast<std::uint32_t>(c))) & 1;
            for (auto& [m, coef] : e.terms()) {
                int total = (block + popcount(m)) & 1;
                (total ? odd : even) = true;
            }
        }
    if (odd && even) return Parity::Mixed;
    if (odd) return Parity::Odd;
    return Parity::Even;
}

GrassmannElement fermi_phase_integral(const FermiSpace& sp, const GrassmannElement& f) {
    std::vector<std::string> measure;
    for (int j = 1; j <= sp.n; ++j) measure.push_back(sp.psi_name(j));
    for (int j = 1; j <= sp.n; ++j) measure.push_back(sp.pi_name(j));
    return berezin_integrate(f, measure, MeasureSide::Right);
}

GrassmannElement fermi_wigner(const FermiSpace& sp, const FockOperator& rho) {
    if (sp.n > 2) throw std::invalid_argument("fermi_wigner: n <= 2 only");
    if (!sp.externals.empty())
        throw std::invalid_argument("fermi_wigner: external-free spaces only");
    int d = 1 << sp.n;
    int nb = 1 << (2 * sp.n); // internal symbol basis size = matrix entry count

    // Columns: quantization of each basis monomial, flattened.
    Eigen::MatrixXcd Q(d * d, nb);
    for (int m = 0; m < nb; ++m) {
        GrassmannElement mono(sp.reg);
        mono.set(static_cast<std::uint32_t>(m), 1.0);
        FockOperator op = fermi_weyl_quantize(sp, mono);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) Q(r * d + c, m) = op.at(r, c).scalar_part();
    }
    Eigen::VectorXcd target(d * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) target(r * d + c) = rho.at(r, c).scalar_part();
    Eigen::VectorXcd sol = Q.fullPivLu().solve(target);

    GrassmannElement symbol(sp.reg);
    for (int m = 0; m < nb; ++m)
        if (sol(m) != cplx(0.0)) symbol.set(static_cast<std::uint32_t>(m), sol(m));

    // Normalizing phase: fix the vacuum projector's integral to hbar^{-n}.
    FockOperator vac(sp.n, rho.ext_registry());
    vac.at(0, 0) = GrassmannElement(rho.ext_registry(), 1.0);
    Eigen::VectorXcd vtarget(d * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) vtarget(r * d + c) = vac.at(r, c).scalar_part();
    Eigen::VectorXcd vsol = Q.fullPivLu().solve(vtarget);
    GrassmannElement vsym(sp.reg);
    for (int m = 0; m < nb; ++m)
        if (vsol(m) != cplx(0.0)) vsym.set(static_cast<std::uint32_t>(m), vsol(m));
    cplx vint = fermi_phase_integral(sp, vsym).scalar_part();
    if (vint == cplx(0.0)) throw std::logic_error("fermi_wigner: vacuum symbol has zero integral");
    double target_norm = 1.0;
    for (int j = 0; j < sp.n; ++j) target_norm /= sp.hbar;
    cplx cn = target_norm / vint;

    return cn * symbol;
}

} // namespace dq
