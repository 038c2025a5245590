#include "dq/grassmann.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dq {

namespace {
int popcount(std::uint32_t m) { return std::popcount(m); }

// Parity of the number of set bits in `mask` strictly below bit `i`.
int bits_below(std::uint32_t mask, std::size_t i) {
    std::uint32_t below = mask & ((1u << i) - 1u);
    return popcount(below);
}
} // namespace

GeneratorRegistry::GeneratorRegistry(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > 30) throw std::invalid_argument("registry too large");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw std::invalid_argument("duplicate generator name: " + names_[i]);
    }
}

std::size_t GeneratorRegistry::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown generator: " + name);
    return it->second;
}

bool GeneratorRegistry::has(const std::string& name) const { return index_.count(name) != 0; }

RegistryPtr make_registry(std::vector<std::string> names) {
    return std::make_shared<const GeneratorRegistry>(std::move(names));
}

GrassmannElement::GrassmannElement(RegistryPtr reg, cplx scalar) : reg_(std::move(reg)) {
    if (scalar != cplx(0.0)) terms_[0] = scalar;
}

GrassmannElement GrassmannElement::generator(const RegistryPtr& reg, const std::string& name) {
    GrassmannElement e(reg);
    e.terms_[1u << reg->index(name)] = 1.0;
    return e;
}

cplx GrassmannElement::coeff(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx GrassmannElement::coeff(const std::vector<std::string>& gens) const {
    std::uint32_t m = 0;
    for (auto& g : gens) m |= 1u << reg_->index(g);
    return coeff(m);
}

void GrassmannElement::set(std::uint32_t mask, cplx c) {
    if (c == cplx(0.0))
        terms_.erase(mask);
    else
        terms_[mask] = c;
}

void GrassmannElement::add(std::uint32_t mask, cplx c) { set(mask, coeff(mask) + c); }

void GrassmannElement::check_same_registry(const GrassmannElement& o) const {
    if (reg_ != o.reg_) throw std::invalid_argument("registry mismatch");
}

GrassmannElement GrassmannElement::operator-() const {
    GrassmannElement r(reg_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b) {
    a.check_same_registry(b);
    GrassmannElement r = a;
    for (auto& [m, c] : b.terms_) r.add(m, c);
    return r;
}

GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b) {
    return a + (-b);
}

GrassmannElement operator*(cplx s, const GrassmannElement& a) {
    GrassmannElement r(a.registry());
    if (s == cplx(0.0)) return r;
    for (auto& [m, c] : a.terms()) r.set(m, s * c);
    return r;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    a.check_same_registry(b);
    GrassmannElement r(a.reg_);
    for (auto& [ma, ca] : a.terms_) {
        for (auto& [mb, cb] : b.terms_) {
            if (ma & mb) continue; // repeated generator
            // Sign: each bit of mb must pass the bits of ma above it.
            int swaps = 0;
            std::uint32_t m = mb;
            while (m) {
                std::uint32_t low = m & (~m + 1u);
                std::size_t i = static_cast<std::size_t>(std::countr_zero(low));
                swaps += popcount(ma >> (i + 1));
                m ^= low;
            }
            cplx c = ca * cb;
            if (swaps & 1) c = -c;
            r.add(ma | mb, c);
        }
    }
    return r;
}

double GrassmannElement::distance(const GrassmannElement& o) const {
    check_same_registry(o);
    double d = 0.0;
    for (auto& [m, c] : terms_) d = std::max(d, std::abs(c - o.coeff(m)));
    for (auto& [m, c] : o.terms_) d = std::max(d, std::abs(c - coeff(m)));
    return d;
}

double GrassmannElement::norm() const {
    double d = 0.0;
    for (auto& [m, c] : terms_) d = std::max(d, std::abs(c));
    return d;
}

std::string GrassmannElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real();
        if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
        os << ")";
        for (std::size_t i = 0; i < reg_->size(); ++i)
            if (m & (1u << i)) os << "*" << reg_->name(i);
    }
    return os.str();
}

GrassmannElement left_derivative(const GrassmannElement& f, const std::string& gen) {
    std::size_t i = f.registry()->index(gen);
    std::uint32_t bit = 1u << i;
    GrassmannElement r(f.registry());
    for (auto& [m, c] : f.terms()) {
        if (!(m & bit)) continue;
        int sign = bits_below(m, i) & 1 ? -1 : 1;
        r.add(m ^ bit, static_cast<double>(sign) * c);
    }
    return r;
}

GrassmannElement right_derivative(const GrassmannElement& f, const std::string& gen) {
    std::size_t i = f.registry()->index(gen);
    std::uint32_t bit = 1u << i;
    GrassmannElement r(f.registry());
    for (auto& [m, c] : f.terms()) {
        if (!(m & bit)) continue;
        int above = popcount(m >> (i + 1));
        r.add(m ^ bit, (above & 1 ? -1.0 : 1.0) * c);
    }
    return r;
}

GrassmannElement berezin_integrate(const GrassmannElement& f,
                                   const std::vector<std::string>& gens, MeasureSide side) {
    std::uint32_t seen = 0;
    for (auto& g : gens) {
        std::uint32_t bit = 1u << f.registry()->index(g);
        if (seen & bit) throw std::invalid_argument("duplicate generator in measure: " + g);
        seen |= bit;
    }
    GrassmannElement r = f;
    for (auto& g : gens) {
        if (side == MeasureSide::Right)
            r = right_derivative(r, g);
        else
            r = -1.0 * left_derivative(r, g);
    }
    return r;
}

GrassmannElement grassmann_exp(const GrassmannElement& f) {
    cplx body = f.scalar_part();
    GrassmannElement soul = f;
    soul.set(0, 0.0);
    GrassmannElement r(f.registry(), 1.0);
    GrassmannElement power(f.registry(), 1.0);
    std::size_t n = f.registry()->size();
    double fact = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        power = power * soul;
        if (power.is_zero()) break;
        fact *= static_cast<double>(k);
        r += (1.0 / fact) * power;
    }
    return std::exp(body) * r;
}

Parity parity(const GrassmannElement& f) {
    bool even = false, odd = false;
    for (auto& [m, c] : f.terms()) (popcount(m) & 1 ? odd : even) = true;
    if (odd && even) return Parity::Mixed;
    if (odd) return Parity::Odd;
    return Parity::Even;
}

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "mixed";
    }
}

GrassmannElement grassmann_delta(const RegistryPtr& reg, const std::vector<OddLinear>& args) {
    GrassmannElement r(reg, 1.0);
    for (auto& a : args) {
        GrassmannElement term(reg);
        for (auto& [idx, c] : a.parts) term.add(1u << idx, c);
        if (parity(term) != Parity::Odd) throw std::invalid_argument("delta argument must be odd");
        r = r * term;
    }
    return r;
}

GrassmannElement substitute(const GrassmannElement& f, const std::string& gen,
                            const GrassmannElement& replacement) {
    if (parity(replacement) != Parity::Odd && !replacement.is_zero())
        throw std::invalid_argument("substitute: replacement must be odd");
    const auto& reg = replacement.registry();
    std::size_t i_src = f.registry()->index(gen);
    GrassmannElement r(reg);
    for (auto& [m, c] : f.terms()) {
        // Rebuild the monomial factor by factor in canonical order, mapping
        // the remaining generators by name into the target registry.
        GrassmannElement acc(reg, c);
        for (std::size_t i = 0; i < f.registry()->size(); ++i) {
            if (!(m & (1u << i))) continue;
            if (i == i_src)
                acc = acc * replacement;
            else
                acc = acc * GrassmannElement::generator(reg, f.registry()->name(i));
        }
        r += acc;
    }
    return r;
}

GrassmannElement transport(const GrassmannElement& f, const RegistryPtr& target) {
    GrassmannElement r(target);
    for (auto& [m, c] : f.terms()) {
        GrassmannElement acc(target, c);
        for (std::size_t i = 0; i < f.registry()->size(); ++i)
            if (m & (1u << i)) acc = acc * GrassmannElement::generator(target, f.registry()->name(i));
        r += acc;
    }
    return r;
}

GrassmannElement gaussian_berezin_closed(const std::vector<std::vector<cplx>>& M,
                                         const std::vector<GrassmannElement>& a,
                                         const std::vector<GrassmannElement>& b) {
    const std::size_t n = M.size();
    if (a.size() != n || b.size() != n)
        throw std::invalid_argument("gaussian_berezin: size mismatch");
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (M[i].size() != n) throw std::invalid_argument("gaussian_berezin: M not square");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = M[i][j];
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (!lu.isInvertible()) throw std::domain_error("gaussian_berezin: singular matrix");
    cplx det = lu.determinant();
    Eigen::MatrixXcd inv = lu.inverse();

    RegistryPtr reg;
    for (auto& e : a)
        if (e.registry()) reg = e.registry();
    for (auto& e : b)
        if (e.registry()) reg = e.registry();
    if (!reg) throw std::invalid_argument("gaussian_berezin: sources need a registry");

    // exponent = + a^T M^-1 b. The source-term sign follows from completing the
    // square with anticommuting shifts; the brute-force oracle pins it.
    GrassmannElement expo(reg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            GrassmannElement t = a[i] * b[j];
            expo += inv(i, j) * t;
        }
    return det * grassmann_exp(expo);
}

GrassmannElement gaussian_berezin_brute(const std::vector<std::vector<cplx>>& M,
                                        const std::vector<GrassmannElement>& a,
                                        const std::vector<GrassmannElement>& b,
                                        const RegistryPtr& full_reg,
                                        const std::vector<std::string>& u_names,
                                        const std::vector<std::string>& v_names) {
    const std::size_t n = M.size();
    GrassmannElement expo(full_reg);
    std::vector<GrassmannElement> u, v;
    for (auto& nm : u_names) u.push_back(GrassmannElement::generator(full_reg, nm));
    for (auto& nm : v_names) v.push_back(GrassmannElement::generator(full_reg, nm));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) expo += M[i][j] * (v[i] * u[j]);
    for (std::size_t i = 0; i < n; ++i) {
        expo += u[i] * transport(a[i], full_reg);
        expo += v[i] * transport(b[i], full_reg);
    }
    GrassmannElement integrand = grassmann_exp(expo);
    std::vector<std::string> measure;
    for (std::size_t i = 0; i < n; ++i) {
        measure.push_back(u_names[i]);
        measure.push_back(v_names[i]);
    }
    return berezin_integrate(integrand, measure, MeasureSide::Right);
}

} // namespace dq
