#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dq {

using cplx = std::complex<double>;

enum class Parity { Even, Odd, Mixed };
enum class MeasureSide { Left, Right };

// Ordered set of anticommuting generator names. The registry order defines
// the canonical monomial ordering; every sign in the module is the parity of
// the transpositions needed to reach that order. Immutable once built.
class GeneratorRegistry {
  public:
    explicit GeneratorRegistry(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t index(const std::string& name) const; // throws on unknown name
    bool has(const std::string& name) const;

  private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

using RegistryPtr = std::shared_ptr<const GeneratorRegistry>;

RegistryPtr make_registry(std::vector<std::string> names);

// Element of the finite Grassmann algebra over a registry. Each monomial is a
// subset of generators (bitmask over the registry order) written in ascending
// order; coefficients are complex doubles. No zero coefficients stored.
class GrassmannElement {
  public:
    GrassmannElement() = default;
    explicit GrassmannElement(RegistryPtr reg) : reg_(std::move(reg)) {}
    GrassmannElement(RegistryPtr reg, cplx scalar);

    static GrassmannElement generator(const RegistryPtr& reg, const std::string& name);

    const RegistryPtr& registry() const { return reg_; }
    const std::map<std::uint32_t, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    cplx coeff(std::uint32_t mask) const;
    cplx coeff(const std::vector<std::string>& gens) const; // of the ascending monomial
    cplx scalar_part() const { return coeff(0u); }
    void set(std::uint32_t mask, cplx c);
    void add(std::uint32_t mask, cplx c);

    GrassmannElement operator-() const;
    friend GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b);
    friend GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b);
    friend GrassmannElement operator*(cplx s, const GrassmannElement& a);
    friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
    GrassmannElement& operator+=(const GrassmannElement& o) { return *this = *this + o; }
    GrassmannElement& operator-=(const GrassmannElement& o) { return *this = *this - o; }
    GrassmannElement& operator*=(const GrassmannElement& o) { return *this = *this * o; }

    // Max |difference| over all monomials; registries must match.
    double distance(const GrassmannElement& o) const;
    double norm() const; // max |coefficient|

    std::string str() const;

  private:
    void check_same_registry(const GrassmannElement& o) const;

    RegistryPtr reg_;
    std::map<std::uint32_t, cplx> terms_;
};

// Ordered list of (generator index, complex coefficient) pairs; an odd linear
// combination used for delta arguments and generator substitution.
struct OddLinear {
    std::vector<std::pair<std::size_t, cplx>> parts;
};

GrassmannElement left_derivative(const GrassmannElement& f, const std::string& gen);
GrassmannElement right_derivative(const GrassmannElement& f, const std::string& gen);

// Iterated Berezin integral over gens, first entry integrated first.
// Right measure (Weinberg): integral of (m * g) dg = m, i.e. the generator is
// anticommuted to the back of the monomial and stripped. Left measure:
// integral of dg applied from the left with dg g = -1, i.e. strip from the
// front with an overall minus.
GrassmannElement berezin_integrate(const GrassmannElement& f,
                                   const std::vector<std::string>& gens,
                                   MeasureSide side = MeasureSide::Right);

// exp(f) = e^{scalar part} * finite Taylor series of the nilpotent remainder.
GrassmannElement grassmann_exp(const GrassmannElement& f);

Parity parity(const GrassmannElement& f);
const char* parity_name(Parity p);

// Product of the arguments in the stated order, each an odd linear combination.
GrassmannElement grassmann_delta(const RegistryPtr& reg, const std::vector<OddLinear>& args);

// Replace one generator by an odd element (possibly of another registry that
// shares all remaining names). Every monomial A*g*B maps to A*repl*B.
GrassmannElement substitute(const GrassmannElement& f, const std::string& gen,
                            const GrassmannElement& replacement);

// Re-express f over a target registry containing every generator that f uses.
GrassmannElement transport(const GrassmannElement& f, const RegistryPtr& target);

// Gaussian Berezin integral: integral of exp(v^T M u + u^T a + v^T b) over the
// u, v generators with measure order u1 v1 u2 v2 ... (first integrated first).
// The closed form is det(M) * exp(+a^T M^-1 b); the sign of the source term is
// fixed by the brute-force oracle below, which this function must match.
GrassmannElement gaussian_berezin_closed(const std::vector<std::vector<cplx>>& M,
                                         const std::vector<GrassmannElement>& a,
                                         const std::vector<GrassmannElement>& b);

// Brute force: build the integrand explicitly over u, v and source generators
// and Berezin-integrate. The oracle for gaussian_berezin_closed.
GrassmannElement gaussian_berezin_brute(const std::vector<std::vector<cplx>>& M,
                                        const std::vector<GrassmannElement>& a,
                                        const std::vector<GrassmannElement>& b,
                                        const RegistryPtr& full_reg,
                                        const std::vector<std::string>& u_names,
                                        const std::vector<std::string>& v_names);

} // namespace dq
