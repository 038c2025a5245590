#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

namespace dq {

using cplx = std::complex<double>;

// Bivariate polynomial in (x, p) with numeric complex coefficients.
class CPoly2 {
  public:
    using Key = std::pair<int, int>;

    CPoly2() = default;
    CPoly2(cplx c) { set(0, 0, c); }

    static CPoly2 monomial(int dx, int dp, cplx c = 1.0) {
        CPoly2 f;
        f.set(dx, dp, c);
        return f;
    }

    const std::map<Key, cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    cplx coeff(int dx, int dp) const {
        auto it = terms_.find({dx, dp});
        return it == terms_.end() ? cplx(0.0) : it->second;
    }
    void set(int dx, int dp, cplx c) {
        if (c == cplx(0.0))
            terms_.erase({dx, dp});
        else
            terms_[{dx, dp}] = c;
    }
    void add(int dx, int dp, cplx c) { set(dx, dp, coeff(dx, dp) + c); }

    CPoly2 operator-() const {
        CPoly2 r;
        for (auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend CPoly2 operator+(const CPoly2& a, const CPoly2& b) {
        CPoly2 r = a;
        for (auto& [k, c] : b.terms_) r.add(k.first, k.second, c);
        return r;
    }
    friend CPoly2 operator-(const CPoly2& a, const CPoly2& b) { return a + (-b); }
    friend CPoly2 operator*(const CPoly2& a, const CPoly2& b) {
        CPoly2 r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_)
                r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend CPoly2 operator*(cplx s, const CPoly2& a) {
        CPoly2 r;
        for (auto& [k, c] : a.terms_) r.set(k.first, k.second, s * c);
        return r;
    }
    CPoly2& operator+=(const CPoly2& o) { return *this = *this + o; }

    CPoly2 dx() const {
        CPoly2 r;
        for (auto& [k, c] : terms_)
            if (k.first > 0) r.add(k.first - 1, k.second, static_cast<double>(k.first) * c);
        return r;
    }
    CPoly2 dp() const {
        CPoly2 r;
        for (auto& [k, c] : terms_)
            if (k.second > 0) r.add(k.first, k.second - 1, static_cast<double>(k.second) * c);
        return r;
    }

    cplx eval(cplx xv, cplx pv) const {
        cplx s = 0.0;
        for (auto& [k, c] : terms_) {
            cplx t = c;
            for (int i = 0; i < k.first; ++i) t *= xv;
            for (int i = 0; i < k.second; ++i) t *= pv;
            s += t;
        }
        return s;
    }

  private:
    std::map<Key, cplx> terms_;
};

// prefactor(x, p) * exp(A x^2 + B x p + C p^2 + u x + v p + w), all complex.
// Closed under d/dx, d/dp and under multiplication by polynomials, which is
// what the exact star products with one polynomial factor need.
class GaussianSymbol {
  public:
    CPoly2 pref{cplx(1.0)};
    cplx A{0.0}, B{0.0}, C{0.0}, u{0.0}, v{0.0}, w{0.0};
    double hbar = 1.0;

    GaussianSymbol() = default;

    cplx exponent_at(cplx xv, cplx pv) const {
        return A * xv * xv + B * xv * pv + C * pv * pv + u * xv + v * pv + w;
    }
    cplx eval(cplx xv, cplx pv) const {
        return pref.eval(xv, pv) * std::exp(exponent_at(xv, pv));
    }

    GaussianSymbol with_pref(CPoly2 q) const {
        GaussianSymbol g = *this;
        g.pref = std::move(q);
        return g;
    }

    GaussianSymbol dx() const {
        GaussianSymbol g = *this;
        CPoly2 expo_dx;
        expo_dx.add(1, 0, 2.0 * A);
        expo_dx.add(0, 1, B);
        expo_dx.add(0, 0, u);
        g.pref = pref.dx() + pref * expo_dx;
        return g;
    }
    GaussianSymbol dp() const {
        GaussianSymbol g = *this;
        CPoly2 expo_dp;
        expo_dp.add(1, 0, B);
        expo_dp.add(0, 1, 2.0 * C);
        expo_dp.add(0, 0, v);
        g.pref = pref.dp() + pref * expo_dp;
        return g;
    }

    // Same exponent required; prefactors add.
    friend GaussianSymbol operator+(const GaussianSymbol& a, const GaussianSymbol& b) {
        if (a.A != b.A || a.B != b.B || a.C != b.C || a.u != b.u || a.v != b.v || a.w != b.w)
            throw std::invalid_argument("GaussianSymbol: exponent mismatch in sum");
        GaussianSymbol g = a;
        g.pref = a.pref + b.pref;
        return g;
    }
    friend GaussianSymbol operator*(cplx s, const GaussianSymbol& a) {
        GaussianSymbol g = a;
        g.pref = s * a.pref;
        return g;
    }

    // Integral over the whole phase plane for unit prefactor. Requires the
    // real part of the quadratic form to be negative definite.
    cplx integrate_plane() const;
};

} // namespace dq
