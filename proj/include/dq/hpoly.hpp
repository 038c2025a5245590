#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

#include "dq/rational.hpp"

namespace dq {

using cplx = std::complex<double>;

// Polynomial in the formal deformation parameter hbar with exact complex
// rational coefficients. No zero coefficients are stored.
class HPoly {
  public:
    HPoly() = default;
    HPoly(std::int64_t c) { set(0, CRational(c)); }
    HPoly(CRational c) { set(0, c); }

    static HPoly hbar(int power = 1, CRational c = CRational(1)) {
        HPoly p;
        p.set(power, c);
        return p;
    }

    const std::map<int, CRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CRational coeff(int power) const {
        auto it = terms_.find(power);
        return it == terms_.end() ? CRational() : it->second;
    }

    void set(int power, const CRational& c) {
        if (c.is_zero())
            terms_.erase(power);
        else
            terms_[power] = c;
    }
    void add(int power, const CRational& c) { set(power, coeff(power) + c); }

    HPoly operator-() const {
        HPoly r;
        for (auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend HPoly operator+(const HPoly& a, const HPoly& b) {
        HPoly r = a;
        for (auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }
    friend HPoly operator-(const HPoly& a, const HPoly& b) { return a + (-b); }
    friend HPoly operator*(const HPoly& a, const HPoly& b) {
        HPoly r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) r.add(ka + kb, ca * cb);
        return r;
    }
    HPoly& operator+=(const HPoly& o) { return *this = *this + o; }
    HPoly& operator-=(const HPoly& o) { return *this = *this - o; }
    HPoly& operator*=(const HPoly& o) { return *this = *this * o; }

    friend bool operator==(const HPoly& a, const HPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

    // Exact division by (i*hbar); requires every term to carry hbar^1 or higher.
    HPoly div_i_hbar() const {
        HPoly r;
        for (auto& [k, c] : terms_) {
            if (k < 1) throw std::domain_error("HPoly: not divisible by hbar");
            r.set(k - 1, c * CRational(Rational(0), Rational(-1))); // 1/i = -i
        }
        return r;
    }

    cplx eval(double hbar_value) const {
        cplx s = 0.0;
        double hp = 1.0;
        int last = 0;
        for (auto& [k, c] : terms_) {
            for (; last < k; ++last) hp *= hbar_value;
            s += cplx(c.re().to_double(), c.im().to_double()) * hp;
        }
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [k, c] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += c.str();
            if (k >= 1) s += "*hbar" + (k > 1 ? "^" + std::to_string(k) : std::string());
        }
        return s;
    }

  private:
    std::map<int, CRational> terms_;
};

} // namespace dq
