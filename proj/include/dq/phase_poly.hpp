#pragma once

#include <map>
#include <string>
#include <utility>

#include "dq/hpoly.hpp"

namespace dq {

// Polynomial in the canonical pair (x, p) with HPoly coefficients.
// One degree of freedom. Canonical form: no zero coefficients stored.
class PhasePoly {
  public:
    using Key = std::pair<int, int>; // (deg_x, deg_p)

    PhasePoly() = default;
    PhasePoly(HPoly c) { set(0, 0, std::move(c)); }
    PhasePoly(std::int64_t c) { set(0, 0, HPoly(c)); }

    static PhasePoly monomial(int dx, int dp, HPoly c = HPoly(1)) {
        PhasePoly f;
        f.set(dx, dp, std::move(c));
        return f;
    }
    static PhasePoly x() { return monomial(1, 0); }
    static PhasePoly p() { return monomial(0, 1); }

    const std::map<Key, HPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    HPoly coeff(int dx, int dp) const {
        auto it = terms_.find({dx, dp});
        return it == terms_.end() ? HPoly() : it->second;
    }
    void set(int dx, int dp, HPoly c) {
        if (c.is_zero())
            terms_.erase({dx, dp});
        else
            terms_[{dx, dp}] = std::move(c);
    }
    void add(int dx, int dp, const HPoly& c) { set(dx, dp, coeff(dx, dp) + c); }

    int deg_x() const {
        int d = 0;
        for (auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int deg_p() const {
        int d = 0;
        for (auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    PhasePoly operator-() const {
        PhasePoly r;
        for (auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend PhasePoly operator+(const PhasePoly& a, const PhasePoly& b) {
        PhasePoly r = a;
        for (auto& [k, c] : b.terms_) r.add(k.first, k.second, c);
        return r;
    }
    friend PhasePoly operator-(const PhasePoly& a, const PhasePoly& b) { return a + (-b); }
    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
        PhasePoly r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_)
                r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend PhasePoly operator*(const HPoly& c, const PhasePoly& f) {
        PhasePoly r;
        for (auto& [k, fc] : f.terms_) r.add(k.first, k.second, c * fc);
        return r;
    }
    PhasePoly& operator+=(const PhasePoly& o) { return *this = *this + o; }
    PhasePoly& operator-=(const PhasePoly& o) { return *this = *this - o; }
    PhasePoly& operator*=(const PhasePoly& o) { return *this = *this * o; }

    friend bool operator==(const PhasePoly& a, const PhasePoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const PhasePoly& a, const PhasePoly& b) { return !(a == b); }

    PhasePoly dx() const {
        PhasePoly r;
        for (auto& [k, c] : terms_)
            if (k.first > 0) r.add(k.first - 1, k.second, HPoly(k.first) * c);
        return r;
    }
    PhasePoly dp() const {
        PhasePoly r;
        for (auto& [k, c] : terms_)
            if (k.second > 0) r.add(k.first, k.second - 1, HPoly(k.second) * c);
        return r;
    }

    // Keep only the hbar^k part of every coefficient, with hbar stripped.
    PhasePoly hbar_order(int k) const {
        PhasePoly r;
        for (auto& [key, c] : terms_) {
            CRational ck = c.coeff(k);
            if (!ck.is_zero()) r.set(key.first, key.second, HPoly(ck));
        }
        return r;
    }

    cplx eval(cplx xv, cplx pv, double hbar_value) const {
        cplx s = 0.0;
        for (auto& [k, c] : terms_) {
            cplx t = c.eval(hbar_value);
            for (int i = 0; i < k.first; ++i) t *= xv;
            for (int i = 0; i < k.second; ++i) t *= pv;
            s += t;
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
            bool simple = c.terms().size() == 1;
            std::string cs = c.str();
            if (!simple) cs = "(" + cs + ")";
            std::string mono;
            if (k.first > 0) mono += "x" + (k.first > 1 ? "^" + std::to_string(k.first) : std::string());
            if (k.second > 0) {
                if (!mono.empty()) mono += "*";
                mono += "p" + (k.second > 1 ? "^" + std::to_string(k.second) : std::string());
            }
            if (mono.empty())
                s += cs;
            else if (cs == "1")
                s += mono;
            else
                s += cs + "*" + mono;
        }
        return s;
    }

  private:
    std::map<Key, HPoly> terms_;
};

} // namespace dq
