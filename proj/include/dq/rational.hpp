#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dq {

// Exact rational over int64 with overflow-checked arithmetic. All values kept
// normalized: den > 0, gcd(num, den) = 1.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const { return Rational(checked_neg(num_), den_, already_normal{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        std::int64_t da = a.den_ / g;
        std::int64_t db = b.den_ / g;
        std::int64_t n = checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da));
        std::int64_t d = checked_mul(checked_mul(da, g), db);
        return Rational(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
        std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
        std::int64_t n = checked_mul(a.num_ / g1, b.num_ / g2);
        std::int64_t d = checked_mul(a.den_ / g2, b.den_ / g1);
        return Rational(n, d, already_normal{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    struct already_normal {};
    Rational(std::int64_t n, std::int64_t d, already_normal) : num_(n), den_(d) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = checked_neg(num_);
            den_ = checked_neg(den_);
        }
        std::int64_t g = std::gcd(std::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: add overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: mul overflow");
        return r;
    }
    static std::int64_t checked_neg(std::int64_t a) {
        if (a == INT64_MIN) throw std::overflow_error("Rational: negate overflow");
        return -a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Complex number with exact rational real and imaginary parts.
class CRational {
  public:
    CRational() = default;
    CRational(std::int64_t n) : re_(n) {}
    CRational(Rational re) : re_(re) {}
    CRational(Rational re, Rational im) : re_(re), im_(im) {}

    static CRational i() { return CRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    CRational operator-() const { return CRational(-re_, -im_); }
    friend CRational operator+(const CRational& a, const CRational& b) {
        return CRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend CRational operator-(const CRational& a, const CRational& b) {
        return CRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return CRational(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend CRational operator/(const CRational& a, const CRational& b) {
        Rational n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n.is_zero()) throw std::domain_error("CRational: division by zero");
        return CRational((a.re_ * b.re_ + a.im_ * b.im_) / n,
                         (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    CRational& operator+=(const CRational& o) { return *this = *this + o; }
    CRational& operator-=(const CRational& o) { return *this = *this - o; }
    CRational& operator*=(const CRational& o) { return *this = *this * o; }

    friend bool operator==(const CRational& a, const CRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }

    std::string str() const {
        if (im_.is_zero()) return re_.str();
        if (re_.is_zero()) return im_.str() + "i";
        return "(" + re_.str() + (im_.to_double() >= 0 ? "+" : "") + im_.str() + "i)";
    }

  private:
    Rational re_;
    Rational im_;
};

} // namespace dq
