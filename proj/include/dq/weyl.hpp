#pragma once

#include <map>
#include <string>
#include <utility>

#include "dq/phase_poly.hpp"

namespace dq {

// Linear combination of normal-ordered words x^a p^b (x-hat powers left of
// p-hat powers) with HPoly coefficients. Products rewrite through the CCR
// [x, p] = i hbar.
class OperatorPoly {
  public:
    using Key = std::pair<int, int>; // (a, b) meaning x^a p^b

    OperatorPoly() = default;
    OperatorPoly(HPoly c) { set(0, 0, std::move(c)); }
    OperatorPoly(std::int64_t c) { set(0, 0, HPoly(c)); }

    static OperatorPoly word(int a, int b, HPoly c = HPoly(1));
    static OperatorPoly x_pow(int a) { return word(a, 0); }
    static OperatorPoly p_pow(int b) { return word(0, b); }

    const std::map<Key, HPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    HPoly coeff(int a, int b) const;
    void set(int a, int b, HPoly c);
    void add(int a, int b, const HPoly& c);

    OperatorPoly operator-() const;
    friend OperatorPoly operator+(const OperatorPoly& A, const OperatorPoly& B);
    friend OperatorPoly operator-(const OperatorPoly& A, const OperatorPoly& B);
    friend OperatorPoly operator*(const HPoly& c, const OperatorPoly& A);
    OperatorPoly& operator+=(const OperatorPoly& o) { return *this = *this + o; }
    OperatorPoly& operator-=(const OperatorPoly& o) { return *this = *this - o; }

    friend bool operator==(const OperatorPoly& A, const OperatorPoly& B) {
        return A.terms_ == B.terms_;
    }
    friend bool operator!=(const OperatorPoly& A, const OperatorPoly& B) { return !(A == B); }

    std::string str() const;

  private:
    std::map<Key, HPoly> terms_;
};

// Normal-ordered product, exact in HPoly coefficients.
OperatorPoly op_mul(const OperatorPoly& A, const OperatorPoly& B);

OperatorPoly commutator(const OperatorPoly& A, const OperatorPoly& B);

// Closed form of [x^n, p^m] from the power-commutator theorem:
// sum_k i hbar m x^k p^(m-1) x^(n-1-k), returned normal-ordered.
OperatorPoly xnpm_commutator_closed(int n, int m);

// Evaluates the Groenewold combination on both sides of Dirac's promotion.
// quantum: the promoted identity as an HPoly (exactly -3 hbar^2);
// classical: the Poisson-bracket combination (exactly the zero polynomial).
struct GroenewoldResult {
    PhasePoly classical;
    HPoly quantum;
};
GroenewoldResult groenewold_check();

// Weyl (symmetrization) quantization of a phase-space polynomial: every
// monomial x^a p^b maps to the average of all distinct orderings of a copies
// of x-hat and b copies of p-hat.
OperatorPoly weyl_quantize_poly(const PhasePoly& f);

// Inverse of weyl_quantize_poly by degree-descending elimination.
PhasePoly weyl_symbol(const OperatorPoly& A);

} // namespace dq
