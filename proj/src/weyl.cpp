#include "dq/weyl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dq/moyal.hpp"

namespace dq {

OperatorPoly OperatorPoly::word(int a, int b, HPoly c) {
    OperatorPoly A;
    A.set(a, b, std::move(c));
    return A;
}

HPoly OperatorPoly::coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? HPoly() : it->second;
}

void OperatorPoly::set(int a, int b, HPoly c) {
    if (c.is_zero())
        terms_.erase({a, b});
    else
        terms_[{a, b}] = std::move(c);
}

void OperatorPoly::add(int a, int b, const HPoly& c) { set(a, b, coeff(a, b) + c); }

OperatorPoly OperatorPoly::operator-() const {
    OperatorPoly r;
    for (auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

OperatorPoly operator+(const OperatorPoly& A, const OperatorPoly& B) {
    OperatorPoly r = A;
    for (auto& [k, c] : B.terms_) r.add(k.first, k.second, c);
    return r;
}

OperatorPoly operator-(const OperatorPoly& A, const OperatorPoly& B) { return A + (-B); }

OperatorPoly operator*(const HPoly& c, const OperatorPoly& A) {
    OperatorPoly r;
    for (auto& [k, ac] : A.terms()) r.add(k.first, k.second, c * ac);
    return r;
}

std::string OperatorPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool simple = c.terms().size() == 1;
        std::string cs = c.str();
        if (!simple) cs = "(" + cs + ")";
        std::string mono;
        if (k.first > 0) mono += "X" + (k.first > 1 ? "^" + std::to_string(k.first) : std::string());
        if (k.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += "P" + (k.second > 1 ? "^" + std::to_string(k.second) : std::string());
        }
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

namespace {

std::int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// p^b x^a = sum_k k! C(a,k) C(b,k) (-i hbar)^k x^(a-k) p^(b-k).
OperatorPoly normal_order_px(int b, int a) {
    OperatorPoly r;
    std::int64_t fact = 1;
    for (int k = 0; k <= std::min(a, b); ++k) {
        if (k > 0) fact *= k;
        CRational c = CRational(Rational(fact * binom(a, k) * binom(b, k)));
        CRational mi = CRational(Rational(0), Rational(-1)); // -i
        CRational phase(1);
        for (int j = 0; j < k; ++j) phase = phase * mi;
        r.add(a - k, b - k, HPoly::hbar(k, c * phase));
    }
    return r;
}

} // namespace

OperatorPoly op_mul(const OperatorPoly& A, const OperatorPoly& B) {
    OperatorPoly r;
    for (auto& [ka, ca] : A.terms()) {
        for (auto& [kb, cb] : B.terms()) {
            // (x^a1 p^b1)(x^a2 p^b2): rewrite p^b1 x^a2, then attach outer powers.
            OperatorPoly mid = normal_order_px(ka.second, kb.first);
            for (auto& [km, cm] : mid.terms())
                r.add(ka.first + km.first, km.second + kb.second, ca * cb * cm);
        }
    }
    return r;
}

OperatorPoly commutator(const OperatorPoly& A, const OperatorPoly& B) {
    return op_mul(A, B) - op_mul(B, A);
}

OperatorPoly xnpm_commutator_closed(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("xnpm_commutator_closed: n, m must be >= 1");
    OperatorPoly r;
    HPoly ihm = HPoly::hbar(1, CRational(Rational(0), Rational(m)));
    for (int k = 0; k <= n - 1; ++k) {
        OperatorPoly t = op_mul(OperatorPoly::x_pow(k),
                                op_mul(OperatorPoly::p_pow(m - 1), OperatorPoly::x_pow(n - 1 - k)));
        r += ihm * t;
    }
    return r;
}

GroenewoldResult groenewold_check() {
    GroenewoldResult out;

    // Classical side: {x^3, p^3} + (1/12) {{p^2, x^3}, {x^2, p^3}}.
    PhasePoly x3 = PhasePoly::monomial(3, 0);
    PhasePoly p3 = PhasePoly::monomial(0, 3);
    PhasePoly x2 = PhasePoly::monomial(2, 0);
    PhasePoly p2 = PhasePoly::monomial(0, 2);
    PhasePoly inner1 = poisson_bracket(p2, x3);
    PhasePoly inner2 = poisson_bracket(x2, p3);
    PhasePoly cl = poisson_bracket(x3, p3) +
                   HPoly(CRational(Rational(1, 12))) * poisson_bracket(inner1, inner2);
    out.classical = cl;

    // Quantum side via Dirac promotion: each bracket becomes (1/i hbar)[.,.].
    auto promote = [](const OperatorPoly& A, const OperatorPoly& B) {
        OperatorPoly c = commutator(A, B);
        OperatorPoly r;
        for (auto& [k, h] : c.terms()) r.set(k.first, k.second, h.div_i_hbar());
        return r;
    };
    OperatorPoly X3 = OperatorPoly::x_pow(3), P3 = OperatorPoly::p_pow(3);
    OperatorPoly X2 = OperatorPoly::x_pow(2), P2 = OperatorPoly::p_pow(2);
    OperatorPoly qinner1 = promote(P2, X3);
    OperatorPoly qinner2 = promote(X2, P3);
    OperatorPoly q = promote(X3, P3) +
                     HPoly(CRational(Rational(1, 12))) * promote(qinner1, qinner2);
    // Everything except the scalar word must cancel.
    for (auto& [k, c] : q.terms())
        if (k != OperatorPoly::Key{0, 0})
            throw std::logic_error("groenewold_check: non-scalar residue");
    out.quantum = q.coeff(0, 0);
    return out;
}

OperatorPoly weyl_quantize_poly(const PhasePoly& f) {
    OperatorPoly r;
    for (auto& [k, c] : f.terms()) {
        int a = k.first, b = k.second;
        // Average over all distinct orderings of a X's and b P's.
        std::vector<std::vector<int>> words; // 0 = X, 1 = P
        std::vector<int> w(a + b, 0);
        for (int i = a; i < a + b; ++i) w[i] = 1;
        OperatorPoly sum;
        std::int64_t count = 0;
        do {
            OperatorPoly prod(1);
            for (int s : w) prod = op_mul(prod, s == 0 ? OperatorPoly::x_pow(1)
                                                       : OperatorPoly::p_pow(1));
            sum += prod;
            ++count;
        } while (std::next_permutation(w.begin(), w.end()));
        HPoly weight(CRational(Rational(1, count)));
        r += (weight * c) * sum;
    }
    return r;
}

PhasePoly weyl_symbol(const OperatorPoly& A) {
    PhasePoly f;
    OperatorPoly rem = A;
    while (!rem.is_zero()) {
        // Pick a word of maximal total degree; its symbol's top term is itself.
        OperatorPoly::Key top{-1, -1};
        int deg = -1;
        for (auto& [k, c] : rem.terms()) {
            if (k.first + k.second > deg) {
                deg = k.first + k.second;
                top = k;
            }
        }
        HPoly c = rem.coeff(top.first, top.second);
        PhasePoly mono = PhasePoly::monomial(top.first, top.second, c);
        f += mono;
        rem = rem - weyl_quantize_poly(mono);
    }
    return f;
}

} // namespace dq
