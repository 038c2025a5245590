#include "dq/dsl.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dq {

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Add;
                e->a = lhs;
                e->b = parse_term();
                lhs = e;
            } else if (accept('-')) {
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Sub;
                e->a = lhs;
                e->b = parse_term();
                lhs = e;
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (accept('*')) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Mul;
            e->a = lhs;
            e->b = parse_factor();
            lhs = e;
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos;
            int v = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                v = v * 10 + (src[pos] - '0');
                ++pos;
            }
            if (pos == start) throw ParseError("exponent must be a non-negative integer", pos);
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Pow;
            e->a = base;
            e->exponent = v;
            return e;
        }
        return base;
    }

    ExprPtr parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos;
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Neg;
            e->a = parse_atom();
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_symbol();
        throw ParseError("unexpected character", pos);
    }

    ExprPtr parse_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
            ++pos;
        double v = 0.0;
        try {
            v = std::stod(src.substr(start, pos - start));
        } catch (const std::exception&) {
            throw ParseError("malformed number", start);
        }
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Number;
        if (pos < src.size() && src[pos] == 'i') {
            ++pos;
            e->number = cplx(0.0, v);
        } else {
            e->number = cplx(v, 0.0);
        }
        return e;
    }

    ExprPtr parse_symbol() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])))) ++pos;
        std::string name = src.substr(start, pos - start);
        static const std::set<std::string> fixed = {"x", "p", "hbar", "Psi", "Pi",
                                                    "alpha", "alphastar", "t"};
        bool indexed = (name.rfind("psi", 0) == 0 && name.size() > 3) ||
                       (name.rfind("pi", 0) == 0 && name.size() > 2);
        if (indexed) {
            std::size_t digits = name.rfind("psi", 0) == 0 ? 3 : 2;
            for (std::size_t i = digits; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) indexed = false;
        }
        if (name == "i") { // imaginary unit shorthand
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->number = cplx(0.0, 1.0);
            return e;
        }
        if (!fixed.count(name) && !indexed)
            throw ParseError("unknown symbol '" + name + "'", start);
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Symbol;
        e->symbol = name;
        return e;
    }
};

std::string format_number(cplx v) {
    std::ostringstream os;
    auto emit = [&os](double d) {
        std::ostringstream t;
        t.precision(12);
        t << d;
        os << t.str();
    };
    if (v.imag() == 0.0) {
        emit(v.real());
    } else if (v.real() == 0.0) {
        emit(v.imag());
        os << "i";
    } else {
        os << "(";
        emit(v.real());
        os << (v.imag() >= 0 ? "+" : "");
        emit(v.imag());
        os << "i)";
    }
    return os.str();
}

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print_rec(const Expr& e, std::ostringstream& os, int parent_prec) {
    int prec = precedence(e.kind);
    bool parens = prec < parent_prec;
    if (parens) os << "(";
    switch (e.kind) {
        case Expr::Kind::Number: os << format_number(e.number); break;
        case Expr::Kind::Symbol: os << e.symbol; break;
        case Expr::Kind::Neg:
            os << "-";
            print_rec(*e.a, os, prec + 1);
            break;
        case Expr::Kind::Add:
            print_rec(*e.a, os, prec);
            os << " + ";
            print_rec(*e.b, os, prec + 1);
            break;
        case Expr::Kind::Sub:
            print_rec(*e.a, os, prec);
            os << " - ";
            print_rec(*e.b, os, prec + 1);
            break;
        case Expr::Kind::Mul:
            print_rec(*e.a, os, prec);
            os << "*";
            print_rec(*e.b, os, prec + 1);
            break;
        case Expr::Kind::Pow:
            print_rec(*e.a, os, prec + 1);
            os << "^" << e.exponent;
            break;
    }
    if (parens) os << ")";
}

} // namespace

ExprPtr parse(const std::string& src) {
    Parser p(src);
    ExprPtr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size()) throw ParseError("trailing input", p.pos);
    return e;
}

std::string print(const Expr& e) {
    std::ostringstream os;
    print_rec(e, os, 0);
    return os.str();
}

std::string print(const ExprPtr& e) { return print(*e); }

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Number: return a->number == b->number;
        case Expr::Kind::Symbol: return a->symbol == b->symbol;
        case Expr::Kind::Neg: return equal(a->a, b->a);
        case Expr::Kind::Pow: return a->exponent == b->exponent && equal(a->a, b->a);
        default: return equal(a->a, b->a) && equal(a->b, b->b);
    }
}

namespace {

void collect_symbols(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::Symbol) out.insert(e->symbol);
    collect_symbols(e->a, out);
    collect_symbols(e->b, out);
}

bool is_bosonic_symbol(const std::string& s) { return s == "x" || s == "p" || s == "hbar"; }
bool is_time_symbol(const std::string& s) { return s == "t"; }

} // namespace

Population classify(const ExprPtr& e) {
    std::set<std::string> syms;
    collect_symbols(e, syms);
    bool bos = false, fer = false, tim = false;
    for (auto& s : syms) {
        if (is_bosonic_symbol(s))
            bos = true;
        else if (is_time_symbol(s))
            tim = true;
        else
            fer = true;
    }
    int kinds = (bos ? 1 : 0) + (fer ? 1 : 0) + (tim ? 1 : 0);
    if (kinds > 1) throw std::invalid_argument("mixed bosonic/fermionic/time symbol population");
    if (bos) return Population::Bosonic;
    if (fer) return Population::Fermionic;
    if (tim) return Population::Time;
    return Population::Constant;
}

namespace {

PhasePoly eb(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Number: {
            CRational c(Rational(0));
            // Numeric literals in the bosonic path must stay exact when they
            // are small integers; otherwise fall back to nearest rational.
            double re = e->number.real(), im = e->number.imag();
            auto to_rat = [](double v) {
                double r = std::round(v * 720720.0);
                return Rational(static_cast<std::int64_t>(r), 720720);
            };
            c = CRational(to_rat(re), to_rat(im));
            return PhasePoly(HPoly(c));
        }
        case Expr::Kind::Symbol:
            if (e->symbol == "x") return PhasePoly::x();
            if (e->symbol == "p") return PhasePoly::p();
            if (e->symbol == "hbar") return PhasePoly(HPoly::hbar(1));
            throw std::invalid_argument("symbol '" + e->symbol + "' is not bosonic");
        case Expr::Kind::Neg: return -eb(e->a);
        case Expr::Kind::Add: return eb(e->a) + eb(e->b);
        case Expr::Kind::Sub: return eb(e->a) - eb(e->b);
        case Expr::Kind::Mul: return eb(e->a) * eb(e->b);
        case Expr::Kind::Pow: {
            PhasePoly base = eb(e->a);
            PhasePoly r(1);
            for (int i = 0; i < e->exponent; ++i) r *= base;
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

PhasePoly elaborate_bosonic(const ExprPtr& e) {
    if (classify(e) == Population::Fermionic)
        throw std::invalid_argument("expression is fermionic, expected bosonic");
    return eb(e);
}

namespace {

GrassmannElement ef(const ExprPtr& e, const FermiSpace& sp) {
    switch (e->kind) {
        case Expr::Kind::Number: return GrassmannElement(sp.reg, e->number);
        case Expr::Kind::Symbol: {
            if (sp.reg->has(e->symbol)) return GrassmannElement::generator(sp.reg, e->symbol);
            throw std::invalid_argument("symbol '" + e->symbol + "' not in fermionic registry");
        }
        case Expr::Kind::Neg: return -ef(e->a, sp);
        case Expr::Kind::Add: return ef(e->a, sp) + ef(e->b, sp);
        case Expr::Kind::Sub: return ef(e->a, sp) - ef(e->b, sp);
        case Expr::Kind::Mul: return ef(e->a, sp) * ef(e->b, sp);
        case Expr::Kind::Pow: {
            GrassmannElement base = ef(e->a, sp);
            GrassmannElement r(sp.reg, 1.0);
            for (int i = 0; i < e->exponent; ++i) r = r * base;
            return r; // odd generators to powers >= 2 fold to zero here
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

FermionicValue elaborate_fermionic(const ExprPtr& e, double hbar) {
    std::set<std::string> syms;
    collect_symbols(e, syms);
    int n = 1;
    bool externals_alpha = false;
    for (auto& s : syms) {
        if (s == "alpha" || s == "alphastar") {
            externals_alpha = true;
            continue;
        }
        if (s == "Psi" || s == "Pi")
            throw std::invalid_argument(
                "use indexed fermionic symbols pi<j>, psi<j> in star-product expressions");
        std::size_t digits = s.rfind("psi", 0) == 0 ? 3 : 2;
        int idx = std::stoi(s.substr(digits));
        n = std::max(n, idx);
    }
    std::vector<std::string> ext;
    if (externals_alpha) ext = {"alpha", "alphastar"};
    FermionicValue out{FermiSpace::make(n, hbar, ext), GrassmannElement()};
    out.element = ef(e, out.space);
    return out;
}

namespace {

cplx eval_time_expr(const ExprPtr& x, double t) {
    switch (x->kind) {
        case Expr::Kind::Number: return x->number;
        case Expr::Kind::Symbol: return cplx(t, 0.0);
        case Expr::Kind::Neg: return -eval_time_expr(x->a, t);
        case Expr::Kind::Add: return eval_time_expr(x->a, t) + eval_time_expr(x->b, t);
        case Expr::Kind::Sub: return eval_time_expr(x->a, t) - eval_time_expr(x->b, t);
        case Expr::Kind::Mul: return eval_time_expr(x->a, t) * eval_time_expr(x->b, t);
        case Expr::Kind::Pow: {
            cplx b = eval_time_expr(x->a, t), r = 1.0;
            for (int i = 0; i < x->exponent; ++i) r *= b;
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

std::function<double(double)> elaborate_time_function(const ExprPtr& e) {
    Population pop = classify(e);
    if (pop != Population::Time && pop != Population::Constant)
        throw std::invalid_argument("time function may only use the symbol t");
    ExprPtr held = e;
    return [held](double t) {
        cplx v = eval_time_expr(held, t);
        if (std::abs(v.imag()) > 1e-12)
            throw std::invalid_argument("time function must be real-valued");
        return v.real();
    };
}

std::function<double(double)> load_table_function(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("table file not readable: " + path);
    auto samples = std::make_shared<std::vector<std::pair<double, double>>>();
    double t, v;
    while (f >> t >> v) samples->push_back({t, v});
    if (samples->size() < 2) throw std::invalid_argument("table needs at least two samples");
    for (std::size_t i = 1; i < samples->size(); ++i)
        if ((*samples)[i].first <= (*samples)[i - 1].first)
            throw std::invalid_argument("table times must be strictly increasing");
    return [samples](double tt) {
        auto& s = *samples;
        if (tt <= s.front().first) return s.front().second;
        if (tt >= s.back().first) return s.back().second;
        std::size_t lo = 0, hi = s.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (s[mid].first <= tt ? lo : hi) = mid;
        }
        double w = (tt - s[lo].first) / (s[hi].first - s[lo].first);
        return s[lo].second * (1.0 - w) + s[hi].second * w;
    };
}

} // namespace dq
