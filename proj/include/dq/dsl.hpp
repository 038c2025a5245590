#pragma once

#include <functional>
#include <memory>
#include <string>

#include "dq/fermi.hpp"
#include "dq/phase_poly.hpp"

namespace dq {

// Expression AST for the small input language:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := number | symbol | '(' expr ')' | '-' atom
// Complex literals: 2, 1.5i, (2+3i). Whitespace-insensitive.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Pow };
    Kind kind;
    cplx number{0.0};
    std::string symbol;
    ExprPtr a, b;
    int exponent = 0;
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

ExprPtr parse(const std::string& src);
std::string print(const Expr& e);
std::string print(const ExprPtr& e);
bool equal(const ExprPtr& a, const ExprPtr& b);

// Symbol population of an expression; mixing bosonic and fermionic symbols
// (or either with the time variable) is an elaboration error.
enum class Population { Constant, Bosonic, Fermionic, Time };
Population classify(const ExprPtr& e);

// x, p, hbar -> PhasePoly with hbar as the formal parameter.
PhasePoly elaborate_bosonic(const ExprPtr& e);

struct FermionicValue {
    FermiSpace space;
    GrassmannElement element;
};
// pi<j>, psi<j> plus optional alpha, alphastar externals. Grassmann symbols
// raised to powers >= 2 fold to zero.
FermionicValue elaborate_fermionic(const ExprPtr& e, double hbar);

// Single-variable expression in t -> real callable (for c(t), f(t)).
std::function<double(double)> elaborate_time_function(const ExprPtr& e);

// Tabulated (time value) samples, one pair per line, linear interpolation.
std::function<double(double)> load_table_function(const std::string& path);

} // namespace dq
