#pragma once

#include "ppn/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace ppn {

// A monomial maps variable name -> exponent (>= 1; variables with exponent 0
// are simply absent).  The empty map is the constant monomial 1.
using Monomial = std::map<std::string, int>;

int monomial_degree(const Monomial& m);

// Graded lexicographic order: lower total degree first, then lexicographic on
// the (variable, exponent) sequence.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct NotAFactorError : Error {
    using Error::Error;
};
struct UnboundVariableError : Error {
    using Error::Error;
};

// Exact multivariate polynomial with rational coefficients.  Canonical form:
// no zero coefficients stored; term map ordered by GradedLex.  Immutable in
// spirit: all operations return new values.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, GradedLex>;

    Polynomial() = default;                 // zero
    Polynomial(const Rational& c);          // constant
    Polynomial(long c) : Polynomial(Rational(c)) {}
    static Polynomial variable(const std::string& name);
    static Polynomial term(const Rational& coeff, const Monomial& m);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant value of a constant polynomial (zero polynomial -> 0).
    Rational constant_value() const;
    int total_degree() const;
    std::set<std::string> variables() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return terms_ != o.terms_; }

    // Simultaneous substitution of variables by polynomials; unbound
    // variables are left intact.
    Polynomial substitute(const std::map<std::string, Polynomial>& bindings) const;

    // For the listed 0/1-valued variables, lowers every exponent >= 1 to 1.
    Polynomial idempotent_reduce(const std::set<std::string>& vars) const;

    // Exact evaluation; every variable occurring in the polynomial must be
    // bound (throws UnboundVariableError naming the variable otherwise).
    Rational evaluate(const std::map<std::string, Rational>& point) const;

    // Paper-style rendering, terms in ascending graded-lex order:
    // "1 - x + x y", "z + x y - x z", "1/2 x", "0".
    std::string render() const;

  private:
    void insert_term(const Monomial& m, const Rational& c);
    TermMap terms_;
};

// An unsimplified quotient of polynomials.  No cancellation of common
// factors is ever performed automatically; xy/x stays xy/x.
struct FractionalPolynomial {
    Polynomial numerator;
    Polynomial denominator;  // never the literal zero polynomial

    std::string render() const;  // "(x y)/(x)"
};

// Structural rewrite: if numerator = p * denominator exactly (multivariate
// division with zero remainder), returns p.  Carries no nonzero assumption
// about the denominator.  Throws NotAFactorError otherwise.
Polynomial cancel_structural_factor(const FractionalPolynomial& q);

}  // namespace ppn
