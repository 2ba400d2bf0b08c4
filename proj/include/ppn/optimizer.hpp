#pragma once

#include "ppn/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ppn {

enum class Rel { Eq, Le, Ge, Lt, Gt };  // Lt/Gt are strict, lowered with epsilon

struct Constraint {
    Polynomial lhs;
    Rel rel = Rel::Eq;
    Polynomial rhs;
};

struct VarBound {
    Rational lower = 0;
    Rational upper = 1;
    bool integer_restricted = false;
};

enum class Direction { Min, Max };

struct PolyProgram {
    // Objective numerator/denominator; denominator 1 means a plain
    // polynomial objective.
    Polynomial objective_num;
    Polynomial objective_den = Polynomial(1);
    Direction direction = Direction::Min;
    std::vector<Constraint> constraints;
    std::map<std::string, VarBound> bounds;
    Rational epsilon = Rational(1, 1000);

    bool fractional() const { return !(objective_den == Polynomial(1)); }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    Rational value;                          // present iff optimal
    std::map<std::string, Rational> witness; // present iff optimal
    // For fractional infeasibility: true when the base constraints are
    // feasible but the denominator is forced to zero on them.
    bool denominator_forced_zero = false;
};

struct ResourceLimitError : Error {
    using Error::Error;
};

// Global optimization of a polynomial objective over the program's box and
// polynomial constraints: RLT/McCormick relaxation solved by exact-rational
// simplex, refined by spatial branch and bound.  Absolute gap 1e-6; node cap
// 1e5 raises ResourceLimitError.
SolveOutcome solve(const PolyProgram& p);

// Fractional objective via the Charnes-Cooper scale variable; unboundedness
// detected by the optimum escaping past 1e9 under a growing scale cap.
// Denominator forced to zero reports infeasible (with the disambiguation
// flag set when the base constraints alone are feasible).
SolveOutcome solve_fractional(const PolyProgram& p);

// Dispatches on p.fractional(); p.direction is honored.
SolveOutcome solve_any(const PolyProgram& p);

struct SolutionSet {
    bool empty = true;
    Rational alpha_star, beta_star;       // valid iff !empty
    bool alpha_unbounded = false;         // -inf
    bool beta_unbounded = false;          // +inf
    // Fractional objectives only: constraints plus denominator = 0 feasible,
    // i.e. the reported set may alternatively be empty (the paper's
    // "{k} or empty" amendment).
    bool denominator_may_vanish = false;
};

// Solves the min/max pair for the objective of `p` (p.direction ignored).
SolutionSet solution_set(const PolyProgram& p);

bool set_is_singleton(const SolutionSet& s, const Rational& k);

// True iff constraints plus {objective = value} is feasible.
bool membership(const PolyProgram& p, const Rational& value);

// Feasibility of the constraint system alone (constant objective).
bool feasible(const PolyProgram& p);

struct GridResult {
    bool empty = true;
    double min_value = 0, max_value = 0;
};

// Independent brute-force oracle: uniform grid over continuous variables
// (integer-restricted variables enumerate their integer values), constraint
// slack 1e-9, double precision.  Guard: at most 6 continuous variables.
GridResult grid_oracle(const PolyProgram& p, int resolution);

// The paper-style "Minimize/subject to/and" layout.
std::string dump_program(const PolyProgram& p);

}  // namespace ppn
