#pragma once

#include "ppn/optimizer.hpp"
#include "ppn/probnet.hpp"
#include "ppn/proplogic.hpp"

#include <string>
#include <vector>

namespace ppn {

// One antecedent or consequent term: a variable asserted true, or negated.
struct Term {
    std::string variable;
    bool negated = false;
};

// Sense of a conditional: a fraction k in [0,1] for the probabilistic types,
// or a truth value K for the truth-functional / Boolean-feasibility types.
struct Sense {
    bool is_boolean = false;
    Rational k = 1;    // fractional sense
    bool K = true;     // boolean sense

    static Sense fraction(const Rational& k) { return Sense{false, k, true}; }
    static Sense truth(bool K) { return Sense{true, 1, K}; }
};

enum class CondType {
    Subjunctive,
    Material,
    Existential,
    Feasibility,
    QuotientFeasibility,
    TruthFunctional,
    BooleanFeasibility,
};

using ConstraintSet = std::vector<Constraint>;

struct ConditionalStatement {
    CondType type = CondType::Material;
    // Probabilistic types (subjunctive/material/existential and the
    // quotient-feasibility numerator/denominator events):
    std::vector<Term> antecedent_terms;
    Term consequent;
    // Feasibility type: an explicit constraint-set antecedent (the sugar
    // "A => B" stands for the single constraint P(A=T) = 1).
    ConstraintSet antecedent_constraints;
    // Propositional types (truth-functional / Boolean-feasibility):
    FormulaPtr antecedent_formula;
    FormulaPtr consequent_formula;
    Sense sense;
};

// The parameter box of the network plus structural rows: every joint block's
// entries must sum to 1.  (Input conditional tables are complementary by
// construction and contribute no rows.)
ConstraintSet network_gamma0(const Network& net);

// Bounds map for an optimization program over the network's parameters.
std::map<std::string, VarBound> network_bounds(const Network& net);

// Assembles a program over the network: objective, caller constraints, then
// the structural gamma-zero rows and parameter bounds.
PolyProgram make_program(const Network& net, const Polynomial& objective,
                         const ConstraintSet& gamma,
                         const Rational& epsilon = Rational(1, 1000));

// As above with a fractional objective num/den.
PolyProgram make_fractional_program(const Network& net, const Polynomial& num,
                                    const Polynomial& den, const ConstraintSet& gamma,
                                    const Rational& epsilon = Rational(1, 1000));

// The event asserted by a list of terms (negated terms assert state F).
EventConjunction terms_event(const std::vector<Term>& terms);

// Compiles subjunctive/material/existential/truth-functional conditionals to
// their algebraic constraint systems.  Feasibility-style types have
// solution-set semantics and are handled by the deduction module; compiling
// them is an error.
ConstraintSet compile(const ConditionalStatement& c, const Network& net);

// The formula antecedent -> (K <-> consequent) of a truth-functional
// conditional.
FormulaPtr truth_functional_formula(const ConditionalStatement& c);

// Evaluates a truth-functional conditional at a single valuation.
bool truth_functional_eval(const ConditionalStatement& c, const Valuation& v);

enum class OppositeVerdict { Consistent, Inconsistent };

// Can both conditionals hold at once?  Algebraic types: feasibility of the
// union of compiled systems under the network box (truth-functional types
// over 0/1-restricted atom variables).  Feasibility-style types assert what
// a fixed solution set equals, so two of them agree exactly when their
// senses do.
OppositeVerdict check_opposites(const ConditionalStatement& c1, const ConditionalStatement& c2,
                                const Network& net);

// Set-valued factuality classification against a known fact.  A conditional
// is factual in the fact when the fact term occurs in it, antifactual when
// the fact's negation occurs, and afactual when neither does; large
// conditionals can be factual and antifactual at once.
struct Factuality {
    bool factual = false;
    bool antifactual = false;
    bool afactual() const { return !factual && !antifactual; }
};

Factuality classify_factuality(const ConditionalStatement& c, const Term& fact);

// Canonical form of a constraint system for structural comparison: each
// constraint normalized to "p rel 0" with Le/Lt flipped to Ge/Gt and
// equalities sign-normalized, then sorted.
std::vector<std::pair<Polynomial, Rel>> canonical_system(const ConstraintSet& cs);

bool systems_equal(const ConstraintSet& a, const ConstraintSet& b);

}  // namespace ppn
