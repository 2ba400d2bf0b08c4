#pragma once

#include "ppn/conditionals.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <string>
#include <vector>

namespace ppn {

using BigInt = boost::multiprecision::cpp_int;

enum class ModalStatus { Necessary, Possible, Impossible };

std::string modal_status_name(ModalStatus s);

// Verdict record: the solution sets examined (labelled), the programs that
// produced them (for reporting and oracle cross-checks), and the status.
struct StatusRecord {
    ModalStatus status = ModalStatus::Impossible;
    std::vector<std::pair<std::string, SolutionSet>> sets;
    std::vector<PolyProgram> programs;
};

// True iff the feasible values of P(consequent) under gamma plus the
// network's structural constraints form exactly the singleton {k}.
bool feasibility_deduce(const Network& net, const ConstraintSet& gamma, const Term& consequent,
                        const Rational& k, StatusRecord* record = nullptr,
                        const Rational& epsilon = Rational(1, 1000));

// Modal status of a subjunctive / material / existential /
// quotient-feasibility conditional under the constraints gamma.
StatusRecord conditional_status(const Network& net, const ConstraintSet& gamma,
                                const ConditionalStatement& c,
                                const Rational& epsilon = Rational(1, 1000));

// Paraconsistent propositional consequence through 0/1 integer solves over
// the translated polynomials: {value of conclusion : premises = 1}.
// {1} -> necessary, {0,1} -> possible, {0} or empty -> impossible.
// Guard: at most 20 atoms.
ModalStatus boolean_deduce(const std::vector<FormulaPtr>& premises, const FormulaPtr& conclusion,
                           StatusRecord* record = nullptr);

// Independent oracle for boolean_deduce: exhaustive valuation enumeration.
ModalStatus consequence_by_valuations(const std::vector<FormulaPtr>& premises,
                                      const FormulaPtr& conclusion);

// Probabilistic criteria for a Boolean-feasibility conditional over a
// joint-table model: Phi = {P([ant & !cons] = T) : gamma} must vanish (the
// negative criterion) and Psi = {P([ant & cons] = T) : negative criterion,
// gamma} must be positive (the positive criterion).
StatusRecord boolean_status_probabilistic(const Network& net, const ConstraintSet& gamma,
                                          const FormulaPtr& antecedent,
                                          const FormulaPtr& consequent,
                                          const Rational& epsilon = Rational(1, 1000));

// --- Valuation-set semantics -------------------------------------------

// Which valuation sets satisfy a Boolean-feasibility conditional: every set
// must avoid all `forbidden` valuations and contain at least one member of
// each `mandatory_any` group; `optional` valuations are free.
struct ValuationSetSpec {
    std::vector<std::string> atoms;  // shared universe, sorted
    std::vector<std::vector<Valuation>> mandatory_any;
    std::vector<Valuation> forbidden;
    std::vector<Valuation> optional;
};

// Number of valuation sets satisfying the spec (inclusion-exclusion over the
// mandatory groups).
BigInt spec_count(const ValuationSetSpec& s);

// Spec of a Boolean-feasibility conditional with a formula antecedent over
// an explicit atom universe (defaults to the formulas' own atoms).
// Guard: at most 12 atoms.
ValuationSetSpec valuation_analysis(const ConditionalStatement& c,
                                    std::vector<std::string> atoms = {});

// Spec satisfied exactly when all inputs are (shared universe required).
ValuationSetSpec spec_conjunction(const std::vector<ValuationSetSpec>& specs);

bool spec_satisfied_by(const ValuationSetSpec& s, const std::vector<Valuation>& set);

// Valuation sets satisfying the premise spec but none of the conclusion
// specs (a disjunctive conclusion).  Exhaustive over subsets of the shared
// universe; guard: at most 4 atoms.  At most 100 sample sets are returned.
struct CounterexampleResult {
    BigInt count = 0;
    std::vector<std::vector<Valuation>> samples;
};

CounterexampleResult counterexample_sets(const ValuationSetSpec& premise,
                                         const std::vector<ValuationSetSpec>& conclusions);

// --- Set-level conditional expressions ----------------------------------

// Boolean-feasibility conditionals are predicates on valuation sets; nested
// or negated conditionals need evaluation against an explicit set of
// possible valuations.
struct BfExpr;
using BfExprPtr = std::shared_ptr<const BfExpr>;

struct BfExpr {
    enum class Kind { Cond, Not, And, Or };
    Kind kind = Kind::Cond;
    // Cond: the antecedent is a formula (restricting the set) or a nested
    // set-level expression (a truth value over the whole set).
    FormulaPtr ant_formula;
    BfExprPtr ant_expr;
    FormulaPtr consequent;
    bool K = true;
    BfExprPtr lhs, rhs;  // Not uses lhs only
};

BfExprPtr bf_cond(FormulaPtr antecedent, FormulaPtr consequent, bool K);
BfExprPtr bf_cond_nested(BfExprPtr antecedent, FormulaPtr consequent, bool K);
BfExprPtr bf_not(BfExprPtr e);
BfExprPtr bf_and(BfExprPtr a, BfExprPtr b);
BfExprPtr bf_or(BfExprPtr a, BfExprPtr b);

// Evaluates the expression against the set of possible valuations.  A
// conditional with a formula antecedent holds when the antecedent-true
// members exist and all give the consequent the value K; a conditional with
// a set-level antecedent holds when that antecedent holds and all members
// give the consequent the value K, and is false when the antecedent fails.
bool eval_on_valuation_set(const BfExprPtr& e, const std::vector<Valuation>& possible);

}  // namespace ppn
