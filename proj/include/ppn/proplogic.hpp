#pragma once

#include "ppn/polynomial.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ppn {

struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

enum class NodeKind { Truth, Falsity, Atom, Not, And, Or, Xor, Implies, Iff };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    NodeKind kind;
    std::string atom;        // Atom only
    FormulaPtr lhs, rhs;     // Not uses lhs only
};

FormulaPtr f_truth();
FormulaPtr f_falsity();
FormulaPtr f_atom(const std::string& name);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_xor(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

// ASCII surface syntax: atoms, T, F, !, &, | , ^, ->, <->, parentheses.
// Precedence: ! > & > (|, ^) > -> (right-assoc) > <->.
FormulaPtr parse_formula(const std::string& text);

// Deterministic renderer; parse(render(f)) reproduces f.
std::string render_formula(const FormulaPtr& f);

// Sorted atom names of the formula.
std::vector<std::string> formula_atoms(const FormulaPtr& f);

// Truth assignment, total over the atoms of the formula being evaluated.
using Valuation = std::map<std::string, bool>;

bool eval_formula(const FormulaPtr& f, const Valuation& v);

// All 2^n valuations of `atoms` in truth-table row order (first atom most
// significant, T before F).  Guard: at most 20 atoms.
std::vector<Valuation> all_valuations(const std::vector<std::string>& atoms);

// All 2^n rows, atoms sorted, first atom most significant, T before F
// (row 0 is all-T).  Guard: at most 20 atoms.
std::vector<std::pair<Valuation, bool>> truth_table(const FormulaPtr& f);

// The polynomial variable corresponding to an atom (lower-cased name).
std::string atom_variable(const std::string& atom);

// Boole's translation: T->1, F->0, atom->its variable, !p -> 1-p,
// p&q -> pq, p^q -> p+q-2pq, p|q -> p+q-pq, p->q -> 1-p+pq,
// p<->q -> 1-p-q+2pq; result reduced by the idempotent law.
Polynomial translate(const FormulaPtr& f);

// Sum over rows of c_i times the product of x_j / (1-x_j) indicator factors,
// expanded and idempotent-reduced.  coeffs follow truth_table row order.
Polynomial indicator_expansion(const std::vector<int>& coeffs,
                               const std::vector<std::string>& atoms);

}  // namespace ppn
