#pragma once

#include "ppn/polynomial.hpp"
#include "ppn/proplogic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ppn {

struct Parameter {
    std::string name;
    Rational lower = 0;
    Rational upper = 1;
    bool integer_restricted = false;
};

// Conjunction of (variable, state) assignments; no variable repeated.
struct EventConjunction {
    std::vector<std::pair<std::string, bool>> events;  // true = state T

    static EventConjunction of(std::initializer_list<std::pair<std::string, bool>> e) {
        EventConjunction c;
        for (auto& p : e) c.events.push_back(p);
        return c;
    }
};

// One probability factor.  For an input conditional table (the paper's
// subscript-0 tables) `targets` holds a single variable and `given` its
// parents; a joint block covers several variables at once with no parents.
struct Factor {
    std::vector<std::string> targets;
    std::vector<std::string> given;
    // Key: states of (given..., targets...) in declaration order, T = true.
    std::map<std::vector<bool>, Polynomial> rows;
};

// Parametric probability network: a DAG of T/F variables with polynomial
// input tables over bounded rational parameters.
class Network {
  public:
    void add_parameter(const Parameter& p);
    // CPT: one input table for `target`, conditioned on `parents`.
    // rows maps (parent states..., target state) -> entry polynomial.
    void add_table(const std::string& target, const std::vector<std::string>& parents,
                   const std::map<std::vector<bool>, Polynomial>& rows);
    // Degenerate joint-table model: one block holding the joint over `vars`.
    void add_joint(const std::vector<std::string>& vars,
                   const std::map<std::vector<bool>, Polynomial>& rows);
    // Adds variable `name` defined by formula f over existing variables, with
    // a deterministic 0/1 table following f's truth table.
    void embed_formula(const FormulaPtr& f, const std::string& name);

    bool has_variable(const std::string& name) const;
    const std::vector<std::string>& variables() const { return order_; }
    const std::map<std::string, Parameter>& parameters() const { return params_; }
    const Factor& factor_of(const std::string& variable) const;

    // All graph ancestors of the given variables, including themselves;
    // members of a joint block are mutual ancestors.
    std::vector<std::string> ancestral_closure(const std::vector<std::string>& vars) const;
    bool is_ancestor(const std::string& anc, const std::string& desc) const;

    // Full joint over `over` (which must be ancestrally closed): one row per
    // joint state (T-first order over `over` in network declaration order),
    // each entry the expanded product of matching input-table entries.
    // Guard: hard error above 16 variables.
    std::map<std::vector<bool>, Polynomial> full_joint(const std::vector<std::string>& over) const;

    Polynomial query_unconditioned(const EventConjunction& e) const;

    // Unsimplified quotient P(target, cond)/P(cond); target and cond disjoint.
    FractionalPolynomial query_conditional(const EventConjunction& target,
                                           const EventConjunction& cond) const;

    // The input-probability expression P0(consequent | antecedents): the
    // direct table cell when one exists, otherwise the structural
    // cancellation of the computed conditional quotient.
    Polynomial subjunctive_input_expr(const EventConjunction& antecedents,
                                      const std::pair<std::string, bool>& consequent) const;

  private:
    void add_factor(Factor f);
    std::vector<std::string> order_;                  // declaration order
    std::map<std::string, std::size_t> factor_index_; // variable -> factor
    std::vector<Factor> factors_;
    std::map<std::string, Parameter> params_;
};

struct SubjunctiveInexpressibleError : Error {
    using Error::Error;
};

}  // namespace ppn
