#include "ppn/conditionals.hpp"

#include <algorithm>

namespace ppn {

ConstraintSet network_gamma0(const Network& net) {
    ConstraintSet out;
    std::set<const void*> seen;
    for (const auto& v : net.variables()) {
        const Factor& f = net.factor_of(v);
        if (!seen.insert(&f).second) continue;
        if (f.targets.size() <= 1) continue;  // CPT rows are complementary by construction
        Polynomial sum;
        for (const auto& [state, p] : f.rows) sum += p;
        out.push_back(Constraint{sum, Rel::Eq, Polynomial(1)});
    }
    return out;
}

std::map<std::string, VarBound> network_bounds(const Network& net) {
    std::map<std::string, VarBound> out;
    for (const auto& [name, p] : net.parameters())
        out[name] = VarBound{p.lower, p.upper, p.integer_restricted};
    return out;
}

PolyProgram make_program(const Network& net, const Polynomial& objective,
                         const ConstraintSet& gamma, const Rational& epsilon) {
    PolyProgram p;
    p.objective_num = objective;
    p.constraints = gamma;
    for (auto& c : network_gamma0(net)) p.constraints.push_back(std::move(c));
    p.bounds = network_bounds(net);
    p.epsilon = epsilon;
    return p;
}

PolyProgram make_fractional_program(const Network& net, const Polynomial& num,
                                    const Polynomial& den, const ConstraintSet& gamma,
                                    const Rational& epsilon) {
    PolyProgram p = make_program(net, num, gamma, epsilon);
    p.objective_den = den;
    return p;
}

EventConjunction terms_event(const std::vector<Term>& terms) {
    EventConjunction e;
    for (const auto& t : terms) e.events.push_back({t.variable, !t.negated});
    return e;
}

FormulaPtr truth_functional_formula(const ConditionalStatement& c) {
    if (c.type != CondType::TruthFunctional)
        throw Error("truth_functional_formula requires a truth-functional conditional");
    if (!c.antecedent_formula || !c.consequent_formula)
        throw Error("truth-functional conditional lacks formulas");
    FormulaPtr K = c.sense.K ? f_truth() : f_falsity();
    return f_implies(c.antecedent_formula, f_iff(K, c.consequent_formula));
}

bool truth_functional_eval(const ConditionalStatement& c, const Valuation& v) {
    return eval_formula(truth_functional_formula(c), v);
}

ConstraintSet compile(const ConditionalStatement& c, const Network& net) {
    switch (c.type) {
        case CondType::Subjunctive: {
            if (c.sense.is_boolean) throw Error("subjunctive conditional takes a fractional sense");
            Polynomial expr = net.subjunctive_input_expr(
                terms_event(c.antecedent_terms), {c.consequent.variable, !c.consequent.negated});
            return {Constraint{expr, Rel::Eq, Polynomial(c.sense.k)}};
        }
        case CondType::Material:
        case CondType::Existential: {
            if (c.sense.is_boolean) throw Error("material/existential conditional takes a fractional sense");
            EventConjunction ant = terms_event(c.antecedent_terms);
            EventConjunction both = ant;
            both.events.push_back({c.consequent.variable, !c.consequent.negated});
            Polynomial p_ant = net.query_unconditioned(ant);
            Polynomial p_both = net.query_unconditioned(both);
            ConstraintSet out{Constraint{p_both, Rel::Eq, Polynomial(c.sense.k) * p_ant}};
            if (c.type == CondType::Existential)
                out.push_back(Constraint{p_ant, Rel::Gt, Polynomial(0)});
            return out;
        }
        case CondType::TruthFunctional: {
            if (!c.sense.is_boolean) throw Error("truth-functional conditional takes a boolean sense");
            return {Constraint{translate(truth_functional_formula(c)), Rel::Eq, Polynomial(1)}};
        }
        case CondType::Feasibility:
        case CondType::QuotientFeasibility:
        case CondType::BooleanFeasibility:
            throw Error("this conditional type has solution-set semantics; "
                        "evaluate it through the deduction module");
    }
    throw Error("unreachable");
}

namespace {

// Program over 0/1-restricted atom variables for truth-functional systems.
PolyProgram boolean_program(const ConstraintSet& cs) {
    PolyProgram p;
    p.constraints = cs;
    std::set<std::string> vars;
    for (const auto& c : cs) {
        for (const auto& v : c.lhs.variables()) vars.insert(v);
        for (const auto& v : c.rhs.variables()) vars.insert(v);
    }
    for (const auto& v : vars) p.bounds[v] = VarBound{0, 1, true};
    return p;
}

void collect_literals(const FormulaPtr& f, bool negated,
                      std::vector<std::pair<std::string, bool>>& out) {
    if (!f) return;
    if (f->kind == NodeKind::Atom) {
        out.push_back({f->atom, negated});
        return;
    }
    if (f->kind == NodeKind::Not) {
        collect_literals(f->lhs, !negated, out);
        return;
    }
    collect_literals(f->lhs, negated, out);
    collect_literals(f->rhs, negated, out);
}

std::vector<std::pair<std::string, bool>> statement_literals(const ConditionalStatement& c) {
    std::vector<std::pair<std::string, bool>> lits;
    for (const auto& t : c.antecedent_terms) lits.push_back({t.variable, t.negated});
    if (!c.consequent.variable.empty()) lits.push_back({c.consequent.variable, c.consequent.negated});
    collect_literals(c.antecedent_formula, false, lits);
    collect_literals(c.consequent_formula, false, lits);
    return lits;
}

}  // namespace

OppositeVerdict check_opposites(const ConditionalStatement& c1, const ConditionalStatement& c2,
                                const Network& net) {
    if (c1.type != c2.type) throw Error("check_opposites requires matching conditional types");
    switch (c1.type) {
        case CondType::Subjunctive:
        case CondType::Material:
        case CondType::Existential: {
            ConstraintSet joined = compile(c1, net);
            for (auto& c : compile(c2, net)) joined.push_back(std::move(c));
            PolyProgram p = make_program(net, Polynomial(0), joined);
            return feasible(p) ? OppositeVerdict::Consistent : OppositeVerdict::Inconsistent;
        }
        case CondType::TruthFunctional: {
            ConstraintSet joined = compile(c1, net);
            for (auto& c : compile(c2, net)) joined.push_back(std::move(c));
            return feasible(boolean_program(joined)) ? OppositeVerdict::Consistent
                                                     : OppositeVerdict::Inconsistent;
        }
        case CondType::Feasibility:
        case CondType::QuotientFeasibility:
            // Both assert what one fixed solution set equals; they agree
            // exactly when they name the same value.
            return (!c1.sense.is_boolean && !c2.sense.is_boolean && c1.sense.k == c2.sense.k)
                       ? OppositeVerdict::Consistent
                       : OppositeVerdict::Inconsistent;
        case CondType::BooleanFeasibility:
            return (c1.sense.is_boolean && c2.sense.is_boolean && c1.sense.K == c2.sense.K)
                       ? OppositeVerdict::Consistent
                       : OppositeVerdict::Inconsistent;
    }
    throw Error("unreachable");
}

Factuality classify_factuality(const ConditionalStatement& c, const Term& fact) {
    Factuality out;
    for (const auto& [var, neg] : statement_literals(c)) {
        if (var != fact.variable) continue;
        if (neg == fact.negated) out.factual = true;
        else out.antifactual = true;
    }
    return out;
}

std::vector<std::pair<Polynomial, Rel>> canonical_system(const ConstraintSet& cs) {
    std::vector<std::pair<Polynomial, Rel>> out;
    for (const auto& c : cs) {
        Polynomial p = c.lhs - c.rhs;
        Rel r = c.rel;
        if (r == Rel::Le) { p = -p; r = Rel::Ge; }
        if (r == Rel::Lt) { p = -p; r = Rel::Gt; }
        if (r == Rel::Eq && !p.is_zero()) {
            // sign-normalize: highest graded-lex term gets a positive coefficient
            const auto& terms = p.terms();
            if (terms.rbegin()->second < 0) p = -p;
        }
        out.push_back({std::move(p), r});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return static_cast<int>(a.second) < static_cast<int>(b.second);
        return a.first.render() < b.first.render();
    });
    return out;
}

bool systems_equal(const ConstraintSet& a, const ConstraintSet& b) {
    auto ca = canonical_system(a), cb = canonical_system(b);
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (ca[i].second != cb[i].second || !(ca[i].first == cb[i].first)) return false;
    return true;
}

}  // namespace ppn
