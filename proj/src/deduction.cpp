#include "ppn/deduction.hpp"

#include <algorithm>
#include <set>

namespace ppn {

std::string modal_status_name(ModalStatus s) {
    switch (s) {
        case ModalStatus::Necessary: return "necessary";
        case ModalStatus::Possible: return "possible";
        case ModalStatus::Impossible: return "impossible";
    }
    return "?";
}

bool feasibility_deduce(const Network& net, const ConstraintSet& gamma, const Term& consequent,
                        const Rational& k, StatusRecord* record, const Rational& epsilon) {
    EventConjunction e = terms_event({consequent});
    PolyProgram p = make_program(net, net.query_unconditioned(e), gamma, epsilon);
    SolutionSet s = solution_set(p);
    bool ok = set_is_singleton(s, k);
    if (record) {
        record->sets.push_back({"set", s});
        record->programs.push_back(p);
        record->status = ok ? ModalStatus::Necessary
                            : (!s.empty && membership(p, k) ? ModalStatus::Possible
                                                            : ModalStatus::Impossible);
    }
    return ok;
}

StatusRecord conditional_status(const Network& net, const ConstraintSet& gamma,
                                const ConditionalStatement& c, const Rational& epsilon) {
    StatusRecord rec;
    switch (c.type) {
        case CondType::Subjunctive: {
            Polynomial expr = net.subjunctive_input_expr(
                terms_event(c.antecedent_terms), {c.consequent.variable, !c.consequent.negated});
            PolyProgram p = make_program(net, expr, gamma, epsilon);
            SolutionSet phi = solution_set(p);
            rec.sets.push_back({"phi", phi});
            rec.programs.push_back(p);
            if (set_is_singleton(phi, c.sense.k)) rec.status = ModalStatus::Necessary;
            else if (!phi.empty && membership(p, c.sense.k)) rec.status = ModalStatus::Possible;
            else rec.status = ModalStatus::Impossible;
            return rec;
        }
        case CondType::Material: {
            EventConjunction ant = terms_event(c.antecedent_terms);
            EventConjunction both = ant;
            both.events.push_back({c.consequent.variable, !c.consequent.negated});
            Polynomial p_ant = net.query_unconditioned(ant);
            Polynomial p_both = net.query_unconditioned(both);
            // The k = 1 criterion reads "P(antecedent) minus P(antecedent and
            // consequent)"; general k uses the k-scaled difference.
            Polynomial crit = (c.sense.k == 1) ? p_ant - p_both
                                               : p_both - Polynomial(c.sense.k) * p_ant;
            PolyProgram p = make_program(net, crit, gamma, epsilon);
            SolutionSet psi = solution_set(p);
            rec.sets.push_back({"psi", psi});
            rec.programs.push_back(p);
            if (set_is_singleton(psi, 0)) rec.status = ModalStatus::Necessary;
            else if (!psi.empty && membership(p, 0)) rec.status = ModalStatus::Possible;
            else rec.status = ModalStatus::Impossible;
            return rec;
        }
        case CondType::Existential: {
            EventConjunction ant = terms_event(c.antecedent_terms);
            EventConjunction both = ant;
            both.events.push_back({c.consequent.variable, !c.consequent.negated});
            Polynomial p_ant = net.query_unconditioned(ant);
            Polynomial p_both = net.query_unconditioned(both);
            ConstraintSet cs = gamma;
            cs.push_back(Constraint{p_both, Rel::Eq, Polynomial(c.sense.k) * p_ant});
            PolyProgram p = make_program(net, p_ant, cs, epsilon);
            SolutionSet ups = solution_set(p);
            rec.sets.push_back({"upsilon", ups});
            rec.programs.push_back(p);
            if (ups.empty) rec.status = ModalStatus::Impossible;
            else if (!membership(p, 0)) rec.status = ModalStatus::Necessary;
            else if (!set_is_singleton(ups, 0)) rec.status = ModalStatus::Possible;
            else rec.status = ModalStatus::Impossible;
            return rec;
        }
        case CondType::QuotientFeasibility: {
            EventConjunction ant = terms_event(c.antecedent_terms);
            EventConjunction both = ant;
            both.events.push_back({c.consequent.variable, !c.consequent.negated});
            Polynomial p_ant = net.query_unconditioned(ant);
            Polynomial p_both = net.query_unconditioned(both);
            PolyProgram pa = make_program(net, p_ant, gamma, epsilon);
            PolyProgram pc = make_program(
                net, p_both - Polynomial(c.sense.k) * p_ant, gamma, epsilon);
            SolutionSet sa = solution_set(pa);
            SolutionSet sc = solution_set(pc);
            rec.sets.push_back({"antecedent", sa});
            rec.sets.push_back({"criterion", sc});
            rec.programs.push_back(pa);
            rec.programs.push_back(pc);
            bool ant_usable = !sa.empty && !set_is_singleton(sa, 0);
            if (ant_usable && set_is_singleton(sc, 0)) rec.status = ModalStatus::Necessary;
            else if (ant_usable && membership(pc, 0)) rec.status = ModalStatus::Possible;
            else rec.status = ModalStatus::Impossible;
            return rec;
        }
        case CondType::Feasibility: {
            ConstraintSet cs = c.antecedent_constraints;
            for (const auto& g : gamma) cs.push_back(g);
            EventConjunction e = terms_event({c.consequent});
            PolyProgram p = make_program(net, net.query_unconditioned(e), cs, epsilon);
            SolutionSet s = solution_set(p);
            rec.sets.push_back({"set", s});
            rec.programs.push_back(p);
            if (set_is_singleton(s, c.sense.k)) rec.status = ModalStatus::Necessary;
            else if (!s.empty && membership(p, c.sense.k)) rec.status = ModalStatus::Possible;
            else rec.status = ModalStatus::Impossible;
            return rec;
        }
        default:
            throw Error("conditional_status does not handle this conditional type");
    }
}

ModalStatus boolean_deduce(const std::vector<FormulaPtr>& premises, const FormulaPtr& conclusion,
                           StatusRecord* record) {
    std::set<std::string> atom_set;
    for (const auto& f : premises)
        for (const auto& a : formula_atoms(f)) atom_set.insert(a);
    for (const auto& a : formula_atoms(conclusion)) atom_set.insert(a);
    if (atom_set.size() > 20) throw Error("too many atoms for deduction (limit 20)");

    PolyProgram p;
    p.objective_num = translate(conclusion);
    for (const auto& f : premises)
        p.constraints.push_back(Constraint{translate(f), Rel::Eq, Polynomial(1)});
    for (const auto& a : atom_set) p.bounds[atom_variable(a)] = VarBound{0, 1, true};

    SolutionSet s = solution_set(p);
    ModalStatus status;
    if (s.empty || s.beta_star == 0) status = ModalStatus::Impossible;
    else if (s.alpha_star == 1) status = ModalStatus::Necessary;
    else status = ModalStatus::Possible;
    if (record) {
        record->status = status;
        record->sets.push_back({"consequence", s});
        record->programs.push_back(p);
    }
    return status;
}

ModalStatus consequence_by_valuations(const std::vector<FormulaPtr>& premises,
                                      const FormulaPtr& conclusion) {
    std::set<std::string> atom_set;
    for (const auto& f : premises)
        for (const auto& a : formula_atoms(f)) atom_set.insert(a);
    for (const auto& a : formula_atoms(conclusion)) atom_set.insert(a);
    std::vector<std::string> atoms(atom_set.begin(), atom_set.end());

    bool seen_true = false, seen_false = false;
    for (const auto& v : all_valuations(atoms)) {
        bool ok = true;
        for (const auto& f : premises)
            if (!eval_formula(f, v)) { ok = false; break; }
        if (!ok) continue;
        (eval_formula(conclusion, v) ? seen_true : seen_false) = true;
    }
    if (seen_true && !seen_false) return ModalStatus::Necessary;
    if (seen_true) return ModalStatus::Possible;
    return ModalStatus::Impossible;
}

namespace {

std::string fresh_variable(const Network& net, std::string base) {
    while (net.has_variable(base)) base += "_";
    return base;
}

}  // namespace

StatusRecord boolean_status_probabilistic(const Network& net, const ConstraintSet& gamma,
                                          const FormulaPtr& antecedent,
                                          const FormulaPtr& consequent,
                                          const Rational& epsilon) {
    Network model = net;
    std::string neg_name = fresh_variable(model, "NegCriterion");
    model.embed_formula(f_and(antecedent, f_not(consequent)), neg_name);
    std::string pos_name = fresh_variable(model, "PosCriterion");
    model.embed_formula(f_and(antecedent, consequent), pos_name);

    Polynomial p_neg = model.query_unconditioned(EventConjunction::of({{neg_name, true}}));
    Polynomial p_pos = model.query_unconditioned(EventConjunction::of({{pos_name, true}}));

    PolyProgram phi_prog = make_program(model, p_neg, gamma, epsilon);
    ConstraintSet psi_gamma = gamma;
    psi_gamma.push_back(Constraint{p_neg, Rel::Eq, Polynomial(0)});
    PolyProgram psi_prog = make_program(model, p_pos, psi_gamma, epsilon);

    SolutionSet phi = solution_set(phi_prog);
    SolutionSet psi = solution_set(psi_prog);

    StatusRecord rec;
    rec.sets.push_back({"phi", phi});
    rec.sets.push_back({"psi", psi});
    rec.programs.push_back(phi_prog);
    rec.programs.push_back(psi_prog);

    if (set_is_singleton(phi, 0) && !psi.empty && !membership(psi_prog, 0))
        rec.status = ModalStatus::Necessary;
    else if (!phi.empty && membership(phi_prog, 0) && !psi.empty && !set_is_singleton(psi, 0))
        rec.status = ModalStatus::Possible;
    else
        rec.status = ModalStatus::Impossible;
    return rec;
}

// --- Valuation-set semantics -------------------------------------------

BigInt spec_count(const ValuationSetSpec& s) {
    BigInt total = 0;
    std::size_t allowed = (std::size_t(1) << s.atoms.size()) - s.forbidden.size();
    std::size_t g = s.mandatory_any.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << g); ++mask) {
        std::set<Valuation> covered;
        int bits = 0;
        for (std::size_t i = 0; i < g; ++i) {
            if ((mask >> i) & 1) {
                ++bits;
                covered.insert(s.mandatory_any[i].begin(), s.mandatory_any[i].end());
            }
        }
        BigInt term = BigInt(1) << (allowed - covered.size());
        total += (bits % 2 == 0) ? term : -term;
    }
    return total;
}

ValuationSetSpec valuation_analysis(const ConditionalStatement& c,
                                    std::vector<std::string> atoms) {
    if (c.type != CondType::BooleanFeasibility || !c.antecedent_formula || !c.consequent_formula)
        throw Error("valuation_analysis requires a Boolean-feasibility conditional with formulas");
    if (atoms.empty()) {
        std::set<std::string> u;
        for (const auto& a : formula_atoms(c.antecedent_formula)) u.insert(a);
        for (const auto& a : formula_atoms(c.consequent_formula)) u.insert(a);
        atoms.assign(u.begin(), u.end());
    }
    if (atoms.size() > 12) throw Error("too many atoms for valuation analysis (limit 12)");

    ValuationSetSpec spec;
    spec.atoms = atoms;
    std::vector<Valuation> group;
    for (const auto& v : all_valuations(atoms)) {
        if (!eval_formula(c.antecedent_formula, v)) {
            spec.optional.push_back(v);
        } else if (eval_formula(c.consequent_formula, v) == c.sense.K) {
            group.push_back(v);
        } else {
            spec.forbidden.push_back(v);
        }
    }
    spec.mandatory_any.push_back(std::move(group));
    return spec;
}

ValuationSetSpec spec_conjunction(const std::vector<ValuationSetSpec>& specs) {
    if (specs.empty()) throw Error("spec_conjunction needs at least one spec");
    ValuationSetSpec out;
    out.atoms = specs[0].atoms;
    std::set<Valuation> forbidden;
    for (const auto& s : specs) {
        if (s.atoms != out.atoms) throw Error("spec_conjunction requires a shared atom universe");
        forbidden.insert(s.forbidden.begin(), s.forbidden.end());
    }
    std::set<Valuation> in_groups;
    for (const auto& s : specs) {
        for (const auto& g : s.mandatory_any) {
            std::vector<Valuation> filtered;
            for (const auto& v : g)
                if (!forbidden.count(v)) filtered.push_back(v);
            in_groups.insert(filtered.begin(), filtered.end());
            out.mandatory_any.push_back(std::move(filtered));
        }
    }
    out.forbidden.assign(forbidden.begin(), forbidden.end());
    for (const auto& v : all_valuations(out.atoms))
        if (!forbidden.count(v) && !in_groups.count(v)) out.optional.push_back(v);
    return out;
}

bool spec_satisfied_by(const ValuationSetSpec& s, const std::vector<Valuation>& set) {
    std::set<Valuation> members(set.begin(), set.end());
    for (const auto& v : s.forbidden)
        if (members.count(v)) return false;
    for (const auto& g : s.mandatory_any) {
        bool hit = false;
        for (const auto& v : g)
            if (members.count(v)) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

CounterexampleResult counterexample_sets(const ValuationSetSpec& premise,
                                         const std::vector<ValuationSetSpec>& conclusions) {
    for (const auto& c : conclusions)
        if (c.atoms != premise.atoms)
            throw Error("counterexample_sets requires a shared atom universe");
    if (premise.atoms.size() > 4)
        throw Error("too many atoms for set enumeration (limit 4)");

    std::vector<Valuation> universe = all_valuations(premise.atoms);
    std::size_t n = universe.size();
    CounterexampleResult out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::vector<Valuation> set;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) set.push_back(universe[i]);
        if (!spec_satisfied_by(premise, set)) continue;
        bool concluded = false;
        for (const auto& c : conclusions)
            if (spec_satisfied_by(c, set)) { concluded = true; break; }
        if (concluded) continue;
        ++out.count;
        if (out.samples.size() < 100) out.samples.push_back(std::move(set));
    }
    return out;
}

// --- Set-level conditional expressions ----------------------------------

namespace {
BfExprPtr make_bf(BfExpr e) { return std::make_shared<BfExpr>(std::move(e)); }
}

BfExprPtr bf_cond(FormulaPtr antecedent, FormulaPtr consequent, bool K) {
    BfExpr e;
    e.kind = BfExpr::Kind::Cond;
    e.ant_formula = std::move(antecedent);
    e.consequent = std::move(consequent);
    e.K = K;
    return make_bf(std::move(e));
}

BfExprPtr bf_cond_nested(BfExprPtr antecedent, FormulaPtr consequent, bool K) {
    BfExpr e;
    e.kind = BfExpr::Kind::Cond;
    e.ant_expr = std::move(antecedent);
    e.consequent = std::move(consequent);
    e.K = K;
    return make_bf(std::move(e));
}

BfExprPtr bf_not(BfExprPtr x) {
    BfExpr e;
    e.kind = BfExpr::Kind::Not;
    e.lhs = std::move(x);
    return make_bf(std::move(e));
}

BfExprPtr bf_and(BfExprPtr a, BfExprPtr b) {
    BfExpr e;
    e.kind = BfExpr::Kind::And;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_bf(std::move(e));
}

BfExprPtr bf_or(BfExprPtr a, BfExprPtr b) {
    BfExpr e;
    e.kind = BfExpr::Kind::Or;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make_bf(std::move(e));
}

bool eval_on_valuation_set(const BfExprPtr& e, const std::vector<Valuation>& possible) {
    switch (e->kind) {
        case BfExpr::Kind::Not:
            return !eval_on_valuation_set(e->lhs, possible);
        case BfExpr::Kind::And:
            return eval_on_valuation_set(e->lhs, possible) &&
                   eval_on_valuation_set(e->rhs, possible);
        case BfExpr::Kind::Or:
            return eval_on_valuation_set(e->lhs, possible) ||
                   eval_on_valuation_set(e->rhs, possible);
        case BfExpr::Kind::Cond: {
            std::vector<const Valuation*> relevant;
            if (e->ant_formula) {
                for (const auto& v : possible)
                    if (eval_formula(e->ant_formula, v)) relevant.push_back(&v);
            } else {
                if (!eval_on_valuation_set(e->ant_expr, possible)) return false;
                for (const auto& v : possible) relevant.push_back(&v);
            }
            if (relevant.empty()) return false;
            for (const auto* v : relevant)
                if (eval_formula(e->consequent, *v) != e->K) return false;
            return true;
        }
    }
    throw Error("unreachable");
}

}  // namespace ppn
