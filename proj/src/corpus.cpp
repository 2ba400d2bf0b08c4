#include "ppn/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ppn {

namespace {

using nlohmann::json;

Polynomial V(const std::string& n) { return Polynomial::variable(n); }

struct CorpusCheck {
    std::string label;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct CaseResult {
    std::vector<CorpusCheck> checks;
    std::vector<PolyProgram> programs;
};

void expect(CaseResult& r, const std::string& label, const std::string& expected,
            const std::string& actual) {
    r.checks.push_back({label, expected, actual, expected == actual});
}

std::string set_exact(const SolutionSet& s) {
    if (s.empty) return "{}";
    if (s.alpha_star == s.beta_star) return "{" + rational_to_string(s.alpha_star) + "}";
    return "[" + rational_to_string(s.alpha_star) + ", " + rational_to_string(s.beta_star) + "]";
}

SolutionSet solset(CaseResult& r, const Network& net, const Polynomial& obj,
                   const ConstraintSet& gamma) {
    PolyProgram p = make_program(net, obj, gamma);
    r.programs.push_back(p);
    return solution_set(p);
}

Constraint eq(const Polynomial& p, const Rational& k) { return {p, Rel::Eq, Polynomial(k)}; }
Constraint gt0(const Polynomial& p) { return {p, Rel::Gt, Polynomial(0)}; }

Polynomial prob(const Network& net, std::initializer_list<std::pair<std::string, bool>> ev) {
    EventConjunction e;
    for (const auto& [v, s] : ev) e.events.push_back({v, s});
    return net.query_unconditioned(e);
}

// Two-variable chain: A with P(A=T) = x; B given A with rows y / z.
Network chain_ab() {
    Network net;
    net.add_parameter({"x"});
    net.add_parameter({"y"});
    net.add_parameter({"z"});
    net.add_table("A", {}, {{{true}, V("x")}, {{false}, Polynomial(1) - V("x")}});
    net.add_table("B", {"A"},
                  {{{true, true}, V("y")},
                   {{true, false}, Polynomial(1) - V("y")},
                   {{false, true}, V("z")},
                   {{false, false}, Polynomial(1) - V("z")}});
    return net;
}

// Chain plus the fully determined effect V = A or B.
Network two_cause_net() {
    Network net = chain_ab();
    net.embed_formula(parse_formula("A | B"), "V");
    return net;
}

// Joint table over (A, B) with free entries x1..x4 (TT, TF, FT, FF).
Network joint_ab() {
    Network net;
    for (const char* p : {"x1", "x2", "x3", "x4"}) net.add_parameter({p});
    net.add_joint({"A", "B"}, {{{true, true}, V("x1")},
                               {{true, false}, V("x2")},
                               {{false, true}, V("x3")},
                               {{false, false}, V("x4")}});
    return net;
}

// Joint table over (A, B, C) with free entries y1..y8 (TTT..FFF).
Network joint_abc() {
    Network net;
    std::map<std::vector<bool>, Polynomial> rows;
    int i = 1;
    for (bool a : {true, false})
        for (bool b : {true, false})
            for (bool c : {true, false}) {
                std::string n = "y" + std::to_string(i++);
                net.add_parameter({n});
                rows[{a, b, c}] = V(n);
            }
    net.add_joint({"A", "B", "C"}, rows);
    return net;
}

ConditionalStatement simple(CondType t, Term ant, Term cons, const Rational& k) {
    ConditionalStatement c;
    c.type = t;
    c.antecedent_terms = {ant};
    c.consequent = cons;
    c.sense = Sense::fraction(k);
    return c;
}

ConditionalStatement bf(const std::string& ant, const std::string& cons, bool K = true) {
    ConditionalStatement c;
    c.type = CondType::BooleanFeasibility;
    c.antecedent_formula = parse_formula(ant);
    c.consequent_formula = parse_formula(cons);
    c.sense = Sense::truth(K);
    return c;
}

std::string sets_of(CaseResult& r, const StatusRecord& rec, const std::string& label) {
    for (std::size_t i = 0; i < rec.sets.size(); ++i) {
        if (rec.sets[i].first != label) continue;
        if (i < rec.programs.size()) r.programs.push_back(rec.programs[i]);
        return set_exact(rec.sets[i].second);
    }
    return "(missing)";
}

bool tautology(const FormulaPtr& f) {
    for (const auto& v : all_valuations(formula_atoms(f)))
        if (!eval_formula(f, v)) return false;
    return true;
}

Valuation val2(bool a, bool b) { return {{"A", a}, {"B", b}}; }
Valuation val3(bool a, bool b, bool c) { return {{"A", a}, {"B", b}, {"C", c}}; }

// --- Cases -----------------------------------------------------------------

CaseResult case_modusponens() {
    CaseResult r;
    Network net = chain_ab();
    SolutionSet s =
        solset(r, net, prob(net, {{"B", true}}), {eq(V("x"), 1), eq(V("y"), 1)});
    expect(r, "P(B=T) under both premises certain", "{1}", set_exact(s));

    PolyProgram ip;
    ip.objective_num = V("y");
    ip.constraints = {eq(V("x") * V("y"), 1)};
    ip.bounds["x"] = VarBound{0, 1, true};
    ip.bounds["y"] = VarBound{0, 1, true};
    r.programs.push_back(ip);
    expect(r, "0/1 integer restatement", "{1}", set_exact(solution_set(ip)));
    return r;
}

CaseResult case_transitivity() {
    CaseResult r;
    Network net = joint_abc();
    ConstraintSet gamma{gt0(prob(net, {{"A", true}, {"B", true}})),
                        eq(prob(net, {{"A", true}, {"B", false}}), 0),
                        gt0(prob(net, {{"B", true}, {"C", true}})),
                        eq(prob(net, {{"B", true}, {"C", false}}), 0)};
    SolutionSet fail_set = solset(r, net, prob(net, {{"A", true}, {"C", false}}), gamma);
    expect(r, "P(A and not C): the implication cannot fail", "{0}", set_exact(fail_set));
    SolutionSet and_set = solset(r, net, prob(net, {{"A", true}, {"C", true}}), gamma);
    expect(r, "P(A and C) range", "[1/1000, 1]", set_exact(and_set));
    return r;
}

CaseResult case_butter() {
    CaseResult r;
    Network net = chain_ab();
    OppositeVerdict v = check_opposites(simple(CondType::Subjunctive, {"A", false}, {"B", false}, 1),
                                        simple(CondType::Subjunctive, {"A", false}, {"B", false}, 0),
                                        net);
    expect(r, "opposing subjunctives", "inconsistent",
           v == OppositeVerdict::Inconsistent ? "inconsistent" : "consistent");

    ConstraintSet gamma{eq(prob(net, {{"B", true}}), 0), eq(V("y"), 1)};
    SolutionSet s = solset(r, net, prob(net, {{"A", false}}), gamma);
    expect(r, "P(A=F) deduced from the facts", "{1}", set_exact(s));

    // with the antecedent settled false, the alternative-cause input is pinned
    ConstraintSet gamma2{eq(V("x"), 0), eq(prob(net, {{"B", true}}), 0)};
    Polynomial z_expr = net.subjunctive_input_expr(EventConjunction::of({{"A", false}}),
                                                   {"B", true});
    SolutionSet s2 = solset(r, net, z_expr, gamma2);
    expect(r, "input probability of B without A", "{0}", set_exact(s2));
    return r;
}

CaseResult case_murder() {
    CaseResult r;
    Network net = two_cause_net();
    expect(r, "P(V=T)", "x + z - x z", prob(net, {{"V", true}}).render());

    ConstraintSet gamma{eq(prob(net, {{"V", true}, {"A", false}}), 1)};
    SolutionSet s = solset(r, net, prob(net, {{"B", false}}), gamma);
    expect(r, "P(B=F) under the investigator's premise", "{0}", set_exact(s));
    StatusRecord rec;
    bool deduced = feasibility_deduce(net, gamma, Term{"B", true}, 1, &rec);
    expect(r, "claimed deduction of not-B", "invalid", deduced ? "valid" : "invalid");

    ConditionalStatement i1;
    i1.type = CondType::Material;
    i1.antecedent_terms = {Term{"V", false}, Term{"A", true}};
    i1.consequent = Term{"B", false};
    i1.sense = Sense::fraction(1);
    Factuality f = classify_factuality(i1, Term{"V", false});
    expect(r, "investigator's conditional vs the fact V=T", "factual",
           f.factual && !f.antifactual ? "factual" : (f.antifactual ? "antifactual" : "afactual"));
    Factuality g =
        classify_factuality(simple(CondType::Subjunctive, {"A", true}, {"B", true}, 0),
                            Term{"V", false});
    expect(r, "structural subjunctive vs the fact V=T", "afactual",
           g.afactual() ? "afactual" : "not afactual");
    return r;
}

CaseResult case_oswald2() {
    CaseResult r;
    Network net = two_cause_net();
    ConstraintSet gamma{eq(prob(net, {{"V", true}, {"A", false}}), 1)};
    SolutionSet s = solset(r, net, prob(net, {{"B", false}}), gamma);
    expect(r, "P(B=F) when the event happened without the first cause", "{0}", set_exact(s));

    // asserting both "B never with the premise" and "sometimes with it" fails
    Polynomial crit = prob(net, {{"B", true}, {"A", false}});
    PolyProgram p = make_program(net, Polynomial(0), {eq(crit, 0), gt0(crit)});
    expect(r, "material plus existential readings together", "infeasible",
           feasible(p) ? "feasible" : "infeasible");
    return r;
}

// Oswald chain with the second-order effect L (only reachable without V).
Network oswald3_net() {
    Network net = two_cause_net();
    net.add_parameter({"w"});
    net.add_table("L", {"V"},
                  {{{true, true}, Polynomial(0)},
                   {{true, false}, Polynomial(1)},
                   {{false, true}, V("w")},
                   {{false, false}, Polynomial(1) - V("w")}});
    return net;
}

CaseResult case_oswald3() {
    CaseResult r;
    Network net = oswald3_net();
    Polynomial expr =
        net.subjunctive_input_expr(EventConjunction::of({{"A", false}}), {"L", true});
    expect(r, "input expression P0(L=T | A=F) after cancellation", "w - w z", expr.render());

    ConstraintSet gamma{eq(prob(net, {{"V", true}, {"A", false}}), 1)};
    SolutionSet s = solset(r, net, prob(net, {{"L", true}}), gamma);
    expect(r, "P(L=T) under the factual premise", "{0}", set_exact(s));

    ConstraintSet gamma2{eq(prob(net, {{"A", false}}), 1)};
    SolutionSet s2 = solset(r, net, prob(net, {{"L", true}}), gamma2);
    expect(r, "P(L=T) under the afactual premise", "[0, 1]", set_exact(s2));
    return r;
}

CaseResult case_soft() {
    CaseResult r;
    Network net = chain_ab();
    ConstraintSet gamma{eq(prob(net, {{"B", true}}), 0)};

    StatusRecord su = conditional_status(
        net, gamma, simple(CondType::Subjunctive, {"A", false}, {"B", false}, 1));
    expect(r, "subjunctive status", "possible", modal_status_name(su.status));
    expect(r, "subjunctive criterion set", "[0, 1]", sets_of(r, su, "phi"));

    StatusRecord mat = conditional_status(
        net, gamma, simple(CondType::Material, {"A", false}, {"B", false}, 1));
    expect(r, "material status", "possible", modal_status_name(mat.status));
    expect(r, "material criterion set", "[0, 1]", sets_of(r, mat, "psi"));

    StatusRecord ex = conditional_status(
        net, gamma, simple(CondType::Existential, {"A", false}, {"B", false}, 1));
    expect(r, "existential status", "impossible", modal_status_name(ex.status));
    expect(r, "existential criterion set", "{0}", sets_of(r, ex, "upsilon"));
    return r;
}

CaseResult case_raven() {
    CaseResult r;
    Network net = chain_ab();
    ConstraintSet evidence{eq(prob(net, {{"B", true}}), 0)};

    StatusRecord mat = conditional_status(
        net, evidence, simple(CondType::Material, {"A", false}, {"B", false}, 1));
    expect(r, "material reading under the evidence", "possible", modal_status_name(mat.status));
    expect(r, "material criterion set", "[0, 1]", sets_of(r, mat, "psi"));

    ConstraintSet with_hypothesis = evidence;
    with_hypothesis.push_back(eq(V("y"), 1));
    StatusRecord ex = conditional_status(
        net, with_hypothesis, simple(CondType::Existential, {"A", false}, {"B", false}, 1));
    expect(r, "existential reading with the hypothesis", "impossible",
           modal_status_name(ex.status));
    expect(r, "existential criterion set", "{0}", sets_of(r, ex, "upsilon"));
    return r;
}

CaseResult case_coins() {
    CaseResult r;
    MeasureTable t;
    for (const char* e : {"penny", "nickel", "dime", "quarter"}) t.add_element(e);
    t.add_measure("value", "cents",
                  {{"penny", 1}, {"nickel", 5}, {"dime", 10}, {"quarter", 25}});
    t.add_measure("mass", "grams",
                  {{"penny", parse_rational("2.500")},
                   {"nickel", parse_rational("5.000")},
                   {"dime", parse_rational("2.268")},
                   {"quarter", parse_rational("5.670")}});
    t.add_measure("count", "coins",
                  {{"penny", 1}, {"nickel", 1}, {"dime", 1}, {"quarter", 1}});
    t.add_measure("lincoln_images", "images",
                  {{"penny", 1}, {"nickel", 0}, {"dime", 0}, {"quarter", 0}});
    t.add_measure("fraction_cu", "percent",
                  {{"penny", parse_rational("2.50")},
                   {"nickel", parse_rational("75.00")},
                   {"dime", parse_rational("91.77")},
                   {"quarter", parse_rational("91.77")}},
                  false);

    auto p = [&](const std::string& m, std::set<std::string> ev,
                 std::optional<std::set<std::string>> given = std::nullopt) {
        auto v = measure_probability(t, m, ev, given);
        return v ? rational_to_string(*v) : std::string("indefinite");
    };
    std::set<std::string> smooth{"penny", "nickel"};
    expect(r, "P({dime}) by value", rational_to_string(Rational(10, 41)), p("value", {"dime"}));
    expect(r, "P({dime}) by mass", rational_to_string(Rational(2268, 15438)),
           p("mass", {"dime"}));
    expect(r, "P({dime}) by count", rational_to_string(Rational(1, 4)), p("count", {"dime"}));
    expect(r, "P(copper-plated | smooth edge) by value", rational_to_string(Rational(1, 6)),
           p("value", {"penny"}, smooth));
    expect(r, "P(copper-plated | smooth edge) by image count", "1",
           p("lincoln_images", {"penny"}, smooth));

    std::string rejected = "accepted";
    try {
        measure_probability(t, "fraction_cu", {"dime"});
    } catch (const Error&) {
        rejected = "rejected";
    }
    expect(r, "ratio column used as a measure", "rejected", rejected);
    return r;
}

CaseResult case_f1() {
    CaseResult r;
    Network net = joint_ab();
    ConstraintSet gamma{eq(V("x1") + V("x2"), 1)};
    StatusRecord rec =
        boolean_status_probabilistic(net, gamma, parse_formula("!A"), f_atom("B"));
    expect(r, "status of (if not-A then B) given A certain", "impossible",
           modal_status_name(rec.status));
    expect(r, "negative criterion set", "{0}", sets_of(r, rec, "phi"));
    expect(r, "positive criterion set", "{0}", sets_of(r, rec, "psi"));

    PolyProgram q =
        make_fractional_program(net, V("x3"), V("x3") + V("x4"), gamma);
    SolveOutcome o = solve_fractional(q);
    expect(r, "conditional-probability route", "empty (denominator forced to 0)",
           o.status == SolveStatus::Infeasible && o.denominator_forced_zero
               ? "empty (denominator forced to 0)"
               : "nonempty");
    return r;
}

CaseResult case_f2() {
    CaseResult r;
    Network net = joint_ab();
    ConstraintSet gamma{eq(V("x1") + V("x2"), 1)};
    StatusRecord rec = boolean_status_probabilistic(net, gamma, f_atom("B"), f_atom("A"));
    expect(r, "status of (if B then A) given A certain", "possible",
           modal_status_name(rec.status));
    expect(r, "positive criterion set", "[0, 1]", sets_of(r, rec, "psi"));

    PolyProgram qmin = make_fractional_program(net, V("x1"), V("x1") + V("x3"), gamma);
    PolyProgram qmax = qmin;
    qmax.direction = Direction::Max;
    SolveOutcome lo = solve_fractional(qmin), hi = solve_fractional(qmax);
    bool one = lo.status == SolveStatus::Optimal && hi.status == SolveStatus::Optimal &&
               lo.value == 1 && hi.value == 1;
    PolyProgram den_zero = make_program(net, Polynomial(0), gamma);
    den_zero.constraints.push_back(eq(V("x1") + V("x3"), 0));
    expect(r, "conditional-probability route", "{1} or empty",
           one && feasible(den_zero) ? "{1} or empty" : "other");

    std::vector<std::string> ab{"A", "B"};
    ValuationSetSpec conclusion = valuation_analysis(bf("B", "A"), ab);
    ValuationSetSpec premise = valuation_analysis(bf("T", "A"), ab);
    expect(r, "valuation sets satisfying the conclusion", "4",
           spec_count(conclusion).str());
    expect(r, "valuation sets satisfying the premise", "3", spec_count(premise).str());
    CounterexampleResult ce = counterexample_sets(premise, {conclusion});
    expect(r, "counterexample sets", "1", ce.count.str());
    return r;
}

CaseResult case_f3() {
    CaseResult r;
    Network net = joint_abc();
    ConstraintSet gamma{eq(prob(net, {{"A", true}, {"B", false}}), 0),
                        gt0(prob(net, {{"A", true}, {"B", true}}))};
    FormulaPtr ant = parse_formula("A & C"), cons = f_atom("B");
    StatusRecord before = boolean_status_probabilistic(net, gamma, ant, cons);
    expect(r, "status before the new report", "possible", modal_status_name(before.status));
    expect(r, "positive criterion set before", "[0, 1]", sets_of(r, before, "psi"));

    gamma.push_back(eq(prob(net, {{"B", true}, {"C", true}}), 0));
    StatusRecord after = boolean_status_probabilistic(net, gamma, ant, cons);
    expect(r, "status after P(B=T,C=T)=0", "impossible", modal_status_name(after.status));
    expect(r, "positive criterion set after", "{0}", sets_of(r, after, "psi"));
    return r;
}

CaseResult case_f4() {
    CaseResult r;
    FormulaPtr original = parse_formula("((A -> B) & (C -> A)) -> (C -> B)");
    expect(r, "original compound", "tautology", tautology(original) ? "tautology" : "contingent");
    FormulaPtr revised = parse_formula("(((A & !C) -> B) & (C -> A)) -> (C -> B)");
    expect(r, "revised compound (strengthened antecedent)", "contingent",
           tautology(revised) ? "tautology" : "contingent");
    bool falsified =
        !eval_formula(revised, {{"A", true}, {"B", false}, {"C", true}});
    expect(r, "falsifying valuation A=T, B=F, C=T", "falsifies",
           falsified ? "falsifies" : "satisfies");
    return r;
}

CaseResult case_f5() {
    CaseResult r;
    std::vector<std::string> ab{"A", "B"};
    ValuationSetSpec both = spec_conjunction(
        {valuation_analysis(bf("A", "B"), ab), valuation_analysis(bf("A", "!B"), ab)});
    expect(r, "sets satisfying both opposite conditionals", "0", spec_count(both).str());

    BfExprPtr opposites =
        bf_and(bf_cond(f_atom("A"), f_atom("B"), true), bf_cond(f_atom("A"), f_atom("B"), false));
    BfExprPtr outer = bf_cond_nested(opposites, f_atom("B"), true);
    std::vector<Valuation> universe = all_valuations(ab);
    bool fired = false;
    for (std::size_t mask = 0; mask < 16; ++mask) {
        std::vector<Valuation> set;
        for (std::size_t i = 0; i < 4; ++i)
            if ((mask >> i) & 1) set.push_back(universe[i]);
        if (eval_on_valuation_set(outer, set)) fired = true;
    }
    expect(r, "outer conditional over every valuation set", "never true",
           fired ? "sometimes true" : "never true");
    return r;
}

CaseResult case_f6() {
    CaseResult r;
    Network net = joint_ab();
    net.embed_formula(parse_formula("(A | B) & !B"), "W");
    ConstraintSet gamma{eq(prob(net, {{"W", true}}), 1)};
    StatusRecord rec =
        boolean_status_probabilistic(net, gamma, parse_formula("!A"), f_atom("B"));
    expect(r, "status of (if not-A then B)", "impossible", modal_status_name(rec.status));
    expect(r, "negative criterion set", "{0}", sets_of(r, rec, "phi"));
    expect(r, "positive criterion set", "{0}", sets_of(r, rec, "psi"));
    return r;
}

CaseResult case_f7() {
    CaseResult r;
    BfExprPtr inner = bf_cond(f_atom("A"), f_atom("B"), true);
    BfExprPtr outer = bf_cond_nested(bf_not(inner), f_atom("A"), true);
    std::vector<std::vector<Valuation>> situations{
        {val2(false, true), val2(false, false)},
        {val2(true, false), val2(false, true), val2(false, false)},
        {val2(true, true), val2(true, false), val2(false, true), val2(false, false)}};
    for (std::size_t i = 0; i < situations.size(); ++i)
        expect(r, "outer conditional in situation " + std::to_string(i + 1), "false",
               eval_on_valuation_set(outer, situations[i]) ? "true" : "false");
    return r;
}

CaseResult case_f8() {
    CaseResult r;
    std::vector<std::string> abc{"A", "B", "C"};
    ValuationSetSpec premise = valuation_analysis(bf("A & B", "C"), abc);
    ValuationSetSpec c1 = valuation_analysis(bf("A", "C"), abc);
    ValuationSetSpec c2 = valuation_analysis(bf("B", "C"), abc);
    expect(r, "sets satisfying the premise", "64", spec_count(premise).str());
    expect(r, "sets satisfying conclusion (if A then C)", "48", spec_count(c1).str());
    expect(r, "sets satisfying conclusion (if B then C)", "48", spec_count(c2).str());

    CounterexampleResult ce = counterexample_sets(premise, {c1, c2});
    expect(r, "counterexample sets", "16", ce.count.str());

    std::vector<Valuation> sample{val3(true, true, true), val3(true, false, false),
                                  val3(false, true, false)};
    std::sort(sample.begin(), sample.end());
    bool found = false;
    for (auto s : ce.samples) {
        std::sort(s.begin(), s.end());
        if (s == sample) found = true;
    }
    expect(r, "worked counterexample appears", "yes", found ? "yes" : "no");
    return r;
}

CaseResult case_f9() {
    CaseResult r;
    std::vector<std::string> ab{"A", "B"};
    ValuationSetSpec premise = valuation_analysis(bf("!(B & !A)", "!B"), ab);
    ValuationSetSpec conclusion = valuation_analysis(bf("A", "!B"), ab);
    expect(r, "sets satisfying the premise", "6", spec_count(premise).str());
    expect(r, "sets satisfying the conclusion", "4", spec_count(conclusion).str());

    CounterexampleResult ce = counterexample_sets(premise, {conclusion});
    expect(r, "counterexample sets", "2", ce.count.str());

    std::vector<std::vector<Valuation>> want{{val2(false, false)},
                                             {val2(false, true), val2(false, false)}};
    auto canon = [](std::vector<std::vector<Valuation>> v) {
        for (auto& s : v) std::sort(s.begin(), s.end());
        std::sort(v.begin(), v.end());
        return v;
    };
    expect(r, "counterexamples are exactly the two expected sets", "yes",
           canon(ce.samples) == canon(want) ? "yes" : "no");
    return r;
}

struct CorpusCase {
    const char* name;
    CaseResult (*run)();
};

const CorpusCase kCases[] = {
    {"butter", case_butter},       {"murder", case_murder},
    {"oswald2", case_oswald2},     {"oswald3", case_oswald3},
    {"soft", case_soft},           {"raven", case_raven},
    {"coins", case_coins},         {"f1", case_f1},
    {"f2", case_f2},               {"f3", case_f3},
    {"f4", case_f4},               {"f5", case_f5},
    {"f6", case_f6},               {"f7", case_f7},
    {"f8", case_f8},               {"f9", case_f9},
    {"modusponens", case_modusponens},
    {"transitivity", case_transitivity},
};

}  // namespace

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& c : kCases) out.push_back(c.name);
    return out;
}

Report run_corpus(const std::string& name, const RunOptions& options) {
    Report report;
    std::ostringstream text;
    json jcases = json::array();

    bool matched = false;
    for (const auto& c : kCases) {
        if (name != "all" && name != c.name) continue;
        matched = true;
        CaseResult r = c.run();
        json jcase;
        jcase["name"] = c.name;
        json jchecks = json::array();
        text << c.name << "\n";
        for (const CorpusCheck& chk : r.checks) {
            json j;
            j["label"] = chk.label;
            j["expected"] = chk.expected;
            j["actual"] = chk.actual;
            j["pass"] = chk.pass;
            jchecks.push_back(std::move(j));
            text << "  " << chk.label << ": expected " << chk.expected << ", got " << chk.actual
                 << (chk.pass ? "" : "  MISMATCH") << "\n";
            if (!chk.pass) ++report.mismatches;
        }
        jcase["checks"] = std::move(jchecks);
        jcases.push_back(std::move(jcase));

        if (options.dump_programs) {
            for (const PolyProgram& p : r.programs) {
                std::istringstream lines(dump_program(p));
                std::string l;
                while (std::getline(lines, l)) text << "    " << l << "\n";
            }
        }
    }
    if (!matched) throw QueryError("unknown corpus case: " + name);

    text << "mismatches: " << report.mismatches << "\n";
    report.json["schema"] = 1;
    report.json["cases"] = std::move(jcases);
    report.json["mismatches"] = report.mismatches;
    report.errors = report.mismatches;
    report.text = text.str();
    return report;
}

std::vector<PolyProgram> corpus_programs() {
    std::vector<PolyProgram> out;
    for (const auto& c : kCases) {
        CaseResult r = c.run();
        for (PolyProgram& p : r.programs) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ppn
