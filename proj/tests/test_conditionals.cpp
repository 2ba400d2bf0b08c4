#include "doctest.h"

#include "ppn/conditionals.hpp"

#include <random>

using namespace ppn;

namespace {

Polynomial V(const std::string& n) { return Polynomial::variable(n); }

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

ConditionalStatement probabilistic(CondType t, const Rational& k) {
    ConditionalStatement c;
    c.type = t;
    c.antecedent_terms = {Term{"A", false}};
    c.consequent = Term{"B", false};
    c.sense = Sense::fraction(k);
    return c;
}

ConditionalStatement tf_cond(const std::string& ant, const std::string& cons, bool K) {
    ConditionalStatement c;
    c.type = CondType::TruthFunctional;
    c.antecedent_formula = parse_formula(ant);
    c.consequent_formula = parse_formula(cons);
    c.sense = Sense::truth(K);
    return c;
}

bool satisfies(const ConstraintSet& cs, const std::map<std::string, Rational>& pt) {
    for (const auto& c : cs) {
        Rational l = c.lhs.evaluate(pt), r = c.rhs.evaluate(pt);
        switch (c.rel) {
            case Rel::Eq: if (l != r) return false; break;
            case Rel::Le: if (l > r) return false; break;
            case Rel::Ge: if (l < r) return false; break;
            case Rel::Lt: if (l >= r) return false; break;
            case Rel::Gt: if (l <= r) return false; break;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("compiled constraint systems") {
    Network net = chain_ab();
    Polynomial x = V("x"), y = V("y");

    ConstraintSet su = compile(probabilistic(CondType::Subjunctive, 1), net);
    REQUIRE(su.size() == 1);
    CHECK(su[0].lhs == y);
    CHECK(su[0].rhs == Polynomial(1));

    ConstraintSet mat = compile(probabilistic(CondType::Material, Rational(1, 2)), net);
    REQUIRE(mat.size() == 1);
    CHECK(mat[0].lhs == x * y);
    CHECK(mat[0].rhs == Polynomial(Rational(1, 2)) * x);

    ConstraintSet ex = compile(probabilistic(CondType::Existential, 1), net);
    REQUIRE(ex.size() == 2);
    CHECK(ex[0].lhs == x * y);
    CHECK(ex[0].rhs == x);
    CHECK(ex[1].rel == Rel::Gt);

    ConstraintSet tf = compile(tf_cond("X", "Y", true), net);
    REQUIRE(tf.size() == 1);
    CHECK(tf[0].lhs == Polynomial(1) - x + x * y);
    CHECK(tf[0].rhs == Polynomial(1));
}

TEST_CASE("feasibility types refuse plain compilation") {
    Network net = chain_ab();
    ConditionalStatement c = probabilistic(CondType::QuotientFeasibility, 1);
    CHECK_THROWS_AS(compile(c, net), Error);
    c.type = CondType::BooleanFeasibility;
    c.antecedent_formula = parse_formula("A");
    c.consequent_formula = parse_formula("B");
    c.sense = Sense::truth(true);
    CHECK_THROWS_AS(compile(c, net), Error);
}

TEST_CASE("truth-functional compile matches material at k = 1") {
    Network net = chain_ab();
    ConstraintSet mat = compile(probabilistic(CondType::Material, 1), net);
    ConstraintSet tf = compile(tf_cond("X", "Y", true), net);
    CHECK(systems_equal(mat, tf));
}

TEST_CASE("negated consequent equals flipped sense") {
    Network net = chain_ab();
    for (CondType t : {CondType::Subjunctive, CondType::Material, CondType::Existential}) {
        for (Rational k : {Rational(0), Rational(1, 2), Rational(1)}) {
            ConditionalStatement neg = probabilistic(t, k);
            neg.consequent.negated = true;
            ConditionalStatement flip = probabilistic(t, 1 - k);
            CHECK(systems_equal(compile(neg, net), compile(flip, net)));
        }
    }
}

TEST_CASE("consistency of opposites") {
    Network net = chain_ab();
    auto opposite_pair = [&](CondType t) {
        return check_opposites(probabilistic(t, 1), probabilistic(t, 0), net);
    };
    CHECK(opposite_pair(CondType::Subjunctive) == OppositeVerdict::Inconsistent);
    CHECK(opposite_pair(CondType::Material) == OppositeVerdict::Consistent);
    CHECK(opposite_pair(CondType::Existential) == OppositeVerdict::Inconsistent);
    CHECK(opposite_pair(CondType::Feasibility) == OppositeVerdict::Inconsistent);
    CHECK(check_opposites(tf_cond("A", "B", true), tf_cond("A", "B", false), net) ==
          OppositeVerdict::Consistent);
    ConditionalStatement bf1 = tf_cond("A", "B", true), bf2 = tf_cond("A", "B", false);
    bf1.type = bf2.type = CondType::BooleanFeasibility;
    CHECK(check_opposites(bf1, bf2, net) == OppositeVerdict::Inconsistent);
}

TEST_CASE("hierarchy of probabilistic conditionals on sampled points") {
    Network net = chain_ab();
    ConstraintSet ex = compile(probabilistic(CondType::Existential, 1), net);
    ConstraintSet su = compile(probabilistic(CondType::Subjunctive, 1), net);
    ConstraintSet mat = compile(probabilistic(CondType::Material, 1), net);

    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> num(0, 20);
    int ex_hits = 0;
    for (int i = 0; i < 10000; ++i) {
        std::map<std::string, Rational> pt{{"x", Rational(num(rng), 20)},
                                           {"y", Rational(num(rng), 20)},
                                           {"z", Rational(num(rng), 20)}};
        if (satisfies(ex, pt)) {
            ++ex_hits;
            CHECK(satisfies(su, pt));
        }
        if (satisfies(su, pt)) CHECK(satisfies(mat, pt));
    }
    CHECK(ex_hits > 0);  // the implication was actually exercised
}

TEST_CASE("factuality classification") {
    ConditionalStatement m;  // material {not A, C} => B
    m.type = CondType::Material;
    m.antecedent_terms = {Term{"A", true}, Term{"C", false}};
    m.consequent = Term{"B", false};
    m.sense = Sense::fraction(1);

    Factuality f = classify_factuality(m, Term{"C", false});
    CHECK(f.factual);
    CHECK(!f.antifactual);
    f = classify_factuality(m, Term{"A", false});
    CHECK(f.antifactual);
    CHECK(!f.factual);

    ConditionalStatement su;  // subjunctive C => B
    su.type = CondType::Subjunctive;
    su.antecedent_terms = {Term{"C", false}};
    su.consequent = Term{"B", false};
    su.sense = Sense::fraction(1);
    CHECK(classify_factuality(su, Term{"A", false}).afactual());

    // formulas contribute literal occurrences
    ConditionalStatement tf = tf_cond("A", "C", true);
    CHECK(classify_factuality(tf, Term{"C", false}).factual);

    // both states can occur at once
    ConditionalStatement both = m;
    both.antecedent_terms = {Term{"A", false}, Term{"A", true}};
    Factuality fb = classify_factuality(both, Term{"A", false});
    CHECK(fb.factual);
    CHECK(fb.antifactual);

    // stable under antecedent reordering
    ConditionalStatement swapped = m;
    std::swap(swapped.antecedent_terms[0], swapped.antecedent_terms[1]);
    for (const Term& fact : {Term{"A", false}, Term{"B", true}, Term{"C", false}}) {
        Factuality a = classify_factuality(m, fact), b = classify_factuality(swapped, fact);
        CHECK(a.factual == b.factual);
        CHECK(a.antifactual == b.antifactual);
    }
}

TEST_CASE("truth-functional evaluation") {
    ConditionalStatement c = tf_cond("A", "B", true);
    CHECK(truth_functional_eval(c, {{"A", true}, {"B", true}}));
    CHECK(!truth_functional_eval(c, {{"A", true}, {"B", false}}));
    CHECK(truth_functional_eval(c, {{"A", false}, {"B", true}}));
    CHECK(truth_functional_eval(c, {{"A", false}, {"B", false}}));
    ConditionalStatement cf = tf_cond("A", "B", false);
    CHECK(truth_functional_eval(cf, {{"A", true}, {"B", false}}));
    CHECK(!truth_functional_eval(cf, {{"A", true}, {"B", true}}));
}
