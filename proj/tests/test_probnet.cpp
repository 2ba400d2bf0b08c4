#include "doctest.h"

#include "ppn/probnet.hpp"

using namespace ppn;

namespace {

Polynomial V(const std::string& n) { return Polynomial::variable(n); }

// Two-variable chain: A with P(A=T) = x; B given A with rows y / z.
Network chain_ab() {
    Network net;
    net.add_parameter({"x"});
    net.add_parameter({"y"});
    net.add_parameter({"z"});
    Polynomial x = V("x"), y = V("y"), z = V("z");
    net.add_table("A", {}, {{{true}, x}, {{false}, Polynomial(1) - x}});
    net.add_table("B", {"A"},
                  {{{true, true}, y},
                   {{true, false}, Polynomial(1) - y},
                   {{false, true}, z},
                   {{false, false}, Polynomial(1) - z}});
    return net;
}

}  // namespace

TEST_CASE("full joint of the two-variable chain") {
    Network net = chain_ab();
    Polynomial x = V("x"), y = V("y"), z = V("z");
    auto joint = net.full_joint({"A", "B"});
    REQUIRE(joint.size() == 4);
    CHECK(joint.at({true, true}) == x * y);
    CHECK(joint.at({true, false}) == x - x * y);
    CHECK(joint.at({false, true}) == z - x * z);
    CHECK(joint.at({false, false}) == Polynomial(1) - x - z + x * z);
    Polynomial sum;
    for (const auto& [k, p] : joint) sum += p;
    CHECK(sum == Polynomial(1));
}

TEST_CASE("marginal and conditional queries") {
    Network net = chain_ab();
    Polynomial x = V("x"), y = V("y"), z = V("z");
    CHECK(net.query_unconditioned(EventConjunction::of({{"A", true}})) == x);
    CHECK(net.query_unconditioned(EventConjunction::of({{"B", true}})) ==
          z + x * y - x * z);
    auto q = net.query_conditional(EventConjunction::of({{"B", true}}),
                                   EventConjunction::of({{"A", true}}));
    CHECK(q.numerator == x * y);
    CHECK(q.denominator == x);
    CHECK(q.render() == "(x y)/(x)");
}

TEST_CASE("embedded formulas") {
    Network net = chain_ab();
    Polynomial x = V("x"), y = V("y");
    net.embed_formula(parse_formula("A -> B"), "AimpB");
    net.embed_formula(parse_formula("A & B"), "AandB");
    CHECK(net.query_unconditioned(EventConjunction::of({{"AimpB", true}})) ==
          Polynomial(1) - x + x * y);
    CHECK(net.query_unconditioned(EventConjunction::of({{"AandB", true}})) == x * y);
    // the embedded implication's table, spelled out
    const Factor& f = net.factor_of("AimpB");
    CHECK(f.rows.at({true, true, true}) == Polynomial(1));
    CHECK(f.rows.at({true, false, true}) == Polynomial(0));
    CHECK(f.rows.at({false, true, true}) == Polynomial(1));
    CHECK(f.rows.at({false, false, true}) == Polynomial(1));
}

TEST_CASE("subjunctive input expressions") {
    Network net = chain_ab();
    Polynomial y = V("y"), z = V("z");
    // direct table cell
    CHECK(net.subjunctive_input_expr(EventConjunction::of({{"A", true}}), {"B", true}) == y);
    CHECK(net.subjunctive_input_expr(EventConjunction::of({{"A", false}}), {"B", true}) == z);
    CHECK(net.subjunctive_input_expr(EventConjunction::of({{"A", true}}), {"B", false}) ==
          Polynomial(1) - y);
    // non-ancestor antecedent is inexpressible
    CHECK_THROWS_AS(net.subjunctive_input_expr(EventConjunction::of({{"B", true}}), {"A", true}),
                    SubjunctiveInexpressibleError);
}

TEST_CASE("subjunctive via structural cancellation on a longer chain") {
    Network net = chain_ab();
    Polynomial y = V("y"), z = V("z"), c1 = V("c1"), c0 = V("c0");
    net.add_parameter({"c1"});
    net.add_parameter({"c0"});
    net.add_table("C", {"B"},
                  {{{true, true}, c1},
                   {{true, false}, Polynomial(1) - c1},
                   {{false, true}, c0},
                   {{false, false}, Polynomial(1) - c0}});
    // P(C=T | A=T) cancels x structurally
    Polynomial expect = y * c1 + (Polynomial(1) - y) * c0;
    CHECK(net.subjunctive_input_expr(EventConjunction::of({{"A", true}}), {"C", true}) == expect);
}

TEST_CASE("joint blocks") {
    Network net;
    for (const char* p : {"x1", "x2", "x3", "x4"}) net.add_parameter({p});
    net.add_joint({"A", "B"}, {{{true, true}, V("x1")},
                               {{true, false}, V("x2")},
                               {{false, true}, V("x3")},
                               {{false, false}, V("x4")}});
    CHECK(net.query_unconditioned(EventConjunction::of({{"A", true}})) == V("x1") + V("x2"));
    CHECK(net.query_unconditioned(EventConjunction::of({{"A", true}, {"B", false}})) == V("x2"));
    // block members are mutual ancestors
    auto closure = net.ancestral_closure({"B"});
    CHECK(closure == std::vector<std::string>{"A", "B"});
}

TEST_CASE("input table validation") {
    Network net;
    net.add_parameter({"x"});
    Polynomial x = V("x");
    CHECK_THROWS_AS(net.add_table("A", {}, {{{true}, x}, {{false}, x}}), Error);
    CHECK_THROWS_AS(net.add_table("B", {"nope"}, {{{true, true}, x},
                                                  {{true, false}, Polynomial(1) - x},
                                                  {{false, true}, x},
                                                  {{false, false}, Polynomial(1) - x}}),
                    Error);
}

TEST_CASE("determinism of repeated queries") {
    Network net = chain_ab();
    auto a = net.query_unconditioned(EventConjunction::of({{"B", true}}));
    auto b = net.query_unconditioned(EventConjunction::of({{"B", true}}));
    CHECK(a == b);
    CHECK(a.render() == b.render());
}
