#include "doctest.h"

#include "ppn/proplogic.hpp"

#include <random>

using namespace ppn;

namespace {

Polynomial V(const std::string& n) { return Polynomial::variable(n); }

FormulaPtr random_formula(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 0);
    static const char* atoms[] = {"A", "B", "C"};
    std::uniform_int_distribution<int> which(0, 2);
    switch (pick(rng)) {
        case 0: return f_atom(atoms[which(rng)]);
        case 1: return f_not(random_formula(rng, depth - 1));
        case 2: return f_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 3: return f_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 4: return f_xor(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 5: return f_implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        default: return f_iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("parser structure and precedence") {
    CHECK(formulas_equal(parse_formula("A -> B -> C"),
                         f_implies(f_atom("A"), f_implies(f_atom("B"), f_atom("C")))));
    CHECK(formulas_equal(parse_formula("!A & B | C"),
                         f_or(f_and(f_not(f_atom("A")), f_atom("B")), f_atom("C"))));
    CHECK(formulas_equal(parse_formula("A <-> B -> C"),
                         f_iff(f_atom("A"), f_implies(f_atom("B"), f_atom("C")))));
    CHECK(formulas_equal(parse_formula("~(A ^ B)"), f_not(f_xor(f_atom("A"), f_atom("B")))));
    CHECK(formulas_equal(parse_formula("T & F"), f_and(f_truth(), f_falsity())));
    CHECK_THROWS_AS(parse_formula("A &"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("(A"), SyntaxError);
}

TEST_CASE("render round-trips") {
    std::mt19937 rng(777);
    for (int i = 0; i < 300; ++i) {
        FormulaPtr f = random_formula(rng, 4);
        CHECK(formulas_equal(parse_formula(render_formula(f)), f));
    }
}

TEST_CASE("truth table order") {
    auto rows = truth_table(parse_formula("A & B"));
    REQUIRE(rows.size() == 4);
    // T-first, first atom most significant: TT, TF, FT, FF
    CHECK(rows[0].second == true);
    CHECK(rows[1].second == false);
    CHECK(rows[2].second == false);
    CHECK(rows[3].second == false);
    CHECK(rows[1].first.at("A") == true);
    CHECK(rows[1].first.at("B") == false);
}

TEST_CASE("translation goldens") {
    Polynomial x = V("x"), y = V("y");
    CHECK(translate(parse_formula("X & (X -> Y)")) == x * y);
    CHECK(translate(parse_formula("X -> Y")) == Polynomial(1) - x + x * y);
    CHECK(translate(parse_formula("!X")) == Polynomial(1) - x);
    CHECK(translate(parse_formula("X | Y")) == x + y - x * y);
    CHECK(translate(parse_formula("X ^ Y")) == x + y - Polynomial(2) * x * y);
    CHECK(translate(parse_formula("X <-> Y")) ==
          Polynomial(1) - x - y + Polynomial(2) * x * y);
    CHECK(translate(f_truth()) == Polynomial(1));
    CHECK(translate(f_falsity()) == Polynomial(0));
    CHECK(translate(parse_formula("X")) == x);
}

TEST_CASE("translation agrees with truth tables") {
    // every connective, exhaustively over two atoms
    const char* forms[] = {"X & Y", "X | Y", "X ^ Y", "X -> Y", "X <-> Y",
                           "!X",    "T",     "F",     "X"};
    for (const char* text : forms) {
        FormulaPtr f = parse_formula(text);
        Polynomial p = translate(f);
        for (const auto& v : all_valuations({"X", "Y"})) {
            std::map<std::string, Rational> pt;
            for (const auto& [a, b] : v) pt[atom_variable(a)] = b ? 1 : 0;
            CHECK(p.evaluate(pt) == Rational(eval_formula(f, v) ? 1 : 0));
        }
    }
}

TEST_CASE("translation agrees with evaluation on random formulas") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 200; ++i) {
        FormulaPtr f = random_formula(rng, 4);
        Polynomial p = translate(f);
        for (const auto& v : all_valuations(formula_atoms(f))) {
            std::map<std::string, Rational> pt;
            for (const auto& [a, b] : v) pt[atom_variable(a)] = b ? 1 : 0;
            CHECK(p.evaluate(pt) == Rational(eval_formula(f, v) ? 1 : 0));
        }
    }
}

TEST_CASE("indicator expansion") {
    Polynomial x = V("x"), y = V("y");
    CHECK(indicator_expansion({1, 0, 1, 1}, {"X", "Y"}) == Polynomial(1) - x + x * y);
    CHECK(indicator_expansion({1, 0, 0, 0}, {"X", "Y"}) == x * y);
    CHECK_THROWS_AS(indicator_expansion({1, 0}, {"X", "Y"}), Error);
}
