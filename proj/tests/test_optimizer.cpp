#include "doctest.h"

#include "ppn/optimizer.hpp"

using namespace ppn;

namespace {

Polynomial V(const std::string& n) { return Polynomial::variable(n); }

void bound01(PolyProgram& p, std::initializer_list<const char*> vars, bool integer = false) {
    for (const char* v : vars) p.bounds[v] = VarBound{0, 1, integer};
}

}  // namespace

TEST_CASE("probabilistic modus ponens pins the consequent at 1") {
    Polynomial x = V("x"), y = V("y"), z = V("z");
    PolyProgram p;
    p.objective_num = z + x * y - x * z;
    p.constraints = {{x, Rel::Eq, Polynomial(1)}, {y, Rel::Eq, Polynomial(1)}};
    bound01(p, {"x", "y", "z"});
    SolutionSet s = solution_set(p);
    REQUIRE(!s.empty);
    CHECK(s.alpha_star == 1);
    CHECK(s.beta_star == 1);
}

TEST_CASE("integer modus ponens") {
    Polynomial x = V("x"), y = V("y");
    PolyProgram p;
    p.objective_num = y;
    p.constraints = {{x * y, Rel::Eq, Polynomial(1)}};
    bound01(p, {"x", "y"}, true);
    SolutionSet s = solution_set(p);
    REQUIRE(!s.empty);
    CHECK(s.alpha_star == 1);
    CHECK(s.beta_star == 1);
}

TEST_CASE("transitivity linear programs") {
    // joint over three variables: y1..y8, summing to 1
    std::vector<Polynomial> y;
    PolyProgram base;
    Polynomial sum;
    for (int i = 1; i <= 8; ++i) {
        std::string n = "y" + std::to_string(i);
        y.push_back(V(n));
        base.bounds[n] = VarBound{0, 1, false};
        sum += y.back();
    }
    base.constraints.push_back({sum, Rel::Eq, Polynomial(1)});
    base.constraints.push_back({y[0] + y[1], Rel::Gt, Polynomial(0)});
    base.constraints.push_back({y[2] + y[3], Rel::Eq, Polynomial(0)});
    base.constraints.push_back({y[0] + y[4], Rel::Gt, Polynomial(0)});
    base.constraints.push_back({y[1] + y[5], Rel::Eq, Polynomial(0)});

    PolyProgram p1 = base;
    p1.objective_num = y[1] + y[3];
    SolutionSet s1 = solution_set(p1);
    REQUIRE(!s1.empty);
    CHECK(s1.alpha_star == 0);
    CHECK(s1.beta_star == 0);

    PolyProgram p2 = base;
    p2.constraints.push_back({y[1] + y[3], Rel::Eq, Polynomial(0)});
    p2.objective_num = y[0] + y[2];
    SolutionSet s2 = solution_set(p2);
    REQUIRE(!s2.empty);
    CHECK(s2.alpha_star == Rational(1, 1000));
    CHECK(s2.beta_star == 1);
}

TEST_CASE("strict inequalities use the epsilon") {
    PolyProgram p;
    p.objective_num = V("x");
    p.constraints = {{V("x"), Rel::Gt, Polynomial(0)}};
    bound01(p, {"x"});
    SolutionSet s = solution_set(p);
    CHECK(s.alpha_star == Rational(1, 1000));
    p.epsilon = Rational(1, 100);
    CHECK(solution_set(p).alpha_star == Rational(1, 100));
}

TEST_CASE("fractional suite") {
    Polynomial x = V("x"), y = V("y");

    PolyProgram p;
    p.objective_den = x;
    bound01(p, {"x", "y"});

    SUBCASE("min y/x is 0") {
        p.objective_num = y;
        p.direction = Direction::Min;
        SolveOutcome o = solve_fractional(p);
        REQUIRE(o.status == SolveStatus::Optimal);
        CHECK(o.value == 0);
    }
    SUBCASE("max y/x is unbounded") {
        p.objective_num = y;
        p.direction = Direction::Max;
        CHECK(solve_fractional(p).status == SolveStatus::Unbounded);
    }
    SUBCASE("min y/x with x = 0 is infeasible") {
        p.objective_num = y;
        p.constraints = {{x, Rel::Eq, Polynomial(0)}};
        SolveOutcome o = solve_fractional(p);
        CHECK(o.status == SolveStatus::Infeasible);
        CHECK(o.denominator_forced_zero);
    }
    SUBCASE("min xy/x is 0") {
        p.objective_num = x * y;
        SolveOutcome o = solve_fractional(p);
        REQUIRE(o.status == SolveStatus::Optimal);
        CHECK(o.value == 0);
    }
    SUBCASE("max xy/x is 1") {
        p.objective_num = x * y;
        p.direction = Direction::Max;
        SolveOutcome o = solve_fractional(p);
        REQUIRE(o.status == SolveStatus::Optimal);
        CHECK(o.value == 1);
    }
    SUBCASE("min xy/x with x = 0 is infeasible") {
        p.objective_num = x * y;
        p.constraints = {{x, Rel::Eq, Polynomial(0)}};
        SolveOutcome o = solve_fractional(p);
        CHECK(o.status == SolveStatus::Infeasible);
        CHECK(o.denominator_forced_zero);
    }
}

TEST_CASE("bilinear box extremes") {
    Polynomial x = V("x"), y = V("y");
    PolyProgram p;
    p.objective_num = x * y;
    bound01(p, {"x", "y"});
    SolutionSet s = solution_set(p);
    CHECK(s.alpha_star == 0);
    CHECK(s.beta_star == 1);
}

TEST_CASE("univariate quadratic minimum") {
    Polynomial x = V("x");
    PolyProgram p;
    p.objective_num = x * x - x + Polynomial(Rational(1, 4));
    bound01(p, {"x"});
    SolveOutcome o = solve(p);
    REQUIRE(o.status == SolveStatus::Optimal);
    CHECK(to_double(o.value) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(o.value >= 0);
}

TEST_CASE("membership and infeasibility") {
    Polynomial x = V("x"), y = V("y");
    PolyProgram p;
    p.objective_num = x * y;
    bound01(p, {"x", "y"});
    CHECK(membership(p, 1));
    CHECK(membership(p, Rational(1, 2)));
    CHECK(!membership(p, Rational(3, 2)));

    p.constraints = {{x, Rel::Eq, Polynomial(2)}};
    CHECK(!feasible(p));
    CHECK(solution_set(p).empty);
}

TEST_CASE("direction handling") {
    Polynomial x = V("x");
    PolyProgram p;
    p.objective_num = x;
    p.direction = Direction::Max;
    bound01(p, {"x"});
    SolveOutcome o = solve_any(p);
    REQUIRE(o.status == SolveStatus::Optimal);
    CHECK(o.value == 1);
}

TEST_CASE("grid oracle cross-check") {
    Polynomial x = V("x"), y = V("y"), z = V("z");
    std::vector<PolyProgram> programs;

    PolyProgram p1;
    p1.objective_num = z + x * y - x * z;
    p1.constraints = {{x, Rel::Eq, Polynomial(1)}, {y, Rel::Eq, Polynomial(1)}};
    bound01(p1, {"x", "y", "z"});
    programs.push_back(p1);

    PolyProgram p2;
    p2.objective_num = x * y;
    bound01(p2, {"x", "y"});
    programs.push_back(p2);

    PolyProgram p3;
    p3.objective_num = x - x * y;
    p3.constraints = {{z + x * y - x * z, Rel::Eq, Polynomial(0)}};
    bound01(p3, {"x", "y", "z"});
    programs.push_back(p3);

    for (const auto& p : programs) {
        SolutionSet s = solution_set(p);
        GridResult g = grid_oracle(p, 200);
        REQUIRE(!s.empty);
        REQUIRE(!g.empty);
        double width = to_double(s.beta_star) - to_double(s.alpha_star);
        double tol = 2 * width / 200 + 1e-6;
        CHECK(std::abs(to_double(s.alpha_star) - g.min_value) <= tol);
        CHECK(std::abs(to_double(s.beta_star) - g.max_value) <= tol);
    }
}

TEST_CASE("program dump layout") {
    Polynomial x = V("x"), y = V("y");
    PolyProgram p;
    p.objective_num = y;
    p.constraints = {{x * y, Rel::Eq, Polynomial(1)}};
    bound01(p, {"x", "y"}, true);
    std::string d = dump_program(p);
    CHECK(d.find("Minimize") != std::string::npos);
    CHECK(d.find("subject to") != std::string::npos);
    CHECK(d.find("{0, 1}") != std::string::npos);
}
