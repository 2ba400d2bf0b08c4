#include "doctest.h"

#include "ppn/polynomial.hpp"

#include <random>

using namespace ppn;

namespace {

Polynomial V(const std::string& n) { return Polynomial::variable(n); }

Polynomial random_poly(std::mt19937& rng) {
    static const char* names[] = {"x", "y", "z"};
    std::uniform_int_distribution<int> nterms(0, 4), coeff(-3, 3), deg(0, 2);
    Polynomial p;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m;
        for (const char* n : names) {
            int d = deg(rng);
            if (d > 0) m[n] = d;
        }
        p += Polynomial::term(coeff(rng), m);
    }
    return p;
}

std::map<std::string, Rational> random_01_point(std::mt19937& rng) {
    std::uniform_int_distribution<int> bit(0, 1);
    return {{"x", bit(rng)}, {"y", bit(rng)}, {"z", bit(rng)}};
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(parse_rational("0.001") == Rational(1, 1000));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(rational_to_string(Rational(-1, 2)) == "-1/2");
    CHECK(rational_to_decimal3(Rational(1)) == "1.000");
    CHECK(rational_to_decimal3(Rational(1, 1000)) == "0.001");
    CHECK(rational_to_decimal3(Rational(10, 41)) == "0.244");
    CHECK(rational_to_decimal3(Rational(2268, 15438)) == "0.147");
}

TEST_CASE("arithmetic goldens") {
    Polynomial x = V("x"), y = V("y"), z = V("z");
    CHECK((x * y).render() == "x y");
    CHECK((x * y + (x - x * y)) == x);
    CHECK((Polynomial(1) - x + x * y).render() == "1 - x + x y");
    CHECK((z + x * y - x * z).render() == "z + x y - x z");
    CHECK((Polynomial(Rational(1, 2)) * x).render() == "1/2 x");
    CHECK(Polynomial().render() == "0");
}

TEST_CASE("substitution") {
    Polynomial x = V("x"), y = V("y"), z = V("z"), w = V("w");
    Polynomial pb = z + x * y - x * z;
    CHECK(pb.substitute({{"x", Polynomial(1)}}) == y);
    Polynomial q = w - x * w - z * w + x * z * w;
    CHECK(q.substitute({{"x", Polynomial(0)}}) == w - z * w);
    // unbound variables stay
    CHECK(pb.substitute({{"q", Polynomial(0)}}) == pb);
}

TEST_CASE("idempotent reduction") {
    Polynomial x = V("x"), y = V("y");
    Polynomial p = x - x * x + x * x * y;
    CHECK(p.idempotent_reduce({"x"}) == x * y);
    CHECK(p.idempotent_reduce({}) == p);
}

TEST_CASE("structural cancellation") {
    Polynomial x = V("x"), y = V("y"), z = V("z"), w = V("w");
    CHECK(cancel_structural_factor({x * y, x}) == y);
    Polynomial num = w - x * w - z * w + x * z * w;
    CHECK(cancel_structural_factor({num, Polynomial(1) - x}) == w - z * w);
    CHECK_THROWS_AS(cancel_structural_factor({x + y, x}), NotAFactorError);
    FractionalPolynomial f{x * y, x};
    CHECK(f.render() == "(x y)/(x)");
}

TEST_CASE("evaluation") {
    Polynomial x = V("x"), y = V("y"), z = V("z");
    Polynomial pb = z + x * y - x * z;
    CHECK(pb.evaluate({{"x", Rational(1, 2)}, {"y", 1}, {"z", 0}}) == Rational(1, 2));
    CHECK_THROWS_AS(pb.evaluate({{"x", 1}}), UnboundVariableError);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(12345);
    for (int i = 0; i < 200; ++i) {
        Polynomial a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("idempotent reduction preserves 0/1 evaluation") {
    std::mt19937 rng(999);
    for (int i = 0; i < 200; ++i) {
        Polynomial p = random_poly(rng);
        auto pt = random_01_point(rng);
        CHECK(p.evaluate(pt) == p.idempotent_reduce({"x", "y", "z"}).evaluate(pt));
    }
}

TEST_CASE("cancellation inverts multiplication") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 100; ++i) {
        Polynomial p = random_poly(rng), q = random_poly(rng);
        if (q.is_zero()) continue;
        CHECK(cancel_structural_factor({p * q, q}) == p);
    }
}
