#include <doctest.h>

#include "helpers.hpp"

using namespace hierarchia;
using namespace th;

TEST_CASE("d_x examples") {
    CHECK(d_x(q() * qb()) == q(1) * qb() + q() * qb(1));
    CHECK(d_x(one()).is_zero());
    CHECK(d_x(-(q() * qb(1))) == -(q(1) * qb(1)) - q() * qb(2));
}

TEST_CASE("divide_by_q") {
    CHECK(divide_by_q(-(q() * qb())) == -qb());
    CHECK(divide_by_q(q() * q() * qb(2)) == q() * qb(2));
    CHECK_THROWS_AS(divide_by_q(qb(1)), NotDivisible);
}

TEST_CASE("variational derivative examples") {
    CHECK(var_derivative(-(q() * qb(2)), Var::QBAR) == -q(2));
    CHECK(var_derivative(q() * q() * qb() * qb(), Var::QBAR) == c(2) * q() * q() * qb());
    CHECK(var_derivative(qb() * qb(1), Var::Q).is_zero());
}

TEST_CASE("total derivatives and equivalence") {
    CHECK(is_total_derivative(q(1) * qb() + q() * qb(1)));
    CHECK_FALSE(is_total_derivative(q() * qb()));
    CHECK_FALSE(is_total_derivative(one()));
    CHECK(equivalent_mod_dx(-(q() * qb(2)) + q() * q() * qb() * qb(), q(1) * qb(1) + q() * q() * qb() * qb()));
    CHECK(equivalent_mod_dx(q() * qb(), qb() * q()));
    CHECK_FALSE(equivalent_mod_dx(q() * qb(), c(2) * q() * qb()));
}

TEST_CASE("ring axioms and derivation rules on random polynomials") {
    std::mt19937 g(11);
    for (int t = 0; t < 40; ++t) {
        DiffPoly a = random_poly(g), b = random_poly(g), e = random_poly(g);
        CHECK((a * b) * e == a * (b * e));
        CHECK(a * (b + e) == a * b + a * e);
        CHECK(a * b == b * a);
        CHECK(d_x(a * b) == d_x(a) * b + a * d_x(b));
        CHECK(var_derivative(d_x(a), Var::Q).is_zero());
        CHECK(var_derivative(d_x(a), Var::QBAR).is_zero());
        CHECK(conjugate(conjugate(a)) == a);
        CHECK(conjugate(a * b) == conjugate(a) * conjugate(b));
        DiffPoly qa = q() * a;
        CHECK(divide_by_q(qa) * q() == qa);
    }
}

TEST_CASE("serialization") {
    DiffPoly s3 = -(q() * qb(2)) + q() * q() * qb() * qb();
    CHECK(to_latex(s3) == "-q\\bar q_{xx} + q^2\\bar q^2");
    CHECK(to_latex(q(5)) == "\\partial_x^{5} q");
    CHECK(diffpoly_from_json(to_json(s3)) == s3);
    DiffPoly z = c(1, -2) * q(1) * u(3);
    CHECK(diffpoly_from_json(to_json(z)) == z);
    auto j = to_json(GaussianRational(frac(1, 2), Rational(-3)));
    CHECK(j["re"] == "1/2");
    CHECK(j["im"] == "-3");
}
