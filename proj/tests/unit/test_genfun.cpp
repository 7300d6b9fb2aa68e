#include <doctest.h>

#include "hierarchia/genfun.hpp"
#include "hierarchia/inject.hpp"

#include <random>

using namespace hierarchia;

TEST_CASE("sqrt examples") {
    BiSeries one = BiSeries::constant(6, 6, Rational(1));
    BiSeries y = BiSeries::y(6, 6);
    BiSeries s = series_sqrt(one + 4 * y);
    CHECK(s.get(0, 0) == 1);
    CHECK(s.get(0, 1) == 2);
    CHECK(s.get(0, 2) == -2);
    CHECK(s.get(0, 3) == 4);
    for (int k = 0; k <= 6; ++k) CHECK(s.get(0, k) == binom(frac(1, 2), k) * pow_int(Rational(4), k));
    CHECK(series_sqrt(one).get(0, 0) == 1);
    CHECK_THROWS_AS(series_sqrt(2 * one), NonUnitConstant);
    CHECK_THROWS_AS(series_sqrt(one + y.shift_y(-1)), NonUnitConstant);
}

TEST_CASE("sqrt and inverse on random unit series") {
    std::mt19937 g(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 10; ++t) {
        BiSeries f = BiSeries::from_function(5, 5, [&](int s, int j) -> Rational {
            return (s == 0 && j == 0) ? Rational(1) : frac(d(g), 1 + (s + j) % 3);
        });
        BiSeries r = series_sqrt(f);
        BiSeries i = series_inv(f);
        BiSeries rr = r * r, fi = f * i;
        for (int s = 0; s <= 5; ++s)
            for (int j = 0; j <= 5; ++j) {
                CHECK(rr.get(s, j) == f.get(s, j));
                CHECK(fi.get(s, j) == ((s == 0 && j == 0) ? 1 : 0));
            }
    }
}

TEST_CASE("coefficient extraction on monomial bases") {
    BiSeries one = BiSeries::constant(8, 8, Rational(1));
    BiSeries x = BiSeries::x(8, 8), y = BiSeries::y(8, 8);
    BiSeries p = (one + x).pow(Rational(7)) * (one + y).pow(frac(1, 2));
    for (int s = 0; s <= 8; ++s)
        for (int j = 0; j <= 8; ++j) CHECK(p.get(s, j) == binom(Rational(7), s) * binom(frac(1, 2), j));
    BiSeries l = y.shift_y(-2);
    CHECK(l.get(0, -1) == 1);
    CHECK(l.has_laurent_part());
    CHECK_THROWS(l.shift_y(-2));
}

TEST_CASE("catalan generating function to high order") {
    auto r = verify_identity("catalan-gf", 64, 0);
    CHECK(r.pass);
    BiSeries one = BiSeries::constant(34, 0, Rational(1));
    BiSeries c = frac(1, 2) * (one - series_sqrt(one - 4 * BiSeries::x(34, 0))).shift_x(-1);
    for (int n = 0; n <= 32; ++n) CHECK(c.get(n, 0) == catalan(n));
}

TEST_CASE("registry verifies at moderate order") {
    CHECK(gf_registry().size() >= 14);
    for (const auto& id : gf_ids()) {
        CAPTURE(id);
        CHECK(verify_identity(id, 10, 10).pass);
    }
    CHECK_THROWS(verify_identity("no-such-identity"));
}

TEST_CASE("perturbed right-hand side is caught at its index") {
    inject::Scope s("genfun/D-lemma-pair/3/2", Rational(1));
    auto r = verify_identity("D-lemma-pair", 8, 8);
    CHECK_FALSE(r.pass);
    CHECK(r.mismatch["s"] == 3);
    CHECK(r.mismatch["j"] == 2);
}

TEST_CASE("binomial sums") {
    for (const auto& b : binomial_sum_registry()) {
        CAPTURE(b.id);
        CHECK(binomial_sum_check(b.id).pass);
    }
    inject::Scope s("binomial/DD-sum/4/1", Rational(1));
    CHECK_FALSE(binomial_sum_check("DD-sum").pass);
}
