#include <doctest.h>

#include "helpers.hpp"
#include "hierarchia/hierarchy.hpp"
#include "hierarchia/projections.hpp"

using namespace hierarchia;
using namespace th;

TEST_CASE("pi examples") {
    DiffPoly s3 = sigma_nls(3).poly;
    CHECK(pi(s3, 0) == q() * q() * qb() * qb());
    CHECK(pi(s3, 1) == -(q() * qb(2)));
    CHECK(pi(q() * qb(), 1).is_zero());
    CHECK(pi(c(5), 0) == c(5));
}

TEST_CASE("pi_tilde examples") {
    CHECK(pi_tilde(q(1) * qb(1) * q(), 2) == q(1) * qb(1) * q());
    CHECK(pi_tilde(q(1) * q(1) * qb(), 2).is_zero());
    CHECK(pi_tilde(-(q() * qb(2)), 1) == -(q() * qb(2)));
    CHECK_THROWS(pi_tilde(q(), 3));
}

TEST_CASE("projection completeness, idempotence, orthogonality") {
    std::mt19937 g(3);
    for (int t = 0; t < 30; ++t) {
        DiffPoly p = random_poly(g, 5, 3, 4);
        DiffPoly sum;
        for (int k = 0; k <= 4; ++k) {
            sum += pi(p, k);
            CHECK(pi(pi(p, k), k) == pi(p, k));
            for (int j = 0; j <= 4; ++j)
                if (j != k) CHECK(pi(pi(p, k), j).is_zero());
        }
        CHECK(sum == p);
    }
}

TEST_CASE("projection recurrences along the NLS densities") {
    DiffPoly qx = q(1);
    for (int n = 1; n <= 13; ++n) {
        // pi-0
        DiffPoly r0;
        for (int k = 0; k <= n; ++k) r0 += pi(sigma_nls(k).poly, 0) * pi(sigma_nls(n - k).poly, 0);
        CHECK(pi(sigma_nls(n + 1).poly, 0) == r0);
        // pi-1
        DiffPoly p0 = pi(sigma_nls(n).poly, 0), p1 = pi(sigma_nls(n).poly, 1);
        DiffPoly r1 = d_x(p0) - divide_by_q(qx * p0) + pi(d_x(p1), 1);
        for (int k = 0; k <= n; ++k) r1 += c(2) * pi(sigma_nls(k).poly, 1) * pi(sigma_nls(n - k).poly, 0);
        CHECK(pi(sigma_nls(n + 1).poly, 1) == r1);
    }
    CHECK(pi(sigma_nls(1).poly, 0) == -(q() * qb()));
}

TEST_CASE("pi-1-delta decomposition and pi2 vs pi_tilde2") {
    for (int n = 1; n <= 14; ++n) {
        DiffPoly s = sigma_nls(n).poly;
        DiffPoly lhs = pi(var_derivative(s, Var::QBAR), 1);
        DiffPoly rhs = pi(var_derivative(pi(s, 1), Var::QBAR), 1) + pi(var_derivative(pi_tilde(s, 2), Var::QBAR), 1);
        CHECK(lhs == rhs);
        CHECK(pi(var_derivative(pi(s, 2), Var::QBAR), 1) == pi(var_derivative(pi_tilde(s, 2), Var::QBAR), 1));
    }
}

TEST_CASE("in_nls_class examples") {
    ClassSpec spec{2, 2, Generators::QDerivs};
    CHECK(in_nls_class(q(1) * qb(1) * q() * qb(), spec));
    CHECK_FALSE(in_nls_class(q() * qb(2), spec));
    CHECK_FALSE(in_nls_class(q(1) * qb(3), spec));
}

TEST_CASE("certificates with the rho generator") {
    DiffPoly rho = q() * qb() - one();
    ClassSpec spec{2, 0, Generators::QDerivsAndRho};
    Witness w{GaussianRational(1), {Atom{AtomKind::RHO, 0, 2}}};
    CHECK(check_certificate(CertifiedRemainder{rho * rho, {w}}, spec));
    CHECK_THROWS_AS(check_certificate(CertifiedRemainder{q() * q() * qb() * qb(), {w}}, spec), CertificateMismatch);
    Witness w2{GaussianRational(1), {Atom{AtomKind::Q, 1, 1}, Atom{AtomKind::RHO, 0, 1}}};
    CHECK(check_certificate(CertifiedRemainder{q(1) * q() * qb() - q(1), {w2}}, ClassSpec{2, 1, Generators::QDerivsAndRho}));
    // Under the q-derivative generator set the same witness does not qualify.
    CHECK_FALSE(check_certificate(CertifiedRemainder{q(1) * q() * qb() - q(1), {w2}}, ClassSpec{2, 1, Generators::QDerivs}));
}

TEST_CASE("certify finds rho witnesses that monomials hide") {
    DiffPoly rho = q() * qb() - one();
    ClassSpec spec{2, 2, Generators::QDerivsAndRho};
    auto cert = certify(rho * rho * q(), spec);
    REQUIRE(cert.has_value());
    CHECK(check_certificate(*cert, spec));
    auto c2 = certify(q(1) * rho * qb(1) + q(2) * rho * rho, spec);
    REQUIRE(c2.has_value());
    CHECK(check_certificate(*c2, spec));
    CHECK_FALSE(certify(rho * q(), spec).has_value());
    CHECK_FALSE(certify(q() * qb() * q(2), spec).has_value());
}
