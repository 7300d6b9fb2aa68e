#include "doctest.h"
#include "hierarchia/scattering.hpp"

#include <cmath>

using namespace hierarchia;

namespace {
const cplx I(0.0, 1.0);

std::vector<cplx> first_quadrant_samples() {
    std::vector<cplx> out;
    for (double re : {0.0, 0.3, 1.0, 2.5})
        for (double im : {1.2, 1.7, 2.5, 4.0, 7.0}) out.emplace_back(re, im);
    return out;
}
}  // namespace

TEST_CASE("spectral point invariants") {
    for (double re : {0.0, 0.1, 0.9, 1.0, 3.0})
        for (double im : {0.0, 1e-3, 0.5, 2.0, 10.0}) {
            if (re == 1.0 && im == 0.0) continue;
            auto p = SpectralPoint::nzbc(cplx(re, im));
            CHECK(std::abs(p.lambda * p.lambda - p.z * p.z - 1.0) < 1e-12 * std::max(1.0, std::norm(p.lambda)));
            CHECK(std::abs(p.zeta - (p.lambda + p.z)) < 1e-14);
            CHECK(std::abs(1.0 / p.zeta - (p.lambda - p.z)) < 1e-12 * std::max(1.0, std::abs(p.lambda)));
            CHECK(p.z.real() >= 0.0);
            CHECK(p.z.imag() >= 0.0);
        }
    auto z = SpectralPoint::zero_bc(cplx(0.2, 3.0));
    CHECK(z.z == z.lambda);
}

TEST_CASE("dark soliton profiles") {
    Potential one = dark_soliton(1.0, 1.0);
    Potential th = dark_soliton(-1.0, 1.0);
    for (double x = -10; x <= 10; x += 0.37) {
        CHECK(std::abs(one(x) - 1.0) < 1e-15);
        CHECK(std::abs(th(x) - std::tanh(x)) < 1e-14);
    }
    for (double a : {0.0, 0.4, 1.9, 3.0})
        for (double b : {0.2, 1.1, 2.8, 5.5}) {
            cplx qm = std::polar(1.0, a), qp = std::polar(1.0, b);
            Potential d = dark_soliton(qm, qp);
            cplx zp = dark_zeta_plus(qm, qp);
            CHECK(std::abs(zp * zp - qp / qm) < 1e-14);
            CHECK(zp.imag() >= 0.0);
            if (zp.imag() < 0.35) continue;
            CHECK(std::abs(d(-40) - qm) < 1e-12);
            CHECK(std::abs(d(40) - qp) < 1e-12);
            CHECK(std::abs(d.limit_minus() - qm) < 1e-14);
            CHECK(std::abs(d.limit_plus() - qp) < 1e-14);
        }
    CHECK_THROWS_AS(dark_soliton(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("potential derivatives agree with finite differences") {
    Potential q = Potential::sech(cplx(0.7, 0.2), 0.6, 1.3, 0.4) + Potential::gaussian(0.5, -0.3, 0.8, -1.0) +
                  dark_soliton(std::polar(1.0, 0.2), std::polar(1.0, 2.0));
    double h = 1e-3;
    for (double x : {-2.3, -0.1, 0.8, 3.0}) {
        auto d = q.derivs(x, 7);
        for (int k = 0; k < 7; ++k) {
            auto p = q.derivs(x + h, 7), m = q.derivs(x - h, 7);
            auto p2 = q.derivs(x + 2 * h, 7), m2 = q.derivs(x - 2 * h, 7);
            cplx fd = (8.0 * (p[k] - m[k]) - (p2[k] - m2[k])) / (12.0 * h);
            CHECK(std::abs(fd - d[k + 1]) < 1e-7 * (1.0 + std::abs(d[k + 1])));
        }
    }
}

TEST_CASE("jost reference limits and residual") {
    cplx qm = std::polar(1.0, 0.3), qp = std::polar(1.0, 2.1);
    Potential d = dark_soliton(qm, qp);
    for (cplx lam : {cplx(0.4, 1.3), cplx(0.0, 2.0), cplx(1.5, 1.1)}) {
        auto p = SpectralPoint::nzbc(lam);
        Vec2 far = jost_reference(-60.0, p, qm, qp, JostColumn::Minus1);
        CHECK(std::abs(far[0] - qm) < 1e-12);
        CHECK(std::abs(far[1] - I * (p.lambda - p.z)) < 1e-12);
        Vec2 farp = jost_reference(60.0, p, qm, qp, JostColumn::Plus2);
        CHECK(std::abs(farp[0] - I * (p.z - p.lambda)) < 1e-12);
        CHECK(std::abs(farp[1] - std::conj(qp)) < 1e-12);
        std::vector<double> xs;
        for (double x = -6; x <= 6; x += 0.25) xs.push_back(x);
        for (auto c : {JostColumn::Minus1, JostColumn::Minus2, JostColumn::Plus1, JostColumn::Plus2})
            CHECK(jost_fd_residual(d, p, c, [&](double x) { return jost_reference(x, p, qm, qp, c); }, xs) < 1e-9);
    }
    auto p = SpectralPoint::nzbc(cplx(0.3, 1.5));
    for (double x : {-5.0, 0.0, 3.0}) {
        Vec2 v = jost_reference(x, p, 1.0, 1.0, JostColumn::Minus1);
        CHECK(std::abs(v[0] - 1.0) < 1e-15);
        CHECK(std::abs(v[1] - I * (p.lambda - p.z)) < 1e-15);
    }
    cplx zp = dark_zeta_plus(qm, qp);
    SpectralPoint pole;
    pole.zeta = zp;
    pole.lambda = 0.5 * (zp + 1.0 / zp);
    pole.z = 0.5 * (zp - 1.0 / zp);
    CHECK_THROWS_AS(jost_reference(0.0, pole, qm, qp, JostColumn::Minus1), PoleAtZeta);
}

TEST_CASE("integrated jost columns match the closed form") {
    cplx qm = std::polar(1.0, -0.5), qp = std::polar(1.0, 1.9);
    Potential d = dark_soliton(qm, qp);
    std::vector<double> grid;
    for (double x = -40; x <= 40; x += 0.5) grid.push_back(x);
    for (cplx lam : {cplx(0.0, 1.5), cplx(0.8, 2.0), cplx(2.0, 3.0)}) {
        auto p = SpectralPoint::nzbc(lam);
        for (auto c : {JostColumn::Minus1, JostColumn::Plus2}) {
            ScatterState st = integrate_jost(d, p, c, grid);
            double sup = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                Vec2 r = jost_reference(grid[i], p, qm, qp, c);
                sup = std::max({sup, std::abs(r[0] - st.psi[i][0]), std::abs(r[1] - st.psi[i][1])});
            }
            CHECK(sup < 1e-8);
            CHECK(st.residual < 1e-9);
        }
    }
}

TEST_CASE("constant and zero backgrounds") {
    Potential c1 = Potential::constant(std::polar(1.0, 0.7));
    std::vector<double> grid{-40, -10, 0, 5, 40};
    auto p = SpectralPoint::nzbc(cplx(0.2, 1.4));
    ScatterState st = integrate_jost(c1, p, JostColumn::Minus1, grid);
    Vec2 e = jost_boundary(c1, p, JostColumn::Minus1);
    for (const auto& v : st.psi) {
        CHECK(std::abs(v[0] - e[0]) < 1e-9);
        CHECK(std::abs(v[1] - e[1]) < 1e-9);
    }
    for (cplx lam : first_quadrant_samples()) {
        auto tr = transmission(Potential::constant(1.0), SpectralPoint::nzbc(lam));
        CHECK(std::abs(tr.a - 1.0) < 1e-10);
    }

    Potential s = Potential::sech(1.0);
    std::vector<double> g2;
    for (double x = -40; x <= 40; x += 1.0) g2.push_back(x);
    for (auto c : {JostColumn::Minus1, JostColumn::Plus2}) {
        ScatterState zs = integrate_jost(s, SpectralPoint::zero_bc(cplx(0.5, 2.0)), c, g2);
        for (const auto& v : zs.psi) CHECK(std::max(std::abs(v[0]), std::abs(v[1])) < 10.0);
        CHECK(zs.residual < 1e-9);
    }
}

TEST_CASE("transmission of dark solitons") {
    for (auto [a, b] : {std::pair{-1.0, 1.0}, std::pair{0.3, 2.1}, std::pair{2.0, -0.4}}) {
        cplx qm = std::polar(1.0, a), qp = std::polar(1.0, b);
        Potential d = dark_soliton(qm, qp);
        int n = 0;
        for (cplx lam : first_quadrant_samples()) {
            auto p = SpectralPoint::nzbc(lam);
            if (p.z.imag() < 1.0) continue;
            ++n;
            auto tr = transmission(d, p);
            cplx ex = dark_transmission(qm, qp, p);
            CHECK(std::abs(tr.a - ex) < 1e-8 * std::abs(ex));
            CHECK(tr.spread < 1e-8);
            CHECK(tr.residual < 1e-9);
        }
        CHECK(n >= 15);
    }
}

TEST_CASE("transmission errors") {
    CHECK_THROWS_AS(transmission(dark_soliton(-1.0, 1.0), SpectralPoint::nzbc(1.0)), ZeroDenominator);
    JostOptions small;
    small.box_left = -10;
    small.box_right = 10;
    CHECK_THROWS_AS(transmission(Potential::sech(1.0), SpectralPoint::zero_bc(cplx(0, 2)), small), BoundaryNotSettled);
    JostOptions tight;
    tight.max_steps = 10;
    CHECK_THROWS_AS(transmission(Potential::sech(1.0), SpectralPoint::zero_bc(cplx(0, 2)), tight), NonConvergence);
}

TEST_CASE("small potentials scatter at second order") {
    for (double t : {2.0, 3.0, 5.0}) {
        auto p = SpectralPoint::zero_bc(cplx(0.0, t));
        double d1 = std::abs(transmission(Potential::sech(1e-3), p).a - 1.0);
        double d2 = std::abs(transmission(Potential::sech(2e-3), p).a - 1.0);
        CHECK(d1 < 1e-6);
        CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.02));
        // Leading term i H0 / (2 lambda) with H0 = 2 A^2.
        CHECK(d1 == doctest::Approx(2e-6 / (2 * t)).epsilon(0.3));
    }
}

TEST_CASE("numerical hamiltonians") {
    Potential s = Potential::sech(1.0);
    CHECK(hamiltonian_numeric(hamiltonian(Hierarchy::NLS, 0), s).value.real() == doctest::Approx(2.0).epsilon(1e-12));
    for (Potential q : {s, Potential::gaussian(0.8), Potential::sech(1.3, 0.0, 0.7)})
        CHECK(std::abs(hamiltonian_numeric(hamiltonian(Hierarchy::NLS, 1), q).value) < 1e-12);
    Potential th = dark_soliton(-1.0, 1.0);
    CHECK(hamiltonian_numeric(hamiltonian(Hierarchy::GP, 2), th).value.real() ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(hamiltonian_numeric(hamiltonian(Hierarchy::GP, 0), th).value.real() == doctest::Approx(-2.0).epsilon(1e-12));
    // chirp: H1 = -2 kappa A^2
    CHECK(hamiltonian_numeric(hamiltonian(Hierarchy::NLS, 1), Potential::sech(1.0, 0.5)).value.real() ==
          doctest::Approx(-1.0).epsilon(1e-12));

    std::vector<std::pair<Hierarchy, Potential>> cases = {
        {Hierarchy::NLS, Potential::sech(cplx(0.6, 0.8), 0.5)},
        {Hierarchy::NLS, Potential::gaussian(1.1, -0.7, 1.2)},
        {Hierarchy::GP, dark_soliton(std::polar(1.0, 0.4), std::polar(1.0, 2.3))},
        {Hierarchy::GP, th + Potential::sech(0.2, 0.3, 1.0, 1.5)}};
    for (auto& [h, q] : cases)
        for (int n = 0; n <= 5; ++n) {
            cplx v = hamiltonian_numeric(hamiltonian(h, n), q).value;
            CHECK(std::abs(v.imag()) <= 1e-8 * std::max(std::abs(v), 1e-6));
        }
}

TEST_CASE("asymptotic expansion of log a") {
    Potential chirped = Potential::sech(1.0, 0.5);
    auto r3 = expansion_check(Potential::sech(1.0), 3, 2.0);
    CHECK(r3.exponent >= -5.3);
    CHECK(r3.exponent <= -4.7);
    auto rm = expansion_check(chirped, -1, 2.0);
    CHECK(rm.exponent == doctest::Approx(-1.0).epsilon(0.1));
    double prev = rm.exponent;
    for (int N = 0; N <= 4; ++N) {
        auto r = expansion_check(chirped, N, 2.0);
        CHECK(std::abs(r.exponent - r.expected) <= 0.3);
        CHECK(prev - r.exponent == doctest::Approx(1.0).epsilon(0.3));
        prev = r.exponent;
    }
    cplx qm = std::polar(1.0, 0.3), qp = std::polar(1.0, 2.1);
    Potential d = dark_soliton(qm, qp);
    auto rd = expansion_check(d, 2, 2.0);
    for (const auto& s : rd.samples) {
        cplx la = std::log(dark_transmission(qm, qp, SpectralPoint::nzbc(cplx(0.0, s.t))));
        CHECK(std::abs(s.log_a - la) < 1e-8);
    }
    CHECK(std::abs(rd.exponent - rd.expected) <= 0.3);
}
