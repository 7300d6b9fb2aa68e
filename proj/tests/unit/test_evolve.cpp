#include "doctest.h"
#include "hierarchia/evolve.hpp"
#include "hierarchia/scattering.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace hierarchia;

namespace {

std::vector<Hamiltonian> range_of(Hierarchy h, int a, int b) {
    std::vector<Hamiltonian> r;
    for (int i = a; i <= b; ++i) r.push_back(hamiltonian(h, i));
    return r;
}

double max_drift(const FieldState& st, double dt, double T, const std::vector<Hamiltonian>& inv) {
    EvolveOptions o;
    o.dt = dt;
    o.steps = std::lround(T / dt);
    o.invariants = inv;
    return conservation_report(evolve_with_invariants(st, o)).max_drift;
}

}  // namespace

TEST_CASE("symbol element arithmetic") {
    SymbolElement s = SymbolElement::s(), xi = SymbolElement::xi();
    CHECK(s * s == xi * xi + SymbolElement::constant(4));
    CHECK((s + xi) * (s - xi) == SymbolElement::constant(4));
    CHECK(pow(s, 3) == (xi * xi + SymbolElement::constant(4)) * s);
    CHECK((s - s).is_zero());
}

TEST_CASE("even linear symbols diagonalize") {
    for (int m = 1; m <= 10; ++m) CHECK(symbol_check_even(m));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            SymbolPerturbation p;
            p.active = true;
            p.row = r;
            p.col = c;
            p.delta = frac(1, 7);
            CHECK_FALSE(symbol_check_even(2, p));
        }
    CHECK_THROWS_AS(symbol_check_even(0), std::invalid_argument);
}

TEST_CASE("odd linear symbols telescope") {
    for (int m = 0; m <= 10; ++m) CHECK(symbol_check_odd(m));
    for (int m = 0; m <= 10; ++m) CHECK_FALSE(symbol_check_odd(m, true));
    std::vector<Rational> l1 = odd_linear_symbol(0);
    CHECK(l1[1] == -1);
}

TEST_CASE("odd linear symbols match the symbolic flows") {
    // Linear part of i q_t = F about q = 0 with unit background constants left in.
    for (int k = 0; k <= 2; ++k) {
        StructuralForm sf = structural_form(Hierarchy::GP, 2 * k + 1);
        std::vector<Rational> expect = odd_linear_symbol(k);
        // c q_(j) has symbol c (i xi)^j; D_x = -i d_x means d_x <-> i xi.
        std::vector<GaussianRational> got(2 * k + 2);
        for (const auto& [key, c] : sf.main.terms())
            if (key.size() == 1 && key[0].var == Var::Q && key[0].power == 1) {
                GaussianRational ip = i_pow(key[0].order);
                got[key[0].order] += c * ip;
            }
        for (int j = 0; j < 2 * k + 2; ++j) CHECK(got[j] == GaussianRational(expect[j]));
    }
}

TEST_CASE("spectral evaluation matches exact derivatives") {
    const int N = 64;
    const double L = 10.0;
    const std::vector<std::pair<int, cplx>> modes = {{0, {0.3, 0.1}}, {1, {0.2, -0.4}}, {-2, {0.1, 0.05}}, {3, {-0.07, 0.02}}};
    auto exact = [&](double x, int kmax) {
        std::vector<cplx> d(kmax + 1, 0.0);
        for (auto [j, a] : modes) {
            double k = M_PI * j / L;
            cplx e = a * std::exp(cplx(0, k * x)), ik(0, k), f = 1.0;
            for (int m = 0; m <= kmax; ++m, f *= ik) d[m] += e * f;
        }
        return d;
    };
    FieldState st;
    st.hierarchy = Hierarchy::NLS;
    st.N = N;
    st.L = L;
    st.p.resize(N);
    auto x = st.grid();
    for (int j = 0; j < N; ++j) st.p[j] = exact(x[j], 0)[0];
    std::vector<std::pair<Hierarchy, int>> flows = {{Hierarchy::NLS, 2}, {Hierarchy::NLS, 3}, {Hierarchy::NLS, 4},
                                                    {Hierarchy::NLS, 5}, {Hierarchy::GP, 2},  {Hierarchy::GP, 3},
                                                    {Hierarchy::GP, 4}};
    for (auto [h, n] : flows) {
        DiffPoly f = flow_rhs(h, n);
        CompiledPoly cp(f);
        auto grid = evaluate_on_grid(f, st);
        double err = 0.0;
        for (int j = 0; j < N; ++j) err = std::max(err, std::abs(grid[j] - cp.eval(exact(x[j], cp.max_order()))));
        CHECK(err < 1e-10);
    }
    FieldState ku = st;
    ku.hierarchy = Hierarchy::KDV;
    for (int j = 0; j < N; ++j) ku.p[j] = std::cos(M_PI * x[j] / L) + 0.3 * std::sin(2 * M_PI * x[j] / L);
    DiffPoly k5 = flow_rhs(Hierarchy::KDV, 5);
    auto g5 = evaluate_on_grid(k5, ku);
    CompiledPoly c5(k5);
    for (int j = 0; j < N; j += 17) {
        double w = M_PI / L;
        std::vector<cplx> d(c5.max_order() + 1);
        for (int m = 0; m <= c5.max_order(); ++m)
            d[m] = std::pow(w, m) * std::cos(w * x[j] + m * M_PI / 2) +
                   0.3 * std::pow(2 * w, m) * std::sin(2 * w * x[j] + m * M_PI / 2);
        CHECK(std::abs(g5[j] - c5.eval(d)) < 1e-10);
    }
}

TEST_CASE("plane wave rotates in phase") {
    FieldState st = make_state(Hierarchy::NLS, 2, 64, 10.0, Potential::constant(1.0));
    FieldState f = evolve_flow(st, 2, 1e-3, 1000);
    double err = 0.0;
    for (const auto& z : f.p) err = std::max(err, std::abs(z - std::exp(cplx(0, -2.0))));
    CHECK(err < 1e-10);
    CHECK(f.t == doctest::Approx(1.0));
}

TEST_CASE("black soliton is stationary") {
    Potential bg = dark_soliton(-1.0, 1.0);
    FieldState st = make_state(Hierarchy::GP, 2, 512, 32.0, bg, bg);
    FieldState f = evolve_flow(st, 2, 1e-2, 100);
    double err = 0.0;
    for (const auto& z : f.p) err = std::max(err, std::abs(z));
    CHECK(err < 1e-10);
}

TEST_CASE("kdv translation flow") {
    CHECK(flow_rhs(Hierarchy::KDV, 3) == DiffPoly::var(Var::U, 1));
    FieldState st = make_state(Hierarchy::KDV, 3, 512, 32.0, Potential::sech(1.0));
    FieldState f = evolve_flow(st, 3, 1e-2, 100);
    auto x = st.grid();
    double e = 0.0;
    for (int j = 0; j < st.N; ++j) e += std::norm(f.p[j] - 1.0 / std::cosh(x[j] + 1.0));
    CHECK(std::sqrt(e * 2 * st.L / st.N) < 1e-8);
}

TEST_CASE("conservation along flows") {
    Potential bg = dark_soliton(-1.0, 1.0);
    CHECK(max_drift(make_state(Hierarchy::NLS, 2, 512, 32.0, Potential::sech(1.0)), 1e-3, 0.1,
                    range_of(Hierarchy::NLS, 0, 2)) < 1e-8);
    CHECK(max_drift(make_state(Hierarchy::NLS, 3, 512, 32.0, Potential::sech(1.0)), 1e-3, 0.1,
                    range_of(Hierarchy::NLS, 0, 4)) < 1e-6);
    CHECK(max_drift(make_state(Hierarchy::NLS, 4, 512, 32.0, Potential::sech(1.0, 0.3)), 5e-4, 0.1,
                    range_of(Hierarchy::NLS, 0, 4)) < 1e-6);
    CHECK(max_drift(make_state(Hierarchy::GP, 2, 512, 32.0, bg + Potential::sech(0.3), bg), 1e-2, 0.1,
                    range_of(Hierarchy::GP, 0, 2)) < 1e-6);
    CHECK(max_drift(make_state(Hierarchy::KDV, 5, 512, 32.0, Potential::sech(1.0)), 1e-3, 0.1,
                    range_of(Hierarchy::KDV, 1, 4)) < 1e-8);
}

TEST_CASE("drift shrinks at fourth order") {
    // Ratios approach 16 from either side; bound the observed order from below.
    Potential bg = dark_soliton(-1.0, 1.0);
    auto nls = make_state(Hierarchy::NLS, 2, 512, 32.0, Potential::sech(1.0));
    double r = max_drift(nls, 0.02, 0.1, range_of(Hierarchy::NLS, 0, 4)) /
               max_drift(nls, 0.01, 0.1, range_of(Hierarchy::NLS, 0, 4));
    CHECK(std::log2(r) > 3.7);
    auto gp = make_state(Hierarchy::GP, 2, 512, 32.0, bg + Potential::sech(0.3), bg);
    double rg = max_drift(gp, 0.02, 0.1, range_of(Hierarchy::GP, 0, 2)) /
                max_drift(gp, 0.01, 0.1, range_of(Hierarchy::GP, 0, 2));
    CHECK(std::log2(rg) > 3.7);
}

TEST_CASE("gp densities vanish at the box edges") {
    Potential bg = dark_soliton(std::polar(1.0, 0.2), std::polar(1.0, 2.4));
    FieldState st = make_state(Hierarchy::GP, 2, 512, 32.0, bg + Potential::sech(0.2, 0.4), bg);
    for (int n = 0; n <= 4; ++n) {
        auto v = evaluate_on_grid(hamiltonian(Hierarchy::GP, n).density, st);
        CHECK(std::abs(v.front()) < 1e-10);
        CHECK(std::abs(v.back()) < 1e-10);
    }
}

TEST_CASE("evolve errors") {
    CHECK_THROWS_AS(make_state(Hierarchy::NLS, 2, 500, 10.0, Potential::sech(1.0)), std::invalid_argument);
    FieldState st = make_state(Hierarchy::NLS, 2, 128, 16.0, Potential::sech(1.0));
    EvolveOptions o;
    o.steps = 32;
    o.blowup = 0.5;
    CHECK_THROWS_AS(evolve_with_invariants(st, o), Blowup);
    o.blowup = 1e6;
    o.method = "euler";
    CHECK_THROWS_AS(evolve_with_invariants(st, o), std::invalid_argument);
}

TEST_CASE("snapshot round trip") {
    FieldState st = make_state(Hierarchy::NLS, 2, 64, 8.0, Potential::sech(cplx(1.0, 0.5)));
    st.t = 0.25;
    auto path = std::filesystem::temp_directory_path() / "hierarchia_snapshot_test.bin";
    write_snapshot(path.string(), st);
    CHECK(std::filesystem::file_size(path) == 32 + 64 * 8);
    Snapshot s = read_snapshot(path.string());
    CHECK(s.N == 64);
    CHECK(s.L == 8.0);
    CHECK(s.t == 0.25);
    for (int j = 0; j < 64; ++j) CHECK(std::abs(std::complex<double>(s.data[j]) - st.p[j]) < 1e-6);
    std::filesystem::remove(path);
}
