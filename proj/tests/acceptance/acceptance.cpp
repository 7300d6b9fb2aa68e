#include "hierarchia/evolve.hpp"
#include "hierarchia/genfun.hpp"
#include "hierarchia/hierarchy.hpp"
#include "hierarchia/inject.hpp"
#include "hierarchia/scattering.hpp"
#include "hierarchia/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace hierarchia;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> extra;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string failures(const std::vector<CheckResult>& rs) {
    std::string s;
    for (const auto& r : rs)
        if (!r.pass) s += (s.empty() ? "" : ", ") + r.id;
    return s;
}

Outcome suite_outcome(const std::string& suite, const SuiteOptions& o = {}) {
    auto rs = run_suite(suite, o);
    SuiteSummary s = summarize(rs);
    Outcome out;
    out.pass = s.failed == 0 && s.passed > 0;
    out.detail = std::to_string(s.passed) + " checks passed, " + std::to_string(s.failed) + " failed";
    if (s.failed) out.detail += " (" + failures(rs) + ")";
    return out;
}

Outcome c1() {
    SuiteOptions printed;
    printed.as_printed = true;
    Outcome o = suite_outcome("hamiltonians", printed);
    Outcome corrected = suite_outcome("hamiltonians");
    o.extra.push_back("with the GP H_4 sign of q_x qbar_x corrected to -6: " + corrected.detail);
    return o;
}

Outcome c4() {
    Outcome o = suite_outcome("genfun");
    std::size_t n = gf_ids().size();
    o.pass = o.pass && n >= 14;
    o.detail += "; " + std::to_string(n) + " generating-function identities at (24, 24), Catalan series to n = 32";
    return o;
}

std::vector<cplx> first_quadrant() {
    std::vector<cplx> out;
    for (double re : {0.0, 0.3, 1.0, 2.5, 4.0})
        for (double im : {1.2, 1.7, 2.5, 4.0, 7.0}) out.emplace_back(re, im);
    return out;
}

Outcome c8() {
    Outcome o;
    o.pass = true;
    double worst = 0.0;
    std::size_t fewest = 1000;
    for (auto [a, b] : {std::pair{M_PI, 0.0}, std::pair{0.3, 2.1}, std::pair{2.0, -0.4}}) {
        cplx qm = std::polar(1.0, a), qp = std::polar(1.0, b);
        Potential d = dark_soliton(qm, qp);
        std::size_t n = 0;
        for (cplx lam : first_quadrant()) {
            auto p = SpectralPoint::nzbc(lam);
            if (p.z.imag() < 1.0) continue;
            ++n;
            cplx ex = dark_transmission(qm, qp, p);
            double rel = std::abs(transmission(d, p).a - ex) / std::abs(ex);
            worst = std::max(worst, rel);
        }
        fewest = std::min(fewest, n);
    }
    double flat = 0.0;
    for (double phase : {0.0, 0.7})
        for (cplx lam : first_quadrant())
            flat = std::max(flat, std::abs(transmission(Potential::constant(std::polar(1.0, phase)), SpectralPoint::nzbc(lam)).a - 1.0));
    o.pass = fewest >= 20 && worst < 1e-8 && flat < 1e-10;
    o.detail = std::to_string(fewest) + " samples per soliton, max |a - a_*|/|a_*| = " + fmt("%.2e", worst) +
               ", constant background max |a - 1| = " + fmt("%.2e", flat);
    return o;
}

Outcome c9() {
    Outcome o;
    o.pass = true;
    Potential chirped = Potential::sech(1.0, 0.5);
    std::string d = "chirped sech (kappa 0.5), t0 = 2:";
    for (int N = 0; N <= 3; ++N) {
        auto r = expansion_check(chirped, N, 2.0);
        bool ok = std::abs(r.exponent - r.expected) <= 0.3;
        o.pass = o.pass && ok;
        d += " N=" + std::to_string(N) + " " + fmt("%.3f", r.exponent) + " (expect " + fmt("%.0f", r.expected) + ")";
    }
    o.detail = d;
    std::string real = "real sech (odd H_n vanish, so the next nonzero term sets the slope):";
    for (int N = 0; N <= 3; ++N) real += " N=" + std::to_string(N) + " " + fmt("%.3f", expansion_check(Potential::sech(1.0), N, 2.0).exponent);
    o.extra.push_back(real);
    return o;
}

std::vector<Hamiltonian> range_of(Hierarchy h, int lo, int hi) {
    std::vector<Hamiltonian> v;
    for (int k = lo; k <= hi; ++k) v.push_back(hamiltonian(h, k));
    return v;
}

double drift(const FieldState& st, double dt, double t, const std::vector<Hamiltonian>& hs) {
    EvolveOptions o;
    o.dt = dt;
    o.steps = std::lround(t / dt);
    o.invariants = hs;
    return conservation_report(evolve_with_invariants(st, o)).max_drift;
}

Outcome c10() {
    Outcome o;
    Potential bg = dark_soliton(-1.0, 1.0);
    FieldState nls2 = make_state(Hierarchy::NLS, 2, 512, 32.0, Potential::sech(1.0));
    FieldState nls3 = make_state(Hierarchy::NLS, 3, 512, 32.0, Potential::sech(1.0));
    FieldState gp2 = make_state(Hierarchy::GP, 2, 512, 32.0, bg + Potential::sech(0.3), bg);
    auto hn = range_of(Hierarchy::NLS, 0, 4), hg = range_of(Hierarchy::GP, 0, 2);
    double d2 = drift(nls2, 1e-3, 0.1, hn), d3 = drift(nls3, 1e-3, 0.1, hn), dg = drift(gp2, 1e-3, 0.1, hg);
    bool cons = d2 < 1e-6 && d3 < 1e-6 && dg < 1e-6;
    std::string det = "drift at dt 1e-3: nls2 " + fmt("%.2e", d2) + ", nls3 " + fmt("%.2e", d3) + ", gp2 " + fmt("%.2e", dg);

    bool halving = true;
    std::string rat = "halving dt 0.02 -> 0.01:";
    for (auto [name, st, hs] : {std::tuple{"nls2", &nls2, &hn}, std::tuple{"nls3", &nls3, &hn}, std::tuple{"gp2", &gp2, &hg}}) {
        double r = drift(*st, 0.02, 0.1, *hs) / drift(*st, 0.01, 0.1, *hs);
        halving = halving && r >= 16.0;
        rat += std::string(" ") + name + " " + fmt("%.2f", r) + "x (order " + fmt("%.2f", std::log2(r)) + ")";
    }
    std::string finer = "for reference, dt 0.01 -> 0.005:";
    for (auto [name, st, hs] : {std::tuple{"nls2", &nls2, &hn}, std::tuple{"nls3", &nls3, &hn}, std::tuple{"gp2", &gp2, &hg}}) {
        double r = drift(*st, 0.01, 0.1, *hs) / drift(*st, 0.005, 0.1, *hs);
        finer += std::string(" ") + name + " " + fmt("%.2f", r) + "x";
    }
    o.extra.push_back(finer);
    o.pass = cons && halving;
    o.detail = det + "; " + rat;
    if (!halving)
        o.extra.push_back("the ratio of a fourth-order scheme tends to 16 and may approach it from below; "
                          "conservation itself holds (" + std::string(cons ? "pass" : "fail") + ")");
    return o;
}

struct Control {
    std::string suite;
    std::string key;
    std::string expect_id;
};

Outcome c11() {
    const std::vector<Control> controls{
        {"hamiltonians", "hamiltonian/nls/3", "hamiltonian/nls/3"},
        {"projections", "coeff/D/7/1", "pi1/7"},
        {"projections", "formula/pi2-delta/9", "pi2-delta/9"},
        {"coeff", "coeff/D/9/2", "coeff/D/9"},
        {"coeff", "coeff/E/11/2", "coeff/E/11"},
        {"coeff", "coeff/K/13/4", "K-identity/13"},
        {"coeff", "conv/J-convolution/6/5", "J-convolution/6"},
        {"genfun", "genfun/Gt-jD/5/3", "Gt-jD"},
        {"genfun", "binomial/catalan-binomial/17", "catalan-binomial"},
        {"structural", "structural/nls/7", "structural/nls/7"},
        {"structural", "equation/gp/2", "equation/gp/2"},
        {"poisson", "hamiltonian/nls/4", "poisson/nls/2/4"},
        {"symbols", "symbol/even/6", "symbol/even/6"},
        {"symbols", "symbol/odd/4/1", "symbol/odd/4"},
        {"riccati", "riccati/5", "riccati"},
    };
    Outcome o;
    o.pass = true;
    int ok = 0;
    for (const auto& c : controls) {
        std::vector<CheckResult> rs;
        {
            inject::Scope scope(c.key, Rational(1));
            rs = run_suite(c.suite);
        }
        SuiteSummary s = summarize(rs);
        bool good = s.first_failure && s.first_failure->id == c.expect_id;
        if (good && c.suite == "riccati") good = s.first_failure->mismatch.value("n", -1) == 5;
        if (good) ++ok;
        o.pass = o.pass && good;
        o.extra.push_back(std::string(good ? "ok  " : "BAD ") + c.suite + " with " + c.key + " += 1 -> first failure " +
                          (s.first_failure ? s.first_failure->id + " " + s.first_failure->mismatch.dump() : "none"));
    }
    o.detail = std::to_string(ok) + "/" + std::to_string(controls.size()) + " perturbations caught at the injected index";
    return o;
}

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "Hamiltonian reproduction", 1.0, c1},
        {2, "closed forms vs projections", 120.0, [] { return suite_outcome("projections"); }},
        {3, "coefficient oracles", 60.0, [] { return suite_outcome("coeff"); }},
        {4, "generating-function registry", 60.0, c4},
        {5, "structural decomposition", 60.0, [] { return suite_outcome("structural"); }},
        {6, "Poisson commutation", 300.0, [] { return suite_outcome("poisson"); }},
        {7, "symbol algebra", 60.0, [] { return suite_outcome("symbols"); }},
        {8, "scattering vs closed form", 30.0, c8},
        {9, "asymptotic expansion", 120.0, c9},
        {10, "flow conservation", 120.0, c10},
        {11, "negative controls", 300.0, c11},
    };
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
    bool all_pass = true;
    for (const auto& c : all) {
        if (!pick.empty() && std::find(pick.begin(), pick.end(), c.id) == pick.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs <= c.budget_s;
        bool pass = o.pass && in_time;
        all_pass = all_pass && pass;
        std::printf("%s criterion %d (%s): %s [%.2fs of %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs, c.budget_s);
        for (const auto& e : o.extra) std::printf("    %s\n", e.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
