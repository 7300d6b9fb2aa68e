#include "hierarchia/verify.hpp"

#include "hierarchia/coefficients.hpp"
#include "hierarchia/evolve.hpp"
#include "hierarchia/genfun.hpp"
#include "hierarchia/hierarchy.hpp"
#include "hierarchia/inject.hpp"
#include "hierarchia/reference.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>

namespace hierarchia {

using nlohmann::json;

namespace {

CheckResult make(std::string id, bool pass, json where = nullptr, std::string order = {}) {
    CheckResult r;
    r.id = std::move(id);
    r.pass = pass;
    r.order = std::move(order);
    if (!pass) r.mismatch = where.is_null() ? json::object() : std::move(where);
    return r;
}

std::string n_order(int n) { return "n=" + std::to_string(n); }

int capped(int dflt, const SuiteOptions& o) {
    int c = index_cap(o.nmax);
    return c < 0 ? dflt : std::min(dflt, c);
}

DiffPoly qqbar() { return DiffPoly::var(Var::Q) * DiffPoly::var(Var::QBAR); }

DiffPoly injected(const std::string& key) {
    if (!inject::active()) return DiffPoly();
    Rational d = inject::delta(key);
    return d == 0 ? DiffPoly() : DiffPoly::constant(GaussianRational(d)) * qqbar();
}

// The Hamiltonian density used by every suite; "hamiltonian/<H>/<n>" adds delta q qbar q_x qbar_x.
DiffPoly ham_density(Hierarchy h, int n) {
    DiffPoly d = hamiltonian(h, n).density;
    if (inject::active()) {
        Rational delta = inject::delta(std::string("hamiltonian/") + hierarchy_name(h) + "/" + std::to_string(n));
        if (delta != 0)
            d += DiffPoly::constant(GaussianRational(delta)) * qqbar() * DiffPoly::var(Var::Q, 1) *
                 DiffPoly::var(Var::QBAR, 1);
    }
    return d;
}

std::vector<CheckResult> suite_hamiltonians(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    int top = capped(4, o);
    auto nls = reference::nls_hamiltonians();
    auto gp = reference::gp_hamiltonians(o.as_printed);
    for (int n = 0; n <= top; ++n) {
        bool ok = equivalent_mod_dx(ham_density(Hierarchy::NLS, n), nls[n]);
        out.push_back(make("hamiltonian/nls/" + std::to_string(n), ok, json{{"n", n}}, n_order(n)));
    }
    for (int n = 0; n <= top; ++n) {
        bool ok = equivalent_mod_dx(ham_density(Hierarchy::GP, n), gp[n]);
        auto r = make("hamiltonian/gp/" + std::to_string(n), ok, json{{"n", n}}, n_order(n));
        if (n == 4) r.note = o.as_printed ? "reference as printed (+6 q_x qbar_x)" : "reference with corrected sign (-6 q_x qbar_x)";
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> suite_projections(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, int lo, int hi, const std::function<bool(int)>& f) {
        for (int n = lo; n <= hi; ++n) {
            bool ok = f(n) && injected("formula/" + name + "/" + std::to_string(n)).is_zero();
            out.push_back(make(name + "/" + std::to_string(n), ok, json{{"n", n}}, n_order(n)));
        }
    };
    add("pi0", 0, capped(16, o), [](int n) { return pi(sigma_nls(n).poly, 0) == pi0_formula(n); });
    add("pi1", 1, capped(14, o), [](int n) { return pi(sigma_nls(n).poly, 1) == pi1_formula(n); });
    add("pi2-delta", 1, capped(12, o), [](int n) {
        return pi(var_derivative(pi_tilde(sigma_nls(n).poly, 2), Var::QBAR), 1) == pi2_delta_formula(n);
    });
    add("lemma20", 1, capped(14, o), [](int n) { return lemma20_check(n); });
    return out;
}

std::vector<CheckResult> coeff_family(coeffs::Family f, int lo, const SuiteOptions& o) {
    std::vector<CheckResult> out;
    for (int n = lo; n <= capped(30, o); ++n) {
        json where;
        for (int j = 0; j <= n && where.is_null(); ++j) {
            Rational a = coeffs::coeff(f, n, j), b = coeffs::coeff_oracle(f, n, j);
            if (a != b) where = {{"n", n}, {"j", j}, {"closed_form", to_string(a)}, {"recurrence", to_string(b)}};
        }
        out.push_back(make(std::string("coeff/") + coeffs::family_name(f) + "/" + std::to_string(n), where.is_null(),
                           where, n_order(n)));
    }
    return out;
}

std::vector<CheckResult> suite_coeff(const SuiteOptions& o) {
    const std::string& fam = o.family;
    if (!fam.empty() && fam != "D" && fam != "E" && fam != "K" && fam != "conv")
        throw std::invalid_argument("unknown coefficient family filter: " + fam + " (expected D, E, K or conv)");
    std::vector<CheckResult> out;
    auto want = [&](const char* f) { return fam.empty() || fam == f; };
    if (want("D")) {
        auto r = coeff_family(coeffs::Family::D, 2, o);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("E")) {
        auto r = coeff_family(coeffs::Family::E, 2, o);
        out.insert(out.end(), r.begin(), r.end());
    }
    if (want("K")) {
        for (int n = 0; n <= capped(30, o); ++n) {
            json where;
            for (int j = 0; j <= 15 && where.is_null(); ++j)
                if (!coeffs::k_identity_check(n, j)) where = {{"n", n}, {"j", j}};
            out.push_back(make("K-identity/" + std::to_string(n), where.is_null(), where, n_order(n)));
        }
    }
    if (want("conv")) {
        using coeffs::Convolution;
        for (auto c : {Convolution::JOdd, Convolution::KOdd, Convolution::KEven})
            for (long m = coeffs::convolution_min_m(c); m <= capped(10, o); ++m) {
                json where;
                for (long j = 0; j <= m && where.is_null(); ++j) {
                    Rational l = coeffs::convolution_lhs(c, m, j), r = coeffs::convolution_rhs(c, m, j);
                    if (inject::active())
                        r += inject::delta(std::string("conv/") + coeffs::convolution_name(c) + "/" + std::to_string(m) +
                                           "/" + std::to_string(j));
                    if (l != r) where = {{"m", m}, {"j", j}, {"lhs", to_string(l)}, {"rhs", to_string(r)}};
                }
                out.push_back(make(std::string(coeffs::convolution_name(c)) + "/" + std::to_string(m), where.is_null(),
                                   where, "m=" + std::to_string(m)));
            }
    }
    return out;
}

std::vector<CheckResult> suite_genfun(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    bool found = o.id.empty();
    for (const auto& id : gf_ids()) {
        if (!o.id.empty() && o.id != id) continue;
        found = true;
        out.push_back(verify_identity(id, o.S, o.J));
    }
    if (o.id.empty() || o.id == "catalan-gf") {
        // The registry order (24, 24) reaches C_24; the Catalan series alone is checked further.
        auto r = verify_identity("catalan-gf", std::max(32, o.S), 0);
        r.id = "catalan-gf/exact";
        out.push_back(std::move(r));
    }
    for (const auto& b : binomial_sum_registry()) {
        if (!o.id.empty() && o.id != b.id) continue;
        found = true;
        out.push_back(binomial_sum_check(b.id));
    }
    if (!found) throw std::invalid_argument("unknown genfun id: " + o.id);
    return out;
}

std::vector<CheckResult> suite_structural(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    auto one = [&](Hierarchy h, int n) {
        std::string id = std::string("structural/") + hierarchy_name(h) + "/" + std::to_string(n);
        json where{{"n", n}};
        bool ok = false;
        try {
            auto s = structural_form(h, n);
            DiffPoly main = s.main + injected(id);
            ok = main + s.remainder.value == flow_rhs(h, n) && check_certificate(s.remainder, s.spec);
        } catch (const CertificateMismatch& e) {
            where["error"] = e.what();
        }
        out.push_back(make(id, ok, where, n_order(n)));
    };
    for (int n = 0; n <= capped(12, o); ++n) one(Hierarchy::NLS, n);
    for (int n = 0; n <= capped(8, o); ++n) one(Hierarchy::GP, n);
    if (capped(2, o) >= 2) {
        for (auto [h, ref] : {std::pair{Hierarchy::NLS, reference::nls_equation_rhs()},
                              std::pair{Hierarchy::GP, reference::gp_equation_rhs()}}) {
            std::string id = std::string("equation/") + hierarchy_name(h) + "/2";
            auto s = structural_form(h, 2);
            DiffPoly main = s.main + injected(id);
            bool ok = main == ref && s.remainder.value.is_zero() && flow_rhs(h, 2) == ref;
            out.push_back(make(id, ok, json{{"n", 2}}, n_order(2)));
        }
    }
    return out;
}

std::vector<CheckResult> suite_poisson(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    int top = capped(6, o);
    std::vector<Hamiltonian> hs;
    for (int n = 0; n <= top; ++n) hs.push_back({ham_density(Hierarchy::NLS, n), Hierarchy::NLS, n});
    for (int n = 0; n <= top; ++n)
        for (int m = n; m <= top; ++m) {
            bool ok = is_total_derivative(poisson_bracket(hs[n], hs[m]));
            out.push_back(make("poisson/nls/" + std::to_string(n) + "/" + std::to_string(m), ok,
                               json{{"n", n}, {"m", m}}, "n=" + std::to_string(n) + ",m=" + std::to_string(m)));
        }
    return out;
}

std::vector<CheckResult> suite_symbols(const SuiteOptions& o) {
    std::vector<CheckResult> out;
    for (int m = 1; m <= capped(10, o); ++m)
        out.push_back(make("symbol/even/" + std::to_string(m), symbol_check_even(m), json{{"m", m}}, "m=" + std::to_string(m)));
    for (int m = 0; m <= capped(10, o); ++m)
        out.push_back(make("symbol/odd/" + std::to_string(m), symbol_check_odd(m), json{{"m", m}}, "m=" + std::to_string(m)));
    return out;
}

std::vector<CheckResult> suite_riccati(const SuiteOptions& o) {
    int top = capped(12, o);
    int bad = riccati_first_mismatch(top);
    return {make("riccati", bad < 0, json{{"n", bad}}, "order=" + std::to_string(top))};
}

using SuiteFn = std::vector<CheckResult> (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"hamiltonians", suite_hamiltonians}, {"projections", suite_projections}, {"coeff", suite_coeff},
        {"genfun", suite_genfun},             {"structural", suite_structural},   {"poisson", suite_poisson},
        {"symbols", suite_symbols},           {"riccati", suite_riccati},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, f] : registry()) v.push_back(n);
        return v;
    }();
    return names;
}

int index_cap(int requested) {
    int cap = requested;
    if (const char* env = std::getenv("HIERARCHIA_NMAX")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) cap = cap < 0 ? static_cast<int>(v) : std::min(cap, static_cast<int>(v));
    }
    return cap;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opts) {
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& [n, f] : registry()) {
            auto r = f(opts);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }
    for (const auto& [n, f] : registry())
        if (n == name) return f(opts);
    throw std::invalid_argument("unknown suite: " + name);
}

SuiteSummary summarize(const std::vector<CheckResult>& results) {
    SuiteSummary s;
    for (const auto& r : results) {
        if (r.pass) {
            ++s.passed;
        } else {
            ++s.failed;
            if (!s.first_failure) s.first_failure = &r;
        }
    }
    return s;
}

}  // namespace hierarchia
