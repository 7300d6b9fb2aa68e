#include "hierarchia/hierarchy.hpp"

#include "hierarchia/coefficients.hpp"
#include "hierarchia/inject.hpp"

#include <mutex>
#include <stdexcept>

namespace hierarchia {

using coeffs::Family;

const char* hierarchy_name(Hierarchy h) {
    switch (h) {
        case Hierarchy::NLS: return "nls";
        case Hierarchy::GP: return "gp";
        default: return "kdv";
    }
}

Hierarchy hierarchy_from_name(const std::string& s) {
    if (s == "nls" || s == "NLS") return Hierarchy::NLS;
    if (s == "gp" || s == "GP") return Hierarchy::GP;
    if (s == "kdv" || s == "KDV" || s == "KdV") return Hierarchy::KDV;
    throw std::invalid_argument("unknown hierarchy: " + s);
}

namespace {

DiffPoly mono(const GaussianRational& c, int qp, int qbp) {
    return DiffPoly::monomial(c, {{Var::Q, 0, qp}, {Var::QBAR, 0, qbp}});
}

GaussianRational gr(const Rational& r) { return GaussianRational(r); }

std::mutex g_nls_mu, g_kdv_mu;
std::vector<DiffPoly> g_nls{DiffPoly(), mono(GaussianRational(-1), 1, 1)};
std::vector<DiffPoly> g_kdv{DiffPoly(), DiffPoly::var(Var::U)};

// sum_{k=1}^{n-1} s_k s_{n-k} using the symmetry of the convolution
DiffPoly self_convolution(const std::vector<DiffPoly>& s, int n) {
    DiffPoly acc;
    for (int k = 1; 2 * k < n; ++k) acc += s[k] * s[n - k];
    acc *= GaussianRational(2);
    if (n % 2 == 0 && n >= 2) acc += s[n / 2] * s[n / 2];
    return acc;
}

}  // namespace

Density sigma_nls(int n) {
    if (n < 0) throw std::invalid_argument("sigma_nls: negative index");
    std::lock_guard<std::mutex> lock(g_nls_mu);
    while (static_cast<int>(g_nls.size()) <= n) {
        int m = static_cast<int>(g_nls.size()) - 1;
        const DiffPoly& s = g_nls[m];
        DiffPoly next = d_x(s);
        next -= divide_by_q(DiffPoly::var(Var::Q, 1) * s);
        next += self_convolution(g_nls, m);
        g_nls.push_back(std::move(next));
    }
    return {g_nls[n], Hierarchy::NLS, n};
}

Density sigma_kdv(int n) {
    if (n < 0) throw std::invalid_argument("sigma_kdv: negative index");
    std::lock_guard<std::mutex> lock(g_kdv_mu);
    while (static_cast<int>(g_kdv.size()) <= n) {
        int m = static_cast<int>(g_kdv.size()) - 1;
        DiffPoly next = d_x(g_kdv[m]);
        next += self_convolution(g_kdv, m);
        g_kdv.push_back(std::move(next));
    }
    return {g_kdv[n], Hierarchy::KDV, n};
}

std::vector<Rational> gp_transform_row(int n, bool inverse, Rational& constant) {
    std::vector<Rational> row(static_cast<std::size_t>(n + 1), Rational(0));
    int m = n / 2;
    Rational base = inverse ? Rational(-4) : Rational(4);
    constant = 0;
    if (n % 2 == 0) {
        for (int k = 0; k <= m; ++k) row[2 * k] = binom(Rational(m - 1), m - k) * pow_int(base, m - k);
    } else {
        for (int k = 0; k <= m; ++k) row[2 * k + 1] = binom(frac(2 * m - 1, 2), m - k) * pow_int(base, m - k);
        constant = coeffs::coeff(Family::C, m, 0);
        if (inverse && m % 2 == 0) constant = -constant;
    }
    return row;
}

Density renormalize(const std::vector<Rational>& row, const std::vector<Density>& densities,
                    const Rational& constant) {
    if (row.size() != densities.size()) throw std::invalid_argument("renormalize: length mismatch");
    DiffPoly acc = DiffPoly::constant(gr(constant));
    for (std::size_t k = 0; k < row.size(); ++k)
        if (sgn(row[k]) != 0) acc += densities[k].poly * gr(row[k]);
    Hierarchy h = densities.empty() ? Hierarchy::NLS : densities.back().hierarchy;
    return {acc, h, static_cast<int>(row.size()) - 1};
}

Density sigma_gp(int n) {
    if (n < 0) throw std::invalid_argument("sigma_gp: negative index");
    Rational c;
    auto row = gp_transform_row(n, false, c);
    std::vector<Density> ds;
    for (int k = 0; k <= n; ++k) ds.push_back(sigma_nls(k));
    Density d = renormalize(row, ds, c);
    d.hierarchy = Hierarchy::GP;
    d.index = n;
    return d;
}

Density sigma(Hierarchy h, int n) {
    switch (h) {
        case Hierarchy::NLS: return sigma_nls(n);
        case Hierarchy::GP: return sigma_gp(n);
        default: return sigma_kdv(n);
    }
}

Hamiltonian hamiltonian(Hierarchy h, int n) {
    if (n < 0) throw std::invalid_argument("hamiltonian: negative index");
    if (h == Hierarchy::KDV) return {sigma_kdv(n).poly, h, n};
    // -(-i)^n = -i^(3n)
    GaussianRational f = -i_pow(3L * n);
    return {sigma(h, n + 1).poly * f, h, n};
}

DiffPoly flow_rhs(Hierarchy h, int n) {
    Hamiltonian H = hamiltonian(h, n);
    if (h == Hierarchy::KDV) {
        DiffPoly r = d_x(var_derivative(H.density, Var::U));
        r *= GaussianRational(frac(1, 2));
        return r;
    }
    return var_derivative(H.density, Var::QBAR);
}

DiffPoly i_dx_pow(Var v, int k) { return DiffPoly::var(v, k) * i_pow(k); }

namespace {

DiffPoly nls_main(int n) {
    DiffPoly main;
    if (n % 2 == 0) {
        int m = n / 2;
        for (int j = 0; j <= m - 2; ++j)
            main += mono(gr(coeffs::coeff(Family::J, 2 * m + 1, j)), j + 2, j) * i_dx_pow(Var::QBAR, 2 * m - 2 - 2 * j);
        for (int j = 0; j <= m - 1; ++j)
            main -= mono(gr(coeffs::coeff(Family::K, 2 * m + 1, j)), j, j) * i_dx_pow(Var::Q, 2 * m - 2 * j);
        main += mono(gr(Rational(m + 1) * coeffs::coeff(Family::C, m, 0)), m + 1, m);
    } else {
        int m = (n - 1) / 2;
        for (int j = 0; j <= m; ++j)
            main += mono(gr(coeffs::coeff(Family::K, 2 * m + 2, j)), j, j) * i_dx_pow(Var::Q, 2 * m + 1 - 2 * j);
    }
    return main;
}

DiffPoly gp_main(int n) {
    DiffPoly main;
    DiffPoly q = DiffPoly::var(Var::Q);
    if (n == 0) return q;
    if (n == 2) {
        // -q_xx + 2 q (q qbar - 1)
        main = -DiffPoly::var(Var::Q, 2);
        main += mono(GaussianRational(2), 2, 1);
        main -= q * GaussianRational(2);
        return main;
    }
    int m = n / 2;
    if (n % 2 == 0) {
        main = i_dx_pow(Var::Q, 2 * m) + i_dx_pow(Var::Q, 2 * m - 2) * GaussianRational(2);
        main += mono(GaussianRational(2), 2, 0) * i_dx_pow(Var::QBAR, 2 * m - 2);
    } else {
        for (int j = 0; j <= m; ++j)
            main += i_dx_pow(Var::Q, 2 * j + 1) * gr(pow_int(Rational(4), m - j) * binom(frac(1, 2), m - j));
    }
    return main;
}

}  // namespace

StructuralForm structural_form(Hierarchy h, int n) {
    if (h == Hierarchy::KDV) throw std::invalid_argument("structural_form: NLS or GP only");
    if (n < 0) throw std::invalid_argument("structural_form: negative index");
    StructuralForm out;
    out.main = h == Hierarchy::NLS ? nls_main(n) : gp_main(n);
    out.spec.min_deriv_factors = 2;
    out.spec.max_total_derivs = n >= 2 ? n - 2 : 0;
    out.spec.gens = h == Hierarchy::NLS ? Generators::QDerivs : Generators::QDerivsAndRho;
    DiffPoly rest = flow_rhs(h, n) - out.main;
    auto cert = certify(rest, out.spec);
    if (!cert) throw CertificateMismatch(std::string("remainder not in class for ") + hierarchy_name(h) + " n=" + std::to_string(n));
    out.remainder = std::move(*cert);
    return out;
}

DiffPoly poisson_bracket(const Hamiltonian& f, const Hamiltonian& g) {
    if (f.hierarchy == Hierarchy::KDV || g.hierarchy == Hierarchy::KDV)
        throw std::invalid_argument("poisson_bracket: generators q, qbar only");
    return var_derivative(f.density, Var::Q) * var_derivative(g.density, Var::QBAR) -
           var_derivative(f.density, Var::QBAR) * var_derivative(g.density, Var::Q);
}

namespace {

// c (-q)^a qbar^b d^k v
DiffPoly signed_term(const Rational& c, int a, int b, Var v, int k) {
    Rational s = (a % 2 == 0) ? c : Rational(-c);
    return mono(gr(s), a, b) * DiffPoly::var(v, k);
}

}  // namespace

DiffPoly pi0_formula(int n) {
    if (n % 2 == 0) return DiffPoly();
    int h = (n + 1) / 2;
    Rational c = coeffs::coeff(Family::C, (n - 1) / 2, 0);
    if (h % 2 != 0) c = -c;
    return mono(gr(c), h, h);
}

DiffPoly pi1_formula(int n) {
    DiffPoly r;
    for (int j = 0; j <= n / 2 - 1; ++j)
        r += signed_term(coeffs::coeff(Family::D, n, j), j + 1, j, Var::QBAR, n - 1 - 2 * j);
    for (int j = 0; j <= n / 2 - 2; ++j)
        r += signed_term(coeffs::coeff(Family::E, n, j), j + 1, j + 2, Var::Q, n - 3 - 2 * j);
    return r;
}

DiffPoly pi2_delta_formula(int n) {
    DiffPoly r;
    int f = (n - 1) / 2;
    for (int j = 0; j <= f - 2; ++j)
        r += signed_term(coeffs::coeff(Family::FT, n, j), j + 2, j, Var::QBAR, n - 3 - 2 * j);
    for (int j = 1; j <= f - 1; ++j)
        r += signed_term(coeffs::coeff(Family::GT, n, j), j, j, Var::Q, n - 1 - 2 * j);
    return r;
}

DiffPoly lemma20_pi0(int n) {
    if (n % 2 == 0) return DiffPoly();
    Rational c = frac(n + 1, 2) * coeffs::coeff(Family::C, (n - 1) / 2, 0);
    int a = (n + 1) / 2;
    if (a % 2 != 0) c = -c;
    return mono(gr(c), a, (n - 1) / 2);
}

DiffPoly lemma20_pi1(int n) {
    DiffPoly r;
    for (int j = 0; j <= n / 2 - 2; ++j)
        r += signed_term(coeffs::coeff(Family::J, n, j), j + 2, j, Var::QBAR, n - 3 - 2 * j);
    for (int j = 0; j <= n / 2 - 1; ++j)
        r += signed_term(coeffs::coeff(Family::K, n, j), j, j, Var::Q, n - 1 - 2 * j);
    return r;
}

bool lemma20_check(int n) {
    DiffPoly ds = var_derivative(sigma_nls(n).poly, Var::QBAR);
    return pi(ds, 0) == lemma20_pi0(n) && pi(ds, 1) == lemma20_pi1(n);
}

int riccati_first_mismatch(int order) {
    std::vector<DiffPoly> s;
    for (int k = 0; k <= order + 1; ++k) s.push_back(sigma_nls(k).poly);
    DiffPoly qqb = mono(GaussianRational(1), 1, 1);
    for (int n = 0; n <= order; ++n) {
        DiffPoly rhs = d_x(s[n]) - divide_by_q(DiffPoly::var(Var::Q, 1) * s[n]);
        for (int k = 0; k <= n; ++k) rhs += s[k] * s[n - k];
        if (n == 0) rhs -= qqb;
        if (inject::active()) rhs += DiffPoly::constant(GaussianRational(inject::delta("riccati/" + std::to_string(n)))) * qqb;
        if (rhs != s[n + 1]) return n;
    }
    return -1;
}

}  // namespace hierarchia
