#include "hierarchia/projections.hpp"

#include <map>
#include <tuple>

namespace hierarchia {

DiffPoly pi(const DiffPoly& p, int k) {
    DiffPoly r;
    for (const auto& [key, c] : p.terms())
        if (deriv_factor_count(key) == k) r.add_term(key, c);
    return r;
}

DiffPoly pi_tilde(const DiffPoly& p, int k) {
    if (k != 1 && k != 2) throw std::invalid_argument("pi_tilde: k must be 1 or 2");
    DiffPoly r;
    for (const auto& [key, c] : p.terms()) {
        if (deriv_factor_count(key) != k) continue;
        bool on_qbar = false;
        for (const auto& f : key)
            if (f.var == Var::QBAR && f.order >= 1) on_qbar = true;
        if (on_qbar) r.add_term(key, c);
    }
    return r;
}

bool in_nls_class(const DiffPoly& p, const ClassSpec& spec) {
    for (const auto& [key, c] : p.terms()) {
        if (total_derivs(key) > spec.max_total_derivs) return false;
        if (deriv_factor_count(key) < spec.min_deriv_factors) return false;
    }
    return true;
}

namespace {

DiffPoly rho() {
    DiffPoly r = DiffPoly::monomial(GaussianRational(1), {{Var::Q, 0, 1}, {Var::QBAR, 0, 1}});
    r -= DiffPoly::constant(GaussianRational(1));
    return r;
}

DiffPoly atom_poly(const Atom& a) {
    DiffPoly base;
    switch (a.kind) {
        case AtomKind::Q: base = DiffPoly::var(Var::Q, a.order); break;
        case AtomKind::QBAR: base = DiffPoly::var(Var::QBAR, a.order); break;
        case AtomKind::RHO: base = d_x(rho(), a.order); break;
    }
    return pow(base, a.power);
}

}  // namespace

DiffPoly expand(const Witness& w) {
    DiffPoly r = DiffPoly::constant(w.coeff);
    for (const auto& a : w.atoms) r = r * atom_poly(a);
    return r;
}

int class_factor_count(const Witness& w, Generators gens) {
    int n = 0;
    for (const auto& a : w.atoms) {
        if (a.kind == AtomKind::RHO) {
            if (gens == Generators::QDerivsAndRho) n += a.power;
        } else if (a.order >= 1) {
            n += a.power;
        }
    }
    return n;
}

int witness_derivs(const Witness& w) {
    int n = 0;
    for (const auto& a : w.atoms) n += a.order * a.power;
    return n;
}

bool check_certificate(const CertifiedRemainder& r, const ClassSpec& spec) {
    DiffPoly sum;
    for (const auto& w : r.certificate) sum += expand(w);
    if (sum != r.value) throw CertificateMismatch("certificate does not expand to the remainder");
    for (const auto& w : r.certificate) {
        if (spec.gens == Generators::QDerivs)
            for (const auto& a : w.atoms)
                if (a.kind == AtomKind::RHO) return false;
        if (class_factor_count(w, spec.gens) < spec.min_deriv_factors) return false;
        if (witness_derivs(w) > spec.max_total_derivs) return false;
    }
    return true;
}

std::optional<CertifiedRemainder> certify(const DiffPoly& p, const ClassSpec& spec) {
    CertifiedRemainder out;
    out.value = p;
    auto atoms_of = [](const MonoKey& k) {
        std::vector<Atom> atoms;
        for (const auto& f : k)
            atoms.push_back({f.var == Var::Q ? AtomKind::Q : AtomKind::QBAR, f.order, f.power});
        return atoms;
    };
    if (spec.gens == Generators::QDerivs) {
        if (!in_nls_class(p, spec)) return std::nullopt;
        for (const auto& [k, c] : p.terms()) out.certificate.push_back({c, atoms_of(k)});
        return out;
    }
    // Rewrite q^a qbar^b as q^(a-b) (1+rho)^b (or qbar^(b-a) (1+rho)^a). Pieces with
    // fewer than m class factors are collected as residues, which must cancel.
    const int m = spec.min_deriv_factors;
    std::map<std::pair<MonoKey, int>, GaussianRational, bool (*)(const std::pair<MonoKey, int>&, const std::pair<MonoKey, int>&)>
        residue([](const std::pair<MonoKey, int>& x, const std::pair<MonoKey, int>& y) {
            KeyLess kl;
            if (kl(x.first, y.first)) return true;
            if (kl(y.first, x.first)) return false;
            return x.second < y.second;
        });
    for (const auto& [k, c] : p.terms()) {
        if (total_derivs(k) > spec.max_total_derivs) return std::nullopt;
        int d = deriv_factor_count(k);
        if (d >= m) {
            out.certificate.push_back({c, atoms_of(k)});
            continue;
        }
        int a = power_of(k, Var::Q, 0);
        int b = power_of(k, Var::QBAR, 0);
        MonoKey rest = key_adjust(key_adjust(k, Var::Q, 0, -a), Var::QBAR, 0, -b);
        int e = a - b;
        int expo = e >= 0 ? b : a;
        MonoKey base = e >= 0 ? key_adjust(rest, Var::Q, 0, e) : key_adjust(rest, Var::QBAR, 0, -e);
        for (int i = 0; i <= expo; ++i) {
            GaussianRational ci = c * GaussianRational(binom(Rational(expo), i));
            if (d + i >= m) {
                auto atoms = atoms_of(base);
                if (i > 0) atoms.push_back({AtomKind::RHO, 0, i});
                out.certificate.push_back({ci, atoms});
            } else {
                auto key = std::make_pair(base, i);
                auto it = residue.find(key);
                if (it == residue.end())
                    residue.emplace(key, ci);
                else
                    it->second += ci;
            }
        }
    }
    for (const auto& [key, c] : residue)
        if (!c.is_zero()) return std::nullopt;
    return out;
}

nlohmann::json to_json(const Witness& w) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : w.atoms) {
        const char* name = a.kind == AtomKind::Q ? "q" : (a.kind == AtomKind::QBAR ? "qbar" : "rho");
        atoms.push_back({name, a.order, a.power});
    }
    return {{"coeff", to_json(w.coeff)}, {"atoms", atoms}};
}

}  // namespace hierarchia
