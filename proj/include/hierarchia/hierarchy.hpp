#ifndef HIERARCHIA_HIERARCHY_HPP
#define HIERARCHIA_HIERARCHY_HPP

#include "hierarchia/diffpoly.hpp"
#include "hierarchia/projections.hpp"

#include <string>
#include <vector>

namespace hierarchia {

enum class Hierarchy { NLS, GP, KDV };

const char* hierarchy_name(Hierarchy h);
Hierarchy hierarchy_from_name(const std::string& s);

struct Density {
    DiffPoly poly;
    Hierarchy hierarchy;
    int index;
};

struct Hamiltonian {
    DiffPoly density;
    Hierarchy hierarchy;
    int index;
};

Density sigma_nls(int n);
Density sigma_kdv(int n);
Density sigma_gp(int n);
Density sigma(Hierarchy h, int n);

Hamiltonian hamiltonian(Hierarchy h, int n);
DiffPoly flow_rhs(Hierarchy h, int n);

// sum_k row[k] * densities[k] + constant
Density renormalize(const std::vector<Rational>& row, const std::vector<Density>& densities,
                    const Rational& constant = Rational(0));
// Row of the NLS -> GP density map for index n (entries for sigma_0..sigma_n) and its constant;
// inverse = true gives the GP -> NLS direction.
std::vector<Rational> gp_transform_row(int n, bool inverse, Rational& constant);

struct StructuralForm {
    DiffPoly main;
    CertifiedRemainder remainder;
    ClassSpec spec;
};

StructuralForm structural_form(Hierarchy h, int n);

DiffPoly poisson_bracket(const Hamiltonian& f, const Hamiltonian& g);

// Closed forms from the coefficient families.
DiffPoly pi0_formula(int n);
DiffPoly pi1_formula(int n);
DiffPoly pi2_delta_formula(int n);
DiffPoly lemma20_pi0(int n);
DiffPoly lemma20_pi1(int n);
bool lemma20_check(int n);

// Order at which the Riccati series check first fails, or -1 if orders 0..order agree.
int riccati_first_mismatch(int order);

// (i d_x)^k applied to a generator.
DiffPoly i_dx_pow(Var v, int k);

}  // namespace hierarchia

#endif
