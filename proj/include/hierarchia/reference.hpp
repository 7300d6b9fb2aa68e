#ifndef HIERARCHIA_REFERENCE_HPP
#define HIERARCHIA_REFERENCE_HPP

#include "hierarchia/diffpoly.hpp"

#include <vector>

namespace hierarchia::reference {

// Hamiltonian densities H_0..H_4 in their listed form.
std::vector<DiffPoly> nls_hamiltonians();
// as_printed keeps +6 q_x qbar_x in H_4; otherwise the sign is corrected to -6.
std::vector<DiffPoly> gp_hamiltonians(bool as_printed);

// i q_t + q_xx = 2|q|^2 q and i q_t + q_xx = 2(|q|^2 - 1) q, written as i q_t = F.
DiffPoly nls_equation_rhs();
DiffPoly gp_equation_rhs();

}  // namespace hierarchia::reference

#endif
