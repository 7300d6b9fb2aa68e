#include "hierarchia/reference.hpp"

namespace hierarchia::reference {

namespace {

DiffPoly Q(int k = 0) { return DiffPoly::var(Var::Q, k); }
DiffPoly B(int k = 0) { return DiffPoly::var(Var::QBAR, k); }
DiffPoly K(long re, long im = 0) { return DiffPoly::constant(GaussianRational(Rational(re), Rational(im))); }

}  // namespace

std::vector<DiffPoly> nls_hamiltonians() {
    DiffPoly i = K(0, 1), mi = K(0, -1);
    return {
        Q() * B(),
        mi * Q() * B(1),
        Q(1) * B(1) + Q() * Q() * B() * B(),
        i * (Q() * B(3) - K(4) * Q() * Q() * B() * B(1) - Q(1) * Q() * B() * B()),
        Q(2) * B(2) - K(6) * Q() * Q() * B() * B(2) - K(5) * Q() * Q() * B(1) * B(1) - K(6) * Q() * Q(1) * B() * B(1) -
            Q() * Q(2) * B() * B() + K(2) * Q() * Q() * Q() * B() * B() * B(),
    };
}

std::vector<DiffPoly> gp_hamiltonians(bool as_printed) {
    DiffPoly i = K(0, 1), mi = K(0, -1);
    DiffPoly rho = Q() * B() - K(1);
    long s = as_printed ? 6 : -6;
    return {
        Q() * B() - K(1),
        mi * Q() * B(1),
        Q(1) * B(1) + rho * rho,
        i * (Q() * B(3) - K(4) * Q() * Q() * B() * B(1) - Q(1) * Q() * B() * B() + K(4) * Q() * B(1)),
        Q(2) * B(2) - K(6) * Q() * Q() * B() * B(2) - K(5) * Q() * Q() * B(1) * B(1) - K(6) * Q() * Q(1) * B() * B(1) -
            Q() * Q(2) * B() * B() + K(2) * Q() * Q() * Q() * B() * B() * B() + K(s) * Q(1) * B(1) -
            K(6) * Q() * Q() * B() * B() + K(6) * Q() * B() - K(2),
    };
}

DiffPoly nls_equation_rhs() { return K(-1) * Q(2) + K(2) * Q() * Q() * B(); }

DiffPoly gp_equation_rhs() { return K(-1) * Q(2) + K(2) * Q() * Q() * B() - K(2) * Q(); }

}  // namespace hierarchia::reference
