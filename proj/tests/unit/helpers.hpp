#ifndef HIERARCHIA_TEST_HELPERS_HPP
#define HIERARCHIA_TEST_HELPERS_HPP

#include "hierarchia/diffpoly.hpp"

#include <random>

namespace th {

using hierarchia::DiffPoly;
using hierarchia::GaussianRational;
using hierarchia::Rational;
using hierarchia::Var;

inline DiffPoly q(int k = 0) { return DiffPoly::var(Var::Q, k); }
inline DiffPoly qb(int k = 0) { return DiffPoly::var(Var::QBAR, k); }
inline DiffPoly u(int k = 0) { return DiffPoly::var(Var::U, k); }
inline DiffPoly c(long re, long im = 0) { return DiffPoly::constant(GaussianRational(Rational(re), Rational(im))); }
inline DiffPoly one() { return c(1); }

// Small random polynomial in q, qbar with Gaussian-integer coefficients.
inline DiffPoly random_poly(std::mt19937& g, int terms = 3, int max_order = 2, int max_factors = 3) {
    std::uniform_int_distribution<int> co(-3, 3), ord(0, max_order), nf(0, max_factors), var(0, 1);
    DiffPoly p;
    for (int t = 0; t < terms; ++t) {
        DiffPoly m = c(co(g), co(g));
        int f = nf(g);
        for (int i = 0; i < f; ++i) m = m * DiffPoly::var(var(g) ? Var::Q : Var::QBAR, ord(g));
        p += m;
    }
    return p;
}

}  // namespace th

#endif
