#ifndef HIERARCHIA_COEFFICIENTS_HPP
#define HIERARCHIA_COEFFICIENTS_HPP

#include "hierarchia/exact.hpp"

#include <string>

namespace hierarchia::coeffs {

enum class Family { C, D, E, FT, GT, J, K };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

// Closed forms restricted to their index support; zero elsewhere.
Rational coeff(Family f, long n, long j);
bool in_support(Family f, long n, long j);

// The same closed-form expressions evaluated without the support restriction
// (generating functions sum these).
Rational d_expr(long n, long j);
Rational e_expr(long n, long j);
Rational ft_expr(long n, long j);
Rational gt_expr(long n, long j);
Rational j_expr(long n, long j);
Rational k_expr(long n, long j);
Rational k1_expr(long n, long j);

// Printed recurrences for D and E, memoized.
Rational coeff_oracle(Family f, long n, long j);

bool k_identity_check(long n, long j);

enum class Convolution { JOdd, KOdd, KEven };
const char* convolution_name(Convolution c);
Rational convolution_lhs(Convolution c, long m, long j);
Rational convolution_rhs(Convolution c, long m, long j);
// Smallest m for which the identity is stated (the odd ones start where the GP main form does).
long convolution_min_m(Convolution c);
bool convolution_identity_check(Convolution c, long m, long j);

}  // namespace hierarchia::coeffs

#endif
