#ifndef HIERARCHIA_EXACT_HPP
#define HIERARCHIA_EXACT_HPP

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace hierarchia {

using Integer = mpz_class;
using Rational = mpq_class;

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(long v) : re(v), im(0) {}
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i_unit() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);
};

GaussianRational operator+(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(GaussianRational a, const GaussianRational& b);
GaussianRational operator*(GaussianRational a, const GaussianRational& b);
GaussianRational operator/(GaussianRational a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a);
bool operator==(const GaussianRational& a, const GaussianRational& b);
inline bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

// i^k for any integer k
GaussianRational i_pow(long k);

// Generalized binomial a(a-1)...(a-k+1)/k!, zero for k < 0.
// p/q in lowest terms
inline Rational frac(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational binom(const Rational& a, long k);
Rational catalan(long n);
Rational pow_int(const Rational& base, long e);

std::string to_string(const Rational& r);
std::string to_string(const GaussianRational& g);
Rational parse_rational(const std::string& s);

std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

}  // namespace hierarchia

#endif
