#include "hierarchia/exact.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace hierarchia {

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    Rational d = o.norm2();
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
}

GaussianRational i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {Rational(1), Rational(0)};
        case 1: return {Rational(0), Rational(1)};
        case 2: return {Rational(-1), Rational(0)};
        default: return {Rational(0), Rational(-1)};
    }
}

Rational binom(const Rational& a, long k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < k; ++i) {
        r *= a - i;
        r /= i + 1;
    }
    return r;
}

Rational catalan(long n) {
    if (n < 0) throw std::invalid_argument("catalan: negative index");
    static std::mutex mu;
    static std::vector<Rational> memo{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(memo.size()) <= n) {
        std::size_t m = memo.size();
        Rational s(0);
        for (std::size_t k = 0; k < m; ++k) s += memo[k] * memo[m - 1 - k];
        memo.push_back(s);
    }
    return memo[static_cast<std::size_t>(n)];
}

Rational pow_int(const Rational& base, long e) {
    if (e < 0) return Rational(1) / pow_int(base, -e);
    Rational r(1);
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const GaussianRational& g) {
    if (g.is_real()) return to_string(g.re);
    if (sgn(g.re) == 0) return to_string(g.im) + "i";
    std::string im = to_string(g.im);
    if (im[0] != '-') im = "+" + im;
    return to_string(g.re) + im + "i";
}

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << to_string(g); }

}  // namespace hierarchia
