#include "hierarchia/coefficients.hpp"

#include "hierarchia/inject.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace hierarchia::coeffs {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Rational half(long n) { return frac(n, 2); }

Rational cat(long n) { return n < 0 ? Rational(0) : catalan(n); }

// C_{l+1} - 2 C_l with the alternating sign of the E family.
Rational e_weight(long l) {
    Rational w = cat(l + 1) - 2 * cat(l);
    return (l % 2 == 0) ? w : Rational(-w);
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::E: return "E";
        case Family::FT: return "Ft";
        case Family::GT: return "Gt";
        case Family::J: return "J";
        default: return "K";
    }
}

Family family_from_name(const std::string& s) {
    if (s == "C") return Family::C;
    if (s == "D") return Family::D;
    if (s == "E") return Family::E;
    if (s == "Ft" || s == "F") return Family::FT;
    if (s == "Gt" || s == "G") return Family::GT;
    if (s == "J") return Family::J;
    if (s == "K") return Family::K;
    throw std::invalid_argument("unknown coefficient family: " + s);
}

Rational d_expr(long n, long j) {
    if (j < 0) return Rational(0);
    return pow_int(Rational(4), j) * binom(half(n) - 1, j);
}

Rational e_expr(long n, long j) {
    if (j < 0) return Rational(0);
    Rational s(0);
    for (long l = 0; l <= j; ++l) s += e_weight(l) * pow_int(Rational(4), j - l) * binom(half(n - 1) - 1, j - l);
    return s;
}

Rational ft_expr(long n, long j) {
    if (j < 0 || n % 2 == 0) return Rational(0);
    long f = floor_div(n - 1, 2);
    return -Rational(8 * f - 8 * j - 6) * pow_int(Rational(4), j) * binom(half(n) - 1, j);
}

Rational gt_expr(long n, long j) {
    if (j < 0) return Rational(0);
    long f = floor_div(n - 1, 2);
    Rational s(0);
    for (long k = 0; k <= j - 1; ++k)
        s += cat(k) * pow_int(Rational(4), j - 1 - k) * binom(Rational(f) - frac(1, 2) - k, j - 1 - k);
    s *= 4 * (f - j);
    if (n % 2 == 0) s = -s;
    if ((n % 2 != 0) && j >= 1) s += 2 * pow_int(Rational(4), j - 1) * binom(half(n) - 1, j - 1);
    return s;
}

Rational j_expr(long n, long j) {
    if (j < 0 || n % 2 == 0) return Rational(0);
    return 2 * pow_int(Rational(4), j) * binom(half(n) - 1, j);
}

Rational k_expr(long n, long j) {
    if (j < 0) return Rational(0);
    if (n % 2 == 0) return pow_int(Rational(4), j) * binom(half(n - 1), j);
    Rational a = binom(half(n - 2), j) * pow_int(Rational(4), j);
    Rational b = j >= 1 ? binom(half(n - 2), j - 1) * pow_int(Rational(4), j - 1) : Rational(0);
    return -a - 2 * b;
}

Rational k1_expr(long n, long j) {
    if (j < 0) return Rational(0);
    Rational v = pow_int(Rational(4), j) * binom(half(n + 1) - 1, j);
    if (n % 2 != 0) v = -v;
    if (n % 2 != 0) {
        Rational s(0);
        for (long l = 0; l <= j - 2; ++l) s += e_weight(l) * pow_int(Rational(4), j - 2 - l) * binom(half(n - 1) - 1, j - 2 - l);
        v += 2 * s;
    }
    return v;
}

bool in_support(Family f, long n, long j) {
    switch (f) {
        case Family::C: return n >= 0;
        case Family::D: return n >= 2 && j >= 0 && j <= floor_div(n, 2) - 1;
        case Family::E: return n >= 4 && j >= 0 && j <= floor_div(n, 2) - 2;
        case Family::FT: return n >= 0 && j >= 0 && j <= floor_div(n - 1, 2) - 2;
        case Family::GT: return n >= 0 && j >= 1 && j <= floor_div(n - 1, 2) - 1;
        case Family::J: return n >= 0 && j >= 0 && j <= floor_div(n, 2) - 2;
        case Family::K: return n >= 0 && j >= 0 && j <= floor_div(n, 2) - 1;
    }
    return false;
}

Rational coeff(Family f, long n, long j) {
    if (!in_support(f, n, j)) return Rational(0);
    Rational v;
    switch (f) {
        case Family::C: v = catalan(n); break;
        case Family::D: v = d_expr(n, j); break;
        case Family::E: v = e_expr(n, j); break;
        case Family::FT: v = ft_expr(n, j); break;
        case Family::GT: v = gt_expr(n, j); break;
        case Family::J: v = j_expr(n, j); break;
        case Family::K: v = k_expr(n, j); break;
    }
    if (inject::active())
        v += inject::delta(std::string("coeff/") + family_name(f) + "/" + std::to_string(n) + "/" +
                           std::to_string(f == Family::C ? 0 : j));
    return v;
}

namespace {

std::mutex g_oracle_mu;
std::map<std::pair<long, long>, Rational> g_d_memo, g_e_memo;

Rational d_rec(long n, long j) {
    if (j < 0 || n < 2) return Rational(0);
    if (n == 2) return j == 0 ? Rational(1) : Rational(0);
    long m = n - 1;
    if (j > floor_div(m + 1, 2) - 1) return Rational(0);
    auto key = std::make_pair(n, j);
    auto it = g_d_memo.find(key);
    if (it != g_d_memo.end()) return it->second;
    Rational s(0);
    for (long k = 0; k <= j - 1; ++k) s += 2 * cat(k) * d_rec(m - 2 * k - 1, j - 1 - k);
    if (m % 2 != 0 && j == (m - 1) / 2)
        s += cat((m - 1) / 2) * frac(m + 1, 2);
    else
        s += d_rec(m, j);
    g_d_memo.emplace(key, s);
    return s;
}

Rational e_rec(long n, long j) {
    if (j < 0 || n < 4) return Rational(0);
    if (n == 4) return j == 0 ? Rational(-1) : Rational(0);
    long m = n - 1;
    if (j > floor_div(m + 1, 2) - 2) return Rational(0);
    auto key = std::make_pair(n, j);
    auto it = g_e_memo.find(key);
    if (it != g_e_memo.end()) return it->second;
    Rational s(0);
    for (long k = 0; k <= j - 1; ++k) s += 2 * cat(k) * e_rec(m - 2 * k - 1, j - 1 - k);
    if (m % 2 != 0 && j == (m - 3) / 2)
        s -= cat((m - 1) / 2) * frac(m - 1, 2);
    else
        s += e_rec(m, j);
    g_e_memo.emplace(key, s);
    return s;
}

}  // namespace

Rational coeff_oracle(Family f, long n, long j) {
    std::lock_guard<std::mutex> lock(g_oracle_mu);
    if (f == Family::D) return d_rec(n, j);
    if (f == Family::E) return e_rec(n, j);
    throw std::invalid_argument("no recurrence oracle for this family");
}

bool k_identity_check(long n, long j) {
    Rational k2 = k_expr(n, j);
    if (inject::active()) k2 += inject::delta("coeff/K/" + std::to_string(n) + "/" + std::to_string(j));
    return k1_expr(n, j) == k2;
}

const char* convolution_name(Convolution c) {
    switch (c) {
        case Convolution::JOdd: return "J-convolution";
        case Convolution::KOdd: return "K-odd-convolution";
        default: return "K-even-convolution";
    }
}

Rational convolution_lhs(Convolution c, long m, long j) {
    Rational s(0);
    for (long k = 0; k <= m; ++k) {
        switch (c) {
            case Convolution::JOdd:
                s += binom(frac(2 * m - 1, 2), m - k) * pow_int(Rational(-4), m - k) * coeff(Family::J, 2 * k + 1, k - 1 - j);
                break;
            case Convolution::KOdd:
                s -= binom(frac(2 * m - 1, 2), m - k) * pow_int(Rational(-4), m - k) * coeff(Family::K, 2 * k + 1, k - j);
                break;
            case Convolution::KEven:
                s += binom(Rational(m - 1), m - k) * pow_int(Rational(-4), m - k) * coeff(Family::K, 2 * k, k - 1 - j);
                break;
        }
    }
    return s;
}

Rational convolution_rhs(Convolution c, long m, long j) {
    switch (c) {
        case Convolution::JOdd: return j == m - 1 ? Rational(2) : Rational(0);
        case Convolution::KOdd: return Rational(j == m ? 1 : 0) + Rational(j == m - 1 ? 2 : 0);
        default: return pow_int(Rational(4), m - 1 - j) * binom(frac(1, 2), m - 1 - j);
    }
}

long convolution_min_m(Convolution c) { return c == Convolution::KEven ? 1 : 2; }

bool convolution_identity_check(Convolution c, long m, long j) {
    if (m < convolution_min_m(c))
        throw std::domain_error(std::string(convolution_name(c)) + ": m must be at least " + std::to_string(convolution_min_m(c)));
    return convolution_lhs(c, m, j) == convolution_rhs(c, m, j);
}

}  // namespace hierarchia::coeffs
