#ifndef HIERARCHIA_GENFUN_HPP
#define HIERARCHIA_GENFUN_HPP

#include "hierarchia/exact.hpp"
#include "hierarchia/report.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hierarchia {

class NonUnitConstant : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Truncated series in X (0..S) and Y (-2..J) over the rationals.
class BiSeries {
public:
    static constexpr int kYFloor = -2;

    BiSeries(int S, int J);

    static BiSeries constant(int S, int J, const Rational& c);
    static BiSeries x(int S, int J);
    static BiSeries y(int S, int J);
    static BiSeries from_function(int S, int J, const std::function<Rational(int, int)>& f, int jmin = 0);

    int S() const { return S_; }
    int J() const { return J_; }
    Rational get(int s, int j) const;
    void set(int s, int j, const Rational& v);
    bool has_laurent_part() const;

    BiSeries& operator+=(const BiSeries& o);
    BiSeries& operator-=(const BiSeries& o);
    BiSeries& operator*=(const Rational& c);

    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    friend BiSeries operator+(BiSeries a, const Rational& c);
    friend BiSeries operator-(BiSeries a, const Rational& c);
    friend BiSeries operator-(const Rational& c, const BiSeries& a);
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator*(BiSeries a, const Rational& c) { return a *= c; }
    friend BiSeries operator*(const Rational& c, BiSeries a) { return a *= c; }
    friend BiSeries operator-(const BiSeries& a);

    // Multiply by X^k or Y^k; negative k requires the vacated coefficients to vanish.
    BiSeries shift_x(int k) const;
    BiSeries shift_y(int k) const;

    // f^alpha for f with constant term 1 and no Laurent part.
    BiSeries pow(const Rational& alpha) const;
    BiSeries inv() const;

private:
    int S_, J_;
    std::vector<Rational> c_;
    std::size_t idx(int s, int j) const {
        return static_cast<std::size_t>(s) * static_cast<std::size_t>(J_ - kYFloor + 1) + static_cast<std::size_t>(j - kYFloor);
    }
};

BiSeries series_sqrt(const BiSeries& f);
BiSeries series_inv(const BiSeries& f);

struct GfIdentity {
    std::string id;
    std::string description;
    std::function<BiSeries(int, int)> lhs;
    std::function<BiSeries(int, int)> rhs;
    // Restricts the comparison to the index region where the identity is used; empty = everywhere.
    std::function<bool(int, int)> mask;
    std::string mask_note;
};

const std::vector<GfIdentity>& gf_registry();
std::vector<std::string> gf_ids();
CheckResult verify_identity(const std::string& id, int S = 24, int J = 24);

struct BinomialSum {
    std::string id;
    std::string description;
    // Returns the first failing index as a JSON object, or null.
    std::function<nlohmann::json(int)> check;
    int default_range;
};

const std::vector<BinomialSum>& binomial_sum_registry();
CheckResult binomial_sum_check(const std::string& id, int range = -1);

}  // namespace hierarchia

#endif
