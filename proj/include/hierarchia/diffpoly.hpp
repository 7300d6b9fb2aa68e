#ifndef HIERARCHIA_DIFFPOLY_HPP
#define HIERARCHIA_DIFFPOLY_HPP

#include "hierarchia/exact.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hierarchia {

enum class Var : std::uint8_t { Q = 0, QBAR = 1, U = 2 };

const char* var_name(Var v);
Var var_from_name(const std::string& s);
Var conjugate_var(Var v);

struct Factor {
    Var var;
    int order;
    int power;
};

bool operator==(const Factor& a, const Factor& b);

// Canonical factor multiset: sorted by (var, order), powers merged, no zero powers.
using MonoKey = std::vector<Factor>;

struct KeyLess {
    bool operator()(const MonoKey& a, const MonoKey& b) const;
};

int total_derivs(const MonoKey& k);
int deriv_factor_count(const MonoKey& k);
int degree(const MonoKey& k);
int power_of(const MonoKey& k, Var v, int order);
MonoKey key_mul(const MonoKey& a, const MonoKey& b);
// Adds `power` to the factor (v, order); removes it when the result is zero.
MonoKey key_adjust(const MonoKey& k, Var v, int order, int power);

class NotDivisible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DiffPoly {
public:
    using Map = std::map<MonoKey, GaussianRational, KeyLess>;

    DiffPoly() = default;

    static DiffPoly constant(const GaussianRational& c);
    static DiffPoly var(Var v, int order = 0);
    static DiffPoly monomial(const GaussianRational& c, const MonoKey& factors);

    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    GaussianRational coeff(const MonoKey& k) const;
    GaussianRational constant_term() const { return coeff({}); }
    int max_order(Var v) const;

    void add_term(const MonoKey& k, const GaussianRational& c);

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const GaussianRational& c);

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator-(const DiffPoly& a);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const GaussianRational& c) { return a *= c; }
    friend DiffPoly operator*(const GaussianRational& c, DiffPoly a) { return a *= c; }
    friend bool operator==(const DiffPoly& a, const DiffPoly& b);
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

private:
    Map terms_;
};

DiffPoly pow(const DiffPoly& p, int k);
DiffPoly d_x(const DiffPoly& p);
DiffPoly d_x(const DiffPoly& p, int times);
DiffPoly divide_by_q(const DiffPoly& p);
DiffPoly partial(const DiffPoly& p, Var v, int order);
DiffPoly var_derivative(const DiffPoly& p, Var v);
DiffPoly conjugate(const DiffPoly& p);
bool is_total_derivative(const DiffPoly& p);
bool equivalent_mod_dx(const DiffPoly& p, const DiffPoly& r);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const GaussianRational& g);
nlohmann::json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const nlohmann::json& j);
GaussianRational gaussian_from_json(const nlohmann::json& j);
std::string to_latex(const DiffPoly& p);
std::string to_text(const DiffPoly& p);

}  // namespace hierarchia

#endif
