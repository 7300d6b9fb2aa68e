#ifndef HIERARCHIA_EVOLVE_HPP
#define HIERARCHIA_EVOLVE_HPP

#include "hierarchia/exact.hpp"
#include "hierarchia/hierarchy.hpp"
#include "hierarchia/numeric.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hierarchia {

// a(xi) + b(xi) s with s^2 = xi^2 + 4; polynomials stored lowest degree first.
class SymbolElement {
public:
    SymbolElement() = default;
    SymbolElement(std::vector<Rational> a, std::vector<Rational> b);
    static SymbolElement constant(const Rational& c);
    static SymbolElement xi();
    static SymbolElement s();

    const std::vector<Rational>& a() const { return a_; }
    const std::vector<Rational>& b() const { return b_; }
    bool is_zero() const { return a_.empty() && b_.empty(); }

    SymbolElement& operator+=(const SymbolElement& o);
    SymbolElement& operator-=(const SymbolElement& o);
    friend SymbolElement operator+(SymbolElement x, const SymbolElement& y) { return x += y; }
    friend SymbolElement operator-(SymbolElement x, const SymbolElement& y) { return x -= y; }
    friend SymbolElement operator*(const SymbolElement& x, const SymbolElement& y);
    friend SymbolElement operator*(const Rational& c, const SymbolElement& x);
    friend bool operator==(const SymbolElement& x, const SymbolElement& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    std::string str() const;

private:
    void trim();
    std::vector<Rational> a_, b_;
};

SymbolElement pow(const SymbolElement& x, int k);

using SymbolMatrix = std::array<std::array<SymbolElement, 4>, 4>;
SymbolMatrix operator*(const SymbolMatrix& x, const SymbolMatrix& y);
bool operator==(const SymbolMatrix& x, const SymbolMatrix& y);

// Linear even symbol of the perturbative system, without the xi^(2m-2) prefactor.
SymbolMatrix lin_even_core();
// 2s V and 2 xi W, which clear the denominators of the diagonalizing pair.
SymbolMatrix scaled_v();
SymbolMatrix scaled_w();

struct SymbolPerturbation {
    bool active = false;
    int row = 0;
    int col = 0;
    Rational delta;
};

bool symbol_check_even(int m, const SymbolPerturbation& perturb = {});
// Coefficients of xi^0..xi^(2k+1) in the odd linear symbol L^{2k+1}.
std::vector<Rational> odd_linear_symbol(int k);
bool symbol_check_odd(int m, bool drop_first_term = false);

struct Blowup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Periodic grid x_j = -L + 2 L j / N carrying the perturbation p of a frozen background.
struct FieldState {
    Hierarchy hierarchy = Hierarchy::NLS;
    int flow = 2;
    int N = 0;
    double L = 0.0;
    double t = 0.0;
    std::vector<cplx> p;
    Potential background;

    std::vector<double> grid() const;
    std::vector<cplx> field() const;
};

FieldState make_state(Hierarchy h, int flow, int N, double L, const Potential& initial, const Potential& background = {});

// Spectral derivatives of q = background + p, orders 0..kmax.
std::vector<std::vector<cplx>> field_derivatives(const FieldState& st, int kmax);
// Pointwise evaluation of a differential polynomial on the grid.
std::vector<cplx> evaluate_on_grid(const DiffPoly& p, const FieldState& st);
std::vector<cplx> evaluate_on_grid(const DiffPoly& p, const std::vector<std::vector<cplx>>& derivs);

struct EvolveOptions {
    double dt = 1e-3;
    long steps = 100;
    std::string method = "ifrk4";
    double blowup = 1e6;
    bool dealias = true;
    long record_every = 1;
    std::vector<Hamiltonian> invariants;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::vector<cplx>> values;  // values[step][invariant]
    std::vector<Hamiltonian> invariants;
    FieldState final_state;
};

// Time derivative of q as a differential polynomial (i q_t = F for NLS/GP, u_t = F for KdV).
DiffPoly time_derivative(Hierarchy h, int n);

FieldState evolve_flow(const FieldState& state, int n, double dt, long steps, const std::string& method = "ifrk4");
Trajectory evolve_with_invariants(const FieldState& state, const EvolveOptions& opt);

std::vector<cplx> invariant_values(const FieldState& st, const std::vector<Hamiltonian>& hs);

struct ConservationReport {
    std::vector<std::string> names;
    std::vector<double> drift;
    double max_drift = 0.0;
};

ConservationReport conservation_report(const Trajectory& tr);

struct Snapshot {
    std::uint64_t N = 0;
    double L = 0.0;
    double t = 0.0;
    std::vector<std::complex<float>> data;
};

void write_snapshot(const std::string& path, const FieldState& st);
Snapshot read_snapshot(const std::string& path);

}  // namespace hierarchia

#endif
