#ifndef HIERARCHIA_NUMERIC_HPP
#define HIERARCHIA_NUMERIC_HPP

#include "hierarchia/diffpoly.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace hierarchia {

using cplx = std::complex<double>;

// Sum of analytic profiles, each amp * f(scale * (x - shift)) * exp(i kappa x),
// with derivatives of every order in closed form.
class Potential {
public:
    enum class Shape { Constant, Tanh, Sech, Gaussian };
    struct Term {
        Shape shape;
        cplx amp;
        double scale = 1.0;
        double shift = 0.0;
        double kappa = 0.0;
    };

    Potential() = default;
    explicit Potential(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static Potential constant(cplx q0);
    static Potential sech(cplx amp, double kappa = 0.0, double scale = 1.0, double shift = 0.0);
    static Potential gaussian(cplx amp, double kappa = 0.0, double scale = 1.0, double shift = 0.0);
    static Potential tanh_profile(cplx amp, double scale, double shift = 0.0);

    Potential operator+(const Potential& o) const;

    cplx operator()(double x) const;
    // q, q_x, ..., d^kmax q at x.
    std::vector<cplx> derivs(double x, int kmax) const;
    cplx limit_minus() const;
    cplx limit_plus() const;
    bool zero_boundary() const;
    const std::vector<Term>& terms() const { return terms_; }
    std::string describe() const;

private:
    std::vector<Term> terms_;
};

// Numerical evaluator for a differential polynomial given derivative samples.
class CompiledPoly {
public:
    struct Factor {
        Var var;
        int order;
        int power;
    };
    struct Term {
        cplx coeff;
        std::vector<Factor> factors;
    };

    explicit CompiledPoly(const DiffPoly& p);

    int max_order() const { return max_order_; }
    const std::vector<Term>& terms() const { return terms_; }
    // dq[k] = d^k q; the conjugate generator uses conj(dq[k]); U uses dq[k].
    cplx eval(const std::vector<cplx>& dq) const;

private:
    std::vector<Term> terms_;
    int max_order_ = 0;
};

struct QuadratureSpec {
    double a = -40.0;
    double b = 40.0;
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;
};

// Adaptive Gauss-Kronrod 7-15.
cplx integrate_adaptive(const std::function<cplx(double)>& f, const QuadratureSpec& spec, double* err_estimate = nullptr);

}  // namespace hierarchia

#endif
