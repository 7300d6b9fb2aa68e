#include "hierarchia/numeric.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hierarchia {

namespace {

using Poly = std::vector<double>;  // coefficients in t, lowest first

Poly derive(const Poly& p) {
    Poly r(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = static_cast<double>(i) * p[i];
    return r;
}

Poly mul_one_minus_t2(const Poly& p) {
    Poly r(p.size() + 2, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] += p[i];
        r[i + 2] -= p[i];
    }
    return r;
}

Poly add(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

Poly shift_up(const Poly& p, double c) {
    Poly r(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = c * p[i];
    return r;
}

double horner(const Poly& p, double t) {
    double s = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) s = s * t + p[i];
    return s;
}

// d^m tanh = P_m(tanh), d^m sech = sech * R_m(tanh), d^m exp(-u^2) = (-1)^m H_m(u) exp(-u^2).
struct ShapeTables {
    std::vector<Poly> tanh_p, sech_r, hermite;
    std::mutex mu;
    void ensure(int k) {
        std::lock_guard<std::mutex> lock(mu);
        if (tanh_p.empty()) {
            tanh_p.push_back({0.0, 1.0});
            sech_r.push_back({1.0});
            hermite.push_back({1.0});
            hermite.push_back({0.0, 2.0});
        }
        while (static_cast<int>(tanh_p.size()) <= k) tanh_p.push_back(mul_one_minus_t2(derive(tanh_p.back())));
        while (static_cast<int>(sech_r.size()) <= k) {
            const Poly& r = sech_r.back();
            sech_r.push_back(add(shift_up(r, -1.0), mul_one_minus_t2(derive(r))));
        }
        while (static_cast<int>(hermite.size()) <= k) {
            int m = static_cast<int>(hermite.size()) - 1;
            Poly next = add(shift_up(hermite[m], 2.0), Poly{});
            const Poly& prev = hermite[m - 1];
            for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2.0 * m * prev[i];
            hermite.push_back(next);
        }
    }
};

ShapeTables& tables() {
    static ShapeTables t;
    return t;
}

// Derivatives of the unchirped profile f(scale (x - shift)).
std::vector<double> base_derivs(const Potential::Term& t, double x, int kmax) {
    std::vector<double> d(kmax + 1, 0.0);
    double u = t.scale * (x - t.shift);
    double c = 1.0;
    auto& tb = tables();
    tb.ensure(kmax);
    for (int m = 0; m <= kmax; ++m) {
        switch (t.shape) {
            case Potential::Shape::Constant: d[m] = m == 0 ? 1.0 : 0.0; break;
            case Potential::Shape::Tanh: d[m] = c * horner(tb.tanh_p[m], std::tanh(u)); break;
            case Potential::Shape::Sech: d[m] = c * horner(tb.sech_r[m], std::tanh(u)) / std::cosh(u); break;
            case Potential::Shape::Gaussian:
                d[m] = c * ((m % 2) ? -1.0 : 1.0) * horner(tb.hermite[m], u) * std::exp(-u * u);
                break;
        }
        c *= t.scale;
    }
    return d;
}

}  // namespace

Potential Potential::constant(cplx q0) { return Potential({Term{Shape::Constant, q0}}); }

Potential Potential::sech(cplx amp, double kappa, double scale, double shift) {
    return Potential({Term{Shape::Sech, amp, scale, shift, kappa}});
}

Potential Potential::gaussian(cplx amp, double kappa, double scale, double shift) {
    return Potential({Term{Shape::Gaussian, amp, scale, shift, kappa}});
}

Potential Potential::tanh_profile(cplx amp, double scale, double shift) {
    return Potential({Term{Shape::Tanh, amp, scale, shift, 0.0}});
}

Potential Potential::operator+(const Potential& o) const {
    std::vector<Term> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return Potential(std::move(t));
}

std::vector<cplx> Potential::derivs(double x, int kmax) const {
    std::vector<cplx> out(kmax + 1, cplx(0.0));
    for (const auto& t : terms_) {
        if (t.shape == Shape::Tanh && t.kappa != 0.0) throw std::invalid_argument("Potential: chirped tanh has no limit");
        std::vector<double> f = base_derivs(t, x, kmax);
        if (t.kappa == 0.0) {
            for (int m = 0; m <= kmax; ++m) out[m] += t.amp * f[m];
            continue;
        }
        cplx e = std::exp(cplx(0.0, t.kappa * x));
        cplx ik(0.0, t.kappa);
        for (int m = 0; m <= kmax; ++m) {
            cplx s(0.0);
            double b = 1.0;  // binom(m, j)
            cplx p = 1.0;    // (i kappa)^(m-j), built from j = m downwards
            std::vector<cplx> ikp(m + 1);
            ikp[0] = 1.0;
            for (int j = 1; j <= m; ++j) ikp[j] = ikp[j - 1] * ik;
            for (int j = 0; j <= m; ++j) {
                s += b * f[j] * ikp[m - j];
                b = b * (m - j) / (j + 1);
            }
            (void)p;
            out[m] += t.amp * e * s;
        }
    }
    return out;
}

cplx Potential::operator()(double x) const { return derivs(x, 0)[0]; }

cplx Potential::limit_minus() const {
    cplx s(0.0);
    for (const auto& t : terms_) {
        if (t.shape == Shape::Constant) s += t.amp;
        if (t.shape == Shape::Tanh) s += (t.scale > 0 ? -1.0 : 1.0) * t.amp;
    }
    return s;
}

cplx Potential::limit_plus() const {
    cplx s(0.0);
    for (const auto& t : terms_) {
        if (t.shape == Shape::Constant) s += t.amp;
        if (t.shape == Shape::Tanh) s += (t.scale > 0 ? 1.0 : -1.0) * t.amp;
    }
    return s;
}

bool Potential::zero_boundary() const { return std::abs(limit_minus()) == 0.0 && std::abs(limit_plus()) == 0.0; }

std::string Potential::describe() const {
    std::ostringstream os;
    const char* names[] = {"constant", "tanh", "sech", "gaussian"};
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (i) os << " + ";
        os << "(" << t.amp.real() << (t.amp.imag() < 0 ? "" : "+") << t.amp.imag() << "i)*" << names[static_cast<int>(t.shape)];
        if (t.shape != Shape::Constant) os << "(" << t.scale << "*(x-" << t.shift << "))";
        if (t.kappa != 0.0) os << "*exp(i*" << t.kappa << "*x)";
    }
    return os.str();
}

CompiledPoly::CompiledPoly(const DiffPoly& p) {
    for (const auto& [key, c] : p.terms()) {
        Term t;
        t.coeff = cplx(c.re.get_d(), c.im.get_d());
        for (const auto& f : key) {
            t.factors.push_back({f.var, f.order, f.power});
            max_order_ = std::max(max_order_, f.order);
        }
        terms_.push_back(std::move(t));
    }
}

cplx CompiledPoly::eval(const std::vector<cplx>& dq) const {
    if (static_cast<int>(dq.size()) <= max_order_) throw std::invalid_argument("CompiledPoly::eval: not enough derivatives");
    cplx s(0.0);
    for (const auto& t : terms_) {
        cplx m = t.coeff;
        for (const auto& f : t.factors) {
            cplx v = f.var == Var::QBAR ? std::conj(dq[f.order]) : dq[f.order];
            for (int k = 0; k < f.power; ++k) m *= v;
        }
        s += m;
    }
    return s;
}

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

cplx gk15(const std::function<cplx(double)>& f, double a, double b, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx k = fc * kWgk[7], g = fc * kWg[3];
    for (int i = 0; i < 7; ++i) {
        cplx f1 = f(c - h * kXgk[i]), f2 = f(c + h * kXgk[i]);
        k += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
    }
    err = std::abs((k - g) * h);
    return k * h;
}

cplx adapt(const std::function<cplx(double)>& f, double a, double b, cplx whole, double err, double tol, int depth,
           const QuadratureSpec& spec, double& total_err) {
    if (err <= tol || depth >= spec.max_depth) {
        total_err += err;
        return whole;
    }
    double m = 0.5 * (a + b), e1, e2;
    cplx l = gk15(f, a, m, e1), r = gk15(f, m, b, e2);
    return adapt(f, a, m, l, e1, 0.5 * tol, depth + 1, spec, total_err) +
           adapt(f, m, b, r, e2, 0.5 * tol, depth + 1, spec, total_err);
}

}  // namespace

cplx integrate_adaptive(const std::function<cplx(double)>& f, const QuadratureSpec& spec, double* err_estimate) {
    // Start from a uniform split so narrow features are not missed by the first rule.
    const int pieces = 32;
    double h = (spec.b - spec.a) / pieces;
    cplx sum(0.0);
    double total_err = 0.0;
    std::vector<std::pair<cplx, double>> first(pieces);
    double scale = 0.0;
    for (int i = 0; i < pieces; ++i) {
        double e;
        cplx v = gk15(f, spec.a + i * h, spec.a + (i + 1) * h, e);
        first[i] = {v, e};
        scale += std::abs(v);
    }
    double tol = std::max(spec.abs_tol, spec.rel_tol * scale);
    for (int i = 0; i < pieces; ++i)
        sum += adapt(f, spec.a + i * h, spec.a + (i + 1) * h, first[i].first, first[i].second, tol / pieces, 0, spec, total_err);
    if (err_estimate) *err_estimate = total_err;
    return sum;
}

}  // namespace hierarchia
