#include "hierarchia/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace hierarchia {

namespace {

const cplx I(0.0, 1.0);

int gamma_of(JostColumn c) { return (c == JostColumn::Minus1 || c == JostColumn::Plus1) ? 1 : -1; }
bool from_left(JostColumn c) { return c == JostColumn::Minus1 || c == JostColumn::Minus2; }

Vec2 rhs(const Potential& q, const SpectralPoint& p, int gamma, double x, const Vec2& y) {
    cplx qx = q(x);
    cplx shift = I * p.z * static_cast<double>(gamma);
    return {(-I * p.lambda + shift) * y[0] + qx * y[1], std::conj(qx) * y[0] + (I * p.lambda + shift) * y[1]};
}

// 2c / (exp(2 c x) + 1) without overflow.
double fermi(double c, double x) {
    double e = 2.0 * c * x;
    if (e > 0) {
        double m = std::exp(-e);
        return 2.0 * c * m / (1.0 + m);
    }
    return 2.0 * c / (std::exp(e) + 1.0);
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - -92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

Vec2 axpy(const Vec2& y, double h, std::initializer_list<std::pair<double, const Vec2*>> ks) {
    Vec2 r = y;
    for (auto [w, k] : ks) {
        r[0] += h * w * (*k)[0];
        r[1] += h * w * (*k)[1];
    }
    return r;
}

struct Stepper {
    const Potential& q;
    const SpectralPoint& p;
    int gamma;
    double tol;
    long max_steps;
    long steps = 0;
    double h_last = 0.0;

    Vec2 f(double x, const Vec2& y) const { return rhs(q, p, gamma, x, y); }

    // Advances y from x0 to x1 (either direction).
    Vec2 advance(double x0, double x1, Vec2 y, double tol_here) {
        double dir = x1 >= x0 ? 1.0 : -1.0;
        double span = std::abs(x1 - x0);
        if (span == 0.0) return y;
        double h = h_last > 0 ? h_last : 0.05 / std::max(1.0, std::abs(p.lambda));
        h = std::min(h, span);
        double x = x0;
        Vec2 k1 = f(x, y);
        while (dir * (x1 - x) > 0) {
            if (++steps > max_steps) throw NonConvergence("integrate_jost: step budget exhausted");
            double remaining = std::abs(x1 - x);
            bool last = h >= remaining;
            double hs = dir * (last ? remaining : h);
            Vec2 k2 = f(x + c2 * hs, axpy(y, hs, {{a21, &k1}}));
            Vec2 k3 = f(x + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
            Vec2 k4 = f(x + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            Vec2 k5 = f(x + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            Vec2 k6 = f(x + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            Vec2 yn = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            double xn = last ? x1 : x + hs;
            Vec2 k7 = f(xn, yn);
            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                cplx e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                double sc = tol_here * (1.0 + std::max(std::abs(y[i]), std::abs(yn[i])));
                err = std::max(err, std::abs(e) / sc);
            }
            if (!std::isfinite(err)) throw NonConvergence("integrate_jost: non-finite state");
            if (err <= 1.0) {
                x = xn;
                y = yn;
                k1 = k7;
                if (!last) h_last = std::abs(hs);
            }
            double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = std::abs(hs) * fac;
            if (h < 1e-13 * std::max(1.0, std::abs(x))) throw NonConvergence("integrate_jost: step size underflow");
        }
        return y;
    }
};

}  // namespace

SpectralPoint SpectralPoint::nzbc(cplx lambda) {
    SpectralPoint p;
    p.lambda = lambda;
    p.z = std::sqrt(lambda * lambda - 1.0);
    p.zeta = lambda + p.z;
    p.zbc = false;
    return p;
}

SpectralPoint SpectralPoint::zero_bc(cplx lambda) {
    SpectralPoint p;
    p.lambda = lambda;
    p.z = lambda;
    p.zeta = lambda + p.z;
    p.zbc = true;
    return p;
}

const char* jost_column_name(JostColumn c) {
    switch (c) {
        case JostColumn::Minus1: return "minus1";
        case JostColumn::Minus2: return "minus2";
        case JostColumn::Plus1: return "plus1";
        case JostColumn::Plus2: return "plus2";
    }
    return "?";
}

Vec2 jost_boundary(const Potential& q, const SpectralPoint& p, JostColumn c) {
    bool first = gamma_of(c) == 1;
    if (p.zbc) return first ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    cplx qb = from_left(c) ? q.limit_minus() : q.limit_plus();
    if (first) return {qb, I * (p.lambda - p.z)};
    return {I * (p.z - p.lambda), std::conj(qb)};
}

cplx dark_zeta_plus(cplx q_minus, cplx q_plus) {
    if (std::abs(std::abs(q_minus) - 1.0) > 1e-12 || std::abs(std::abs(q_plus) - 1.0) > 1e-12)
        throw std::invalid_argument("dark_soliton: boundary values must lie on the unit circle");
    cplx r = q_plus / q_minus;
    double th = std::arg(r) / 2.0;
    if (th < 0) th += M_PI;
    if (th >= M_PI) th -= M_PI;
    return std::polar(1.0, th);
}

Potential dark_soliton(cplx q_minus, cplx q_plus) {
    cplx zp = dark_zeta_plus(q_minus, q_plus);
    cplx pre = q_plus * std::conj(zp);
    if (zp.imag() == 0.0) return Potential::constant(pre * zp.real());
    return Potential::constant(pre * zp.real()) + Potential::tanh_profile(pre * I * zp.imag(), zp.imag());
}

cplx dark_transmission(cplx q_minus, cplx q_plus, const SpectralPoint& p) {
    cplx zp = dark_zeta_plus(q_minus, q_plus);
    cplx zm = std::conj(zp);
    if (zp.imag() == 0.0) return q_minus / q_plus;
    if (p.zeta == zm) throw PoleAtZeta("dark_transmission: zeta = zeta_-");
    return (q_minus / q_plus) * (p.zeta - zp) / (p.zeta - zm);
}

Vec2 jost_reference(double x, const SpectralPoint& p, cplx q_minus, cplx q_plus, JostColumn c) {
    cplx zp = dark_zeta_plus(q_minus, q_plus);
    cplx zm = std::conj(zp);
    if (zp.imag() == 0.0) {
        Potential bg = Potential::constant(q_plus);
        return jost_boundary(bg, p, c);
    }
    cplx zeta = p.zeta;
    if (std::abs(zeta - zp) == 0.0 || std::abs(zeta - zm) == 0.0) throw PoleAtZeta("jost_reference: zeta hits zeta_+-");
    cplx zinv = 1.0 / zeta;
    double sp = fermi(zp.imag(), x);
    double sm = fermi(zm.imag(), x);
    switch (c) {
        case JostColumn::Minus1:
            return {q_minus * (zeta - zp) / (zeta - zm) + I * q_minus * sp / (zeta - zm),
                    I * zinv * (zeta - zp) / (zeta - zm) * zm * zm - zm * sp / (zeta - zm)};
        case JostColumn::Minus2:
            return {-I * zinv - zp * sm / (zeta - zp), std::conj(q_minus) - I * std::conj(q_minus) * sm / (zeta - zp)};
        case JostColumn::Plus1:
            return {q_plus * (zeta - zm) / (zeta - zp) + I * q_plus * sm / (zeta - zp),
                    I * zinv * (zeta - zm) / (zeta - zp) * zp * zp - zp * sm / (zeta - zp)};
        case JostColumn::Plus2:
            return {-I * zinv - zm * sp / (zeta - zm), std::conj(q_plus) - I * std::conj(q_plus) * sp / (zeta - zm)};
    }
    return {};
}

ScatterState integrate_jost(const Potential& q, const SpectralPoint& p, JostColumn c, const std::vector<double>& grid,
                            const JostOptions& opt) {
    if (grid.size() < 2) throw std::invalid_argument("integrate_jost: grid needs at least two nodes");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("integrate_jost: grid must be strictly increasing");
    bool left = from_left(c);
    double x_start = left ? grid.front() : grid.back();
    cplx q_inf = left ? q.limit_minus() : q.limit_plus();
    if (std::abs(q(x_start) - q_inf) >= opt.settle_tol)
        throw BoundaryNotSettled("integrate_jost: |q - q_inf| = " + std::to_string(std::abs(q(x_start) - q_inf)) +
                                 " at x = " + std::to_string(x_start));

    ScatterState st;
    st.x = grid;
    st.point = p;
    st.column = c;
    st.psi.resize(grid.size());
    Stepper stepper{q, p, gamma_of(c), opt.tol, opt.max_steps};
    std::size_t n = grid.size();
    Vec2 y = jost_boundary(q, p, c);
    if (left) {
        st.psi[0] = y;
        for (std::size_t i = 1; i < n; ++i) st.psi[i] = y = stepper.advance(grid[i - 1], grid[i], y, opt.tol);
    } else {
        st.psi[n - 1] = y;
        for (std::size_t i = n - 1; i-- > 0;) st.psi[i] = y = stepper.advance(grid[i + 1], grid[i], y, opt.tol);
    }
    st.steps = stepper.steps;

    if (opt.residual) {
        // Defect of each stored interval against a re-integration at tighter tolerance.
        Stepper check{q, p, gamma_of(c), opt.tol * 1e-2, opt.max_steps};
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t from = left ? i : i + 1, to = left ? i + 1 : i;
            Vec2 r = check.advance(grid[from], grid[to], st.psi[from], opt.tol * 1e-2);
            double scale = 1.0 + std::max(std::abs(st.psi[to][0]), std::abs(st.psi[to][1]));
            worst = std::max(worst, std::max(std::abs(r[0] - st.psi[to][0]), std::abs(r[1] - st.psi[to][1])) / scale);
        }
        st.residual = worst;
    }
    return st;
}

double jost_fd_residual(const Potential& q, const SpectralPoint& p, JostColumn c,
                        const std::function<Vec2(double)>& psi, const std::vector<double>& xs, double h) {
    static const double w[3] = {3.0 / 4, -3.0 / 20, 1.0 / 60};
    double worst = 0.0;
    for (double x : xs) {
        Vec2 d{0.0, 0.0};
        for (int k = 1; k <= 3; ++k) {
            Vec2 a = psi(x + k * h), b = psi(x - k * h);
            for (int i = 0; i < 2; ++i) d[i] += w[k - 1] * (a[i] - b[i]) / h;
        }
        Vec2 f = rhs(q, p, gamma_of(c), x, psi(x));
        Vec2 v = psi(x);
        double scale = 1.0 + std::max(std::abs(v[0]), std::abs(v[1]));
        worst = std::max(worst, std::max(std::abs(d[0] - f[0]), std::abs(d[1] - f[1])) / scale);
    }
    return worst;
}

TransmissionResult transmission(const Potential& q, const SpectralPoint& p, const JostOptions& opt) {
    if (std::abs(p.z) == 0.0) throw ZeroDenominator("transmission: z = 0");
    if (!(opt.box_left < -2.0 && opt.box_right > 2.0)) throw std::invalid_argument("transmission: box must contain [-2, 2]");
    std::vector<double> grid;
    grid.push_back(opt.box_left);
    for (double x = std::ceil(opt.box_left); x <= std::floor(opt.box_right); x += 1.0)
        if (x > grid.back()) grid.push_back(x);
    if (opt.box_right > grid.back()) grid.push_back(opt.box_right);

    ScatterState left = integrate_jost(q, p, JostColumn::Minus1, grid, opt);
    ScatterState right = integrate_jost(q, p, JostColumn::Plus2, grid, opt);
    cplx denom = p.zbc ? cplx(1.0) : 2.0 * p.z * (p.lambda - p.z);
    if (std::abs(denom) == 0.0) throw ZeroDenominator("transmission: vanishing denominator");

    std::vector<cplx> vals;
    for (double xe : {-2.0, 0.0, 2.0}) {
        auto it = std::find(grid.begin(), grid.end(), xe);
        std::size_t i = static_cast<std::size_t>(it - grid.begin());
        const Vec2& a = left.psi[i];
        const Vec2& b = right.psi[i];
        vals.push_back((a[0] * b[1] - a[1] * b[0]) / denom);
    }
    TransmissionResult r;
    r.a = vals[1];
    double mag = std::max(std::abs(r.a), 1e-300);
    for (const cplx& v : vals) r.spread = std::max(r.spread, std::abs(v - r.a) / mag);
    r.residual = std::max(left.residual, right.residual);
    return r;
}

HamiltonianValue hamiltonian_numeric(const Hamiltonian& h, const Potential& q, const QuadratureSpec& spec) {
    CompiledPoly cp(h.density);
    int k = cp.max_order();
    HamiltonianValue v;
    v.value = integrate_adaptive([&](double x) { return cp.eval(q.derivs(x, k)); }, spec, &v.quad_error);
    return v;
}

ExpansionReport expansion_check(const Potential& q, int N, double t0, int samples, const JostOptions& opt) {
    if (samples < 2) throw std::invalid_argument("expansion_check: need at least two samples");
    if (!(t0 > 0)) throw std::invalid_argument("expansion_check: t0 must be positive");
    ExpansionReport rep;
    rep.N = N;
    rep.zbc = q.zero_boundary();
    rep.t0 = t0;
    rep.expected = -(N + 2.0);
    Hierarchy hier = rep.zbc ? Hierarchy::NLS : Hierarchy::GP;
    QuadratureSpec qs;
    qs.a = opt.box_left;
    qs.b = opt.box_right;
    for (int n = 0; n <= N; ++n) rep.hamiltonians.push_back(hamiltonian_numeric(hamiltonian(hier, n), q, qs).value);
    cplx offset = rep.zbc ? cplx(0.0) : std::log(q.limit_minus() / q.limit_plus());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < samples; ++i) {
        double t = t0 * std::pow(4.0, static_cast<double>(i) / (samples - 1));
        cplx lam(0.0, t);
        SpectralPoint p = rep.zbc ? SpectralPoint::zero_bc(lam) : SpectralPoint::nzbc(lam);
        JostOptions o = opt;
        o.residual = false;
        TransmissionResult tr = transmission(q, p, o);
        cplx la = std::log(tr.a);
        cplx e = la - offset;
        cplx w = 2.0 * p.z, wp = w;
        for (int n = 0; n <= N; ++n, wp *= w) e -= I * rep.hamiltonians[n] / wp;
        rep.samples.push_back({t, la, e});
        double lx = std::log(t), ly = std::log(std::abs(e));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double m = samples;
    rep.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return rep;
}

}  // namespace hierarchia
