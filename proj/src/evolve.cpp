#include "hierarchia/evolve.hpp"
#include "hierarchia/inject.hpp"

#include "hierarchia/simd.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

namespace hierarchia {

// ---------- symbol algebra ----------

namespace {

using RPoly = std::vector<Rational>;

void trim_poly(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly padd(const RPoly& x, const RPoly& y, int sign = 1) {
    RPoly r(std::max(x.size(), y.size()), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) r[i] += sign > 0 ? y[i] : Rational(-y[i]);
    trim_poly(r);
    return r;
}

RPoly pmul(const RPoly& x, const RPoly& y) {
    if (x.empty() || y.empty()) return {};
    RPoly r(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    trim_poly(r);
    return r;
}

}  // namespace

SymbolElement::SymbolElement(std::vector<Rational> a, std::vector<Rational> b) : a_(std::move(a)), b_(std::move(b)) {
    trim();
}

void SymbolElement::trim() {
    trim_poly(a_);
    trim_poly(b_);
}

SymbolElement SymbolElement::constant(const Rational& c) { return SymbolElement({c}, {}); }
SymbolElement SymbolElement::xi() { return SymbolElement({Rational(0), Rational(1)}, {}); }
SymbolElement SymbolElement::s() { return SymbolElement({}, {Rational(1)}); }

SymbolElement& SymbolElement::operator+=(const SymbolElement& o) {
    a_ = padd(a_, o.a_);
    b_ = padd(b_, o.b_);
    return *this;
}

SymbolElement& SymbolElement::operator-=(const SymbolElement& o) {
    a_ = padd(a_, o.a_, -1);
    b_ = padd(b_, o.b_, -1);
    return *this;
}

SymbolElement operator*(const SymbolElement& x, const SymbolElement& y) {
    static const RPoly s2 = {Rational(4), Rational(0), Rational(1)};
    RPoly a = padd(pmul(x.a_, y.a_), pmul(pmul(x.b_, y.b_), s2));
    RPoly b = padd(pmul(x.a_, y.b_), pmul(x.b_, y.a_));
    return SymbolElement(std::move(a), std::move(b));
}

SymbolElement operator*(const Rational& c, const SymbolElement& x) { return SymbolElement::constant(c) * x; }

std::string SymbolElement::str() const {
    auto ps = [](const RPoly& p) {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            if (!first) os << " + ";
            os << p[i].get_str();
            if (i) os << "*xi^" << i;
            first = false;
        }
        return first ? std::string("0") : os.str();
    };
    if (b_.empty()) return ps(a_);
    return "(" + ps(a_) + ") + (" + ps(b_) + ")*s";
}

SymbolElement pow(const SymbolElement& x, int k) {
    SymbolElement r = SymbolElement::constant(1);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

SymbolMatrix operator*(const SymbolMatrix& x, const SymbolMatrix& y) {
    SymbolMatrix r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r[i][j] += x[i][k] * y[k][j];
    return r;
}

bool operator==(const SymbolMatrix& x, const SymbolMatrix& y) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!(x[i][j] == y[i][j])) return false;
    return true;
}

namespace {

SymbolMatrix scalar_matrix(const SymbolElement& d) {
    SymbolMatrix r;
    for (int i = 0; i < 4; ++i) r[i][i] = d;
    return r;
}

SymbolMatrix scale(const SymbolElement& c, const SymbolMatrix& m) {
    SymbolMatrix r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = c * m[i][j];
    return r;
}

// Block pattern [[u+1, u-1], [u-1, u+1]] on rows 0-1 and [[u-1, u+1], [u+1, u-1]] on rows 2-3.
SymbolMatrix pattern(const SymbolElement& u, const SymbolElement& one) {
    SymbolMatrix r;
    SymbolElement p = u + one, m = u - one;
    r[0][0] = p, r[0][1] = m, r[1][0] = m, r[1][1] = p;
    r[2][2] = m, r[2][3] = p, r[3][2] = p, r[3][3] = m;
    return r;
}

}  // namespace

SymbolMatrix lin_even_core() {
    SymbolElement x2 = pow(SymbolElement::xi(), 2);
    SymbolElement two = SymbolElement::constant(2);
    SymbolElement d = x2 + two;
    SymbolElement zero;
    SymbolMatrix r;
    r[0][0] = d, r[0][1] = two;
    r[1][0] = zero - two, r[1][1] = zero - d;
    r[2][2] = zero - d, r[2][3] = zero - two;
    r[3][2] = two, r[3][3] = d;
    return r;
}

// V = (1/2)[xi/s +- 1] = (1/(2s)) [xi +- s]
SymbolMatrix scaled_v() { return pattern(SymbolElement::xi(), SymbolElement::s()); }
// W = (1/2)[s/xi +- 1] = (1/(2 xi)) [s +- xi]
SymbolMatrix scaled_w() { return pattern(SymbolElement::s(), SymbolElement::xi()); }

bool symbol_check_even(int m, const SymbolPerturbation& perturb) {
    if (m < 1) throw std::invalid_argument("symbol_check_even: m >= 1");
    SymbolMatrix v = scaled_v(), w = scaled_w();
    if (perturb.active) v[perturb.row][perturb.col] += SymbolElement::constant(perturb.delta);
    SymbolMatrix core = lin_even_core();
    if (inject::active()) core[0][0] += SymbolElement::constant(inject::delta("symbol/even/" + std::to_string(m)));
    SymbolElement xi = SymbolElement::xi(), s = SymbolElement::s();
    SymbolElement four_xi_s = Rational(4) * (xi * s);
    // V W = I  <=>  (2sV)(2xiW) = 4 xi s I
    if (!(v * w == scalar_matrix(four_xi_s))) return false;
    // D = xi^(2m-1) s diag(1, -1, 1, -1)
    SymbolMatrix d;
    SymbolElement dd = pow(xi, 2 * m - 1) * s, zero;
    d[0][0] = dd, d[1][1] = zero - dd, d[2][2] = dd, d[3][3] = zero - dd;
    // V D W = L  <=>  (2sV) D (2xiW) = 4 xi s L
    SymbolMatrix lhs = v * d * w;
    SymbolMatrix rhs = scale(four_xi_s * pow(xi, 2 * m - 2), core);
    return lhs == rhs;
}

std::vector<Rational> odd_linear_symbol(int k) {
    // i d_t q = sum_j 4^(k-j) binom(1/2, k-j) (i d_x)^(2j+1) q, and i d_x = -D_x.
    std::vector<Rational> c(2 * k + 2, Rational(0));
    Rational half = frac(1, 2);
    for (int j = 0; j <= k; ++j) {
        Rational four = 1;
        for (int e = 0; e < k - j; ++e) four *= 4;
        c[2 * j + 1] = -four * binom(half, k - j);
        if (inject::active()) c[2 * j + 1] += inject::delta("symbol/odd/" + std::to_string(k) + "/" + std::to_string(j));
    }
    return c;
}

bool symbol_check_odd(int m, bool drop_first_term) {
    if (m < 0) throw std::invalid_argument("symbol_check_odd: m >= 0");
    std::vector<Rational> acc(2 * m + 2, Rational(0));
    Rational mhalf = frac(-1, 2);
    for (int k = drop_first_term ? 1 : 0; k <= m; ++k) {
        Rational w = binom(mhalf, m - k);
        for (int e = 0; e < m - k; ++e) w *= 4;
        std::vector<Rational> l = odd_linear_symbol(k);
        for (std::size_t i = 0; i < l.size(); ++i) acc[i] += w * l[i];
    }
    for (int i = 0; i < 2 * m + 1; ++i)
        if (acc[i] != 0) return false;
    return acc[2 * m + 1] == -1;
}

// ---------- spectral machinery ----------

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

class Fft {
public:
    explicit Fft(int n) : n_(n) {
        in_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
        out_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
        std::lock_guard<std::mutex> lock(plan_mutex());
        fwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in_), reinterpret_cast<fftw_complex*>(out_),
                                FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in_), reinterpret_cast<fftw_complex*>(out_),
                                FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(in_);
        fftw_free(out_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // Normalized forward transform.
    void forward(const cplx* x, cplx* y) {
        std::copy(x, x + n_, in_);
        fftw_execute(fwd_);
        double s = 1.0 / n_;
        for (int i = 0; i < n_; ++i) y[i] = out_[i] * s;
    }
    void backward(const cplx* x, cplx* y) {
        std::copy(x, x + n_, in_);
        fftw_execute(bwd_);
        std::copy(out_, out_ + n_, y);
    }

private:
    int n_;
    cplx* in_;
    cplx* out_;
    fftw_plan fwd_, bwd_;
};

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> wavenumbers(int N, double L) {
    std::vector<double> k(N);
    double base = M_PI / L;
    for (int j = 0; j < N; ++j) {
        int m = j < N / 2 ? j : j - N;
        k[j] = (j == N / 2) ? 0.0 : base * m;
    }
    return k;
}

// Grid evaluator for a differential polynomial.
class GridPoly {
public:
    struct Factor {
        bool conj;
        int order;
        int power;
    };
    struct Term {
        cplx coeff;
        std::vector<Factor> factors;
    };

    explicit GridPoly(const DiffPoly& p) {
        for (const auto& [key, c] : p.terms()) {
            Term t{cplx(c.re.get_d(), c.im.get_d()), {}};
            for (const auto& f : key) {
                t.factors.push_back({f.var == Var::QBAR, f.order, f.power});
                max_order_ = std::max(max_order_, f.order);
            }
            terms_.push_back(std::move(t));
        }
    }

    int max_order() const { return max_order_; }
    bool empty() const { return terms_.empty(); }

    void eval(const std::vector<std::vector<cplx>>& d, const std::vector<std::vector<cplx>>& dc, cplx* out,
              std::size_t n) const {
        const auto& k = simd::active();
        std::fill(out, out + n, cplx(0.0));
        std::vector<cplx> tmp(n);
        for (const auto& t : terms_) {
            if (t.factors.empty()) {
                for (std::size_t i = 0; i < n; ++i) out[i] += t.coeff;
                continue;
            }
            bool first = true;
            for (const auto& f : t.factors) {
                const cplx* src = (f.conj ? dc : d)[f.order].data();
                for (int e = 0; e < f.power; ++e) {
                    if (first) {
                        std::copy(src, src + n, tmp.begin());
                        first = false;
                    } else {
                        k.cmul(tmp.data(), tmp.data(), src, n);
                    }
                }
            }
            k.axpy(out, t.coeff, tmp.data(), n);
        }
    }

private:
    std::vector<Term> terms_;
    int max_order_ = 0;
};

std::vector<std::vector<cplx>> conj_all(const std::vector<std::vector<cplx>>& d) {
    std::vector<std::vector<cplx>> r(d.size());
    for (std::size_t m = 0; m < d.size(); ++m) {
        r[m].resize(d[m].size());
        std::transform(d[m].begin(), d[m].end(), r[m].begin(), [](cplx z) { return std::conj(z); });
    }
    return r;
}

// Derivatives of the background on the grid, analytic.
std::vector<std::vector<cplx>> background_derivs(const FieldState& st, int kmax) {
    std::vector<std::vector<cplx>> out(kmax + 1, std::vector<cplx>(st.N, cplx(0.0)));
    if (st.background.terms().empty()) return out;
    std::vector<double> x = st.grid();
    for (int j = 0; j < st.N; ++j) {
        auto d = st.background.derivs(x[j], kmax);
        for (int m = 0; m <= kmax; ++m) out[m][j] = d[m];
    }
    return out;
}

struct Spectral {
    int N;
    Fft fft;
    std::vector<double> k;
    std::vector<std::vector<cplx>> ik_pow;  // (i k)^m
    explicit Spectral(const FieldState& st, int kmax) : N(st.N), fft(st.N), k(wavenumbers(st.N, st.L)) {
        ik_pow.assign(kmax + 1, std::vector<cplx>(N));
        for (int j = 0; j < N; ++j) {
            cplx ik(0.0, k[j]), p = 1.0;
            for (int m = 0; m <= kmax; ++m, p *= ik) ik_pow[m][j] = p;
        }
    }
    void derivs_from_hat(const std::vector<cplx>& hat, int kmax, std::vector<std::vector<cplx>>& out) {
        out.resize(kmax + 1);
        std::vector<cplx> tmp(N);
        for (int m = 0; m <= kmax; ++m) {
            out[m].resize(N);
            simd::active().cmul(tmp.data(), hat.data(), ik_pow[m].data(), N);
            fft.backward(tmp.data(), out[m].data());
        }
    }
};

void check_state(const FieldState& st) {
    if (!is_power_of_two(st.N)) throw std::invalid_argument("FieldState: N must be a power of two");
    if (!(st.L > 0)) throw std::invalid_argument("FieldState: L must be positive");
    if (static_cast<int>(st.p.size()) != st.N) throw std::invalid_argument("FieldState: sample count mismatch");
}

}  // namespace

std::vector<double> FieldState::grid() const {
    std::vector<double> x(N);
    for (int j = 0; j < N; ++j) x[j] = -L + 2.0 * L * j / N;
    return x;
}

std::vector<cplx> FieldState::field() const {
    std::vector<cplx> q = p;
    if (!background.terms().empty()) {
        std::vector<double> x = grid();
        for (int j = 0; j < N; ++j) q[j] += background(x[j]);
    }
    return q;
}

FieldState make_state(Hierarchy h, int flow, int N, double L, const Potential& initial, const Potential& background) {
    FieldState st;
    st.hierarchy = h;
    st.flow = flow;
    st.N = N;
    st.L = L;
    st.background = background;
    st.p.resize(N);
    check_state(st);
    std::vector<double> x = st.grid();
    for (int j = 0; j < N; ++j) st.p[j] = initial(x[j]) - (background.terms().empty() ? cplx(0.0) : background(x[j]));
    return st;
}

std::vector<std::vector<cplx>> field_derivatives(const FieldState& st, int kmax) {
    check_state(st);
    Spectral sp(st, kmax);
    std::vector<cplx> hat(st.N);
    sp.fft.forward(st.p.data(), hat.data());
    std::vector<std::vector<cplx>> d;
    sp.derivs_from_hat(hat, kmax, d);
    auto b = background_derivs(st, kmax);
    for (int m = 0; m <= kmax; ++m)
        for (int j = 0; j < st.N; ++j) d[m][j] += b[m][j];
    return d;
}

std::vector<cplx> evaluate_on_grid(const DiffPoly& p, const std::vector<std::vector<cplx>>& derivs) {
    GridPoly gp(p);
    if (static_cast<int>(derivs.size()) <= gp.max_order())
        throw std::invalid_argument("evaluate_on_grid: not enough derivatives");
    std::size_t n = derivs[0].size();
    std::vector<cplx> out(n);
    gp.eval(derivs, conj_all(derivs), out.data(), n);
    return out;
}

std::vector<cplx> evaluate_on_grid(const DiffPoly& p, const FieldState& st) {
    GridPoly gp(p);
    return evaluate_on_grid(p, field_derivatives(st, gp.max_order()));
}

DiffPoly time_derivative(Hierarchy h, int n) {
    DiffPoly f = flow_rhs(h, n);
    if (h == Hierarchy::KDV) return f;
    return f * GaussianRational(Rational(0), Rational(-1));
}

namespace {

class Evolver {
public:
    Evolver(const FieldState& st, int n, bool dealias)
        : st_(st), hier_(st.hierarchy), primary_(st.hierarchy == Hierarchy::KDV ? Var::U : Var::Q) {
        DiffPoly g = time_derivative(hier_, n);
        DiffPoly lin;
        for (const auto& [key, c] : g.terms())
            if (key.size() == 1 && key[0].power == 1 && key[0].var == primary_) lin.add_term(key, c);
        nonlin_ = std::make_unique<GridPoly>(g - lin);
        lin_ = std::make_unique<GridPoly>(lin);
        kmax_ = std::max(nonlin_->max_order(), lin_->max_order());
        sp_ = std::make_unique<Spectral>(st, kmax_);
        int N = st.N;
        symbol_.assign(N, cplx(0.0));
        for (const auto& [key, c] : lin.terms()) {
            cplx cc(c.re.get_d(), c.im.get_d());
            for (int j = 0; j < N; ++j) symbol_[j] += cc * sp_->ik_pow[key[0].order][j];
        }
        mask_.assign(N, cplx(1.0));
        if (dealias)
            for (int j = 0; j < N; ++j) {
                int m = j < N / 2 ? j : j - N;
                if (3 * std::abs(m) > N) mask_[j] = 0.0;
            }
        bg_ = background_derivs(st, kmax_);
        has_bg_ = !st.background.terms().empty();
        if (has_bg_) {
            // Linear part applied to the frozen background is a fixed forcing.
            bg_forcing_.resize(N);
            lin_->eval(bg_, conj_all(bg_), bg_forcing_.data(), N);
        }
    }

    // hat of the non-stiff part of d_t p.
    void rhs(const std::vector<cplx>& hat, std::vector<cplx>& out) {
        int N = st_.N;
        sp_->derivs_from_hat(hat, kmax_, d_);
        if (has_bg_)
            for (int m = 0; m <= kmax_; ++m)
                for (int j = 0; j < N; ++j) d_[m][j] += bg_[m][j];
        if (hier_ == Hierarchy::KDV)
            for (auto& row : d_)
                for (auto& z : row) z = cplx(z.real(), 0.0);
        std::vector<cplx> val(N);
        nonlin_->eval(d_, conj_all(d_), val.data(), N);
        if (has_bg_)
            for (int j = 0; j < N; ++j) val[j] += bg_forcing_[j];
        out.resize(N);
        sp_->fft.forward(val.data(), out.data());
        simd::active().cmul(out.data(), out.data(), mask_.data(), N);
    }

    void step(std::vector<cplx>& hat, double dt) {
        int N = st_.N;
        const auto& k = simd::active();
        if (e_dt_ != dt) {
            e_half_.resize(N);
            e_full_.resize(N);
            for (int j = 0; j < N; ++j) {
                e_half_[j] = std::exp(symbol_[j] * (0.5 * dt));
                e_full_[j] = e_half_[j] * e_half_[j];
            }
            e_dt_ = dt;
        }
        std::vector<cplx> k1, k2, k3, k4, tmp(N), base(N);
        rhs(hat, k1);
        // k2 = N(E (p + dt/2 k1))
        std::copy(hat.begin(), hat.end(), tmp.begin());
        k.axpy(tmp.data(), 0.5 * dt, k1.data(), N);
        k.cmul(tmp.data(), tmp.data(), e_half_.data(), N);
        rhs(tmp, k2);
        // k3 = N(E p + dt/2 k2)
        k.cmul(base.data(), hat.data(), e_half_.data(), N);
        std::copy(base.begin(), base.end(), tmp.begin());
        k.axpy(tmp.data(), 0.5 * dt, k2.data(), N);
        rhs(tmp, k3);
        // k4 = N(E^2 p + dt E k3)
        k.cmul(tmp.data(), k3.data(), e_half_.data(), N);
        k.scale(tmp.data(), dt, tmp.data(), N);
        k.cmul_acc(tmp.data(), base.data(), e_half_.data(), N);
        rhs(tmp, k4);
        // p <- E^2 p + dt/6 (E^2 k1 + 2 E (k2 + k3) + k4)
        std::vector<cplx> acc(N);
        k.cmul(acc.data(), hat.data(), e_full_.data(), N);
        k.cmul(tmp.data(), k1.data(), e_full_.data(), N);
        k.axpy(acc.data(), dt / 6.0, tmp.data(), N);
        for (int j = 0; j < N; ++j) k2[j] += k3[j];
        k.cmul(tmp.data(), k2.data(), e_half_.data(), N);
        k.axpy(acc.data(), dt / 3.0, tmp.data(), N);
        k.axpy(acc.data(), dt / 6.0, k4.data(), N);
        hat.swap(acc);
    }

    Fft& fft() { return sp_->fft; }

private:
    const FieldState& st_;
    Hierarchy hier_;
    Var primary_;
    std::unique_ptr<GridPoly> nonlin_, lin_;
    std::unique_ptr<Spectral> sp_;
    int kmax_ = 0;
    std::vector<cplx> symbol_, mask_, bg_forcing_, e_half_, e_full_;
    double e_dt_ = -1.0;
    std::vector<std::vector<cplx>> bg_, d_;
    bool has_bg_ = false;
};

double sup_norm(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

std::vector<cplx> invariant_values(const FieldState& st, const std::vector<Hamiltonian>& hs) {
    std::vector<cplx> out;
    if (hs.empty()) return out;
    int kmax = 0;
    for (const auto& h : hs) kmax = std::max(kmax, GridPoly(h.density).max_order());
    auto d = field_derivatives(st, kmax);
    if (st.hierarchy == Hierarchy::KDV)
        for (auto& row : d)
            for (auto& z : row) z = cplx(z.real(), 0.0);
    double dx = 2.0 * st.L / st.N;
    for (const auto& h : hs) {
        std::vector<cplx> v = evaluate_on_grid(h.density, d);
        cplx s(0.0);
        for (const auto& z : v) s += z;
        out.push_back(s * dx);
    }
    return out;
}

Trajectory evolve_with_invariants(const FieldState& state, const EvolveOptions& opt) {
    check_state(state);
    if (opt.method != "ifrk4") throw std::invalid_argument("evolve: unknown method '" + opt.method + "'");
    if (!(opt.dt > 0) || opt.steps < 0) throw std::invalid_argument("evolve: dt must be positive and steps nonnegative");
    Trajectory tr;
    tr.invariants = opt.invariants;
    FieldState st = state;
    Evolver ev(st, st.flow, opt.dealias);
    std::vector<cplx> hat(st.N);
    ev.fft().forward(st.p.data(), hat.data());
    tr.t.push_back(st.t);
    tr.values.push_back(invariant_values(st, opt.invariants));
    long every = std::max<long>(1, opt.record_every);
    for (long s = 1; s <= opt.steps; ++s) {
        ev.step(hat, opt.dt);
        st.t = state.t + s * opt.dt;
        bool record = (s % every == 0) || s == opt.steps;
        if (record || s % 16 == 0) {
            ev.fft().backward(hat.data(), st.p.data());
            if (st.hierarchy == Hierarchy::KDV)
                for (auto& z : st.p) z = cplx(z.real(), 0.0);
            double sup = sup_norm(st.p);
            if (!std::isfinite(sup) || sup > opt.blowup)
                throw Blowup("evolve: sup norm " + std::to_string(sup) + " at t = " + std::to_string(st.t));
            if (record) {
                tr.t.push_back(st.t);
                tr.values.push_back(invariant_values(st, opt.invariants));
            }
        }
    }
    ev.fft().backward(hat.data(), st.p.data());
    if (st.hierarchy == Hierarchy::KDV)
        for (auto& z : st.p) z = cplx(z.real(), 0.0);
    tr.final_state = st;
    return tr;
}

FieldState evolve_flow(const FieldState& state, int n, double dt, long steps, const std::string& method) {
    FieldState st = state;
    st.flow = n;
    EvolveOptions opt;
    opt.dt = dt;
    opt.steps = steps;
    opt.method = method;
    opt.record_every = std::max<long>(steps, 1);
    return evolve_with_invariants(st, opt).final_state;
}

ConservationReport conservation_report(const Trajectory& tr) {
    ConservationReport r;
    for (std::size_t i = 0; i < tr.invariants.size(); ++i) {
        const auto& h = tr.invariants[i];
        r.names.push_back(std::string("H") + std::to_string(h.index) + "^" + hierarchy_name(h.hierarchy));
        cplx h0 = tr.values.front()[i];
        double d = 0.0;
        for (const auto& row : tr.values) d = std::max(d, std::abs(row[i] - h0) / (std::abs(h0) + 1.0));
        r.drift.push_back(d);
        r.max_drift = std::max(r.max_drift, d);
    }
    return r;
}

namespace {

template <typename T>
void put_le(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw std::runtime_error("read_snapshot: truncated file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const FieldState& st) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
    os.write("HIERFLD1", 8);
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(st.N));
    put_le<double>(os, st.L);
    put_le<double>(os, st.t);
    for (const cplx& z : st.field()) {
        put_le<float>(os, static_cast<float>(z.real()));
        put_le<float>(os, static_cast<float>(z.imag()));
    }
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, "HIERFLD1", 8) != 0) throw std::runtime_error("read_snapshot: bad magic");
    Snapshot s;
    s.N = get_le<std::uint64_t>(is);
    s.L = get_le<double>(is);
    s.t = get_le<double>(is);
    s.data.resize(s.N);
    for (auto& z : s.data) {
        float re = get_le<float>(is);
        float im = get_le<float>(is);
        z = {re, im};
    }
    return s;
}

}  // namespace hierarchia
