#include "hierarchia/coefficients.hpp"
#include "hierarchia/evolve.hpp"
#include "hierarchia/genfun.hpp"
#include "hierarchia/hierarchy.hpp"
#include "hierarchia/inject.hpp"
#include "hierarchia/scattering.hpp"
#include "hierarchia/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace hierarchia;
using nlohmann::json;

namespace {

constexpr int kUsage = 2;
constexpr int kFail = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string format;
    std::string out;
    int threads = 1;
    bool seedless = true;
};

json globals_json(const Globals& g) {
    return {{"format", g.format}, {"out", g.out}, {"threads", g.threads}, {"seedless", true}};
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + g.out);
    f << text;
}

Hierarchy parse_hierarchy(const std::string& s) {
    try {
        return hierarchy_from_name(s);
    } catch (const std::exception&) {
        throw UsageError("unknown hierarchy: " + s);
    }
}

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("expected a number or re,im: " + s);
    }
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

// ---------- sigma / hamiltonian / flow ----------

struct PolyArgs {
    std::string hierarchy = "nls";
    int n = 0;
};

int cmd_poly(const std::string& what, const PolyArgs& a, const Globals& g) {
    if (a.n < 0) throw UsageError(what + ": n must be non-negative");
    int cap = index_cap(-1);
    if (cap >= 0 && a.n > cap) throw UsageError(what + ": n exceeds HIERARCHIA_NMAX=" + std::to_string(cap));
    Hierarchy h = parse_hierarchy(a.hierarchy);
    DiffPoly p;
    if (what == "sigma") p = sigma(h, a.n).poly;
    else if (what == "hamiltonian") p = hamiltonian(h, a.n).density;
    else p = flow_rhs(h, a.n);
    std::string fmt = g.format.empty() ? "text" : g.format;
    if (fmt == "latex") {
        emit(g, to_latex(p) + "\n");
    } else if (fmt == "text") {
        emit(g, to_text(p) + "\n");
    } else if (fmt == "json") {
        json j{{"config", {{"command", what}, {"hierarchy", hierarchy_name(h)}, {"n", a.n}, {"globals", globals_json(g)}}},
               {"poly", to_json(p)},
               {"latex", to_latex(p)},
               {"text", to_text(p)}};
        emit(g, j.dump(2) + "\n");
    } else {
        throw UsageError("unsupported format for " + what + ": " + fmt);
    }
    return 0;
}

// ---------- verify ----------

struct VerifyArgs {
    std::string suite = "all";
    bool list = false;
    std::string id;
    std::string family;
    std::string against;
    int nmax = -1;
    std::string perturb;
    bool as_printed = false;
};

int cmd_verify(const VerifyArgs& a, const Globals& g) {
    if (a.list) {
        json j{{"suites", suite_names()}, {"genfun", gf_ids()}};
        json sums = json::array();
        for (const auto& b : binomial_sum_registry()) sums.push_back(b.id);
        j["binomial_sums"] = sums;
        emit(g, j.dump(2) + "\n");
        return 0;
    }
    if (!a.against.empty() && a.against != "oracle") throw UsageError("--against accepts only 'oracle'");
    if (!a.family.empty() && a.suite != "coeff" && a.suite != "all") throw UsageError("--family applies to the coeff suite");
    SuiteOptions o;
    o.nmax = a.nmax;
    o.id = a.id;
    o.family = a.family;
    o.as_printed = a.as_printed;

    std::optional<inject::Scope> scope;
    json perturb = nullptr;
    if (!a.perturb.empty()) {
        auto eq = a.perturb.rfind('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--perturb expects key=value");
        Rational d;
        try {
            d = parse_rational(a.perturb.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("--perturb value is not a rational: " + a.perturb.substr(eq + 1));
        }
        scope.emplace(a.perturb.substr(0, eq), d);
        perturb = {{"key", a.perturb.substr(0, eq)}, {"delta", to_string(d)}};
    }

    std::vector<CheckResult> results;
    try {
        results = run_suite(a.suite, o);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    SuiteSummary s = summarize(results);
    json checks = json::array();
    for (const auto& r : results) checks.push_back(to_json(r));
    json report{{"config",
                 {{"command", "verify"},
                  {"suite", a.suite},
                  {"id", a.id},
                  {"family", a.family},
                  {"against", a.against.empty() ? "oracle" : a.against},
                  {"nmax", a.nmax},
                  {"effective_nmax_cap", index_cap(a.nmax)},
                  {"as_printed", a.as_printed},
                  {"truncation", {{"S", o.S}, {"J", o.J}}},
                  {"perturb", perturb},
                  {"globals", globals_json(g)}}},
                {"passed", s.passed},
                {"failed", s.failed},
                {"status", s.failed == 0 ? "pass" : "fail"},
                {"checks", checks}};
    if (s.first_failure) report["first_failure"] = to_json(*s.first_failure);
    emit(g, report.dump(2) + "\n");
    if (s.first_failure)
        std::cerr << "verify: " << s.failed << " failed; first: " << s.first_failure->id << " "
                  << s.first_failure->mismatch.dump() << "\n";
    return s.failed == 0 ? 0 : kFail;
}

// ---------- coeff-table ----------

struct CoeffArgs {
    std::string family = "D";
    int nmax = 12;
    int jmax = -1;
};

int cmd_coeff_table(const CoeffArgs& a, const Globals& g) {
    coeffs::Family f;
    try {
        f = coeffs::family_from_name(a.family);
    } catch (const std::exception&) {
        throw UsageError("unknown family: " + a.family);
    }
    if (a.nmax < 0) throw UsageError("--nmax must be non-negative");
    int cap = index_cap(a.nmax);
    std::string fmt = g.format.empty() ? "csv" : g.format;
    json rows = json::array();
    std::ostringstream csv;
    csv << "n,j,value\n";
    for (int n = 0; n <= cap; ++n) {
        int jt = a.jmax < 0 ? n : std::min(a.jmax, n);
        for (int j = 0; j <= jt; ++j) {
            if (!coeffs::in_support(f, n, j)) continue;
            std::string v = to_string(coeffs::coeff(f, n, j));
            csv << n << "," << j << "," << v << "\n";
            rows.push_back({{"n", n}, {"j", j}, {"value", v}});
        }
    }
    if (fmt == "csv") {
        emit(g, csv.str());
    } else if (fmt == "json") {
        json j{{"config",
                {{"command", "coeff-table"}, {"family", coeffs::family_name(f)}, {"nmax", cap}, {"jmax", a.jmax},
                 {"globals", globals_json(g)}}},
               {"rows", rows}};
        emit(g, j.dump(2) + "\n");
    } else {
        throw UsageError("unsupported format for coeff-table: " + fmt);
    }
    return 0;
}

// ---------- scatter ----------

struct ScatterArgs {
    std::string config;
    std::string potential = "dark";
    std::string qminus = "-1";
    std::string qplus = "1";
    std::string amp = "1";
    double kappa = 0.0;
    double scale = 1.0;
    std::string ray = "2:8:13";
    double angle = 90.0;
    double tol = 1e-10;
    double box = 40.0;
};

void apply_config(ScatterArgs& a, const json& j) {
    auto str = [&](const char* k, std::string& dst) {
        if (!j.contains(k)) return;
        dst = j[k].is_string() ? j[k].get<std::string>() : j[k].dump();
    };
    str("potential", a.potential);
    str("qminus", a.qminus);
    str("qplus", a.qplus);
    str("amp", a.amp);
    str("lambda_ray", a.ray);
    if (j.contains("kappa")) a.kappa = j["kappa"].get<double>();
    if (j.contains("scale")) a.scale = j["scale"].get<double>();
    if (j.contains("angle")) a.angle = j["angle"].get<double>();
    if (j.contains("tol")) a.tol = j["tol"].get<double>();
    if (j.contains("box")) a.box = j["box"].get<double>();
}

std::vector<double> parse_ray(const std::string& s) {
    double lo, hi;
    long n;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(is >> std::ws).eof())
        throw UsageError("--lambda-ray expects a:b:n with n >= 1");
    if (!(lo > 0 && hi >= lo)) throw UsageError("--lambda-ray needs 0 < a <= b");
    std::vector<double> r;
    for (long k = 0; k < n; ++k) r.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return r;
}

int cmd_scatter(ScatterArgs a, const Globals& g) {
    if (!a.config.empty()) {
        std::ifstream f(a.config);
        if (!f) throw UsageError("cannot read config: " + a.config);
        json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw UsageError("config does not parse: " + std::string(e.what()));
        }
        apply_config(a, j);
    }
    if (!(a.tol > 0)) throw UsageError("tolerance must be positive");
    if (!(a.box > 0)) throw UsageError("box must be positive");
    std::vector<double> radii = parse_ray(a.ray);
    cplx qm = parse_complex(a.qminus), qp = parse_complex(a.qplus), amp = parse_complex(a.amp);

    Potential q;
    bool zbc = false, dark = false;
    if (a.potential == "dark") {
        if (std::abs(std::abs(qm) - 1.0) > 1e-12 || std::abs(std::abs(qp) - 1.0) > 1e-12)
            throw UsageError("dark soliton boundary values must lie on the unit circle");
        q = dark_soliton(qm, qp);
        dark = true;
    } else if (a.potential == "constant") {
        if (std::abs(std::abs(qm) - 1.0) > 1e-12) throw UsageError("constant background must have modulus 1");
        q = Potential::constant(qm);
        qp = qm;
    } else if (a.potential == "sech") {
        q = Potential::sech(amp, a.kappa, a.scale);
        zbc = true;
    } else if (a.potential == "gaussian") {
        q = Potential::gaussian(amp, a.kappa, a.scale);
        zbc = true;
    } else {
        throw UsageError("unknown potential: " + a.potential);
    }

    JostOptions opt;
    opt.tol = a.tol;
    opt.box_left = -a.box;
    opt.box_right = a.box;
    double th = a.angle * M_PI / 180.0;
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "lambda_re,lambda_im,a_re,a_im,log_a_re,log_a_im,residual";
    if (dark) csv << ",abs_err_closed_form";
    csv << "\n";
    double worst = 0.0;
    for (double r : radii) {
        cplx lam = std::polar(r, th);
        SpectralPoint p = zbc ? SpectralPoint::zero_bc(lam) : SpectralPoint::nzbc(lam);
        TransmissionResult t = transmission(q, p, opt);
        cplx la = std::log(t.a);
        csv << lam.real() << "," << lam.imag() << "," << t.a.real() << "," << t.a.imag() << "," << la.real() << ","
            << la.imag() << "," << t.residual;
        if (dark) {
            double err = std::abs(t.a - dark_transmission(qm, qp, p));
            worst = std::max(worst, err);
            csv << "," << err;
        }
        csv << "\n";
    }
    json manifest{{"command", "scatter"},
                  {"potential", a.potential},
                  {"describe", q.describe()},
                  {"qminus", complex_json(qm)},
                  {"qplus", complex_json(qp)},
                  {"amp", complex_json(amp)},
                  {"kappa", a.kappa},
                  {"scale", a.scale},
                  {"lambda_ray", a.ray},
                  {"angle_deg", a.angle},
                  {"tol", a.tol},
                  {"box", a.box},
                  {"boundary", zbc ? "zero" : "nonzero"},
                  {"globals", globals_json(g)}};
    if (dark) manifest["max_abs_err_closed_form"] = worst;
    emit(g, "# " + manifest.dump() + "\n" + csv.str());
    return 0;
}

// ---------- evolve ----------

struct EvolveArgs {
    std::string flow = "nls2";
    std::string init = "sech";
    int n = 512;
    double L = 32.0;
    double t = 0.1;
    double dt = 1e-3;
    std::string method = "ifrk4";
    long record_every = 1;
    std::string snapshot;
    double blowup = 1e6;
};

int cmd_evolve(const EvolveArgs& a, const Globals& g) {
    static const std::map<std::string, std::pair<Hierarchy, int>> flows{
        {"nls2", {Hierarchy::NLS, 2}}, {"nls3", {Hierarchy::NLS, 3}}, {"nls4", {Hierarchy::NLS, 4}},
        {"gp2", {Hierarchy::GP, 2}},   {"kdv3", {Hierarchy::KDV, 3}}, {"kdv5", {Hierarchy::KDV, 5}}};
    auto it = flows.find(a.flow);
    if (it == flows.end()) throw UsageError("unknown flow: " + a.flow);
    auto [h, n] = it->second;
    if (!(a.dt > 0) || !(a.t >= 0)) throw UsageError("dt must be positive and t non-negative");
    if (a.n < 8 || (a.n & (a.n - 1)) != 0) throw UsageError("--n must be a power of two >= 8");
    if (!(a.L > 0)) throw UsageError("--L must be positive");
    if (a.record_every < 1) throw UsageError("--record-every must be >= 1");
    long steps = std::lround(a.t / a.dt);
    if (std::abs(steps * a.dt - a.t) > 1e-9 * std::max(1.0, a.t)) throw UsageError("t must be a multiple of dt");

    Potential initial, background;
    if (h == Hierarchy::GP) {
        if (a.init != "tanh-bump") throw UsageError("gp2 takes --init tanh-bump");
        background = dark_soliton(-1.0, 1.0);
        initial = background + Potential::sech(0.3);
    } else if (a.init == "sech") {
        initial = Potential::sech(1.0);
    } else if (a.init == "chirped-sech" && h == Hierarchy::NLS) {
        initial = Potential::sech(1.0, 0.3);
    } else {
        throw UsageError("unsupported --init for " + a.flow + ": " + a.init);
    }

    int lo = h == Hierarchy::KDV ? 1 : 0;
    int hi = h == Hierarchy::GP ? 2 : 4;
    EvolveOptions o;
    o.dt = a.dt;
    o.steps = steps;
    o.method = a.method;
    o.blowup = a.blowup;
    o.record_every = a.record_every;
    for (int k = lo; k <= hi; ++k) o.invariants.push_back(hamiltonian(h, k));

    FieldState st;
    try {
        st = make_state(h, n, a.n, a.L, initial, background);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Trajectory tr;
    try {
        tr = evolve_with_invariants(st, o);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    ConservationReport rep = conservation_report(tr);

    std::ostringstream csv;
    csv << std::setprecision(17) << "t";
    for (const auto& nm : rep.names) csv << "," << nm << "_re," << nm << "_im";
    csv << "\n";
    for (std::size_t s = 0; s < tr.t.size(); ++s) {
        csv << tr.t[s];
        for (cplx v : tr.values[s]) csv << "," << v.real() << "," << v.imag();
        csv << "\n";
    }
    json drift = json::object();
    for (std::size_t k = 0; k < rep.names.size(); ++k) drift[rep.names[k]] = rep.drift[k];
    json manifest{{"config",
                   {{"command", "evolve"},
                    {"flow", a.flow},
                    {"hierarchy", hierarchy_name(h)},
                    {"index", n},
                    {"init", a.init},
                    {"initial", initial.describe()},
                    {"background", background.describe()},
                    {"grid", {{"N", a.n}, {"L", a.L}, {"interval", "[-L, L)"}}},
                    {"dt", a.dt},
                    {"steps", steps},
                    {"t_final", tr.final_state.t},
                    {"method", a.method},
                    {"dealias", "2/3"},
                    {"record_every", a.record_every},
                    {"blowup", a.blowup},
                    {"globals", globals_json(g)}}},
                  {"drift", drift},
                  {"max_drift", rep.max_drift}};
    if (!g.out.empty()) {
        std::filesystem::path dir(g.out);
        std::filesystem::create_directories(dir);
        std::ofstream(dir / "invariants.csv", std::ios::binary) << csv.str();
        manifest["files"] = {{"invariants", (dir / "invariants.csv").string()}};
        if (!a.snapshot.empty()) {
            write_snapshot(a.snapshot, tr.final_state);
            manifest["files"]["snapshot"] = a.snapshot;
        }
        std::ofstream(dir / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
    } else if (!a.snapshot.empty()) {
        write_snapshot(a.snapshot, tr.final_state);
        manifest["files"] = {{"snapshot", a.snapshot}};
    }
    std::cout << manifest.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical tools for the NLS, GP and KdV hierarchies"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "latex", "text", "csv"}));
    app.add_option("--out", g.out, "Output path (directory for evolve)");
    app.add_option("--threads", g.threads, "Worker threads (checks run in registry order)")->check(CLI::PositiveNumber);
    app.add_flag("--seedless", g.seedless, "No randomness is used anywhere; accepted for scripts");

    PolyArgs pa;
    std::string poly_cmd;
    for (const char* name : {"sigma", "hamiltonian", "flow"}) {
        auto* sc = app.add_subcommand(name, std::string("Print the ") + name + " polynomial");
        sc->add_option("--hierarchy", pa.hierarchy, "nls, gp or kdv");
        sc->add_option("--n", pa.n, "Index")->required();
        sc->callback([&poly_cmd, name] { poly_cmd = name; });
    }

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run identity suites");
    verify->add_option("suite", va.suite, "Suite name or all");
    verify->add_flag("--list", va.list, "List suites and identity ids");
    verify->add_option("--id", va.id, "Generating-function or binomial-sum id");
    verify->add_option("--family", va.family, "Coefficient family: D, E, K or conv");
    verify->add_option("--against", va.against, "Reference for coefficient checks (oracle)");
    verify->add_option("--nmax", va.nmax, "Cap on symbolic indices")->check(CLI::NonNegativeNumber);
    verify->add_option("--perturb", va.perturb, "Inject key=delta into one coefficient");
    verify->add_flag("--as-printed", va.as_printed, "Compare GP H_4 with its printed sign");

    ScatterArgs sa;
    auto* scatter = app.add_subcommand("scatter", "Transmission coefficient along a spectral ray");
    scatter->add_option("--config", sa.config, "JSON file with the same keys as the flags");
    scatter->add_option("--potential", sa.potential, "dark, sech, gaussian or constant");
    scatter->add_option("--qminus", sa.qminus, "Left boundary value (re or re,im)");
    scatter->add_option("--qplus", sa.qplus, "Right boundary value (re or re,im)");
    scatter->add_option("--amp", sa.amp, "Amplitude for sech and gaussian");
    scatter->add_option("--kappa", sa.kappa, "Chirp for sech and gaussian");
    scatter->add_option("--scale", sa.scale, "Width scale for sech and gaussian");
    scatter->add_option("--lambda-ray", sa.ray, "a:b:n samples of |lambda|");
    scatter->add_option("--angle", sa.angle, "Ray angle in degrees (90 is the imaginary axis)");
    scatter->add_option("--tol", sa.tol, "Integrator tolerance");
    scatter->add_option("--box", sa.box, "Half-width of the integration box");

    EvolveArgs ea;
    auto* evolve = app.add_subcommand("evolve", "Pseudospectral evolution with invariant monitoring");
    evolve->add_option("--flow", ea.flow, "nls2, nls3, nls4, gp2, kdv3 or kdv5");
    evolve->add_option("--init", ea.init, "sech, chirped-sech or tanh-bump");
    evolve->add_option("--n", ea.n, "Grid points (power of two)");
    evolve->add_option("--L", ea.L, "Half-width of the periodic box");
    evolve->add_option("--t", ea.t, "Final time");
    evolve->add_option("--dt", ea.dt, "Time step");
    evolve->add_option("--method", ea.method, "Integrator");
    evolve->add_option("--record-every", ea.record_every, "Invariant sampling stride");
    evolve->add_option("--snapshot", ea.snapshot, "Write the final field to this file");
    evolve->add_option("--blowup", ea.blowup, "Sup-norm bound");

    CoeffArgs ca;
    auto* table = app.add_subcommand("coeff-table", "Tabulate a coefficient family");
    table->add_option("--family", ca.family, "C, D, E, FT, GT, J or K");
    table->add_option("--nmax", ca.nmax, "Largest n");
    table->add_option("--jmax", ca.jmax, "Largest j");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (!poly_cmd.empty()) return cmd_poly(poly_cmd, pa, g);
        if (verify->parsed()) return cmd_verify(va, g);
        if (scatter->parsed()) return cmd_scatter(sa, g);
        if (evolve->parsed()) return cmd_evolve(ea, g);
        if (table->parsed()) return cmd_coeff_table(ca, g);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NonConvergence& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kFail;
    } catch (const BoundaryNotSettled& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kFail;
    } catch (const Blowup& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
