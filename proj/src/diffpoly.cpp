#include "hierarchia/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace hierarchia {

const char* var_name(Var v) {
    switch (v) {
        case Var::Q: return "q";
        case Var::QBAR: return "qbar";
        default: return "u";
    }
}

Var var_from_name(const std::string& s) {
    if (s == "q" || s == "Q") return Var::Q;
    if (s == "qbar" || s == "QBAR") return Var::QBAR;
    if (s == "u" || s == "U") return Var::U;
    throw std::invalid_argument("unknown variable: " + s);
}

Var conjugate_var(Var v) {
    if (v == Var::Q) return Var::QBAR;
    if (v == Var::QBAR) return Var::Q;
    return v;
}

bool operator==(const Factor& a, const Factor& b) {
    return a.var == b.var && a.order == b.order && a.power == b.power;
}

bool KeyLess::operator()(const MonoKey& a, const MonoKey& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].var != b[i].var) return a[i].var < b[i].var;
        if (a[i].order != b[i].order) return a[i].order < b[i].order;
        if (a[i].power != b[i].power) return a[i].power < b[i].power;
    }
    return a.size() < b.size();
}

static bool slot_less(const Factor& a, const Factor& b) {
    if (a.var != b.var) return a.var < b.var;
    return a.order < b.order;
}

int total_derivs(const MonoKey& k) {
    int s = 0;
    for (const auto& f : k) s += f.order * f.power;
    return s;
}

int deriv_factor_count(const MonoKey& k) {
    int s = 0;
    for (const auto& f : k)
        if (f.order >= 1) s += f.power;
    return s;
}

int degree(const MonoKey& k) {
    int s = 0;
    for (const auto& f : k) s += f.power;
    return s;
}

int power_of(const MonoKey& k, Var v, int order) {
    for (const auto& f : k)
        if (f.var == v && f.order == order) return f.power;
    return 0;
}

MonoKey key_mul(const MonoKey& a, const MonoKey& b) {
    MonoKey r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (slot_less(a[i], b[j])) {
            r.push_back(a[i++]);
        } else if (slot_less(b[j], a[i])) {
            r.push_back(b[j++]);
        } else {
            r.push_back({a[i].var, a[i].order, a[i].power + b[j].power});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) r.push_back(a[i++]);
    while (j < b.size()) r.push_back(b[j++]);
    return r;
}

MonoKey key_adjust(const MonoKey& k, Var v, int order, int power) {
    MonoKey r;
    r.reserve(k.size() + 1);
    Factor f{v, order, power};
    bool placed = false;
    for (const auto& g : k) {
        if (!placed && g.var == v && g.order == order) {
            int p = g.power + power;
            if (p < 0) throw std::logic_error("negative power");
            if (p > 0) r.push_back({v, order, p});
            placed = true;
        } else {
            if (!placed && slot_less(f, g)) {
                if (power < 0) throw std::logic_error("negative power");
                if (power > 0) r.push_back(f);
                placed = true;
            }
            r.push_back(g);
        }
    }
    if (!placed) {
        if (power < 0) throw std::logic_error("negative power");
        if (power > 0) r.push_back(f);
    }
    return r;
}

DiffPoly DiffPoly::constant(const GaussianRational& c) {
    DiffPoly p;
    p.add_term({}, c);
    return p;
}

DiffPoly DiffPoly::var(Var v, int order) {
    DiffPoly p;
    p.add_term({{v, order, 1}}, GaussianRational(1));
    return p;
}

DiffPoly DiffPoly::monomial(const GaussianRational& c, const MonoKey& factors) {
    MonoKey k;
    for (const auto& f : factors) k = key_adjust(k, f.var, f.order, f.power);
    DiffPoly p;
    p.add_term(k, c);
    return p;
}

GaussianRational DiffPoly::coeff(const MonoKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

int DiffPoly::max_order(Var v) const {
    int m = -1;
    for (const auto& [k, c] : terms_)
        for (const auto& f : k)
            if (f.var == v) m = std::max(m, f.order);
    return m;
}

void DiffPoly::add_term(const MonoKey& k, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

DiffPoly operator-(const DiffPoly& a) {
    DiffPoly r = a;
    r *= GaussianRational(-1);
    return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term(key_mul(ka, kb), ca * cb);
    return r;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [k, c] : a.terms_) {
        if (!(it->first == k) || it->second != c) return false;
        ++it;
    }
    return true;
}

DiffPoly pow(const DiffPoly& p, int k) {
    DiffPoly r = DiffPoly::constant(GaussianRational(1));
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

DiffPoly d_x(const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [k, c] : p.terms()) {
        for (const auto& f : k) {
            MonoKey nk = key_adjust(key_adjust(k, f.var, f.order, -1), f.var, f.order + 1, 1);
            r.add_term(nk, c * GaussianRational(f.power));
        }
    }
    return r;
}

DiffPoly d_x(const DiffPoly& p, int times) {
    DiffPoly r = p;
    for (int i = 0; i < times; ++i) r = d_x(r);
    return r;
}

DiffPoly divide_by_q(const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [k, c] : p.terms()) {
        if (power_of(k, Var::Q, 0) == 0) throw NotDivisible("monomial without a q factor");
        r.add_term(key_adjust(k, Var::Q, 0, -1), c);
    }
    return r;
}

DiffPoly partial(const DiffPoly& p, Var v, int order) {
    DiffPoly r;
    for (const auto& [k, c] : p.terms()) {
        int e = power_of(k, v, order);
        if (e == 0) continue;
        r.add_term(key_adjust(k, v, order, -1), c * GaussianRational(e));
    }
    return r;
}

DiffPoly var_derivative(const DiffPoly& p, Var v) {
    DiffPoly r;
    int m = p.max_order(v);
    for (int k = m; k >= 0; --k) {
        // Horner form of sum_k (-d)^k partial_k
        r = -d_x(r);
        r += partial(p, v, k);
    }
    return r;
}

DiffPoly conjugate(const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [k, c] : p.terms()) {
        MonoKey nk;
        for (const auto& f : k) nk = key_adjust(nk, conjugate_var(f.var), f.order, f.power);
        r.add_term(nk, c.conj());
    }
    return r;
}

bool is_total_derivative(const DiffPoly& p) {
    if (!p.constant_term().is_zero()) return false;
    for (Var v : {Var::Q, Var::QBAR, Var::U})
        if (!var_derivative(p, v).is_zero()) return false;
    return true;
}

bool equivalent_mod_dx(const DiffPoly& p, const DiffPoly& r) { return is_total_derivative(p - r); }

nlohmann::json to_json(const Rational& r) { return to_string(r); }

nlohmann::json to_json(const GaussianRational& g) {
    return {{"re", to_string(g.re)}, {"im", to_string(g.im)}};
}

nlohmann::json to_json(const DiffPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : p.terms()) {
        nlohmann::json fs = nlohmann::json::array();
        for (const auto& f : k) fs.push_back({var_name(f.var), f.order, f.power});
        arr.push_back({{"coeff", to_json(c)}, {"factors", fs}});
    }
    return arr;
}

GaussianRational gaussian_from_json(const nlohmann::json& j) {
    if (j.is_string()) return GaussianRational(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return GaussianRational(j.get<long>());
    return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
}

DiffPoly diffpoly_from_json(const nlohmann::json& j) {
    DiffPoly p;
    for (const auto& t : j) {
        MonoKey k;
        for (const auto& f : t.at("factors"))
            k = key_adjust(k, var_from_name(f.at(0).get<std::string>()), f.at(1).get<int>(), f.at(2).get<int>());
        p.add_term(k, gaussian_from_json(t.at("coeff")));
    }
    return p;
}

namespace {

std::string latex_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

std::string latex_factor(const Factor& f) {
    std::string base;
    std::string sym = f.var == Var::Q ? "q" : (f.var == Var::QBAR ? "\\bar q" : "u");
    if (f.order == 0) {
        base = sym;
    } else if (f.order <= 3) {
        base = sym + "_{" + std::string(static_cast<std::size_t>(f.order), 'x') + "}";
    } else {
        base = "\\partial_x^{" + std::to_string(f.order) + "} " + sym;
    }
    if (f.power > 1) base += "^" + (f.power < 10 ? std::to_string(f.power) : "{" + std::to_string(f.power) + "}");
    return base;
}

std::string text_factor(const Factor& f) {
    std::string s = f.var == Var::Q ? "q" : (f.var == Var::QBAR ? "qb" : "u");
    if (f.order > 0) {
        if (f.order <= 3)
            s += "_" + std::string(static_cast<std::size_t>(f.order), 'x');
        else
            s += "_x" + std::to_string(f.order);
    }
    if (f.power > 1) s += "^" + std::to_string(f.power);
    return s;
}

}  // namespace

std::string to_latex(const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        std::string body;
        for (const auto& f : k) body += latex_factor(f);
        std::string coef;
        bool neg = false;
        if (c.is_real()) {
            Rational a = c.re;
            if (sgn(a) < 0) {
                neg = true;
                a = -a;
            }
            if (a != 1 || body.empty()) coef = latex_rational(a);
        } else if (sgn(c.re) == 0) {
            Rational a = c.im;
            if (sgn(a) < 0) {
                neg = true;
                a = -a;
            }
            coef = (a == 1 ? std::string() : latex_rational(a)) + "i";
            if (!body.empty()) coef += " ";
        } else {
            coef = "(" + latex_rational(c.re) + (sgn(c.im) < 0 ? "-" : "+") + latex_rational(abs(c.im)) + "i)";
        }
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += coef + body;
        first = false;
    }
    return out;
}

std::string to_text(const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        std::string body;
        for (const auto& f : k) body += (body.empty() ? "" : "*") + text_factor(f);
        std::string coef = to_string(c);
        bool neg = false;
        if (c.is_real() && sgn(c.re) < 0) {
            neg = true;
            coef = to_string(Rational(-c.re));
        } else if (!c.is_real()) {
            coef = "(" + coef + ")";
        }
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (body.empty())
            os << coef;
        else if (coef == "1")
            os << body;
        else
            os << coef << "*" << body;
        first = false;
    }
    return os.str();
}

}  // namespace hierarchia
