#include "mres/polyring.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace mres {

std::string rational_to_string(const Rational& q) {
    Rational r = q;
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Monomial::Monomial(std::vector<int> exps) : e_(std::move(exps)) {
    for (int v : e_) deg_ += v;
}

void Monomial::set(std::size_t i, int v) {
    deg_ += v - e_[i];
    e_[i] = v;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    r.deg_ = deg_ + o.deg_;
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    r.deg_ = deg_ - o.deg_;
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
    std::vector<int> v(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) v[i] = std::max(e_[i], o.e_[i]);
    return Monomial(std::move(v));
}

bool Monomial::coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > 0 && o.e_[i] > 0) return false;
    return true;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    // Ties: the monomial with the smaller exponent in the last differing variable wins.
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; }

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.set(i, 1);
    return monomial(m, 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.size());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    Polynomial p(nvars);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

bool Polynomial::involves(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.mono[var] > 0) return true;
    return false;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(n_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c = i == terms_.size() ? -1 : j == o.terms_.size() ? 1 : grevlex_cmp(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].coef + o.terms_[j].coef;
            if (s != 0) r.terms_.push_back({terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
    Polynomial r(n_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial(n_);
    std::map<std::vector<int>, Rational> acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) acc[(a.mono * b.mono).exponents()] += a.coef * b.coef;
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c != 0) ts.push_back({Monomial(e), c});
    return from_terms(n_, std::move(ts));
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c == 0) return Polynomial(n_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = constant(n_, 1);
    Polynomial b = *this;
    while (k) {
        if (k & 1u) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / terms_.front().coef;
    return scaled(inv);
}

void Polynomial::sub_mul_term(const Rational& c, const Monomial& m, const Polynomial& g) {
    std::vector<Term> out;
    out.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
        if (j == g.terms_.size()) {
            out.push_back(std::move(terms_[i++]));
            continue;
        }
        Monomial gm = g.terms_[j].mono * m;
        int cmp = i == terms_.size() ? -1 : grevlex_cmp(terms_[i].mono, gm);
        if (cmp > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (cmp < 0) {
            out.push_back({std::move(gm), -c * g.terms_[j].coef});
            ++j;
        } else {
            Rational s = terms_[i].coef - c * g.terms_[j].coef;
            if (s != 0) out.push_back({std::move(gm), std::move(s)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
}

Polynomial Polynomial::extended(std::size_t nvars) const {
    assert(nvars >= n_);
    Polynomial r(nvars);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::vector<int> e = t.mono.exponents();
        e.resize(nvars, 0);
        r.terms_.push_back({Monomial(std::move(e)), t.coef});
    }
    // Appending zero exponents keeps the grevlex order intact.
    return r;
}

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        int e = t.mono[var];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        ts.push_back({std::move(m), t.coef * e});
    }
    return Polynomial::from_terms(f.nvars(), std::move(ts));
}

std::optional<int> order_at_origin(const Polynomial& f) {
    if (f.is_zero()) return std::nullopt;
    int d = f.terms().front().mono.degree();
    for (const auto& t : f.terms()) d = std::min(d, t.mono.degree());
    return d;
}

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
    assert(images.size() == f.nvars());
    std::size_t target = images.empty() ? f.nvars() : images.front().nvars();
    // Cache powers of each image; substitutions are applied many times to small polynomials.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
        auto& v = powers[i];
        if (v.empty()) v.push_back(Polynomial::constant(target, 1));
        while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * images[i]);
        return v[k];
    };
    Polynomial acc(target);
    for (const auto& t : f.terms()) {
        Polynomial term = Polynomial::constant(target, t.coef);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (t.mono[i] > 0) term = term * power(i, t.mono[i]);
        acc = acc + term;
    }
    return acc;
}

int polynomial_var_valuation(const Polynomial& f, std::size_t var) {
    assert(!f.is_zero());
    int v = f.terms().front().mono[var];
    for (const auto& t : f.terms()) v = std::min(v, t.mono[var]);
    return v;
}

Polynomial divide_by_var_power(const Polynomial& f, std::size_t var, int k) {
    std::vector<Term> ts;
    ts.reserve(f.size());
    for (const auto& t : f.terms()) {
        assert(t.mono[var] >= k);
        Monomial m = t.mono;
        m.set(var, t.mono[var] - k);
        ts.push_back({std::move(m), t.coef});
    }
    return Polynomial::from_terms(f.nvars(), std::move(ts));
}

std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) return std::nullopt;
    Polynomial rem = f;
    Polynomial quot(f.nvars());
    const Term& lg = g.leading();
    // Division by a single polynomial: {g} is a Groebner basis of (g), so the remainder is zero iff g | f.
    std::vector<Term> qterms;
    Polynomial r(f.nvars());
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        if (lg.mono.divides(lt.mono)) {
            Monomial m = lt.mono / lg.mono;
            Rational c = lt.coef / lg.coef;
            qterms.push_back({m, c});
            rem.sub_mul_term(c, m, g);
        } else {
            return std::nullopt;
        }
    }
    return Polynomial::from_terms(f.nvars(), std::move(qterms));
}

Rational constant_term(const Polynomial& f) {
    if (!f.is_zero() && f.terms().back().mono.degree() == 0) return f.terms().back().coef;
    return 0;
}

Polynomial linear_part(const Polynomial& f) {
    std::vector<Term> ts;
    for (const auto& t : f.terms())
        if (t.mono.degree() == 1) ts.push_back(t);
    return Polynomial::from_terms(f.nvars(), std::move(ts));
}

// ---- multivariate gcd by recursive primitive remainder sequences ----

namespace {

using Coeffs = std::map<int, Polynomial>;  // degree in the main variable -> coefficient

Coeffs split(const Polynomial& f, std::size_t var) {
    Coeffs c;
    std::map<int, std::vector<Term>> parts;
    for (const auto& t : f.terms()) {
        Monomial m = t.mono;
        int d = m[var];
        m.set(var, 0);
        parts[d].push_back({std::move(m), t.coef});
    }
    for (auto& [d, ts] : parts) c.emplace(d, Polynomial::from_terms(f.nvars(), std::move(ts)));
    return c;
}

int main_degree(const Polynomial& f, std::size_t var) {
    int d = -1;
    for (const auto& t : f.terms()) d = std::max(d, t.mono[var]);
    return d;
}

Polynomial gcd_rec(const Polynomial& f, const Polynomial& g, std::size_t nv);

Polynomial content(const Polynomial& f, std::size_t var, std::size_t nv) {
    Polynomial c(f.nvars());
    for (const auto& [d, p] : split(f, var)) {
        c = c.is_zero() ? p : gcd_rec(c, p, nv);
        if (c.is_constant()) return Polynomial::constant(f.nvars(), 1);
    }
    return c;
}

// Pseudo-remainder of a by b in the main variable.
Polynomial prem(Polynomial a, const Polynomial& b, std::size_t var) {
    int db = main_degree(b, var);
    Coeffs bc = split(b, var);
    Polynomial lb = bc.rbegin()->second;
    Monomial xvar(a.nvars());
    xvar.set(var, 1);
    while (!a.is_zero()) {
        int da = main_degree(a, var);
        if (da < db) break;
        Coeffs ac = split(a, var);
        Polynomial la = ac.rbegin()->second;
        Monomial shift(a.nvars());
        shift.set(var, da - db);
        a = a * lb - (b * la).mul_term(shift, 1);
    }
    return a;
}

// gcd in Q[x_0..x_{nv-1}]; variables >= nv are absent.
Polynomial gcd_rec(const Polynomial& f, const Polynomial& g, std::size_t nv) {
    std::size_t n = f.nvars();
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(n, 1);
    // Main variable: the highest-index variable occurring in either.
    std::size_t var = nv;
    while (var > 0) {
        --var;
        if (f.involves(var) || g.involves(var)) break;
    }
    if (!f.involves(var)) return gcd_rec(f, content(g, var, var), var);
    if (!g.involves(var)) return gcd_rec(content(f, var, var), g, var);

    Polynomial cf = content(f, var, var), cg = content(g, var, var);
    Polynomial a = *exact_divide(f, cf), b = *exact_divide(g, cg);
    Polynomial c = gcd_rec(cf, cg, var);
    if (main_degree(a, var) < main_degree(b, var)) std::swap(a, b);
    while (!b.is_zero()) {
        GroebnerBudget::charge(1);
        Polynomial r = prem(a, b, var);
        a = std::move(b);
        if (r.is_zero()) break;
        if (main_degree(r, var) <= 0) {
            a = Polynomial::constant(n, 1);
            break;
        }
        b = *exact_divide(r, content(r, var, var));
    }
    Polynomial pa = a.is_constant() ? Polynomial::constant(n, 1) : *exact_divide(a, content(a, var, var));
    return (pa * c).monic();
}

}  // namespace

Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g) {
    return gcd_rec(f, g, f.nvars());
}

}  // namespace mres
