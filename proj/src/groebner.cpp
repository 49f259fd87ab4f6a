#include "mres/polyring.hpp"

#include <algorithm>
#include <limits>

namespace mres {

namespace {

thread_local std::size_t g_remaining = GroebnerBudget::kDefault;

}  // namespace

GroebnerBudget::GroebnerBudget(std::size_t max_steps) : saved_(g_remaining) { g_remaining = max_steps; }

GroebnerBudget::~GroebnerBudget() { g_remaining = saved_; }

std::size_t GroebnerBudget::remaining() { return g_remaining; }

void GroebnerBudget::charge(std::size_t steps) {
    if (steps > g_remaining) {
        g_remaining = 0;
        throw BudgetExhausted("budget exhausted");
    }
    g_remaining -= steps;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
    Polynomial rem = f;
    std::vector<Term> out;
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        bool reduced = false;
        for (const auto& g : basis) {
            const Term& lg = g.leading();
            if (lg.mono.divides(lt.mono)) {
                GroebnerBudget::charge(1);
                Rational c = lt.coef / lg.coef;
                Monomial m = lt.mono / lg.mono;
                rem.sub_mul_term(c, m, g);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            out.push_back(lt);
            rem.sub_mul_term(1, Monomial(f.nvars()), Polynomial::monomial(lt.mono, lt.coef));
        }
    }
    return Polynomial::from_terms(f.nvars(), std::move(out));
}

namespace {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const Monomial& lcm) {
    Polynomial a = f.mul_term(lcm / f.leading().mono, 1 / f.leading().coef);
    a.sub_mul_term(1 / g.leading().coef, lcm / g.leading().mono, g);
    return a;
}

}  // namespace

std::vector<Polynomial> reduced_groebner_basis(const std::vector<Polynomial>& gens, std::size_t nvars) {
    std::vector<Polynomial> G;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.is_constant()) return {Polynomial::constant(nvars, 1)};
        G.push_back(g.monic());
    }
    if (G.empty()) return {};

    std::vector<Pair> pairs;
    std::vector<bool> live;  // basis elements not made redundant by a later leading term
    auto add = [&](Polynomial h) {
        std::size_t k = G.size();
        G.push_back(std::move(h));
        live.push_back(true);
        for (std::size_t i = 0; i < k; ++i)
            if (live[i]) pairs.push_back({i, k, G[i].leading().mono.lcm(G[k].leading().mono)});
    };
    {
        std::vector<Polynomial> init = std::move(G);
        G.clear();
        std::sort(init.begin(), init.end(),
                  [](const Polynomial& a, const Polynomial& b) { return grevlex_cmp(a.leading().mono, b.leading().mono) < 0; });
        for (auto& g : init) {
            Polynomial r = normal_form(g, G);
            if (r.is_zero()) continue;
            if (r.is_constant()) return {Polynomial::constant(nvars, 1)};
            add(r.monic());
        }
    }

    auto pair_done = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        for (const auto& p : pairs)
            if (p.i == a && p.j == b) return false;
        return true;
    };

    while (!pairs.empty()) {
        // Normal selection: smallest lcm first.
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [](const Pair& a, const Pair& b) { return grevlex_cmp(a.lcm, b.lcm) < 0; });
        Pair p = *it;
        pairs.erase(it);
        const Monomial& li = G[p.i].leading().mono;
        const Monomial& lj = G[p.j].leading().mono;
        if (li.coprime(lj)) continue;
        bool chain = false;
        for (std::size_t k = 0; k < G.size() && !chain; ++k) {
            if (k == p.i || k == p.j) continue;
            if (G[k].leading().mono.divides(p.lcm) && pair_done(p.i, k) && pair_done(p.j, k)) chain = true;
        }
        if (chain) continue;
        GroebnerBudget::charge(1);
        Polynomial r = normal_form(s_polynomial(G[p.i], G[p.j], p.lcm), G);
        if (r.is_zero()) continue;
        if (r.is_constant()) return {Polynomial::constant(nvars, 1)};
        add(r.monic());
    }

    // Minimalize, then tail-reduce.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& a = G[j].leading().mono;
            const Monomial& b = G[i].leading().mono;
            if (a.divides(b) && (a != b || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        const Term lt = minimal[i].leading();
        Polynomial tail = minimal[i] - Polynomial::monomial(lt.mono, lt.coef);
        reduced.push_back((Polynomial::monomial(lt.mono, lt.coef) + normal_form(tail, others)).monic());
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Polynomial& a, const Polynomial& b) { return grevlex_cmp(a.leading().mono, b.leading().mono) > 0; });
    return reduced;
}

Ideal::Ideal(std::size_t nvars, std::vector<Polynomial> gens) : n_(nvars) {
    for (auto& g : gens)
        if (!g.is_zero()) gens_.push_back(std::move(g));
}

Ideal Ideal::unit(std::size_t nvars) { return Ideal(nvars, {Polynomial::constant(nvars, 1)}); }

const std::vector<Polynomial>& Ideal::basis() const {
    if (!cache_) cache_ = std::make_shared<Cache>();
    std::call_once(cache_->once, [this] { cache_->basis = reduced_groebner_basis(gens_, n_); });
    return cache_->basis;
}

Ideal Ideal::operator+(const Ideal& o) const {
    std::vector<Polynomial> g = basis();
    for (const auto& p : o.basis()) g.push_back(p);
    return Ideal(n_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
    std::vector<Polynomial> g;
    for (const auto& a : basis())
        for (const auto& b : o.basis()) g.push_back(a * b);
    return Ideal(n_, std::move(g));
}

Ideal Ideal::pow(unsigned k) const {
    Ideal r = Ideal::unit(n_);
    Ideal b = *this;
    while (k) {
        if (k & 1u) r = Ideal(n_, (r * b).basis());
        k >>= 1;
        if (k) b = Ideal(n_, (b * b).basis());
    }
    return r;
}

}  // namespace mres
