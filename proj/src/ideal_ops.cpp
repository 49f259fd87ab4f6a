#include "mres/polyring.hpp"

#include <algorithm>
#include <functional>

namespace mres {

bool ideal_is_unit(const Ideal& I) {
    const auto& b = I.basis();
    return b.size() == 1 && b[0].is_constant();
}

bool ideal_contains(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) return true;
    return normal_form(f, I.basis()).is_zero();
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
    for (const auto& g : J.basis())
        if (!ideal_contains(I, g)) return false;
    return true;
}

bool ideal_equal(const Ideal& I, const Ideal& J) { return I.basis() == J.basis(); }

bool radical_membership(const Polynomial& f, const Ideal& I) {
    if (f.is_zero()) return true;
    std::size_t n = I.nvars();
    std::vector<Polynomial> gens;
    for (const auto& g : I.basis()) gens.push_back(g.extended(n + 1));
    Polynomial t = Polynomial::variable(n + 1, n);
    gens.push_back(Polynomial::constant(n + 1, 1) - t * f.extended(n + 1));
    return ideal_is_unit(Ideal(n + 1, std::move(gens)));
}

bool radicals_equal(const Ideal& I, const Ideal& J) {
    for (const auto& g : I.basis())
        if (!radical_membership(g, J)) return false;
    for (const auto& g : J.basis())
        if (!radical_membership(g, I)) return false;
    return true;
}

int variable_valuation(const Ideal& I, std::size_t var) {
    const auto& b = I.basis();
    if (b.empty()) throw std::invalid_argument("valuation of the zero ideal");
    int v = polynomial_var_valuation(b[0], var);
    for (const auto& g : b) v = std::min(v, polynomial_var_valuation(g, var));
    return v;
}

namespace {

// Groebner basis of gens with every element divided by the largest power of the last variable.
// For homogeneous input under grevlex this is a basis of the saturation by that variable.
std::vector<Polynomial> strip_last_variable(const std::vector<Polynomial>& gens, std::size_t nvars) {
    std::vector<Polynomial> out;
    for (const auto& g : reduced_groebner_basis(gens, nvars))
        out.push_back(divide_by_var_power(g, nvars - 1, polynomial_var_valuation(g, nvars - 1)));
    return out;
}

}  // namespace

Ideal saturate_by_variable(const Ideal& I, std::size_t var) {
    std::size_t n = I.nvars();
    if (I.is_zero()) return I;
    // Homogenize with a new last variable h, saturate by h, then swap var and h and saturate again.
    std::size_t m = n + 1;
    std::vector<Polynomial> hom;
    for (const auto& g : I.basis()) {
        int d = g.total_degree();
        std::vector<Term> ts;
        for (const auto& t : g.terms()) {
            std::vector<int> e = t.mono.exponents();
            e.push_back(d - t.mono.degree());
            ts.push_back({Monomial(std::move(e)), t.coef});
        }
        hom.push_back(Polynomial::from_terms(m, std::move(ts)));
    }
    std::vector<Polynomial> ih = strip_last_variable(hom, m);
    std::vector<Polynomial> swap = [&] {
        std::vector<Polynomial> v;
        for (std::size_t i = 0; i < m; ++i) v.push_back(Polynomial::variable(m, i));
        return v;
    }();
    std::swap(swap[var], swap[n]);
    std::vector<Polynomial> permuted;
    for (const auto& g : ih) permuted.push_back(substitute(g, swap));
    std::vector<Polynomial> back;
    std::vector<Polynomial> dehom;
    for (std::size_t i = 0; i < n; ++i) dehom.push_back(Polynomial::variable(n, i));
    dehom.push_back(Polynomial::constant(n, 1));
    for (const auto& g : strip_last_variable(permuted, m)) back.push_back(substitute(substitute(g, swap), dehom));
    return Ideal(n, std::move(back));
}

namespace {

Polynomial determinant(std::vector<std::vector<Polynomial>> m, std::size_t nvars) {
    std::size_t k = m.size();
    if (k == 0) return Polynomial::constant(nvars, 1);
    if (k == 1) return m[0][0];
    Polynomial acc(nvars);
    for (std::size_t c = 0; c < k; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t cc = 0; cc < k; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            sub.push_back(std::move(row));
        }
        Polynomial term = m[0][c] * determinant(std::move(sub), nvars);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

bool jacobian_unit_check(const Ideal& I, std::size_t codim) {
    const auto& b = I.basis();
    std::size_t n = I.nvars();
    if (ideal_is_unit(I)) return true;
    if (codim > n || codim > b.size()) return false;
    std::vector<std::vector<Polynomial>> jac(b.size(), std::vector<Polynomial>(n));
    for (std::size_t r = 0; r < b.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) jac[r][c] = partial_derivative(b[r], c);
    std::vector<Polynomial> gens = b;
    for_each_subset(b.size(), codim, [&](const std::vector<std::size_t>& rows) {
        for_each_subset(n, codim, [&](const std::vector<std::size_t>& cols) {
            std::vector<std::vector<Polynomial>> m;
            for (auto r : rows) {
                std::vector<Polynomial> row;
                for (auto c : cols) row.push_back(jac[r][c]);
                m.push_back(std::move(row));
            }
            gens.push_back(determinant(std::move(m), n));
        });
    });
    return ideal_is_unit(Ideal(n, std::move(gens)));
}

int krull_dimension(const Ideal& I) {
    if (ideal_is_unit(I)) return -1;
    std::size_t n = I.nvars();
    const auto& b = I.basis();
    int best = 0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        int size = __builtin_popcountl(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& g : b) {
            const Monomial& lm = g.leading().mono;
            bool inside = true;
            for (std::size_t v = 0; v < n && inside; ++v)
                if (lm[v] > 0 && !(mask >> v & 1ul)) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

std::vector<std::string> basis_strings(const Ideal& I, const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    for (const auto& g : I.basis()) out.push_back(to_string(g, vars));
    return out;
}

}  // namespace mres
