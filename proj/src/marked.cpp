#include "mres/marked.hpp"

#include <algorithm>
#include <limits>

namespace mres {

Ideal derivative_ideal(const Ideal& I) {
    std::vector<Polynomial> gens = I.basis();
    std::size_t n = I.nvars();
    for (const auto& g : I.basis())
        for (std::size_t v = 0; v < n; ++v) {
            Polynomial d = partial_derivative(g, v);
            if (!d.is_zero()) gens.push_back(std::move(d));
        }
    return Ideal(n, std::move(gens));
}

Ideal iterated_derivative(const Ideal& I, unsigned i) {
    Ideal r = I;
    for (unsigned k = 0; k < i; ++k) {
        if (ideal_is_unit(r)) break;
        r = derivative_ideal(r);
    }
    return r;
}

unsigned max_order(const Ideal& I) {
    if (I.basis().empty()) throw std::invalid_argument("max order of the zero ideal");
    unsigned mu = 0;
    Ideal r = I;
    while (!ideal_is_unit(r)) {
        r = derivative_ideal(r);
        ++mu;
    }
    return mu;
}

bool support_is_empty(const MarkedIdeal& M) {
    return ideal_is_unit(iterated_derivative(M.ideal, M.mark - 1));
}

Ideal tangent_directions(const MarkedIdeal& M) {
    if (M.mark == 0 || max_order(M.ideal) > M.mark)
        throw std::invalid_argument("tangent directions need a marked ideal of maximal order");
    return iterated_derivative(M.ideal, M.mark - 1);
}

TangentChoice select_tangent_direction(const Ideal& T, const std::vector<bool>& allowed) {
    for (const auto& u : T.basis()) {
        Polynomial lin = linear_part(u);
        if (lin.is_zero()) continue;
        for (std::size_t p = 0; p < u.nvars(); ++p) {
            if (!allowed[p]) continue;
            bool linear_in_p = true, has_p = false;
            for (const auto& t : u.terms()) {
                if (t.mono[p] == 0) continue;
                if (t.mono[p] > 1 || t.mono.degree() != 1) {
                    linear_in_p = false;
                    break;
                }
                has_p = true;
            }
            if (has_p && linear_in_p) return {u, p};
        }
    }
    throw NoTangentDirection();
}

TangentChoice select_tangent_direction(const MarkedIdeal& M) {
    return select_tangent_direction(tangent_directions(M), std::vector<bool>(M.ideal.nvars(), true));
}

MarkedIdeal marked_sum(const std::vector<MarkedIdeal>& summands) {
    if (summands.empty()) throw std::invalid_argument("empty marked sum");
    for (const auto& s : summands)
        if (s.mark == 0) throw std::invalid_argument("marked sum with a zero mark");
    if (summands.size() == 1) return summands[0];
    std::size_t n = summands[0].ideal.nvars();
    std::vector<Polynomial> gens;
    unsigned total = 1;
    for (const auto& s : summands) total *= s.mark;
    for (const auto& s : summands) {
        Ideal p = s.ideal.pow(total / s.mark);
        for (const auto& g : p.basis()) gens.push_back(g);
    }
    return {Ideal(n, std::move(gens)), total};
}

MarkedIdeal marked_product(const MarkedIdeal& a, const MarkedIdeal& b) {
    return {a.ideal * b.ideal, a.mark + b.mark};
}

MarkedIdeal coefficient_ideal(const MarkedIdeal& M) {
    std::vector<MarkedIdeal> parts;
    Ideal d = M.ideal;
    for (unsigned i = 0; i < M.mark; ++i) {
        parts.push_back({d, M.mark - i});
        if (i + 1 < M.mark) d = derivative_ideal(d);
    }
    MarkedIdeal s = marked_sum(parts);
    return {Ideal(s.ideal.nvars(), s.ideal.basis()), s.mark};
}

MarkedIdeal homogenized_ideal(const MarkedIdeal& M) {
    if (M.mark <= 1) return M;
    Ideal T = iterated_derivative(M.ideal, M.mark - 1);
    std::vector<Polynomial> gens = M.ideal.basis();
    Ideal d = M.ideal;
    Ideal tp = Ideal::unit(M.ideal.nvars());
    for (unsigned i = 1; i < M.mark; ++i) {
        d = derivative_ideal(d);
        tp = Ideal(M.ideal.nvars(), (tp * T).basis());
        Ideal prod = d * tp;
        for (const auto& g : prod.basis()) gens.push_back(g);
    }
    Ideal h(M.ideal.nvars(), std::move(gens));
    return {Ideal(h.nvars(), h.basis()), M.mark};
}

namespace {

// Largest k with eq^k dividing every element of the basis.
int equation_valuation(const std::vector<Polynomial>& basis, const Polynomial& eq) {
    int k = std::numeric_limits<int>::max();
    for (const auto& g : basis) {
        int v = 0;
        Polynomial cur = g;
        while (auto q = exact_divide(cur, eq)) {
            cur = std::move(*q);
            ++v;
        }
        k = std::min(k, v);
        if (k == 0) break;
    }
    return k;
}

}  // namespace

MonomialDecomposition monomial_decomposition(const Ideal& I, const std::vector<BoundaryEquation>& boundary) {
    std::size_t n = I.nvars();
    std::vector<Polynomial> cur = I.basis();
    if (cur.empty()) throw std::invalid_argument("monomial decomposition of the zero ideal");
    MonomialDecomposition out;
    out.monomial = Polynomial::constant(n, 1);
    for (const auto& b : boundary) {
        int k = 0;
        // Coordinate equations: read the valuation off the exponents directly.
        if (b.equation.size() == 1 && b.equation.leading().mono.degree() == 1) {
            std::size_t var = 0;
            while (b.equation.leading().mono[var] == 0) ++var;
            k = std::numeric_limits<int>::max();
            for (const auto& g : cur) k = std::min(k, polynomial_var_valuation(g, var));
            if (k > 0)
                for (auto& g : cur) g = divide_by_var_power(g, var, k);
        } else {
            k = equation_valuation(cur, b.equation);
            if (k > 0) {
                Polynomial e = b.equation.pow(k);
                for (auto& g : cur) g = *exact_divide(g, e);
            }
        }
        out.exponents[b.id] = k;
        if (k > 0) out.monomial = out.monomial * b.equation.pow(k);
    }
    out.nonmonomial = Ideal(n, std::move(cur));
    return out;
}

unsigned order_on_support(const Ideal& N, const Ideal& support_ideal) {
    unsigned d = 0;
    Ideal cur = N;
    while (!ideal_is_unit(cur + support_ideal)) {
        cur = derivative_ideal(cur);
        ++d;
    }
    return d;
}

MarkedIdeal companion_ideal(const MonomialDecomposition& dec, unsigned mark, unsigned ordN, CompanionVariant variant) {
    std::size_t n = dec.nonmonomial.nvars();
    bool monomial_nontrivial = !dec.monomial.is_constant();
    if (variant == CompanionVariant::bravo_villamayor && ordN <= 1 && mark == 1 && monomial_nontrivial)
        return {Ideal(n, {dec.monomial}), 1};
    if (ordN == 0) throw CompanionError("companion ideal needs a nonmonomial part of positive order");
    if (ordN >= mark) return {dec.nonmonomial, ordN};
    MarkedIdeal m{Ideal(n, {dec.monomial}), mark - ordN};
    return marked_sum({{dec.nonmonomial, ordN}, m});
}

MarkedIdeal restrict_to_coordinates(const MarkedIdeal& M, const std::vector<std::size_t>& vars) {
    std::size_t n = M.ideal.nvars();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(n, i));
    for (auto v : vars) images[v] = Polynomial(n);
    std::vector<Polynomial> gens;
    for (const auto& g : M.ideal.basis()) gens.push_back(substitute(g, images));
    return {Ideal(n, std::move(gens)), M.mark};
}

MarkedIdeal restrict_to_hypersurface(const MarkedIdeal& M, std::size_t pivot) {
    return restrict_to_coordinates(M, {pivot});
}

}  // namespace mres
