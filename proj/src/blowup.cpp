#include "mres/blowup.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace mres {

bool divisor_less(const Divisor& a, const Divisor& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.position < b.position;
}

std::vector<Polynomial> identity_images(std::size_t nvars) {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < nvars; ++i) out.push_back(Polynomial::variable(nvars, i));
    return out;
}

Chart root_chart(const std::vector<std::string>& vars) {
    Chart c;
    c.id = "0";
    c.vars = vars;
    c.substitution = identity_images(vars.size());
    c.exceptional.assign(vars.size(), std::nullopt);
    return c;
}

std::vector<Chart> blow_up_center(const Chart& chart, const Center& center, const std::string& divisor_id) {
    std::size_t n = chart.vars.size();
    std::vector<Chart> out;
    auto child_base = [&](std::size_t ordinal) {
        Chart c;
        c.id = chart.id + "." + std::to_string(ordinal);
        c.vars = chart.vars;
        c.parent = chart.id;
        c.exceptional = chart.exceptional;
        c.depth = chart.depth + 1;
        c.substitution = identity_images(n);
        return c;
    };
    if (center.hypersurface) {
        if (!center.vars.empty()) throw CenterError("hypersurface center with coordinate part");
        Chart c = child_base(1);
        c.exceptional_equation = *center.hypersurface;
        out.push_back(std::move(c));
        return out;
    }
    if (center.vars.empty()) throw CenterError("empty center");
    std::set<std::size_t> seen(center.vars.begin(), center.vars.end());
    if (seen.size() != center.vars.size()) throw CenterError("center lists a variable twice");
    for (auto v : seen)
        if (v >= n) throw CenterError("center variable out of range");
    std::size_t ordinal = 0;
    for (std::size_t m : seen) {
        Chart c = child_base(++ordinal);
        for (std::size_t i : seen)
            if (i != m) c.substitution[i] = Polynomial::variable(n, i) * Polynomial::variable(n, m);
        c.exceptional_var = m;
        c.exceptional_equation = Polynomial::variable(n, m);
        c.exceptional[m] = divisor_id;
        out.push_back(std::move(c));
    }
    return out;
}

Polynomial total_transform(const Polynomial& f, const Chart& child) { return substitute(f, child.substitution); }

namespace {

Polynomial divide_by_exceptional(const Polynomial& f, const Chart& child, int k) {
    if (k == 0 || f.is_zero()) return f;
    if (child.exceptional_var) {
        if (polynomial_var_valuation(f, *child.exceptional_var) < k)
            throw CenterError("center not in support");
        return divide_by_var_power(f, *child.exceptional_var, k);
    }
    auto q = exact_divide(f, child.exceptional_equation->pow(k));
    if (!q) throw CenterError("center not in support");
    return *q;
}

int exceptional_valuation(const Polynomial& f, const Chart& child) {
    if (child.exceptional_var) return polynomial_var_valuation(f, *child.exceptional_var);
    int k = 0;
    Polynomial cur = f;
    while (auto q = exact_divide(cur, *child.exceptional_equation)) {
        cur = std::move(*q);
        ++k;
    }
    return k;
}

}  // namespace

Ideal transform_ideal(const Ideal& I, TransformKind kind, const Chart& child, unsigned mark) {
    std::size_t n = I.nvars();
    std::vector<Polynomial> subst;
    for (const auto& g : I.basis()) subst.push_back(total_transform(g, child));
    switch (kind) {
        case TransformKind::total:
            break;
        case TransformKind::controlled:
            for (auto& g : subst) g = divide_by_exceptional(g, child, static_cast<int>(mark));
            break;
        case TransformKind::weak: {
            Ideal tot(n, subst);
            if (tot.basis().empty()) break;
            int k = std::numeric_limits<int>::max();
            for (const auto& g : tot.basis()) k = std::min(k, exceptional_valuation(g, child));
            subst.clear();
            for (const auto& g : tot.basis()) subst.push_back(divide_by_exceptional(g, child, k));
            break;
        }
        case TransformKind::strict:
            if (I.basis().size() > 1) throw std::invalid_argument("strict transform is implemented for principal ideals");
            for (auto& g : subst)
                if (!g.is_zero()) g = divide_by_exceptional(g, child, exceptional_valuation(g, child));
            break;
    }
    return Ideal(n, std::move(subst));
}

std::vector<Divisor> transform_boundary(const std::vector<Divisor>& E, const Chart& child, const Center& center,
                                        const Divisor& new_divisor) {
    std::vector<Divisor> out;
    for (const auto& d : E) {
        Divisor t = d;
        if (!d.present()) {
            out.push_back(std::move(t));
            continue;
        }
        if (center.hypersurface) {
            // The blow-up is the identity; a divisor equal to the center is replaced by the new one.
            if (d.equation.monic() == center.hypersurface->monic()) {
                t.equation = Polynomial(d.equation.nvars());
                t.var.reset();
            }
        } else if (d.var) {
            if (child.exceptional_var && *d.var == *child.exceptional_var) {
                t.equation = Polynomial(d.equation.nvars());
                t.var.reset();
            }
        } else {
            Polynomial s = total_transform(d.equation, child);
            s = divide_by_exceptional(s, child, exceptional_valuation(s, child));
            if (s.is_constant()) {
                t.equation = Polynomial(d.equation.nvars());
            } else {
                t.equation = s.monic();
            }
        }
        out.push_back(std::move(t));
    }
    out.push_back(new_divisor);
    return out;
}

std::vector<Polynomial> normalize_tangent_direction(const Polynomial& u, std::size_t pivot,
                                                    const std::vector<bool>& boundary_vars) {
    std::size_t n = u.nvars();
    if (pivot < boundary_vars.size() && boundary_vars[pivot])
        throw CenterError("no transversal tangent direction");
    Rational c = 0;
    std::vector<Term> rest;
    for (const auto& t : u.terms()) {
        if (t.mono[pivot] == 0) {
            rest.push_back(t);
        } else if (t.mono[pivot] == 1 && t.mono.degree() == 1) {
            c = t.coef;
        } else {
            throw CenterError("no transversal tangent direction");
        }
    }
    if (c == 0) throw CenterError("no transversal tangent direction");
    Polynomial r = Polynomial::from_terms(n, std::move(rest));
    std::vector<Polynomial> images = identity_images(n);
    images[pivot] = (Polynomial::variable(n, pivot) - r).scaled(1 / c);
    return images;
}

}  // namespace mres
