#include "mres/resolver.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <memory>
#include <set>

namespace mres {

namespace {

struct ResolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Owning pointer with value semantics, for the recursive frame structure.
template <class T>
class Box {
public:
    explicit Box(T v) : p_(std::make_unique<T>(std::move(v))) {}
    Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
    Box& operator=(const Box& o) {
        p_ = std::make_unique<T>(*o.p_);
        return *this;
    }
    Box(Box&&) noexcept = default;
    Box& operator=(Box&&) noexcept = default;
    T& operator*() { return *p_; }
    const T& operator*() const { return *p_; }
    T* operator->() { return p_.get(); }
    const T* operator->() const { return p_.get(); }

private:
    std::unique_ptr<T> p_;
};

struct Frame;

// Resolution of J = C(H(companion)) while the order of the nonmonomial part stays constant.
struct Phase {
    InvEntry prefix;
    Ideal jbar;
    unsigned mubar = 1;
    std::set<std::string> e_old;  // boundary at the start of the phase
    std::map<std::vector<std::size_t>, Box<Frame>> boundary_inners;  // keyed by the H coordinates
    std::optional<std::vector<std::size_t>> chosen_h;
    std::optional<Box<Frame>> contact;
    std::size_t pivot = 0;
};

// A marked ideal on the coordinate subspace {x_i = 0 : !active[i]} of the chart.
struct Frame {
    std::vector<bool> active;
    Ideal I;
    unsigned mu = 1;
    std::vector<std::string> boundary;
    std::optional<Phase> phase;
};

struct ChartState {
    Chart chart;
    std::vector<Divisor> divisors;
    Frame root;
    std::vector<Polynomial> total;
    std::vector<std::vector<Polynomial>> normalizations;
};

struct Eval {
    bool resolved = false;
    ResolutionKey key;
    std::vector<std::string> stages;
    Center center;
    // Set when the maximal locus is known but cannot be written as a chart center. Only fatal if
    // the branch has to blow it up.
    std::optional<std::string> center_error;
};

struct Ctx {
    ChartState& st;
    const Config& cfg;
    std::size_t n;
    std::vector<std::string> stack;  // stage path under evaluation; kept on exceptions
};

std::vector<std::size_t> fixed_vars(const Frame& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.active.size(); ++i)
        if (!f.active[i]) out.push_back(i);
    return out;
}

const Divisor* find_divisor(const ChartState& st, const std::string& id) {
    for (const auto& d : st.divisors)
        if (d.id == id) return &d;
    return nullptr;
}

RhoEntry rho_entry(const Divisor& d) { return {d.id, d.birth, d.position}; }

std::vector<BoundaryEquation> boundary_equations(const Frame& f, const ChartState& st) {
    std::vector<BoundaryEquation> out;
    for (const auto& id : f.boundary) {
        const Divisor* d = find_divisor(st, id);
        if (d && d->present()) out.push_back({id, d->equation});
    }
    return out;
}

bool is_divisor_coordinate(const ChartState& st, std::size_t var) {
    for (const auto& d : st.divisors)
        if (d.present() && d.var && *d.var == var) return true;
    return false;
}

Ideal add_coordinates(const Ideal& I, const std::vector<std::size_t>& vars) {
    std::vector<Polynomial> g = I.basis();
    for (auto v : vars) g.push_back(Polynomial::variable(I.nvars(), v));
    return Ideal(I.nvars(), std::move(g));
}

Ideal substitute_ideal(const Ideal& I, const std::vector<Polynomial>& images) {
    std::vector<Polynomial> g;
    for (const auto& p : I.basis()) g.push_back(substitute(p, images));
    return Ideal(I.nvars(), std::move(g));
}

void substitute_frame(Frame& f, const std::vector<Polynomial>& images) {
    f.I = substitute_ideal(f.I, images);
    if (!f.phase) return;
    f.phase->jbar = substitute_ideal(f.phase->jbar, images);
    for (auto& [h, inner] : f.phase->boundary_inners) substitute_frame(*inner, images);
    if (f.phase->contact) substitute_frame(**f.phase->contact, images);
}

void apply_coordinate_change(ChartState& st, const std::vector<Polynomial>& images) {
    substitute_frame(st.root, images);
    for (auto& t : st.total) t = substitute(t, images);
    for (auto& d : st.divisors)
        if (d.present() && !d.var) d.equation = substitute(d.equation, images).monic();
    st.normalizations.push_back(images);
}

Center make_center(std::vector<std::size_t> vars, const Frame& f) {
    for (auto v : fixed_vars(f)) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return Center{vars, std::nullopt};
}

bool center_less(const Center& a, const Center& b) {
    if (a.hypersurface || b.hypersurface) return !a.hypersurface && b.hypersurface;
    return a.vars < b.vars;
}

std::vector<std::string> new_divisors_for(const Frame& f, const Phase& ph, const ChartState& st,
                                          const std::vector<bool>& active) {
    std::vector<std::string> out;
    for (const auto& id : f.boundary) {
        if (ph.e_old.count(id)) continue;
        const Divisor* d = find_divisor(st, id);
        if (d && d->present() && d->var && active[*d->var]) out.push_back(id);
    }
    return out;
}

Eval eval_step2(Frame& f, Ctx& ctx);

Eval monomial_step(const Frame& f, const MonomialDecomposition& dec, unsigned mark, const Ideal& support, Ctx& ctx) {
    std::vector<std::pair<RhoEntry, int>> exps;
    std::vector<const Divisor*> divs;
    for (const auto& id : f.boundary) {
        const Divisor* d = find_divisor(ctx.st, id);
        if (!d || !d->present()) continue;
        auto it = dec.exponents.find(id);
        int a = it == dec.exponents.end() ? 0 : it->second;
        exps.push_back({rho_entry(*d), a});
        divs.push_back(d);
    }
    auto feasible = [&](const std::vector<std::size_t>& members) {
        std::vector<Polynomial> g = support.basis();
        for (auto i : members) g.push_back(divs[i]->equation);
        return !ideal_is_unit(Ideal(ctx.n, std::move(g)));
    };
    auto rn = compute_rho_nu_monomial(exps, mark, feasible);
    if (!rn) throw ResolverError("monomial support without a center");
    Eval r;
    r.stages = {"2b"};
    r.key.rho = rn->rho;
    long sum = 0;
    std::vector<std::size_t> vars;
    std::optional<Polynomial> hyper;
    for (const auto& e : rn->rho) {
        for (std::size_t i = 0; i < divs.size(); ++i) {
            if (divs[i]->id != e.id) continue;
            sum += exps[i].second;
            if (divs[i]->var)
                vars.push_back(*divs[i]->var);
            else
                hyper = divs[i]->equation;
        }
    }
    r.key.nu = Rational(sum) / Rational(mark);
    if (hyper) {
        if (rn->rho.size() != 1 || !fixed_vars(f).empty()) throw CenterError("center not monomializable in chart");
        r.center = Center{{}, *hyper};
    } else {
        r.center = make_center(vars, f);
    }
    return r;
}

Eval eval_phase(Frame& f, Phase& ph, Ctx& ctx);

Eval eval_step2(Frame& f, Ctx& ctx) {
    if (f.I.basis().empty()) throw ResolverError("restricted ideal vanishes identically");
    Ideal S = iterated_derivative(f.I, f.mu - 1);
    if (ideal_is_unit(S)) return Eval{true, {}, {}, {}, {}};
    ctx.stack.push_back("2a");
    if (f.phase) {
        Eval r = eval_phase(f, *f.phase, ctx);
        if (!r.resolved) {
            r.key.inv = r.key.inv.prepend(f.phase->prefix);
            r.stages.insert(r.stages.begin(), "2a");
            ctx.stack.pop_back();
            return r;
        }
        f.phase.reset();
    }
    MonomialDecomposition dec = monomial_decomposition(f.I, boundary_equations(f, ctx.st));
    unsigned d = order_on_support(dec.nonmonomial, S);
    if (ctx.cfg.variant == CompanionVariant::bravo_villamayor && d <= 1 && f.mu == 1 && !dec.monomial.is_constant()) {
        ctx.stack.back() = "2b";
        Eval r = monomial_step(f, dec, 1, Ideal(ctx.n, {dec.monomial}), ctx);
        r.key.inv = InvVector({InvEntry{Rational(3, 2), false}});
        r.stages.insert(r.stages.begin(), "2a");
        ctx.stack.pop_back();
        return r;
    }
    if (d == 0) {
        ctx.stack.back() = "2b";
        Eval r = monomial_step(f, dec, f.mu, S, ctx);
        ctx.stack.pop_back();
        return r;
    }
    MarkedIdeal O = companion_ideal(dec, f.mu, d, CompanionVariant::canonical);
    MarkedIdeal J = coefficient_ideal(homogenized_ideal(O));
    Phase ph;
    ph.prefix = InvEntry{Rational(d) / Rational(f.mu), false};
    ph.jbar = J.ideal;
    ph.mubar = J.mark;
    for (const auto& id : f.boundary) {
        const Divisor* dv = find_divisor(ctx.st, id);
        if (dv && dv->present()) ph.e_old.insert(id);
    }
    f.phase = std::move(ph);
    Eval r = eval_phase(f, *f.phase, ctx);
    if (r.resolved) throw ResolverError("companion ideal has empty support");
    r.key.inv = r.key.inv.prepend(f.phase->prefix);
    r.stages.insert(r.stages.begin(), "2a");
    ctx.stack.pop_back();
    return r;
}

// Subsets of `items` of the largest size whose coordinates meet V(T); empty if none meets it.
std::vector<std::vector<std::size_t>> maximal_meeting_subsets(const Ideal& T, const std::vector<std::size_t>& items) {
    std::size_t k = items.size();
    for (std::size_t s = k; s >= 1; --s) {
        std::vector<std::vector<std::size_t>> found;
        std::vector<bool> pick(k, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
        do {
            std::vector<std::size_t> vars;
            for (std::size_t i = 0; i < k; ++i)
                if (pick[i]) vars.push_back(items[i]);
            std::sort(vars.begin(), vars.end());
            if (!ideal_is_unit(add_coordinates(T, vars))) found.push_back(vars);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!found.empty()) {
            std::sort(found.begin(), found.end());
            return found;
        }
    }
    return {};
}

Eval eval_phase(Frame& f, Phase& ph, Ctx& ctx) {
    Ideal T = iterated_derivative(ph.jbar, ph.mubar - 1);
    if (ideal_is_unit(T)) return Eval{true, {}, {}, {}, {}};

    std::vector<std::size_t> old_vars;
    for (const auto& id : ph.e_old) {
        const Divisor* d = find_divisor(ctx.st, id);
        if (!d || !d->present()) continue;
        if (d->var) {
            if (f.active[*d->var]) old_vars.push_back(*d->var);
        } else if (!ideal_is_unit(T + Ideal(ctx.n, {d->equation}))) {
            throw CenterError("center not monomializable in chart");
        }
    }
    std::sort(old_vars.begin(), old_vars.end());
    auto candidates = maximal_meeting_subsets(T, old_vars);

    if (!candidates.empty()) {
        ctx.stack.push_back("1a");
        ph.contact.reset();
        std::size_t s = candidates.front().size();
        for (auto it = ph.boundary_inners.begin(); it != ph.boundary_inners.end();) {
            if (std::find(candidates.begin(), candidates.end(), it->first) == candidates.end())
                it = ph.boundary_inners.erase(it);
            else
                ++it;
        }
        std::optional<Eval> best;
        std::optional<std::vector<std::size_t>> best_h;
        for (const auto& H : candidates) {
            MarkedIdeal R = restrict_to_coordinates({ph.jbar, ph.mubar}, H);
            Eval cand;
            if (R.ideal.basis().empty()) {
                cand.key.inv = InvVector({InvEntry{Rational(s), false}, InvEntry::inf()});
                cand.stages = {"1aa"};
                cand.center = make_center(H, f);
            } else {
                auto it = ph.boundary_inners.find(H);
                if (it == ph.boundary_inners.end()) {
                    std::vector<bool> active = f.active;
                    for (auto v : H) active[v] = false;
                    Frame inner{active, R.ideal, ph.mubar, new_divisors_for(f, ph, ctx.st, active), std::nullopt};
                    it = ph.boundary_inners.emplace(H, Box<Frame>(std::move(inner))).first;
                }
                ctx.stack.back() = "1ab";
                cand = eval_step2(*it->second, ctx);
                if (cand.resolved) throw ResolverError("restriction to a boundary stratum lost the support");
                cand.key.inv = cand.key.inv.prepend(InvEntry{Rational(s), false});
                cand.stages.insert(cand.stages.begin(), "1ab");
            }
            if (!best || compare_key(cand.key, best->key) > 0 ||
                (compare_key(cand.key, best->key) == 0 && center_less(cand.center, best->center))) {
                best = std::move(cand);
                best_h = H;
            }
        }
        ph.chosen_h = best_h;
        ctx.stack.pop_back();
        return *best;
    }

    ph.boundary_inners.clear();
    ph.chosen_h.reset();
    if (ph.contact) {
        ctx.stack.push_back("1bb");
        Eval r = eval_step2(**ph.contact, ctx);
        if (r.resolved) throw ResolverError("maximal contact restriction lost the support");
        r.key.inv = r.key.inv.prepend(InvEntry{0, false});
        r.stages.insert(r.stages.begin(), "1bb");
        ctx.stack.pop_back();
        return r;
    }

    std::vector<bool> allowed(ctx.n, false);
    for (std::size_t v = 0; v < ctx.n; ++v) allowed[v] = f.active[v] && !is_divisor_coordinate(ctx.st, v);
    std::vector<bool> boundary_vars(ctx.n, false);
    for (std::size_t v = 0; v < ctx.n; ++v) boundary_vars[v] = is_divisor_coordinate(ctx.st, v);

    Polynomial g(ctx.n);
    for (const auto& b : T.basis()) g = polynomial_gcd(g, b);
    if (!g.is_constant()) {
        ctx.stack.push_back("1ba");
        Eval r;
        r.key.inv = InvVector({InvEntry{0, false}, InvEntry::inf()});
        r.stages = {"1ba"};
        g = g.monic();
        if (g.size() == 1 && g.leading().mono.degree() == 1) {
            std::size_t v = 0;
            while (g.leading().mono[v] == 0) ++v;
            r.center = make_center({v}, f);
        } else {
            std::optional<TangentChoice> tc;
            try {
                tc = select_tangent_direction(Ideal(ctx.n, {g}), allowed);
            } catch (const NoTangentDirection&) {
            }
            if (tc) {
                apply_coordinate_change(ctx.st, normalize_tangent_direction(g, tc->pivot, boundary_vars));
                r.center = make_center({tc->pivot}, f);
            } else if (fixed_vars(f).empty() && jacobian_unit_check(Ideal(ctx.n, {g}), 1)) {
                r.center = Center{{}, g};
            } else {
                r.center_error = "center not monomializable in chart";
            }
        }
        ctx.stack.pop_back();
        return r;
    }

    ctx.stack.push_back("1bb");
    TangentChoice tc = select_tangent_direction(T, allowed);
    auto images = normalize_tangent_direction(tc.u, tc.pivot, boundary_vars);
    if (images != identity_images(ctx.n)) apply_coordinate_change(ctx.st, images);
    std::vector<bool> active = f.active;
    active[tc.pivot] = false;
    MarkedIdeal R = restrict_to_hypersurface({ph.jbar, ph.mubar}, tc.pivot);
    ph.pivot = tc.pivot;
    ph.contact = Box<Frame>(Frame{active, R.ideal, ph.mubar, new_divisors_for(f, ph, ctx.st, active), std::nullopt});
    Eval r = eval_step2(**ph.contact, ctx);
    if (r.resolved) throw ResolverError("maximal contact restriction lost the support");
    r.key.inv = r.key.inv.prepend(InvEntry{0, false});
    r.stages.insert(r.stages.begin(), "1bb");
    ctx.stack.pop_back();
    return r;
}

// ---- blow-up of a chart state ----

Ideal controlled(const Ideal& I, const Chart& child, unsigned mark) {
    return transform_ideal(I, TransformKind::controlled, child, mark);
}

std::optional<Frame> transform_frame(const Frame& f, const Chart& child, const ChartState& cst, const std::string& new_id) {
    if (child.exceptional_var && !f.active[*child.exceptional_var]) return std::nullopt;
    Frame g;
    g.active = f.active;
    g.mu = f.mu;
    g.I = controlled(f.I, child, f.mu);
    for (const auto& id : f.boundary) {
        const Divisor* d = find_divisor(cst, id);
        if (d && d->present()) g.boundary.push_back(id);
    }
    bool sees_new = child.exceptional_var ? f.active[*child.exceptional_var] : fixed_vars(f).empty();
    if (sees_new) g.boundary.push_back(new_id);
    if (f.phase) {
        const Phase& p = *f.phase;
        Phase q;
        q.prefix = p.prefix;
        q.mubar = p.mubar;
        q.e_old = p.e_old;
        q.pivot = p.pivot;
        q.jbar = controlled(p.jbar, child, p.mubar);
        if (p.contact) {
            if (auto t = transform_frame(**p.contact, child, cst, new_id)) q.contact = Box<Frame>(std::move(*t));
        }
        for (const auto& [h, inner] : p.boundary_inners) {
            try {
                if (auto t = transform_frame(*inner, child, cst, new_id)) q.boundary_inners.emplace(h, Box<Frame>(std::move(*t)));
            } catch (const CenterError&) {
                // Only the chosen stratum is guaranteed to contain the center; others are rebuilt.
                if (p.chosen_h && *p.chosen_h == h) throw;
            }
        }
        g.phase = std::move(q);
    }
    return g;
}

ChartState transform_state(const ChartState& parent, const Chart& child, const Center& center, const Divisor& nd) {
    ChartState c;
    c.chart = child;
    c.divisors = transform_boundary(parent.divisors, child, center, nd);
    for (const auto& t : parent.total) c.total.push_back(total_transform(t, child));
    auto root = transform_frame(parent.root, child, c, nd.id);
    c.root = std::move(*root);
    return c;
}

// ---- reporting helpers ----

std::vector<std::string> poly_strings(const std::vector<Polynomial>& ps, const std::vector<std::string>& vars) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(to_string(p, vars));
    return out;
}

std::vector<DivisorRecord> divisor_records(const ChartState& st) {
    std::vector<DivisorRecord> out;
    for (const auto& d : st.divisors) {
        DivisorRecord r{d.id, d.birth, d.position, std::nullopt};
        if (d.present()) r.equation = to_string(d.equation, st.chart.vars);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BoundaryEquation> present_equations(const std::vector<DivisorRecord>& ds, const std::vector<std::string>& vars) {
    std::vector<BoundaryEquation> out;
    for (const auto& d : ds)
        if (d.equation) out.push_back({d.id, parse_polynomial(*d.equation, vars)});
    return out;
}

Ideal parse_ideal(const std::vector<std::string>& gens, const std::vector<std::string>& vars) {
    std::vector<Polynomial> g;
    for (const auto& s : gens) g.push_back(parse_polynomial(s, vars));
    return Ideal(vars.size(), std::move(g));
}

void trace_line(const Config& cfg, const std::string& s) {
    if (cfg.trace > 0) std::cerr << s << "\n";
}

}  // namespace

// ---- public API ----

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::principalize: return "principalize";
        case Mode::resolve: return "resolve";
        case Mode::embedded: return "embedded";
    }
    return "resolve";
}

const char* variant_name(CompanionVariant v) { return v == CompanionVariant::canonical ? "canonical" : "bv"; }

std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "principalize") return Mode::principalize;
    if (s == "resolve") return Mode::resolve;
    if (s == "embedded") return Mode::embedded;
    return std::nullopt;
}

std::optional<CompanionVariant> parse_variant(const std::string& s) {
    if (s == "canonical") return CompanionVariant::canonical;
    if (s == "bv" || s == "bravo_villamayor") return CompanionVariant::bravo_villamayor;
    return std::nullopt;
}

bool ResolutionTree::certificates_passed() const {
    for (const auto& n : nodes)
        for (const auto& c : n.certificates)
            if (!c.passed) return false;
    return true;
}

void validate_problem(const Problem& p, Mode mode) {
    if (p.vars.empty()) throw InputError("no variables");
    std::set<std::string> names(p.vars.begin(), p.vars.end());
    if (names.size() != p.vars.size()) throw InputError("duplicate variable name");
    if (p.mark == 0) throw InputError("mark must be positive");
    bool nonzero = false;
    for (const auto& g : p.generators) {
        if (g.nvars() != p.vars.size()) throw InputError("generator in the wrong ring");
        if (!g.is_zero()) nonzero = true;
    }
    if (!nonzero) throw InputError("ideal is zero");
    std::set<std::size_t> bvars;
    std::set<std::string> bids;
    for (const auto& b : p.boundary) {
        if (b.var >= p.vars.size()) throw InputError("boundary variable out of range");
        if (!bvars.insert(b.var).second) throw InputError("boundary variables must be distinct");
        if (!bids.insert(b.id).second) throw InputError("duplicate divisor id");
    }
    if (mode == Mode::embedded) {
        Ideal I(p.vars.size(), p.generators);
        if (I.basis().size() == 1) {
            const Polynomial& f = I.basis()[0];
            Polynomial g = f;
            for (std::size_t v = 0; v < p.vars.size(); ++v) g = polynomial_gcd(g, partial_derivative(f, v));
            if (!g.is_constant()) throw InputError("input is not reduced");
        }
    }
}

std::vector<Certificate> verify_leaf(const ResolutionNode& node, Mode mode, const std::vector<std::string>& vars,
                                     std::size_t codim) {
    std::vector<Certificate> out;
    std::size_t n = vars.size();
    auto bnd = present_equations(node.divisors, vars);
    if (mode == Mode::resolve) {
        Ideal I = parse_ideal(node.ideal, vars);
        bool ok = support_is_empty({I, node.mark});
        out.push_back({"support_empty", ok, ok ? "" : "controlled transform still has support"});
        return out;
    }
    Ideal total = parse_ideal(node.total_transform, vars);
    if (mode == Mode::principalize) {
        MonomialDecomposition dec = monomial_decomposition(total, bnd);
        bool ok = ideal_is_unit(dec.nonmonomial);
        out.push_back({"principal_monomial", ok, ok ? "" : "nonmonomial part of the total transform is proper"});
        return out;
    }
    // Strict transform: remove every exceptional coordinate hyperplane from the total transform.
    Ideal N = total;
    for (const auto& d : node.divisors) {
        if (d.birth == 0 || !d.equation) continue;
        Polynomial e = parse_polynomial(*d.equation, vars);
        if (e.size() != 1 || e.total_degree() != 1) continue;
        for (std::size_t v = 0; v < n; ++v)
            if (e == Polynomial::variable(n, v)) N = saturate_by_variable(N, v);
    }
    bool smooth = jacobian_unit_check(N, codim);
    out.push_back({"smooth", smooth, smooth ? "" : "strict transform fails the Jacobian criterion"});
    bool snc = true;
    std::string bad;
    std::size_t k = bnd.size();
    for (unsigned long mask = 1; mask < (1ul << k) && snc; ++mask) {
        std::vector<Polynomial> eqs;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1ul) eqs.push_back(bnd[i].equation);
        std::size_t s = eqs.size();
        Ideal D(n, eqs);
        if (!ideal_is_unit(D) && !jacobian_unit_check(D, s)) {
            snc = false;
            bad = "divisors";
        }
        std::vector<Polynomial> withN = N.basis();
        withN.insert(withN.end(), eqs.begin(), eqs.end());
        Ideal ND(n, std::move(withN));
        if (!ideal_is_unit(ND) && !jacobian_unit_check(ND, codim + s)) {
            snc = false;
            bad = "strict transform and divisors";
        }
    }
    out.push_back({"snc", snc, snc ? "" : "not transversal: " + bad});
    if (parse_ideal(node.ideal, vars).basis().size() == 1) {
        MonomialDecomposition dec = monomial_decomposition(total, bnd);
        bool ok = ideal_equal(dec.nonmonomial, N);
        out.push_back({"factorization", ok, ok ? "" : "total transform is not monomial times the strict transform"});
    }
    return out;
}

ResolutionTree run(const Problem& problem, const Config& cfg) {
    ResolutionTree tree;
    tree.vars = problem.vars;
    tree.mode = cfg.mode;
    tree.variant = cfg.variant;
    tree.input_mark = cfg.mode == Mode::resolve ? problem.mark : 1;
    validate_problem(problem, cfg.mode);
    if (cfg.max_depth < 1) throw InputError("max depth must be at least 1");
    std::size_t n = problem.vars.size();

    GroebnerBudget budget(cfg.budget);
    struct Pending {
        ChartState state;
        std::size_t node;
    };
    std::deque<Pending> queue;
    {
        ChartState root;
        root.chart = root_chart(problem.vars);
        int pos = 0;
        for (const auto& b : problem.boundary) {
            Divisor d;
            d.id = b.id;
            d.birth = 0;
            d.position = pos++;
            d.var = b.var;
            d.equation = Polynomial::variable(n, b.var);
            root.root.boundary.push_back(d.id);
            root.chart.exceptional[b.var] = d.id;
            root.divisors.push_back(std::move(d));
        }
        root.root.active.assign(n, true);
        root.root.I = Ideal(n, problem.generators);
        root.root.mu = tree.input_mark;
        root.total = root.root.I.basis();
        ResolutionNode node;
        node.chart = "0";
        tree.nodes.push_back(node);
        queue.push_back({std::move(root), 0});
    }
    try {
        Ideal input(n, problem.generators);
        tree.codim = n - static_cast<std::size_t>(std::max(0, krull_dimension(input)));
    } catch (const BudgetExhausted& e) {
        tree.status = RunStatus::exhausted;
        tree.error = e.what();
        tree.error_chart = "0";
        return tree;
    }
    const InvVector stop = stop_marker(tree.codim);

    auto record_state = [n](ResolutionNode& node, const ChartState& st) {
        node.normalization.clear();
        for (const auto& images : st.normalizations) {
            std::vector<std::string> s = poly_strings(images, st.chart.vars);
            node.normalization.insert(node.normalization.end(), s.begin(), s.end());
        }
        node.mark = st.root.mu;
        node.ideal = basis_strings(st.root.I, st.chart.vars);
        node.total_transform = basis_strings(Ideal(n, st.total), st.chart.vars);
        node.divisors = divisor_records(st);
        MonomialDecomposition dec = monomial_decomposition(st.root.I, boundary_equations(st.root, st));
        node.weak_transform = basis_strings(dec.nonmonomial, st.chart.vars);
    };

    while (!queue.empty()) {
        Pending cur = std::move(queue.front());
        queue.pop_front();
        ChartState& st = cur.state;
        ResolutionNode& node = tree.nodes[cur.node];
        Ctx ctx{st, cfg, n, {}};
        auto record = [&] { record_state(node, st); };
        // In embedded mode a branch may also end once the weak transform is smooth with normal crossings,
        // even when the invariant has not reached the stop marker.
        auto certified = [&] {
            if (cfg.mode != Mode::embedded) return false;
            auto certs = verify_leaf(node, cfg.mode, tree.vars, tree.codim);
            return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.passed; });
        };
        try {
            Eval r;
            try {
                r = eval_step2(st.root, ctx);
            } catch (const std::runtime_error& e) {
                if (!dynamic_cast<const CenterError*>(&e) && !dynamic_cast<const NoTangentDirection*>(&e)) throw;
                record();
                if (!certified()) throw;
                node.stage = "snc";
                node.stage_path = {"snc"};
                node.leaf = true;
                node.certificates = verify_leaf(node, cfg.mode, tree.vars, tree.codim);
                trace_line(cfg, "chart " + node.chart + " [snc]");
                continue;
            }
            record();

            bool stop_here = false;
            if (r.resolved) {
                node.stage = "resolved";
                node.stage_path = {"resolved"};
                stop_here = true;
            } else {
                node.key = r.key;
                node.stage_path = r.stages;
                node.stage = r.stages.back();
                if (cfg.mode == Mode::embedded &&
                    (compare_inv(r.key.inv, stop) == 0 || r.key.inv.entries().empty() ||
                     r.key.inv.entries().front().is_zero())) {
                    node.stage = "stop";
                    stop_here = true;
                } else if (certified()) {
                    node.stage = "snc";
                    stop_here = true;
                } else if (r.center_error) {
                    ctx.stack = r.stages;
                    throw CenterError(*r.center_error);
                }
            }
            trace_line(cfg, "chart " + node.chart + " [" + node.stage + "] " + (node.key ? key_to_string(*node.key) : ""));
            if (stop_here) {
                node.leaf = true;
                if (cfg.mode == Mode::principalize) {
                    Ideal total(n, st.total);
                    node.exponents = monomial_decomposition(total, boundary_equations(st.root, st)).exponents;
                }
                node.certificates = verify_leaf(node, cfg.mode, tree.vars, tree.codim);
                continue;
            }
            if (r.center.hypersurface) {
                node.hypersurface_center = true;
                node.center = {to_string(*r.center.hypersurface, st.chart.vars)};
            } else {
                for (auto v : r.center.vars) node.center.push_back(st.chart.vars[v]);
            }
            if (node.depth >= static_cast<int>(cfg.max_depth)) {
                tree.status = RunStatus::exhausted;
                tree.error = cfg.mode == Mode::embedded ? "stop marker never reached: depth cap" : "depth cap reached";
                tree.error_chart = node.chart;
                tree.error_stage = node.stage;
                break;
            }
            const std::string chart_id = node.chart;
            Divisor nd;
            nd.id = "D" + std::to_string(node.depth + 1);
            nd.birth = node.depth + 1;
            std::vector<Chart> children = blow_up_center(st.chart, r.center, nd.id);
            for (const auto& child : children) {
                Divisor d = nd;
                if (child.exceptional_var) {
                    d.var = child.exceptional_var;
                    d.equation = Polynomial::variable(n, *child.exceptional_var);
                } else {
                    d.equation = child.exceptional_equation->monic();
                }
                ResolutionNode cn;
                cn.chart = child.id;
                cn.parent = chart_id;
                cn.depth = child.depth;
                cn.substitution = poly_strings(child.substitution, child.vars);
                ChartState cs = transform_state(st, child, r.center, d);
                std::size_t idx = tree.nodes.size();
                tree.nodes.push_back(std::move(cn));
                tree.nodes[cur.node].children.push_back(idx);
                queue.push_back({std::move(cs), idx});
            }
        } catch (const BudgetExhausted& e) {
            tree.status = RunStatus::exhausted;
            tree.error = e.what();
        } catch (const NoTangentDirection& e) {
            tree.status = RunStatus::failed;
            tree.error = e.what();
        } catch (const CenterError& e) {
            tree.status = RunStatus::failed;
            tree.error = e.what();
        } catch (const ResolverError& e) {
            tree.status = RunStatus::failed;
            tree.error = e.what();
        } catch (const std::invalid_argument& e) {
            tree.status = RunStatus::failed;
            tree.error = e.what();
        }
        if (tree.status != RunStatus::ok) {
            if (tree.error_chart.empty()) {
                tree.error_chart = tree.nodes[cur.node].chart;
                std::string path;
                for (const auto& s : ctx.stack) path += (path.empty() ? "" : "/") + s;
                tree.error_stage = path;
            }
            break;
        }
    }
    // Charts created but never evaluated keep their transforms so a truncated tree can still be inspected.
    for (auto& p : queue) {
        ResolutionNode& node = tree.nodes[p.node];
        node.stage = "pending";
        node.stage_path = {"pending"};
        try {
            record_state(node, p.state);
        } catch (const std::exception&) {
        }
    }
    return tree;
}

ResolutionTree resolve_marked_ideal(const Problem& problem, Config cfg) {
    cfg.mode = Mode::resolve;
    return run(problem, cfg);
}

ResolutionTree principalize(const Problem& problem, Config cfg) {
    cfg.mode = Mode::principalize;
    return run(problem, cfg);
}

ResolutionTree embedded_desingularize(const Problem& problem, Config cfg) {
    cfg.mode = Mode::embedded;
    return run(problem, cfg);
}

std::vector<ResolutionKey> distinct_key_sequence(const ResolutionTree& tree) {
    std::map<int, ResolutionKey> best;
    for (const auto& nd : tree.nodes) {
        if (!nd.key) continue;
        auto it = best.find(nd.depth);
        if (it == best.end() || compare_key(*nd.key, it->second) > 0) best[nd.depth] = *nd.key;
    }
    std::vector<ResolutionKey> out;
    for (const auto& [d, k] : best) {
        if (!out.empty() && compare_key(out.back(), k) == 0 && out.back().nu == k.nu) continue;
        out.push_back(k);
    }
    return out;
}

}  // namespace mres
