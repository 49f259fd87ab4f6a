// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.
#include "checks.hpp"
#include "mres/resolver.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace mres;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

Problem make(const std::vector<std::string>& vars, const std::vector<std::string>& gens, unsigned mark = 1,
             const std::vector<InputDivisor>& boundary = {}) {
    Problem p;
    p.vars = vars;
    for (const auto& g : gens) p.generators.push_back(parse_polynomial(g, vars));
    p.mark = mark;
    p.boundary = boundary;
    return p;
}

ResolutionTree go(const Problem& p, Mode mode, unsigned max_depth = 64) {
    Config cfg;
    cfg.mode = mode;
    cfg.max_depth = max_depth;
    return run(p, cfg);
}

const ResolutionNode* find(const ResolutionTree& t, const std::string& chart) {
    for (const auto& n : t.nodes)
        if (n.chart == chart) return &n;
    return nullptr;
}

std::set<std::string> blown_up(const ResolutionTree& t) {
    std::set<std::string> out;
    for (const auto& n : t.nodes)
        if (!n.children.empty()) out.insert(n.chart);
    return out;
}

std::string join(const std::set<std::string>& s) {
    std::string r;
    for (const auto& x : s) r += (r.empty() ? "" : " ") + x;
    return r;
}

InvVector vec(std::initializer_list<const char*> entries) {
    std::vector<InvEntry> e;
    for (auto s : entries) {
        if (std::string(s) == "inf") {
            e.push_back(InvEntry::inf());
        } else {
            e.push_back({Rational(s), false});
        }
    }
    return InvVector(e);
}

Rational q(const char* s) { return Rational(s); }

// ---------------------------------------------------------------- criterion 1

Outcome golden_trace() {
    Outcome o;
    ResolutionTree t = go(make({"x", "y"}, {"x^2 + y^5"}), Mode::embedded);
    o.require(t.status == RunStatus::ok, "run did not finish: " + t.error);
    auto seq = distinct_key_sequence(t);
    // Vectors as printed in the worked example; "..." read as trailing zeros.
    struct Expected {
        InvVector inv;
        Rational nu;
        std::vector<std::string> rho;
    };
    std::vector<Expected> printed = {
        {vec({"2", "0", "5/2", "inf"}), 0, {}},
        {vec({"2", "0"}), q("3/2"), {"D1"}},
        {vec({"1", "1", "2", "0"}), 0, {}},
        {vec({"1", "1"}), 1, {"D3"}},
        {vec({"1", "0", "inf"}), 0, {}},
    };
    o.require(seq.size() == printed.size(), "distinct key count " + std::to_string(seq.size()) + ", expected 5");
    for (std::size_t i = 0; i < std::min(seq.size(), printed.size()); ++i) {
        std::vector<std::string> rho;
        for (const auto& r : seq[i].rho) rho.push_back(r.id);
        bool same = compare_inv(seq[i].inv, printed[i].inv) == 0 && seq[i].nu == printed[i].nu && rho == printed[i].rho;
        ResolutionKey want{printed[i].inv, printed[i].nu, {}};
        o.require(same, "step " + std::to_string(i + 1) + ": got " + key_to_string(seq[i]) + ", printed inv " +
                            key_to_string(want).substr(0, key_to_string(want).find(' ')));
    }
    o.require(blown_up(t).size() == 4, "blow-up count " + std::to_string(blown_up(t).size()));
    const ResolutionNode* a = find(t, "0.2");
    const ResolutionNode* b = find(t, "0.2.2");
    o.require(a && a->weak_transform == std::vector<std::string>{"y^3 + x^2"}, "first strict transform is not x^2 + y^3");
    o.require(b && b->weak_transform == std::vector<std::string>{"x^2 + y"}, "second strict transform is not x^2 + y");
    o.require(t.certificates_passed(), "leaf certificates");
    return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome homogenization() {
    Outcome o;
    const std::vector<std::string> v{"x", "y"};
    MarkedIdeal m{Ideal(2, {parse_polynomial("x^2 + y^5", v)}), 2};
    MarkedIdeal h = homogenized_ideal(m);
    auto hb = basis_strings(h.ideal, v);
    std::set<std::string> got(hb.begin(), hb.end());
    o.require(got == std::set<std::string>{"x^2", "x*y^4", "y^5"}, "H basis");
    Ideal T(2, {parse_polynomial("x", v), parse_polynomial("y^4", v)});
    o.require(ideal_equal(tangent_directions(h), T), "T(H) != (x, y^4)");
    o.require(ideal_equal(tangent_directions(m), T), "T != (x, y^4)");
    return o;
}

// ---------------------------------------------------------------- criterion 3

// Exhaustive search over divisor subsets: sum reaches the mark, every member is needed, and the
// winner is the largest position sequence read from the newest (highest position) divisor down.
std::optional<std::pair<std::vector<int>, Rational>> rho_oracle(const std::vector<int>& a, unsigned mark) {
    std::optional<std::pair<std::vector<int>, Rational>> best;
    int k = static_cast<int>(a.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
        int sum = 0;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) sum += a[i];
        if (sum < static_cast<int>(mark)) continue;
        bool needed = true;
        for (int i = 0; i < k; ++i)
            if ((mask >> i & 1) && sum - a[i] >= static_cast<int>(mark)) needed = false;
        if (!needed) continue;
        std::vector<int> seq;
        for (int i = k - 1; i >= 0; --i)
            if (mask >> i & 1) seq.push_back(i);
        Rational nu(sum);
        nu /= static_cast<long>(mark);
        if (!best || best->first < seq) best = std::make_pair(seq, nu);
    }
    return best;
}

int exponent_of(const std::string& ideal_gen, const std::vector<std::string>& vars, std::size_t v) {
    Polynomial p = parse_polynomial(ideal_gen, vars);
    return p.size() == 1 ? p.leading().mono[v] : -1;
}

Outcome monomial_engine() {
    Outcome o;
    std::mt19937 rng(424242);
    const std::vector<std::string> all{"x1", "x2", "x3", "x4"};
    int steps = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t k = 1 + rng() % 4;
        std::vector<std::string> vars(all.begin(), all.begin() + static_cast<long>(k));
        std::vector<int> a(k);
        std::string gen = "1";
        std::vector<InputDivisor> bnd;
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = static_cast<int>(rng() % 7);
            gen += "*" + vars[i] + "^" + std::to_string(a[i]);
            bnd.push_back({"E" + std::to_string(i + 1), i});
        }
        unsigned mark = 1 + rng() % 8;
        ResolutionTree t = go(make(vars, {gen}, mark, bnd), Mode::resolve);
        std::string tag = "case " + std::to_string(trial) + " (" + gen + ", " + std::to_string(mark) + ")";
        if (t.status != RunStatus::ok) {
            o.require(false, tag + ": " + t.error);
            continue;
        }
        o.require(t.certificates_passed(), tag + ": support not empty at a leaf");
        auto want = rho_oracle(a, mark);
        const ResolutionNode& root = t.nodes[0];
        if (!want) {
            o.require(root.leaf && !root.key, tag + ": expected empty support at the root");
            continue;
        }
        if (!root.key) {
            o.require(false, tag + ": root has no key");
            continue;
        }
        std::vector<int> got;
        for (const auto& r : root.key->rho) got.push_back(r.position);
        o.require(got == want->first && root.key->nu == want->second, tag + ": root (rho, nu) differs from the oracle");

        // Every monomial blow-up lowers the exponent of the chart's exceptional coordinate.
        for (const auto& n : t.nodes) {
            if (n.stage != "2b" || n.children.empty() || !n.key) continue;
            int sum = 0;
            for (const auto& r : n.key->rho)
                for (const auto& d : n.divisors)
                    if (d.id == r.id && d.equation) sum += exponent_of(n.ideal[0], vars, std::find(vars.begin(), vars.end(), *d.equation) - vars.begin());
            for (auto ci : n.children) {
                const ResolutionNode& c = t.nodes[ci];
                std::size_t m = std::find(vars.begin(), vars.end(), n.center[std::stoul(c.chart.substr(c.chart.rfind('.') + 1)) - 1]) - vars.begin();
                int before = exponent_of(n.ideal[0], vars, m);
                int after = c.ideal.empty() ? 0 : exponent_of(c.ideal[0], vars, m);
                ++steps;
                o.require(after == sum - static_cast<int>(n.mark) && after < before,
                          tag + ": chart " + c.chart + " exponent " + std::to_string(before) + " -> " + std::to_string(after));
            }
        }
    }
    o.require(steps > 100, "too few monomial blow-ups exercised: " + std::to_string(steps));
    return o;
}

// ---------------------------------------------------------------- criterion 4

Outcome identity_suite() {
    Outcome o;
    std::mt19937 rng(777);
    int a = 0;
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 2 + rng() % 2;
        Ideal I = corpus::random_ideal(rng, n, 1, 6, 2, 3);
        unsigned mu = 2 + rng() % 3;
        unsigned i = 1 + rng() % (mu - 1);
        if (checks::derivative_composition(I, mu, i)) ++a;
    }
    o.require(a == 50, "(a) derivative composition " + std::to_string(a) + "/50");

    int b = 0, d = 0;
    auto cases = checks::blowup_cases(778, 30);
    for (const auto& c : cases) {
        if (checks::derivative_inclusion(c)) ++b;
        if (checks::controlled_division_exact(c)) ++d;
    }
    o.require(b == 30, "(b) derivative inclusion " + std::to_string(b) + "/30");
    o.require(d == 30, "(d) controlled division " + std::to_string(d) + "/30");

    int c = 0;
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + rng() % 2;
        MarkedIdeal x{corpus::random_ideal(rng, n, 1, 3, 2, 3), 1 + static_cast<unsigned>(rng() % 2)};
        MarkedIdeal y{corpus::random_ideal(rng, n, 1, 3, 2, 3), 1 + static_cast<unsigned>(rng() % 2)};
        if (checks::sum_support(x, y)) ++c;
    }
    o.require(c == 30, "(c) marked sum support " + std::to_string(c) + "/30");

    int e = 0, tried = 0;
    for (const auto& bc : checks::blowup_cases(779, 60)) {
        for (auto k : bc.center.vars) {
            if (tried == 20) break;
            auto r = checks::restriction_commutes(bc, k);
            if (!r) continue;
            ++tried;
            if (*r) ++e;
        }
    }
    o.require(tried == 20 && e == 20, "(e) restriction " + std::to_string(e) + "/" + std::to_string(tried));
    return o;
}

// ---------------------------------------------------------------- criterion 5

// Independent smoothness and normal-crossings check of a hypersurface f against coordinate
// hyperplanes: for each subset S, V(f, x_S) is empty or the Jacobian of (f, x_S) has full rank.
bool hypersurface_snc(const Polynomial& f, const std::vector<std::size_t>& coords, std::size_t n) {
    for (unsigned long mask = 0; mask < (1ul << coords.size()); ++mask) {
        std::vector<Polynomial> g{f};
        std::vector<bool> in(n, false);
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (mask >> i & 1ul) {
                g.push_back(Polynomial::variable(n, coords[i]));
                in[coords[i]] = true;
            }
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v]) g.push_back(partial_derivative(f, v));
        if (!ideal_is_unit(Ideal(n, g))) return false;
    }
    return true;
}

struct OracleResult {
    std::set<std::string> blown_up;
    bool ok = true;
    std::string why;
};

// Plane curves only: blow up the origin of every chart that is not yet smooth with normal crossings.
OracleResult plane_curve_oracle(const Polynomial& f0) {
    OracleResult out;
    const std::size_t n = 2;
    Polynomial x = Polynomial::variable(n, 0), y = Polynomial::variable(n, 1);
    std::function<void(const std::string&, const Polynomial&, std::vector<bool>, int)> visit =
        [&](const std::string& id, const Polynomial& f, std::vector<bool> div, int depth) {
            std::vector<std::size_t> coords;
            for (std::size_t v = 0; v < n; ++v)
                if (div[v]) coords.push_back(v);
            if (hypersurface_snc(f, coords, n)) return;
            // Every failure must sit at the origin, otherwise a point blow-up is the wrong move.
            for (unsigned long mask = 0; mask < (1ul << coords.size()); ++mask) {
                std::vector<Polynomial> g{f};
                std::vector<bool> in(n, false);
                for (std::size_t i = 0; i < coords.size(); ++i)
                    if (mask >> i & 1ul) {
                        g.push_back(Polynomial::variable(n, coords[i]));
                        in[coords[i]] = true;
                    }
                for (std::size_t v = 0; v < n; ++v)
                    if (!in[v]) g.push_back(partial_derivative(f, v));
                Ideal bad(n, g);
                if (!ideal_is_unit(bad) && !(radical_membership(x, bad) && radical_membership(y, bad))) {
                    out.ok = false;
                    out.why = "bad locus away from the origin in chart " + id;
                    return;
                }
            }
            if (depth >= 20) {
                out.ok = false;
                out.why = "oracle depth cap";
                return;
            }
            out.blown_up.insert(id);
            Polynomial gx = substitute(f, {x, x * y});
            gx = divide_by_var_power(gx, 0, polynomial_var_valuation(gx, 0));
            visit(id + ".1", gx, {true, div[1]}, depth + 1);
            Polynomial gy = substitute(f, {x * y, y});
            gy = divide_by_var_power(gy, 1, polynomial_var_valuation(gy, 1));
            visit(id + ".2", gy, {div[0], true}, depth + 1);
        };
    visit("0", f0, {false, false}, 0);
    return out;
}

bool leaf_jacobian_check(const ResolutionTree& t, std::string& why) {
    std::size_t n = t.vars.size();
    for (const auto& node : t.nodes) {
        if (!node.leaf) continue;
        if (node.weak_transform.size() != 1) {
            why = "chart " + node.chart + " strict transform is not principal";
            return false;
        }
        Polynomial f = parse_polynomial(node.weak_transform[0], t.vars);
        std::vector<std::size_t> coords;
        for (const auto& d : node.divisors) {
            if (!d.equation) continue;
            auto it = std::find(t.vars.begin(), t.vars.end(), *d.equation);
            if (it != t.vars.end()) coords.push_back(static_cast<std::size_t>(it - t.vars.begin()));
        }
        if (!hypersurface_snc(f, coords, n)) {
            why = "chart " + node.chart + " fails the independent Jacobian check";
            return false;
        }
    }
    return true;
}

Outcome certificates() {
    Outcome o;
    const std::vector<std::string> xy{"x", "y"};
    for (const char* f : {"y^2 - x^3", "y^2 - x^5", "x*y"}) {
        ResolutionTree t = go(make(xy, {f}), Mode::embedded, 20);
        std::string tag = f;
        o.require(t.status == RunStatus::ok, tag + ": " + t.error);
        o.require(t.certificates_passed(), tag + ": verify_leaf");
        std::string why;
        o.require(leaf_jacobian_check(t, why), tag + ": " + why);
        OracleResult want = plane_curve_oracle(parse_polynomial(f, xy));
        o.require(want.ok, tag + ": oracle " + want.why);
        auto got = blown_up(t);
        o.require(got == want.blown_up, tag + ": blown-up charts {" + join(got) + "} vs oracle {" + join(want.blown_up) + "}");
    }
    ResolutionTree u = go(make({"x", "y", "z"}, {"x^2 - y^2*z"}), Mode::embedded, 20);
    o.require(u.status == RunStatus::ok, "umbrella: " + u.error);
    o.require(u.certificates_passed(), "umbrella: verify_leaf");
    bool again = true;
    for (const auto& n : u.nodes)
        if (n.leaf)
            for (const auto& c : verify_leaf(n, u.mode, u.vars, u.codim)) again = again && c.passed;
    o.require(again, "umbrella: re-verification from strings");
    std::string why;
    o.require(leaf_jacobian_check(u, why), "umbrella: " + why);
    return o;
}

// ---------------------------------------------------------------- criterion 6

Outcome principalization() {
    Outcome o;
    struct Item {
        std::vector<std::string> vars, gens;
    };
    std::vector<Item> items = {
        {{"x", "y"}, {"x^2 + y^5"}},     {{"x", "y"}, {"y^2 - x^3"}},       {{"x", "y"}, {"x*y"}},
        {{"x", "y"}, {"x^2", "y^3"}},    {{"x", "y"}, {"x^2", "x*y^2"}},    {{"x", "y", "z"}, {"x^2 - y^2*z"}},
        {{"x", "y", "z"}, {"x*y", "z"}},
    };
    for (const auto& it : items) {
        ResolutionTree t = go(make(it.vars, it.gens), Mode::principalize);
        std::string tag;
        for (const auto& g : it.gens) tag += (tag.empty() ? "(" : ", ") + g;
        tag += ")";
        if (t.status != RunStatus::ok) {
            o.require(false, tag + ": " + t.error);
            continue;
        }
        o.require(t.certificates_passed(), tag + ": nonmonomial part not (1)");
        std::size_t n = it.vars.size();
        // Rebuild each leaf's total transform from the emitted exponents alone.
        for (const auto& node : t.nodes) {
            if (!node.leaf) continue;
            Polynomial mono = Polynomial::constant(n, 1);
            for (const auto& [id, e] : node.exponents) {
                auto d = std::find_if(node.divisors.begin(), node.divisors.end(), [&](const DivisorRecord& r) { return r.id == id; });
                if (d == node.divisors.end() || !d->equation) {
                    o.require(false, tag + ": chart " + node.chart + " exponent on a missing divisor " + id);
                    continue;
                }
                mono = mono * parse_polynomial(*d->equation, it.vars).pow(static_cast<unsigned>(e));
            }
            std::vector<Polynomial> total;
            for (const auto& s : node.total_transform) total.push_back(parse_polynomial(s, it.vars));
            o.require(ideal_equal(Ideal(n, total), Ideal(n, {mono})), tag + ": chart " + node.chart + " exponents do not rebuild the total transform");
        }
    }
    return o;
}

// ---------------------------------------------------------------- criterion 7

std::string label(const ResolutionNode& n) { return n.stage + " " + (n.key ? key_to_string(*n.key) : "-"); }

std::string canonical(const ResolutionTree& t, std::size_t i) {
    std::vector<std::string> kids;
    for (auto c : t.nodes[i].children) kids.push_back(canonical(t, c));
    std::sort(kids.begin(), kids.end());
    std::string s = "[" + label(t.nodes[i]);
    for (const auto& k : kids) s += k;
    return s + "]";
}

std::map<int, std::multiset<std::string>> keys_by_depth(const ResolutionTree& t) {
    std::map<int, std::multiset<std::string>> m;
    for (const auto& n : t.nodes)
        if (n.key) m[n.depth].insert(key_to_string(*n.key));
    return m;
}

Outcome equivariance() {
    Outcome o;
    struct Item {
        std::vector<std::string> vars, gens;
        unsigned mark;
        Mode mode;
    };
    // Inputs whose untransformed run completes; the comparison says nothing otherwise.
    std::vector<Item> items = {
        {{"x", "y"}, {"x^2 + y^5"}, 1, Mode::embedded},
        {{"x", "y"}, {"y^2 - x^3"}, 1, Mode::embedded},
        {{"x", "y"}, {"y^2 - x^5"}, 1, Mode::embedded},
        {{"x", "y"}, {"x*y"}, 1, Mode::embedded},
        {{"x", "y"}, {"x^3 + y^4 + x^2*y^2"}, 1, Mode::embedded},
        {{"x", "y"}, {"y^3 - x^4"}, 1, Mode::embedded},
        {{"x", "y"}, {"x^2", "y^3"}, 1, Mode::principalize},
        {{"x", "y"}, {"x^3 + y^4"}, 2, Mode::resolve},
        {{"x", "y", "z"}, {"x^2 - y^2*z"}, 1, Mode::embedded},
        {{"x", "y", "z"}, {"x^2 + y^3 + z^4"}, 1, Mode::embedded},
    };
    std::mt19937 rng(2718);
    int compared = 0;
    for (const auto& it : items) {
        Problem base = make(it.vars, it.gens, it.mark);
        ResolutionTree t0 = go(base, it.mode);
        std::string tag = it.gens[0];
        if (t0.status != RunStatus::ok) {
            o.require(false, tag + ": " + t0.error);
            continue;
        }
        std::string c0 = canonical(t0, 0);
        auto k0 = keys_by_depth(t0);
        std::size_t n = it.vars.size();
        for (int r = 0; r < 5; ++r) {
            // A permutation followed by an elementary shear x_i -> x_i + c x_j (unimodular).
            std::vector<std::size_t> perm(n);
            for (std::size_t i = 0; i < n; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Polynomial> images(n);
            for (std::size_t i = 0; i < n; ++i) images[i] = Polynomial::variable(n, perm[i]);
            std::string change = "perm";
            if (r % 2 == 1) {
                std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
                long c = rng() % 2 ? 1 : -1;
                images[i] = images[i] + Polynomial::variable(n, perm[j]).scaled(c);
                change = "perm+shear";
            }
            Problem p = base;
            for (auto& g : p.generators) g = substitute(g, images);
            ResolutionTree t = go(p, it.mode);
            ++compared;
            std::string ctag = tag + " under " + change + " #" + std::to_string(r);
            if (t.status != RunStatus::ok) {
                o.require(false, ctag + ": " + t.error);
                continue;
            }
            o.require(keys_by_depth(t) == k0, ctag + ": per-depth key multisets differ");
            o.require(canonical(t, 0) == c0, ctag + ": trees not isomorphic");
        }
    }
    o.require(compared == 50, "compared " + std::to_string(compared) + " transformed runs");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;  // seconds; 0 when no limit is set
        std::function<Outcome()> body;
    };
    std::vector<Criterion> all = {
        {1, "golden trace", 5, golden_trace},
        {2, "homogenization identity", 1, homogenization},
        {3, "monomial engine", 30, monomial_engine},
        {4, "ideal identity suite", 0, identity_suite},
        {5, "smooth/SNC certificates", 60, certificates},
        {6, "principalization certificate", 0, principalization},
        {7, "equivariance", 0, equivariance},
    };
    bool all_pass = true;
    for (const auto& c : all) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double dt = seconds_since(t0);
        if (c.limit > 0 && dt > c.limit) o.require(false, "time limit exceeded");
        all_pass = all_pass && o.pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << dt << " s)";
        std::cout << line.str() << "\n";
        for (const auto& note : o.notes) std::cout << "    " << note << "\n";
    }
    return all_pass ? 0 : 1;
}
