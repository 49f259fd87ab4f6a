#include "mres/report.hpp"

#include <json.hpp>

#include <sstream>

namespace mres {

using nlohmann::json;

namespace {

const json* field(const json& j, std::initializer_list<const char*> names) {
    for (const char* n : names) {
        auto it = j.find(n);
        if (it != j.end()) return &*it;
    }
    return nullptr;
}

json key_json(const ResolutionKey& k) {
    json rho = json::array();
    for (const auto& e : k.rho) rho.push_back(e.id);
    return {{"inv", k.inv.strings()}, {"nu", rational_to_string(k.nu)}, {"rho", rho}};
}

Rational parse_rational(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

}  // namespace

std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::ok: return "ok";
        case RunStatus::exhausted: return "exhausted";
        case RunStatus::failed: return "failed";
    }
    return "failed";
}

ProblemFile parse_problem_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("problem file must be a JSON object");
    ProblemFile pf;
    try {
        const json* vars = field(j, {"variables", "vars"});
        const json* gens = field(j, {"generators", "gens"});
        if (!vars || !vars->is_array()) throw InputError("missing variable list");
        if (!gens || !gens->is_array() || gens->empty()) throw InputError("missing generators");
        for (const auto& v : *vars) pf.problem.vars.push_back(v.get<std::string>());
        for (const auto& g : *gens) pf.problem.generators.push_back(parse_polynomial(g.get<std::string>(), pf.problem.vars));
        if (const json* m = field(j, {"mark"})) {
            long mk = m->get<long>();
            if (mk < 1) throw InputError("mark must be a positive integer");
            pf.problem.mark = static_cast<unsigned>(mk);
        }
        if (const json* b = field(j, {"boundary"})) {
            for (const auto& d : *b) {
                std::string var = d.at("variable").get<std::string>();
                auto it = std::find(pf.problem.vars.begin(), pf.problem.vars.end(), var);
                if (it == pf.problem.vars.end()) throw InputError("boundary variable '" + var + "' is not a variable");
                pf.problem.boundary.push_back({d.at("id").get<std::string>(), static_cast<std::size_t>(it - pf.problem.vars.begin())});
            }
        }
        if (const json* m = field(j, {"mode"})) {
            pf.mode = parse_mode(m->get<std::string>());
            if (!pf.mode) throw InputError("unknown mode '" + m->get<std::string>() + "'");
        }
        if (const json* v = field(j, {"variant"})) {
            pf.variant = parse_variant(v->get<std::string>());
            if (!pf.variant) throw InputError("unknown variant '" + v->get<std::string>() + "'");
        }
        if (const json* l = field(j, {"limits"})) {
            if (auto it = l->find("max_depth"); it != l->end()) pf.max_depth = it->get<unsigned>();
            if (auto it = l->find("budget"); it != l->end()) pf.budget = it->get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed problem file: ") + e.what());
    }
    return pf;
}

std::string tree_to_json(const ResolutionTree& tree, int indent) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
        json divs = json::array();
        for (const auto& d : n.divisors)
            divs.push_back({{"id", d.id},
                            {"birth", d.birth},
                            {"position", d.position},
                            {"equation", d.equation ? json(*d.equation) : json(nullptr)}});
        json certs = json::array();
        for (const auto& c : n.certificates) certs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        json children = json::array();
        for (auto c : n.children) children.push_back(tree.nodes[c].chart);
        nodes.push_back({{"chart", n.chart},
                         {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                         {"depth", n.depth},
                         {"substitution", n.substitution},
                         {"normalization", n.normalization},
                         {"stage", n.stage},
                         {"stage_path", n.stage_path},
                         {"key", n.key ? key_json(*n.key) : json(nullptr)},
                         {"center", n.center},
                         {"hypersurface_center", n.hypersurface_center},
                         {"mark", n.mark},
                         {"ideal", n.ideal},
                         {"weak_transform", n.weak_transform},
                         {"total_transform", n.total_transform},
                         {"divisors", divs},
                         {"exponents", n.exponents},
                         {"certificates", certs},
                         {"children", children},
                         {"leaf", n.leaf}});
    }
    json out = {{"vars", tree.vars},
                {"mode", mode_name(tree.mode)},
                {"variant", variant_name(tree.variant)},
                {"mark", tree.input_mark},
                {"codim", tree.codim},
                {"status", status_name(tree.status)},
                {"error", tree.status == RunStatus::ok
                              ? json(nullptr)
                              : json{{"message", tree.error}, {"chart", tree.error_chart}, {"stage", tree.error_stage}}},
                {"nodes", nodes}};
    return out.dump(indent);
}

ResolutionTree tree_from_json(const std::string& text) {
    json j = json::parse(text);
    ResolutionTree t;
    t.vars = j.at("vars").get<std::vector<std::string>>();
    t.mode = parse_mode(j.at("mode").get<std::string>()).value_or(Mode::resolve);
    t.variant = parse_variant(j.at("variant").get<std::string>()).value_or(CompanionVariant::canonical);
    t.input_mark = j.at("mark").get<unsigned>();
    t.codim = j.at("codim").get<std::size_t>();
    std::string st = j.at("status").get<std::string>();
    t.status = st == "ok" ? RunStatus::ok : st == "exhausted" ? RunStatus::exhausted : RunStatus::failed;
    if (!j.at("error").is_null()) {
        t.error = j["error"].at("message").get<std::string>();
        t.error_chart = j["error"].at("chart").get<std::string>();
        t.error_stage = j["error"].at("stage").get<std::string>();
    }
    std::map<std::string, std::size_t> index;
    for (const auto& jn : j.at("nodes")) index[jn.at("chart").get<std::string>()] = index.size();
    for (const auto& jn : j.at("nodes")) {
        ResolutionNode n;
        n.chart = jn.at("chart").get<std::string>();
        if (!jn.at("parent").is_null()) n.parent = jn["parent"].get<std::string>();
        n.depth = jn.at("depth").get<int>();
        n.substitution = jn.at("substitution").get<std::vector<std::string>>();
        n.normalization = jn.at("normalization").get<std::vector<std::string>>();
        n.stage = jn.at("stage").get<std::string>();
        n.stage_path = jn.at("stage_path").get<std::vector<std::string>>();
        n.center = jn.at("center").get<std::vector<std::string>>();
        n.hypersurface_center = jn.at("hypersurface_center").get<bool>();
        n.mark = jn.at("mark").get<unsigned>();
        n.ideal = jn.at("ideal").get<std::vector<std::string>>();
        n.weak_transform = jn.at("weak_transform").get<std::vector<std::string>>();
        n.total_transform = jn.at("total_transform").get<std::vector<std::string>>();
        for (const auto& d : jn.at("divisors")) {
            DivisorRecord r{d.at("id").get<std::string>(), d.at("birth").get<int>(), d.at("position").get<int>(), std::nullopt};
            if (!d.at("equation").is_null()) r.equation = d["equation"].get<std::string>();
            n.divisors.push_back(std::move(r));
        }
        if (!jn.at("key").is_null()) {
            ResolutionKey k;
            std::vector<InvEntry> inv;
            for (const auto& e : jn["key"].at("inv")) {
                std::string s = e.get<std::string>();
                inv.push_back(s == "inf" ? InvEntry::inf() : InvEntry{parse_rational(s), false});
            }
            k.inv = InvVector(std::move(inv));
            k.nu = parse_rational(jn["key"].at("nu").get<std::string>());
            std::vector<RhoEntry> rho;
            for (const auto& id : jn["key"].at("rho")) {
                RhoEntry e{id.get<std::string>(), 0, 0};
                for (const auto& d : n.divisors)
                    if (d.id == e.id) {
                        e.birth = d.birth;
                        e.position = d.position;
                    }
                rho.push_back(e);
            }
            k.rho = make_rho(std::move(rho));
            n.key = std::move(k);
        }
        n.exponents = jn.at("exponents").get<std::map<std::string, int>>();
        for (const auto& c : jn.at("certificates"))
            n.certificates.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("detail").get<std::string>()});
        for (const auto& c : jn.at("children")) n.children.push_back(index.at(c.get<std::string>()));
        n.leaf = jn.at("leaf").get<bool>();
        t.nodes.push_back(std::move(n));
    }
    return t;
}

namespace {

void render(const ResolutionTree& t, std::size_t i, int level, std::ostringstream& os) {
    const auto& n = t.nodes[i];
    std::string pad(static_cast<std::size_t>(level) * 2, ' ');
    os << pad << "chart " << n.chart << " [" << n.stage << "]";
    if (n.key) os << " key " << key_to_string(*n.key);
    os << "\n";
    if (n.parent) os << pad << "  substitution: " << join(n.substitution, ", ") << "\n";
    if (!n.normalization.empty()) os << pad << "  coordinate change: " << join(n.normalization, ", ") << "\n";
    if (!n.stage_path.empty()) os << pad << "  stages: " << join(n.stage_path, " > ") << "\n";
    os << pad << "  ideal (mark " << n.mark << "): " << join(n.ideal, ", ") << "\n";
    std::vector<std::string> ds;
    for (const auto& d : n.divisors)
        if (d.equation) ds.push_back(d.id + ": " + *d.equation);
    if (!ds.empty()) os << pad << "  divisors: " << join(ds, ", ") << "\n";
    if (!n.center.empty()) os << pad << "  center: " << (n.hypersurface_center ? "V(" : "{") << join(n.center, ", ")
                              << (n.hypersurface_center ? ")" : "}") << "\n";
    if (!n.exponents.empty()) {
        std::vector<std::string> es;
        for (const auto& [id, k] : n.exponents) es.push_back(id + "^" + std::to_string(k));
        os << pad << "  exponents: " << join(es, " ") << "\n";
    }
    for (const auto& c : n.certificates)
        os << pad << "  certificate " << c.name << ": " << (c.passed ? "pass" : "FAIL " + c.detail) << "\n";
    for (auto c : n.children) render(t, c, level + 1, os);
}

}  // namespace

std::string tree_to_text(const ResolutionTree& tree) {
    std::ostringstream os;
    os << "mode " << mode_name(tree.mode) << ", variant " << variant_name(tree.variant) << ", variables "
       << join(tree.vars, ",") << "\n";
    if (!tree.nodes.empty()) render(tree, 0, 0, os);
    os << "status: " << status_name(tree.status);
    if (tree.status != RunStatus::ok)
        os << " (" << tree.error << " in chart " << tree.error_chart
           << (tree.error_stage.empty() ? "" : ", stage " + tree.error_stage) << ")";
    os << "\n";
    return os.str();
}

}  // namespace mres
