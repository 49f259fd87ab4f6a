#include "mres/mres.h"
#include "mres/report.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>

struct mres_problem {
    mres::ProblemFile file;
};

struct mres_tree {
    mres::ResolutionTree tree;
};

namespace {

thread_local std::string g_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

mres_status to_status(mres::RunStatus s) {
    switch (s) {
        case mres::RunStatus::ok: return MRES_OK;
        case mres::RunStatus::exhausted: return MRES_EXHAUSTED;
        case mres::RunStatus::failed: return MRES_FAILED;
    }
    return MRES_FAILED;
}

}  // namespace

extern "C" {

void mres_config_default(mres_config* cfg) {
    if (!cfg) return;
    mres::Config d;
    cfg->mode = MRES_MODE_RESOLVE;
    cfg->variant = MRES_VARIANT_CANONICAL;
    cfg->max_depth = d.max_depth;
    cfg->budget = d.budget;
    cfg->trace = 0;
    cfg->mode_set = cfg->variant_set = cfg->max_depth_set = cfg->budget_set = 0;
}

mres_status mres_problem_from_json(const char* json, mres_problem** out) {
    if (!json || !out) {
        g_error = "null argument";
        return MRES_BAD_ARGUMENT;
    }
    *out = nullptr;
    try {
        auto p = std::make_unique<mres_problem>();
        p->file = mres::parse_problem_json(json);
        *out = p.release();
        return MRES_OK;
    } catch (const mres::ParseError& e) {
        g_error = std::string("parse error at position ") + std::to_string(e.position) + ": " + e.what();
    } catch (const std::exception& e) {
        g_error = e.what();
    }
    return MRES_INPUT_ERROR;
}

void mres_problem_free(mres_problem* p) { delete p; }

mres_status mres_run(const mres_problem* p, const mres_config* cfg, mres_tree** out) {
    if (!p || !out) {
        g_error = "null argument";
        return MRES_BAD_ARGUMENT;
    }
    *out = nullptr;
    mres_config c;
    mres_config_default(&c);
    if (cfg) c = *cfg;
    mres::Config conf;
    const auto& f = p->file;
    conf.mode = c.mode_set ? static_cast<mres::Mode>(c.mode) : f.mode.value_or(mres::Mode::resolve);
    conf.variant = c.variant_set ? static_cast<mres::CompanionVariant>(c.variant)
                                 : f.variant.value_or(mres::CompanionVariant::canonical);
    conf.max_depth = c.max_depth_set ? c.max_depth : f.max_depth.value_or(conf.max_depth);
    conf.budget = c.budget_set ? c.budget : f.budget.value_or(conf.budget);
    conf.trace = c.trace;
    try {
        mres::validate_problem(f.problem, conf.mode);
    } catch (const std::exception& e) {
        g_error = e.what();
        return MRES_INPUT_ERROR;
    }
    try {
        auto t = std::make_unique<mres_tree>();
        t->tree = mres::run(f.problem, conf);
        mres_status s = to_status(t->tree.status);
        if (s != MRES_OK) g_error = t->tree.error;
        *out = t.release();
        return s;
    } catch (const std::exception& e) {
        g_error = e.what();
        return MRES_FAILED;
    }
}

void mres_tree_free(mres_tree* t) { delete t; }

mres_status mres_tree_status(const mres_tree* t) { return t ? to_status(t->tree.status) : MRES_BAD_ARGUMENT; }

int mres_tree_certificates_passed(const mres_tree* t) { return t && t->tree.certificates_passed() ? 1 : 0; }

char* mres_tree_to_json(const mres_tree* t) { return t ? dup(mres::tree_to_json(t->tree)) : nullptr; }

char* mres_tree_to_text(const mres_tree* t) { return t ? dup(mres::tree_to_text(t->tree)) : nullptr; }

void mres_string_free(char* s) { std::free(s); }

int mres_verify_json(const char* json) {
    if (!json) return -1;
    try {
        mres::ResolutionTree t = mres::tree_from_json(json);
        bool ok = t.status == mres::RunStatus::ok;
        for (const auto& n : t.nodes) {
            if (!n.leaf) continue;
            for (const auto& c : mres::verify_leaf(n, t.mode, t.vars, t.codim))
                if (!c.passed) {
                    g_error = "chart " + n.chart + ": " + c.name + " " + c.detail;
                    ok = false;
                }
        }
        return ok ? 1 : 0;
    } catch (const std::exception& e) {
        g_error = e.what();
        return -1;
    }
}

const char* mres_last_error(void) { return g_error.c_str(); }

}  // extern "C"
