#include "mres/mres.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

bool read_all(const std::string& path, std::string& out) {
    if (path == "-") {
        out.assign(std::istreambuf_iterator<char>(std::cin), {});
        return true;
    }
    std::ifstream in(path);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

int exit_code(mres_status s) {
    switch (s) {
        case MRES_OK: return 0;
        case MRES_INPUT_ERROR:
        case MRES_BAD_ARGUMENT: return 1;
        case MRES_EXHAUSTED: return 2;
        default: return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resolution of marked ideals, principalization and embedded desingularization"};
    std::string input = "-", out_path, mode, variant, format = "text";
    unsigned max_depth = 0;
    size_t budget = 0;
    int trace = 0;
    bool verify = false;
    app.add_option("-i,--input", input, "problem file (JSON), or - for stdin");
    app.add_option("-m,--mode", mode, "principalize | resolve | embedded")
        ->check(CLI::IsMember({"principalize", "resolve", "embedded"}));
    app.add_option("--variant", variant, "canonical | bv")->check(CLI::IsMember({"canonical", "bv"}));
    app.add_option("--max-depth", max_depth, "maximum blow-up depth")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "Groebner step budget for the whole run")->check(CLI::PositiveNumber);
    app.add_option("-f,--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--trace", trace, "stderr trace level")->check(CLI::Range(0, 2));
    app.add_option("-o,--out", out_path, "write the report here instead of stdout");
    app.add_flag("--verify", verify, "read a JSON report and recheck its leaf certificates");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (!read_all(input, text)) {
        std::cerr << "mres: cannot read " << input << "\n";
        return 1;
    }

    if (verify) {
        int r = mres_verify_json(text.c_str());
        if (r < 0) {
            std::cerr << "mres: malformed report: " << mres_last_error() << "\n";
            return 1;
        }
        std::cout << (r ? "certificates: pass" : std::string("certificates: FAIL ") + mres_last_error()) << "\n";
        return r ? 0 : 3;
    }

    mres_problem* problem = nullptr;
    if (mres_problem_from_json(text.c_str(), &problem) != MRES_OK) {
        std::cerr << "mres: " << mres_last_error() << "\n";
        return 1;
    }
    mres_config cfg;
    mres_config_default(&cfg);
    cfg.trace = trace;
    if (!mode.empty()) {
        cfg.mode_set = 1;
        cfg.mode = mode == "principalize" ? MRES_MODE_PRINCIPALIZE
                   : mode == "embedded"   ? MRES_MODE_EMBEDDED
                                          : MRES_MODE_RESOLVE;
    }
    if (!variant.empty()) {
        cfg.variant_set = 1;
        cfg.variant = variant == "bv" ? MRES_VARIANT_BV : MRES_VARIANT_CANONICAL;
    }
    if (max_depth) {
        cfg.max_depth_set = 1;
        cfg.max_depth = max_depth;
    }
    if (budget) {
        cfg.budget_set = 1;
        cfg.budget = budget;
    }

    mres_tree* tree = nullptr;
    mres_status s = mres_run(problem, &cfg, &tree);
    mres_problem_free(problem);
    if (!tree) {
        std::cerr << "mres: " << mres_last_error() << "\n";
        return exit_code(s);
    }
    char* report = format == "json" ? mres_tree_to_json(tree) : mres_tree_to_text(tree);
    if (out_path.empty()) {
        std::cout << report << (format == "json" ? "\n" : "");
    } else {
        std::ofstream of(out_path);
        of << report << (format == "json" ? "\n" : "");
        if (!of) {
            std::cerr << "mres: cannot write " << out_path << "\n";
            s = MRES_FAILED;
        }
    }
    mres_string_free(report);
    if (s == MRES_OK && !mres_tree_certificates_passed(tree)) {
        std::cerr << "mres: certificate check failed\n";
        s = MRES_FAILED;
    } else if (s != MRES_OK) {
        std::cerr << "mres: " << mres_last_error() << "\n";
    }
    mres_tree_free(tree);
    return exit_code(s);
}
