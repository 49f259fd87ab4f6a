#pragma once

#include "mres/blowup.hpp"
#include "mres/invariant.hpp"
#include "mres/marked.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mres {

enum class Mode { principalize, resolve, embedded };

struct Config {
    unsigned max_depth = 64;
    std::size_t budget = GroebnerBudget::kDefault;
    Mode mode = Mode::resolve;
    CompanionVariant variant = CompanionVariant::canonical;
    int trace = 0;  // 0 silent, 1 per node, 2 per stage (stderr)
};

struct InputDivisor {
    std::string id;
    std::size_t var;
};

struct Problem {
    std::vector<std::string> vars;
    std::vector<Polynomial> generators;
    unsigned mark = 1;
    std::vector<InputDivisor> boundary;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate_problem(const Problem& p, Mode mode);

struct Certificate {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct DivisorRecord {
    std::string id;
    int birth = 0;
    int position = 0;
    std::optional<std::string> equation;  // absent when the divisor misses the chart
};

struct ResolutionNode {
    std::string chart;
    std::optional<std::string> parent;
    int depth = 0;
    std::vector<std::string> substitution;   // images of the parent's variables
    std::vector<std::string> normalization;  // coordinate change applied in this chart, if any
    std::string stage;                       // innermost stage tag
    std::vector<std::string> stage_path;
    std::optional<ResolutionKey> key;
    std::vector<std::string> center;  // variable names, or the hypersurface equation
    bool hypersurface_center = false;
    unsigned mark = 1;
    std::vector<std::string> ideal;            // controlled transform, reduced basis
    std::vector<std::string> weak_transform;   // its nonmonomial part
    std::vector<std::string> total_transform;  // total transform of the input, reduced basis
    std::vector<DivisorRecord> divisors;
    std::map<std::string, int> exponents;      // principalization certificate
    std::vector<Certificate> certificates;
    std::vector<std::size_t> children;
    bool leaf = false;
};

enum class RunStatus { ok, exhausted, failed };

struct ResolutionTree {
    std::vector<std::string> vars;
    Mode mode = Mode::resolve;
    CompanionVariant variant = CompanionVariant::canonical;
    unsigned input_mark = 1;
    std::size_t codim = 0;  // of V(I) at the root, embedded mode
    std::vector<ResolutionNode> nodes;  // breadth-first; nodes[0] is the root
    RunStatus status = RunStatus::ok;
    std::string error;
    std::string error_chart;
    std::string error_stage;

    bool certificates_passed() const;
};

ResolutionTree run(const Problem& problem, const Config& cfg);
ResolutionTree resolve_marked_ideal(const Problem& problem, Config cfg);
ResolutionTree principalize(const Problem& problem, Config cfg);
ResolutionTree embedded_desingularize(const Problem& problem, Config cfg);

// Recomputes the certificates of a leaf from its recorded strings only.
std::vector<Certificate> verify_leaf(const ResolutionNode& node, Mode mode, const std::vector<std::string>& vars,
                                     std::size_t codim);

// Maximal key at each depth of the tree, with consecutive repeats (same key and nu) removed.
std::vector<ResolutionKey> distinct_key_sequence(const ResolutionTree& tree);

const char* mode_name(Mode m);
const char* variant_name(CompanionVariant v);
std::optional<Mode> parse_mode(const std::string& s);
std::optional<CompanionVariant> parse_variant(const std::string& s);

}  // namespace mres
