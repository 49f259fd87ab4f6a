#pragma once

#include "mres/resolver.hpp"

#include <optional>
#include <string>

namespace mres {

struct ProblemFile {
    Problem problem;
    std::optional<Mode> mode;
    std::optional<CompanionVariant> variant;
    std::optional<unsigned> max_depth;
    std::optional<std::size_t> budget;
};

// Accepts "variables"/"vars", "generators"/"gens", "mark", "boundary" [{"id","variable"}],
// "mode", "variant" and "limits" {"max_depth","budget"}. Throws InputError or ParseError.
ProblemFile parse_problem_json(const std::string& text);

std::string tree_to_json(const ResolutionTree& tree, int indent = 2);
std::string tree_to_text(const ResolutionTree& tree);
ResolutionTree tree_from_json(const std::string& text);

std::string status_name(RunStatus s);

}  // namespace mres
