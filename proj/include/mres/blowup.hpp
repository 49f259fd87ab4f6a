#pragma once

#include "mres/polyring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mres {

struct Divisor {
    std::string id;
    int birth = 0;     // 0 for input divisors
    int position = 0;  // order among input divisors
    // Chart-local equation; zero polynomial when the divisor does not meet the chart.
    Polynomial equation;
    std::optional<std::size_t> var;  // set when the equation is a coordinate

    bool present() const { return !equation.is_zero(); }
};

// Newer divisors are greater; input divisors follow file order.
bool divisor_less(const Divisor& a, const Divisor& b);

struct Chart {
    std::string id;
    std::vector<std::string> vars;
    std::optional<std::string> parent;
    std::vector<Polynomial> substitution;  // parent variable i -> polynomial in this chart
    std::optional<std::size_t> exceptional_var;
    std::optional<Polynomial> exceptional_equation;  // hypersurface centers
    std::vector<std::optional<std::string>> exceptional;  // divisor id flagged on each variable
    int depth = 0;
};

Chart root_chart(const std::vector<std::string>& vars);

// Coordinate subspace {x_i = 0, i in vars}, or a smooth hypersurface V(hypersurface).
struct Center {
    std::vector<std::size_t> vars;
    std::optional<Polynomial> hypersurface;
};

struct CenterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One child per center variable, in increasing variable order.
std::vector<Chart> blow_up_center(const Chart& chart, const Center& center, const std::string& divisor_id);

enum class TransformKind { total, controlled, weak, strict };

Polynomial total_transform(const Polynomial& f, const Chart& child);
Ideal transform_ideal(const Ideal& I, TransformKind kind, const Chart& child, unsigned mark = 0);

// Strict transforms of the old divisors in the child chart plus the new one (appended, maximal).
std::vector<Divisor> transform_boundary(const std::vector<Divisor>& E, const Chart& child, const Center& center,
                                        const Divisor& new_divisor);

// Images for x_pivot <- (x_pivot - r)/c where u = c*x_pivot + r; the new x_pivot is u.
std::vector<Polynomial> normalize_tangent_direction(const Polynomial& u, std::size_t pivot,
                                                    const std::vector<bool>& boundary_vars);

std::vector<Polynomial> identity_images(std::size_t nvars);

}  // namespace mres
