#pragma once

#include "mres/polyring.hpp"

#include <map>

namespace mres {

// An ideal with a mark. Chart and boundary live with the caller (see resolver).
struct MarkedIdeal {
    Ideal ideal;
    unsigned mark = 1;
};

Ideal derivative_ideal(const Ideal& I);
Ideal iterated_derivative(const Ideal& I, unsigned i);

// Smallest mu with D^mu(I) = (1); 0 for the unit ideal. Throws on the zero ideal.
unsigned max_order(const Ideal& I);

bool support_is_empty(const MarkedIdeal& M);

// D^{mu-1}(I).
Ideal tangent_directions(const MarkedIdeal& M);

struct NoTangentDirection : std::runtime_error {
    NoTangentDirection() : std::runtime_error("no global tangent direction in chart") {}
};

struct TangentChoice {
    Polynomial u;
    std::size_t pivot;
};

// First reduced-basis element of T that is linear in some allowed variable x_p with a constant
// coefficient (u = c*x_p + r, r free of x_p); the lowest such index is the pivot.
TangentChoice select_tangent_direction(const Ideal& T, const std::vector<bool>& allowed);
TangentChoice select_tangent_direction(const MarkedIdeal& M);

MarkedIdeal coefficient_ideal(const MarkedIdeal& M);
MarkedIdeal homogenized_ideal(const MarkedIdeal& M);

MarkedIdeal marked_sum(const std::vector<MarkedIdeal>& summands);
MarkedIdeal marked_product(const MarkedIdeal& a, const MarkedIdeal& b);

// Boundary divisor as seen by the ideal constructions: an equation, usually a coordinate.
struct BoundaryEquation {
    std::string id;
    Polynomial equation;
};

struct MonomialDecomposition {
    std::map<std::string, int> exponents;  // divisor id -> power
    Polynomial monomial;                    // product of equation powers
    Ideal nonmonomial;
};

MonomialDecomposition monomial_decomposition(const Ideal& I, const std::vector<BoundaryEquation>& boundary);

enum class CompanionVariant { canonical, bravo_villamayor };

struct CompanionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ordN is the order of the nonmonomial part at the support (see resolver); must be > 0 unless the
// Bravo-Villamayor branch applies.
MarkedIdeal companion_ideal(const MonomialDecomposition& dec, unsigned mark, unsigned ordN, CompanionVariant variant);

// Order of N along supp(I, mark): smallest d with D^d(N) + D^{mark-1}(I) = (1).
unsigned order_on_support(const Ideal& N, const Ideal& support_ideal);

// Substitute x_pivot = 0. The variable stays in the ring but no longer occurs.
MarkedIdeal restrict_to_hypersurface(const MarkedIdeal& M, std::size_t pivot);
MarkedIdeal restrict_to_coordinates(const MarkedIdeal& M, const std::vector<std::size_t>& vars);

}  // namespace mres
