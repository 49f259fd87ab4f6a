#pragma once

#include "mres/polyring.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mres {

// Rational >= 0 or infinity.
struct InvEntry {
    Rational value = 0;
    bool infinite = false;

    static InvEntry inf() { return {0, true}; }
    bool is_zero() const { return !infinite && value == 0; }
    std::string str() const { return infinite ? "inf" : rational_to_string(value); }
};

int compare_entry(const InvEntry& a, const InvEntry& b);

// Implicitly padded with zeros; trailing zeros are trimmed on construction.
class InvVector {
public:
    InvVector() = default;
    explicit InvVector(std::vector<InvEntry> entries);

    const std::vector<InvEntry>& entries() const { return e_; }
    InvVector prepend(const InvEntry& head) const;
    std::vector<std::string> strings() const;

private:
    std::vector<InvEntry> e_;
};

int compare_inv(const InvVector& a, const InvVector& b);

// A divisor reference carrying its position in the E-order.
struct RhoEntry {
    std::string id;
    int birth = 0;
    int position = 0;
};

int compare_divisor_rank(const RhoEntry& a, const RhoEntry& b);

// Sorted descending by the E-order.
using Rho = std::vector<RhoEntry>;

Rho make_rho(std::vector<RhoEntry> divisors);
int compare_rho(const Rho& a, const Rho& b);

struct ResolutionKey {
    InvVector inv;
    Rational nu = 0;
    Rho rho;
};

// Lexicographic on inv, then on rho. nu is carried along but not compared.
int compare_key(const ResolutionKey& a, const ResolutionKey& b);

std::string key_to_string(const ResolutionKey& k);

struct RhoNu {
    Rho rho;
    Rational nu;
};

// Monomial case: rho is the largest subset, under the sequence
// order, whose exponents sum to at least the mark while every proper subset stays below it.
// feasible(subset) may exclude subsets whose common zero set misses the support.
// nu = (exponent sum over rho)/mark, the order at a general point of V(rho) over the mark.
// Returns nullopt when no subset reaches the mark.
std::optional<RhoNu> compute_rho_nu_monomial(const std::vector<std::pair<RhoEntry, int>>& exponents, unsigned mark,
                                             const std::function<bool(const std::vector<std::size_t>&)>& feasible = {});

// The embedded stop value: (1,0) repeated codim times, then infinity.
InvVector stop_marker(std::size_t codim);

}  // namespace mres
