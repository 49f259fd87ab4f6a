#include "mres/invariant.hpp"

#include <algorithm>

namespace mres {

int compare_entry(const InvEntry& a, const InvEntry& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite ? 0 : (a.infinite ? 1 : -1);
    return a.value < b.value ? -1 : (a.value > b.value ? 1 : 0);
}

InvVector::InvVector(std::vector<InvEntry> entries) : e_(std::move(entries)) {
    while (!e_.empty() && e_.back().is_zero()) e_.pop_back();
}

InvVector InvVector::prepend(const InvEntry& head) const {
    std::vector<InvEntry> v;
    v.reserve(e_.size() + 1);
    v.push_back(head);
    v.insert(v.end(), e_.begin(), e_.end());
    return InvVector(std::move(v));
}

std::vector<std::string> InvVector::strings() const {
    std::vector<std::string> out;
    for (const auto& e : e_) out.push_back(e.str());
    return out;
}

int compare_inv(const InvVector& a, const InvVector& b) {
    std::size_t n = std::max(a.entries().size(), b.entries().size());
    InvEntry zero;
    for (std::size_t i = 0; i < n; ++i) {
        const InvEntry& x = i < a.entries().size() ? a.entries()[i] : zero;
        const InvEntry& y = i < b.entries().size() ? b.entries()[i] : zero;
        if (int c = compare_entry(x, y)) return c;
    }
    return 0;
}

int compare_divisor_rank(const RhoEntry& a, const RhoEntry& b) {
    if (a.birth != b.birth) return a.birth < b.birth ? -1 : 1;
    if (a.position != b.position) return a.position < b.position ? -1 : 1;
    return 0;
}

Rho make_rho(std::vector<RhoEntry> divisors) {
    std::sort(divisors.begin(), divisors.end(),
              [](const RhoEntry& a, const RhoEntry& b) { return compare_divisor_rank(a, b) > 0; });
    return divisors;
}

int compare_rho(const Rho& a, const Rho& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare_divisor_rank(a[i], b[i])) return c;
    // A missing entry counts as 0, below every divisor.
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

int compare_key(const ResolutionKey& a, const ResolutionKey& b) {
    if (int c = compare_inv(a.inv, b.inv)) return c;
    return compare_rho(a.rho, b.rho);
}

std::string key_to_string(const ResolutionKey& k) {
    std::string s = "(";
    for (const auto& e : k.inv.entries()) s += e.str() + ",";
    s += "0,...) nu=" + rational_to_string(k.nu) + " rho={";
    for (std::size_t i = 0; i < k.rho.size(); ++i) s += (i ? "," : "") + k.rho[i].id;
    return s + "}";
}

std::optional<RhoNu> compute_rho_nu_monomial(const std::vector<std::pair<RhoEntry, int>>& exponents, unsigned mark,
                                             const std::function<bool(const std::vector<std::size_t>&)>& feasible) {
    std::size_t n = exponents.size();
    std::optional<Rho> best;
    long best_sum = 0;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        long sum = 0;
        int smallest = -1;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1ul)) continue;
            members.push_back(i);
            sum += exponents[i].second;
            if (smallest < 0 || exponents[i].second < smallest) smallest = exponents[i].second;
        }
        // Minimal: removing the smallest exponent must drop below the mark.
        if (sum < static_cast<long>(mark) || sum - smallest >= static_cast<long>(mark)) continue;
        if (feasible && !feasible(members)) continue;
        std::vector<RhoEntry> ds;
        for (auto i : members) ds.push_back(exponents[i].first);
        Rho r = make_rho(std::move(ds));
        if (!best || compare_rho(r, *best) > 0) {
            best = std::move(r);
            best_sum = sum;
        }
    }
    if (!best) return std::nullopt;
    Rational nu(best_sum);
    nu /= Rational(static_cast<long>(mark));
    return RhoNu{*best, nu};
}

InvVector stop_marker(std::size_t codim) {
    std::vector<InvEntry> v;
    for (std::size_t i = 0; i < codim; ++i) {
        v.push_back({1, false});
        v.push_back({0, false});
    }
    v.push_back(InvEntry::inf());
    return InvVector(std::move(v));
}

}  // namespace mres
