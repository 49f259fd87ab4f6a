#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mres {

using Rational = mpq_class;

std::string rational_to_string(const Rational& q);  // "p/q" or "p"

// Exponent vector with cached total degree.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int> exps);

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int degree() const { return deg_; }
    const std::vector<int>& exponents() const { return e_; }

    void set(std::size_t i, int v);
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // requires divides
    Monomial lcm(const Monomial& o) const;
    bool coprime(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }

private:
    std::vector<int> e_;
    int deg_ = 0;
};

// Graded reverse lexicographic comparison: -1, 0, 1.
int grevlex_cmp(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    Rational coef;
};

// Sparse polynomial over Q. Terms are kept sorted by descending grevlex, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : n_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial monomial(const Monomial& m, const Rational& c = 1);
    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }
    int total_degree() const;
    bool involves(std::size_t var) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial mul_term(const Monomial& m, const Rational& c) const;
    Polynomial pow(unsigned k) const;
    Polynomial monic() const;

    // f - c*m*g without building the intermediate product.
    void sub_mul_term(const Rational& c, const Monomial& m, const Polynomial& g);

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Same polynomial in a ring with more variables appended (new variables absent).
    Polynomial extended(std::size_t nvars) const;

private:
    std::size_t n_ = 0;
    std::vector<Term> terms_;
};

// ---- parsing / printing ----

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position;
};

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars);
std::string to_string(const Polynomial& f, const std::vector<std::string>& vars);

// ---- elementary operations ----

Polynomial partial_derivative(const Polynomial& f, std::size_t var);

// Minimal total degree of a term; nullopt stands for infinity (zero polynomial).
std::optional<int> order_at_origin(const Polynomial& f);

// images[i] replaces variable i; images must all live in the same target ring.
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images);

// Largest k with x_var^k dividing f (f nonzero).
int polynomial_var_valuation(const Polynomial& f, std::size_t var);
Polynomial divide_by_var_power(const Polynomial& f, std::size_t var, int k);

// Exact division; nullopt when g does not divide f.
std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g);
Polynomial polynomial_gcd(const Polynomial& f, const Polynomial& g);

// Constant term and the homogeneous degree-1 part.
Rational constant_term(const Polynomial& f);
Polynomial linear_part(const Polynomial& f);

// ---- Groebner kernel ----

struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Cap on reduction steps for Groebner computations on the current thread.
class GroebnerBudget {
public:
    explicit GroebnerBudget(std::size_t max_steps);
    ~GroebnerBudget();
    GroebnerBudget(const GroebnerBudget&) = delete;
    GroebnerBudget& operator=(const GroebnerBudget&) = delete;

    static std::size_t remaining();
    static void charge(std::size_t steps);
    static constexpr std::size_t kDefault = 2'000'000;

private:
    std::size_t saved_;
};

class Ideal {
public:
    Ideal() = default;
    explicit Ideal(std::size_t nvars) : n_(nvars) {}
    Ideal(std::size_t nvars, std::vector<Polynomial> gens);

    static Ideal unit(std::size_t nvars);

    std::size_t nvars() const { return n_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }

    // Reduced Groebner basis (grevlex, monic, sorted by descending leading monomial).
    const std::vector<Polynomial>& basis() const;

    Ideal operator+(const Ideal& o) const;
    Ideal operator*(const Ideal& o) const;
    Ideal pow(unsigned k) const;

private:
    struct Cache {
        std::once_flag once;
        std::vector<Polynomial> basis;
    };
    std::size_t n_ = 0;
    std::vector<Polynomial> gens_;
    mutable std::shared_ptr<Cache> cache_;
};

std::vector<Polynomial> reduced_groebner_basis(const std::vector<Polynomial>& gens, std::size_t nvars);

// Remainder of f modulo a Groebner basis.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis);

bool ideal_is_unit(const Ideal& I);
bool ideal_contains(const Ideal& I, const Polynomial& f);
bool ideal_contains(const Ideal& I, const Ideal& J);
bool ideal_equal(const Ideal& I, const Ideal& J);
bool radical_membership(const Polynomial& f, const Ideal& I);
bool radicals_equal(const Ideal& I, const Ideal& J);

// max k with I inside (x_var)^k; I must be nonzero.
int variable_valuation(const Ideal& I, std::size_t var);

// I : x_var^infinity.
Ideal saturate_by_variable(const Ideal& I, std::size_t var);

// V(I) smooth of the given codimension everywhere: I + (codim-minors of the Jacobian) = (1).
bool jacobian_unit_check(const Ideal& I, std::size_t codim);

// Krull dimension of Q[x]/I from the leading terms of the reduced basis; -1 for the unit ideal.
int krull_dimension(const Ideal& I);

std::vector<std::string> basis_strings(const Ideal& I, const std::vector<std::string>& vars);

}  // namespace mres
