#include "mres/marked.hpp"

#include <doctest.h>

using namespace mres;

namespace {

const std::vector<std::string> XY{"x", "y"};

Polynomial P(const std::string& s) { return parse_polynomial(s, XY); }

Ideal I(std::initializer_list<const char*> gens) {
    std::vector<Polynomial> g;
    for (auto s : gens) g.push_back(P(s));
    return Ideal(2, std::move(g));
}

std::vector<std::string> B(const Ideal& J) { return basis_strings(J, XY); }

BoundaryEquation coord(const std::string& id, std::size_t var) { return {id, Polynomial::variable(2, var)}; }

}  // namespace

TEST_CASE("derivative ideals") {
    CHECK(B(derivative_ideal(I({"x^2 + y^5"}))) == B(I({"x", "y^4"})));
    CHECK(ideal_is_unit(derivative_ideal(I({"x"}))));
    CHECK(B(derivative_ideal(I({"x*y"}))) == B(I({"x", "y"})));
    CHECK(ideal_is_unit(iterated_derivative(I({"x^2 + y^5"}), 2)));
    CHECK(B(iterated_derivative(I({"x^3"}), 1)) == B(I({"x^2"})));
    CHECK(B(iterated_derivative(I({"x^3"}), 0)) == B(I({"x^3"})));
}

TEST_CASE("maximal order") {
    CHECK(max_order(I({"x^2 + y^5"})) == 2);
    CHECK(max_order(I({"1 + x"})) == 1);  // order 1 along x = -1
    CHECK(max_order(I({"7"})) == 0);
    CHECK(max_order(I({"y^2 - x^3"})) == 2);
    CHECK_THROWS(max_order(Ideal(2)));
}

TEST_CASE("support") {
    CHECK_FALSE(support_is_empty({I({"x^2 + y^5"}), 2}));
    CHECK(support_is_empty({I({"1 + x^3*y^5"}), 2}));
    CHECK(support_is_empty({I({"x"}), 2}));
    CHECK_FALSE(support_is_empty({I({"x"}), 1}));
}

TEST_CASE("tangent directions") {
    CHECK(B(tangent_directions({I({"x^2 + y^5"}), 2})) == B(I({"x", "y^4"})));
    CHECK(B(tangent_directions({I({"x"}), 1})) == B(I({"x"})));
    CHECK(B(tangent_directions({I({"x^2", "x*y^4", "y^5"}), 2})) == B(I({"x", "y^4"})));
}

TEST_CASE("tangent direction choice") {
    std::vector<bool> all{true, true};
    TangentChoice a = select_tangent_direction(I({"x", "y^4"}), all);
    CHECK(a.u == P("x"));
    CHECK(a.pivot == 0);
    CHECK(select_tangent_direction(I({"y", "x"}), all).u == P("x"));
    TangentChoice c = select_tangent_direction(I({"x + y^2", "y^3"}), all);
    CHECK(c.u == P("x + y^2"));
    CHECK(c.pivot == 0);
    CHECK_THROWS_AS(select_tangent_direction(I({"x^2", "y^2"}), all), NoTangentDirection);
    // x is excluded, so the only usable element is the one linear in y.
    CHECK(select_tangent_direction(I({"x", "y + x^2"}), {false, true}).pivot == 1);
}

TEST_CASE("coefficient ideal") {
    MarkedIdeal H{I({"x^2", "x*y^4", "y^5"}), 2};
    MarkedIdeal C = coefficient_ideal(H);
    CHECK(C.mark == 2);
    CHECK(B(C.ideal) == B(I({"x^2", "x*y^4", "y^5"})));
    CHECK(radicals_equal(tangent_directions(C), tangent_directions(H)));
    MarkedIdeal one = coefficient_ideal({I({"x"}), 1});
    CHECK(one.mark == 1);
    CHECK(B(one.ideal) == B(I({"x"})));
    // Mark 3: terms i = 0, 1, 2 with marks 3, 2, 1, summed at mark 3! = 6.
    CHECK(coefficient_ideal({I({"y^4"}), 3}).mark == 6);
}

TEST_CASE("homogenized ideal") {
    MarkedIdeal h = homogenized_ideal({I({"x^2 + y^5"}), 2});
    CHECK(h.mark == 2);
    CHECK(B(h.ideal) == B(I({"x^2", "x*y^4", "y^5"})));
    MarkedIdeal one = homogenized_ideal({I({"x"}), 1});
    CHECK(B(one.ideal) == B(I({"x"})));
}

TEST_CASE("marked sums and products") {
    MarkedIdeal s = marked_sum({{I({"x"}), 1}, {I({"y"}), 1}});
    CHECK(s.mark == 1);
    CHECK(B(s.ideal) == B(I({"x", "y"})));
    MarkedIdeal t = marked_sum({{I({"x^2"}), 2}, {I({"y"}), 1}});
    CHECK(t.mark == 2);
    CHECK(B(t.ideal) == B(I({"x^2", "y^2"})));
    MarkedIdeal u = marked_sum({{I({"x^3", "y"}), 2}});
    CHECK(u.mark == 2);
    CHECK(B(u.ideal) == B(I({"x^3", "y"})));

    MarkedIdeal p = marked_product({I({"x"}), 1}, {I({"y"}), 1});
    CHECK(p.mark == 2);
    CHECK(B(p.ideal) == B(I({"x*y"})));
    MarkedIdeal q = marked_product({I({"x", "y"}), 1}, {I({"x"}), 2});
    CHECK(q.mark == 3);
    CHECK(B(q.ideal) == B(I({"x^2", "x*y"})));
    MarkedIdeal r = marked_product({I({"x^2 + y"}), 2}, {Ideal::unit(2), 0});
    CHECK(r.mark == 2);
    CHECK(B(r.ideal) == B(I({"x^2 + y"})));
}

TEST_CASE("monomial decomposition") {
    MonomialDecomposition a = monomial_decomposition(I({"y^2*(x^2 + y^3)"}), {coord("Dy", 1)});
    CHECK(a.exponents.at("Dy") == 2);
    CHECK(B(a.nonmonomial) == B(I({"x^2 + y^3"})));
    CHECK(a.monomial == P("y^2"));

    MonomialDecomposition b = monomial_decomposition(I({"x^2 + y^5"}), {});
    CHECK(b.exponents.empty());
    CHECK(B(b.nonmonomial) == B(I({"x^2 + y^5"})));

    MonomialDecomposition c = monomial_decomposition(I({"x^3*y^2"}), {coord("Dx", 0), coord("Dy", 1)});
    CHECK(c.exponents.at("Dx") == 3);
    CHECK(c.exponents.at("Dy") == 2);
    CHECK(ideal_is_unit(c.nonmonomial));
}

TEST_CASE("companion ideal") {
    MonomialDecomposition a = monomial_decomposition(I({"x^2 + y^5"}), {});
    MarkedIdeal o = companion_ideal(a, 1, 2, CompanionVariant::canonical);
    CHECK(o.mark == 2);
    CHECK(B(o.ideal) == B(I({"x^2 + y^5"})));

    MonomialDecomposition b = monomial_decomposition(I({"y^2*(x^2 + y^3)"}), {coord("Dy", 1)});
    MarkedIdeal ob = companion_ideal(b, 1, 2, CompanionVariant::canonical);
    CHECK(ob.mark == 2);
    CHECK(B(ob.ideal) == B(I({"x^2 + y^3"})));

    // Monomial times a unit, mark 1, the modified variant keeps the monomial part.
    MonomialDecomposition c = monomial_decomposition(I({"x^2*(1 + y)"}), {coord("Dx", 0)});
    MarkedIdeal oc = companion_ideal(c, 1, 1, CompanionVariant::bravo_villamayor);
    CHECK(oc.mark == 1);
    CHECK(B(oc.ideal) == B(I({"x^2"})));

    // ord_N < mark: the monomial part enters with the complementary mark.
    MonomialDecomposition d = monomial_decomposition(I({"x^3*(y^2 + x)"}), {coord("Dx", 0)});
    MarkedIdeal od = companion_ideal(d, 3, 1, CompanionVariant::canonical);
    CHECK(max_order(od.ideal) <= od.mark);
}

TEST_CASE("order of N along the support") {
    // x^2 y^3 (x^2 + y^3) with both axes as boundary, mark 1: N has order 2 at the origin.
    Ideal full = I({"x^2*y^3*(x^2 + y^3)"});
    MonomialDecomposition dec = monomial_decomposition(full, {coord("Dx", 0), coord("Dy", 1)});
    CHECK(B(dec.nonmonomial) == B(I({"x^2 + y^3"})));
    CHECK(order_on_support(dec.nonmonomial, full) == 2);
    // Away from the singular point N has order 1 on its own zero set.
    CHECK(order_on_support(I({"y - x^2"}), I({"y - x^2"})) == 1);
}

TEST_CASE("restriction to coordinate hypersurfaces") {
    MarkedIdeal a = restrict_to_hypersurface({I({"x^2", "x*y^4", "y^5"}), 2}, 0);
    CHECK(a.mark == 2);
    CHECK(B(a.ideal) == B(I({"y^5"})));
    CHECK(restrict_to_hypersurface({I({"x"}), 1}, 0).ideal.is_zero());
    CHECK(B(restrict_to_hypersurface({I({"x^2 + y^3", "x*y"}), 2}, 0).ideal) == B(I({"y^3"})));
    CHECK(B(restrict_to_coordinates({I({"x + y + x*y^2 + 1"}), 1}, {0, 1}).ideal) == B(I({"1"})));
}
