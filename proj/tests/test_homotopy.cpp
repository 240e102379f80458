#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "nambu/frenet.hpp"
#include "nambu/homotopy.hpp"
#include "nambu/verify.hpp"

using namespace nambu;

namespace {

std::uint64_t test_seed() {
    if (const char* s = std::getenv("NAMBU_SEED"); s && *s)
        return std::strtoull(s, nullptr, 10);
    return 0x5eed;
}

}  // namespace

TEST_CASE("the Frenet 2-form reconstructs the reference vector Hamiltonian") {
    KForm h = homotopy_potential(frenet::closed_two_form());
    REQUIRE(h.degree() == 1);
    CHECK(vec_of_one_form(h) == frenet::vector_hamiltonian());
    CHECK(h.component({0}) == parse_poly("1/3*x1^2 + 1/3*x2^2 - 1/3*x0*x2"));
    CHECK(h.component({1}) == parse_poly("-1/3*x0*x1 - 1/3*x1*x2"));
    CHECK(h.component({2}) == parse_poly("1/3*x1^2 + 1/3*x0^2 - 1/3*x0*x2"));
}

TEST_CASE("constant-coefficient 2-form gets the weight 1/2") {
    KForm w = wedge(KForm::dx(0), KForm::dx(1));
    KForm p = homotopy_potential(w);
    CHECK(p.component({0}) == parse_poly("-1/2*x1"));
    CHECK(p.component({1}) == parse_poly("1/2*x0"));
    CHECK(p.component({2}).is_zero());
}

TEST_CASE("exact 1-forms of homogeneous polynomials recover the polynomial") {
    Poly H2 = parse_poly("x0*x2 - 1/2*x1^2");
    KForm p = homotopy_potential(exterior_derivative(KForm::scalar(H2)));
    REQUIRE(p.degree() == 0);
    CHECK(p.component_at(0u) == H2);
}

TEST_CASE("non-closed input raises with the residual attached") {
    KForm w(2);
    w.add({0, 1}, parse_poly("x2^2"));
    bool threw = false;
    try {
        homotopy_potential(w);
    } catch (const NotClosedError& e) {
        threw = true;
        CHECK(e.residual.degree() == 3);
        CHECK(e.residual.component({0, 1, 2}) == parse_poly("2*x2"));
    }
    CHECK(threw);
}

TEST_CASE("degree 0 input is rejected") {
    CHECK_THROWS_AS(homotopy_potential(KForm::scalar(parse_poly("x0"))),
                    std::invalid_argument);
}

TEST_CASE("zero forms give zero potentials") {
    CHECK(homotopy_potential(KForm(2)).is_zero());
    CHECK(homotopy_potential(KForm(3)).is_zero());
}

TEST_CASE("round-trip: d of the potential returns every closed form") {
    PolyGen gen(test_seed());
    for (int n = 0; n < 120; ++n) {
        KForm w = (n % 4 == 3) ? gen.form(3, 3)
                               : exterior_derivative(gen.form(n % 3, 4));
        if (w.is_zero()) continue;
        CHECK(exterior_derivative(homotopy_potential(w)) == w);
    }
}

TEST_CASE("potential of the volume form is a primitive 2-form") {
    KForm p = homotopy_potential(KForm::volume());
    CHECK(exterior_derivative(p) == KForm::volume());
    CHECK(p.component({1, 2}) == parse_poly("1/3*x0"));
    CHECK(p.component({2, 0}) == parse_poly("1/3*x1"));
    CHECK(p.component({0, 1}) == parse_poly("1/3*x2"));
}
