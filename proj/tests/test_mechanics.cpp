#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "nambu/frenet.hpp"
#include "nambu/mechanics.hpp"
#include "nambu/poly_text.hpp"
#include "nambu/verify.hpp"

using namespace nambu;

namespace {

std::uint64_t test_seed() {
    if (const char* s = std::getenv("NAMBU_SEED"); s && *s)
        return std::strtoull(s, nullptr, 10);
    return 0x5eed;
}

}  // namespace

TEST_CASE("Nambu bracket on the reference pair gives the motion") {
    const auto [H1, H2] = frenet::hamiltonians();
    CHECK(nambu_bracket(H1, H2, Poly::variable(Var::x0)) == parse_poly("x1"));
    CHECK(nambu_bracket(H1, H2, Poly::variable(Var::x1)) ==
          parse_poly("x2 - x0"));
    CHECK(nambu_bracket(H1, H2, Poly::variable(Var::x2)) == parse_poly("-x1"));
    CHECK(nambu_bracket(H2, H1, Poly::variable(Var::x0)) == parse_poly("-x1"));
    CHECK(nambu_bracket(H1, H2, Poly::variable(Var::x0),
                        BracketConvention::half) == parse_poly("1/2*x1"));
}

TEST_CASE("repeated arguments kill the bracket") {
    PolyGen gen(test_seed());
    for (int n = 0; n < 60; ++n) {
        Poly F = gen.poly(3), G = gen.poly(3);
        CHECK(nambu_bracket(F, F, G).is_zero());
        CHECK(nambu_bracket(F, G, G).is_zero());
        CHECK(nambu_bracket(F, G, F).is_zero());
    }
}

TEST_CASE("Nambu flow field") {
    NambuPair pair = frenet::hamiltonians();
    CHECK(nambu_flow_field(pair) == frenet::motion());
    VecField half = frenet::motion();
    half *= Rational(1, 2);
    CHECK(nambu_flow_field(pair, BracketConvention::half) == half);
    CHECK(nambu_flow_field({pair.H1, pair.H1}).is_zero());
}

TEST_CASE("vector-Hamiltonian bracket and flow") {
    const VecField h = frenet::vector_hamiltonian();
    CHECK(vh_flow_field(h) == frenet::motion());
    CHECK(vector_bracket(h, Poly::variable(Var::x0)) == parse_poly("x1"));
    const auto [H1, H2] = frenet::hamiltonians();
    CHECK(vector_bracket(h, H1).is_zero());
    CHECK(vector_bracket(h, H2).is_zero());
}

TEST_CASE("gradient vector Hamiltonians generate no flow") {
    PolyGen gen(test_seed() + 1);
    for (int n = 0; n < 40; ++n)
        CHECK(vh_flow_field(grad(gen.poly(4))).is_zero());
}

TEST_CASE("every vector-Hamiltonian flow is divergence-free") {
    PolyGen gen(test_seed() + 2);
    for (int n = 0; n < 40; ++n)
        CHECK(div(vh_flow_field(gen.field(3))).is_zero());
}

TEST_CASE("bivector field contracts to the bracket") {
    const auto [H1, H2] = frenet::hamiltonians();
    VecField expect{Poly::constant(1), Poly(), Poly::constant(1)};
    CHECK(bivector_field(H1).dual == expect);

    PolyGen gen(test_seed() + 3);
    for (int n = 0; n < 40; ++n) {
        Poly H = gen.poly(2), F = gen.poly(2), G = gen.poly(2);
        KForm dF = exterior_derivative(KForm::scalar(F));
        KForm dG = exterior_derivative(KForm::scalar(G));
        auto conv = (n % 2) ? Convention::half : Convention::unit;
        KForm contracted =
            interior_product(bivector_field(H, conv), wedge(dF, dG));
        CHECK(contracted.component_at(0u) == nambu_bracket(H, F, G, conv));
    }
}

TEST_CASE("conservativity report") {
    CHECK(is_conservative(frenet::motion()).conservative);
    auto rep = is_conservative(
        VecField{Poly::variable(Var::x0), Poly(), Poly()});
    CHECK_FALSE(rep.conservative);
    CHECK(rep.residual == Poly::constant(1));
}

TEST_CASE("vector Lagrangian built from the reference h") {
    VectorLagrangian L = vector_lagrangian_from_h(frenet::vector_hamiltonian());
    CHECK(L[0] == parse_poly("x2*v1 - x1*v2 - 1/3*x1^2 - 1/3*x2^2 + 1/3*x0*x2",
                             Alphabet::extended));
    CHECK(L[1] == parse_poly("x0*v2 - x2*v0 + 1/3*x0*x1 + 1/3*x1*x2",
                             Alphabet::extended));
    CHECK(L[2] == parse_poly("x1*v0 - x0*v1 - 1/3*x1^2 - 1/3*x0^2 + 1/3*x0*x2",
                             Alphabet::extended));
    for (int i = 0; i < 3; ++i) {
        for (int j = 3; j < 6; ++j) {
            Poly d = L[i].partial(static_cast<Var>(j));
            CHECK((d.is_zero() || d.total_degree() == 1));
        }
    }
}

TEST_CASE("Lagrange multipliers of the reference Lagrangian") {
    VectorLagrangian L = vector_lagrangian_from_h(frenet::vector_hamiltonian());
    VecField lam = lagrange_multipliers(L);
    VecField expect{-Poly::variable(Var::x0), -Poly::variable(Var::x1),
                    -Poly::variable(Var::x2)};
    CHECK(lam == expect);
    CHECK(lam.alphabet() == Alphabet::position);

    VectorLagrangian scaled = L;
    for (int i = 0; i < 3; ++i) scaled[i] *= Rational(3);
    VecField lam3 = lagrange_multipliers(scaled);
    VecField expect3 = expect;
    expect3 *= Rational(3);
    CHECK(lam3 == expect3);

    VectorLagrangian kin = vector_lagrangian_from_h(VecField(Alphabet::position));
    CHECK(lagrange_multipliers(kin) == expect);
}

TEST_CASE("on-shell total derivative") {
    const VecField X = frenet::motion();
    CHECK(total_derivative_on_shell(Poly::variable(Var::x0), X) ==
          parse_poly("x1"));
    CHECK(total_derivative_on_shell(parse_poly("x0^2"), X) ==
          parse_poly("2*x0*x1"));
    const auto [H1, H2] = frenet::hamiltonians();
    CHECK(total_derivative_on_shell(H1, X).is_zero());
    CHECK(total_derivative_on_shell(H2, X).is_zero());
    CHECK(total_derivative_on_shell(Poly::variable(Var::v1, Alphabet::extended),
                                    X) == parse_poly("-2*x1"));
}

TEST_CASE("acceleration of the reference motion") {
    VecField acc = acceleration(frenet::motion());
    CHECK(acc[0] == parse_poly("x2 - x0"));
    CHECK(acc[1] == parse_poly("-2*x1"));
    CHECK(acc[2] == parse_poly("x0 - x2"));
}

TEST_CASE("multiplier flow fits the -1 scaling") {
    const VecField h = frenet::vector_hamiltonian();
    const VecField X = frenet::motion();
    VectorLagrangian L = vector_lagrangian_from_h(h);
    VecField lam = lagrange_multipliers(L);

    auto rep = multiplier_flow_report(lam, h, X);
    REQUIRE(rep.s.has_value());
    CHECK(*rep.s == Rational(-1));
    CHECK(rep.residual.is_zero());
    CHECK(rep.lambda_dot == -X);

    auto zero = multiplier_flow_report(VecField(Alphabet::position), h, X);
    REQUIRE(zero.s.has_value());
    CHECK(*zero.s == Rational(0));

    VecField odd{parse_poly("x0^2"), Poly(), Poly()};
    auto miss = multiplier_flow_report(odd, h, X);
    CHECK_FALSE(miss.s.has_value());
    CHECK(miss.residual == miss.lambda_dot);
    CHECK(miss.lambda_dot[0] == parse_poly("2*x0*x1"));

    VecField bad{Poly::variable(Var::v0, Alphabet::extended),
                 Poly(Alphabet::extended), Poly(Alphabet::extended)};
    CHECK_THROWS_AS(multiplier_flow_report(bad, h, X), std::invalid_argument);
}

TEST_CASE("Euler-Lagrange residuals vanish on shell") {
    VectorLagrangian L = vector_lagrangian_from_h(frenet::vector_hamiltonian());
    const VecField X = frenet::motion();
    CHECK(el_residual(L, 1, 2, X).is_zero());
    CHECK(el_residual(L, 2, 3, X).is_zero());
    CHECK(el_residual(L, 3, 1, X).is_zero());
    CHECK(el_residual(L, 2, 1, X).is_zero());
}

TEST_CASE("diagonal pairs are identically zero") {
    PolyGen gen(test_seed() + 4);
    for (int n = 0; n < 20; ++n) {
        VectorLagrangian L;
        for (int i = 0; i < 3; ++i) L[i] = extended(gen.poly(2));
        CHECK(el_residual(L, 1, 1, frenet::motion()).is_zero());
    }
}

TEST_CASE("a perturbed Lagrangian leaves a residual") {
    VectorLagrangian L = vector_lagrangian_from_h(frenet::vector_hamiltonian());
    Poly v1 = Poly::variable(Var::v1, Alphabet::extended);
    L[0] += v1 * v1;
    CHECK(el_residual(L, 1, 2, frenet::motion()) == parse_poly("-2*x1"));
}

TEST_CASE("index validation") {
    VectorLagrangian L;
    CHECK_THROWS_AS(el_residual(L, 0, 2, frenet::motion()), std::out_of_range);
    CHECK_THROWS_AS(el_residual(L, 1, 4, frenet::motion()), std::out_of_range);
}

TEST_CASE("rot of L balances the multiplier flow") {
    VectorLagrangian L = vector_lagrangian_from_h(frenet::vector_hamiltonian());
    VecField lam = lagrange_multipliers(L);
    CHECK(rot_L_check(L, lam, frenet::motion()).is_zero());

    VectorLagrangian kinetic;
    for (int i = 0; i < 3; ++i) {
        Poly v = Poly::variable(static_cast<Var>(i + 3), Alphabet::extended);
        kinetic[i] = v * v;
    }
    CHECK(rot_L_check(kinetic, VecField(Alphabet::position), frenet::motion())
              .is_zero());
}
