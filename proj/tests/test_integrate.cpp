#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nambu/frenet.hpp"
#include "nambu/integrate.hpp"

using namespace nambu;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs_diff(const std::array<double, 3>& a,
                    const std::array<double, 3>& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("constant and zero fields integrate exactly") {
    VecField still(Alphabet::position);
    Trajectory t = integrate(still, {0.25, -1.0, 3.0}, 0.1, 1.0);
    CHECK(t.states.size() == 11);
    CHECK(t.states.back().x == std::array<double, 3>{0.25, -1.0, 3.0});

    VecField push{Poly::constant(1), Poly(), Poly()};
    PhaseState s{0.0, {0.0, 0.0, 0.0}};
    PhaseState out = rk4_step(push, s, 0.5);
    CHECK_THAT(out.x[0], WithinAbs(0.5, 1e-15));
    CHECK(out.x[1] == 0.0);
    CHECK(out.t == 0.5);
}

TEST_CASE("one RK4 step tracks the exact linear flow") {
    const std::array<double, 3> x0{1.0, 0.5, -0.25};
    PhaseState s{0.0, x0};
    PhaseState stepped = rk4_step(frenet::motion(), s, 0.001);
    auto exact = exact_linear_flow(frenet::linear_matrix(), x0, 0.001);
    CHECK(max_abs_diff(stepped.x, exact) < 1e-12);
}

TEST_CASE("exact linear flow special values") {
    const std::array<double, 3> x0{0.7, -0.3, 1.1};
    auto at0 = exact_linear_flow(frenet::linear_matrix(), x0, 0.0);
    CHECK(max_abs_diff(at0, x0) < 1e-15);

    auto frozen = exact_linear_flow(RatMatrix{}, x0, 3.7);
    CHECK(max_abs_diff(frozen, x0) < 1e-15);
}

TEST_CASE("the orbit closes after one period") {
    const double period = 2.0 * std::acos(-1.0) / std::sqrt(2.0);
    const std::array<double, 3> x0{1.0, 0.0, 0.0};

    auto exact = exact_linear_flow(frenet::linear_matrix(), x0, period);
    CHECK(max_abs_diff(exact, x0) < 1e-12);

    Trajectory t = integrate(frenet::motion(), x0, period / 4096, period);
    REQUIRE(t.states.size() == 4097);
    CHECK(max_abs_diff(t.states.back().x, x0) < 1e-10);
}

TEST_CASE("trajectory bookkeeping") {
    Trajectory t = integrate(frenet::motion(), {1, 0, 0}, 0.1, 0.1, "frenet");
    CHECK(t.states.size() == 2);
    CHECK(t.states.front().t == 0.0);
    CHECK(t.states.back().t == 0.1);
    CHECK(t.dt == 0.1);
    CHECK(t.method == "rk4");
    CHECK(t.field_description == "frenet");
    CHECK(integrate(frenet::motion(), {1, 0, 0}, 0.1, 0.2).states.size() == 3);
}

TEST_CASE("invariants hold along the reference orbit") {
    const std::array<double, 3> x0{1.0, 0.25, -0.5};
    Trajectory t = integrate(frenet::motion(), x0, 0.01, 50.0);

    const auto inv = closed_form_invariants();
    auto drift = invariant_drift(t, {inv.begin(), inv.end()});
    REQUIRE(drift.size() == 3);
    for (double d : drift) CHECK(d < 1e-8);

    CHECK(invariant_drift(t, {Poly::constant(5)})[0] == 0.0);
    CHECK(invariant_drift(t, {Poly::variable(Var::x0)})[0] > 0.05);

    const double radius =
        std::sqrt(x0[0] * x0[0] + x0[1] * x0[1] + x0[2] * x0[2]);
    for (const PhaseState& s : t.states)
        for (double xi : s.x) CHECK(std::abs(xi) <= radius + 1e-6);
}

TEST_CASE("volume is preserved to rounding") {
    CHECK(volume_drift(frenet::motion(), {1.0, 0.25, -0.5}, 0.01, 50.0) < 1e-9);

    VecField grow{Poly::variable(Var::x0), Poly(), Poly()};
    double expand = volume_drift(grow, {1.0, 0.0, 0.0}, 0.001, 1.0);
    CHECK_THAT(expand, WithinAbs(std::exp(1.0) - 1.0, 1e-6));

    VecField euler{parse_poly("x1*x2"), parse_poly("-2*x0*x2"),
                   parse_poly("x0*x1")};
    REQUIRE(div(euler).is_zero());
    CHECK(volume_drift(euler, {0.3, 0.2, 0.1}, 0.005, 10.0) < 1e-8);
}

TEST_CASE("global error shrinks at fourth order") {
    const std::array<double, 3> x0{1.0, 0.0, 0.0};
    auto ref = exact_linear_flow(frenet::linear_matrix(), x0, 1.0);
    double coarse = max_abs_diff(
        integrate(frenet::motion(), x0, 0.01, 1.0).states.back().x, ref);
    double fine = max_abs_diff(
        integrate(frenet::motion(), x0, 0.005, 1.0).states.back().x, ref);
    REQUIRE(fine > 0.0);
    double ratio = coarse / fine;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("running the reversed field undoes the run") {
    const std::array<double, 3> x0{1.0, 0.25, -0.5};
    auto fwd = integrate(frenet::motion(), x0, 0.01, 1.0);
    auto back =
        integrate(-frenet::motion(), fwd.states.back().x, 0.01, 1.0);
    CHECK(max_abs_diff(back.states.back().x, x0) < 1e-8);
}

TEST_CASE("integration input validation") {
    const VecField X = frenet::motion();
    CHECK_THROWS_AS(integrate(X, {1, 0, 0}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(X, {1, 0, 0}, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(X, {1, 0, 0}, 0.1, 0.05), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(integrate(X, {nan, 0, 0}, 0.1, 1.0), std::runtime_error);
    CHECK_THROWS_AS(rk4_step(X, PhaseState{}, 0.0), std::invalid_argument);

    VecField ext{extended(X[0]), extended(X[1]), extended(X[2])};
    CHECK_THROWS_AS(CompiledField(ext), std::invalid_argument);
    CHECK_THROWS_AS(invariant_drift(Trajectory{}, {}), std::invalid_argument);
}

TEST_CASE("CSV trajectories") {
    std::ostringstream os;
    write_trajectory_csv(os, frenet::motion(), {1.0, 0.0, 0.0}, 0.01, 0.02);
    std::istringstream in(os.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);

    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "t,x0,x1,x2,I1,I2,I3,divJ");
    for (size_t i = 1; i < lines.size(); ++i)
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 7);

    CHECK(lines[1].rfind("0,1,0,0,1,0.5,", 0) == 0);
    const std::string& last = lines.back();
    double div_j = std::stod(last.substr(last.rfind(',') + 1));
    CHECK(std::abs(div_j) < 1e-10);
}
