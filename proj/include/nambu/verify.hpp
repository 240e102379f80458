// The symbolic verification suite: randomized exact identities plus the
// structural checks for a concrete system (formulation equivalence,
// reconstruction, Euler-Lagrange residuals, multiplier and Lax reports,
// Hamiltonian relations).
//
// Statuses: `pass`/`fail` for asserted properties, `report` for fitted
// constants and documented ambiguities that must not break a run. Checks
// are emitted in a fixed order and the randomized cases are driven by a
// caller-supplied seed, so a report is a deterministic function of
// (system, convention, seed).
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "homotopy.hpp"
#include "json_io.hpp"
#include "lax.hpp"
#include "mechanics.hpp"
#include "system_spec.hpp"

namespace nambu {

struct CheckResult {
    std::string property;
    std::string status;  // pass | fail | report
    std::string detail;
    std::optional<std::string> residual;
    std::optional<std::string> fitted_constant;
};

struct VerifyOptions {
    Convention convention = Convention::unit;
    std::uint64_t seed = 0x9e3779b9;
    int cases = 120;
};

// Uniform random polynomials with small integer coefficients; the
// identity suite needs variety, not magnitude.
class PolyGen {
public:
    explicit PolyGen(std::uint64_t seed) : rng_(seed) {}

    Rational coefficient() {
        return Rational(std::uniform_int_distribution<int>(-4, 4)(rng_));
    }

    Poly poly(unsigned max_degree = 3, int terms = 5) {
        Poly p;
        std::uniform_int_distribution<unsigned> deg(0, max_degree);
        for (int n = 0; n < terms; ++n) {
            Exponents e{};
            unsigned budget = deg(rng_);
            for (unsigned d = 0; d < budget; ++d)
                ++e[std::uniform_int_distribution<int>(0, 2)(rng_)];
            p += Poly::monomial(coefficient(), e);
        }
        return p;
    }

    VecField field(unsigned max_degree = 2) {
        return {poly(max_degree), poly(max_degree), poly(max_degree)};
    }

    KForm form(int degree, unsigned max_degree = 3) {
        KForm w(degree);
        for (unsigned mask = 0; mask < 8; ++mask)
            if (std::popcount(mask) == degree)
                w.add_component(mask, poly(max_degree));
        return w;
    }

private:
    std::mt19937_64 rng_;
};

namespace detail {

inline CheckResult pass(std::string property, std::string detail = "") {
    return {std::move(property), "pass", std::move(detail), {}, {}};
}

inline CheckResult fail(std::string property, std::string detail,
                        std::string residual = "") {
    CheckResult r{std::move(property), "fail", std::move(detail), {}, {}};
    if (!residual.empty()) r.residual = std::move(residual);
    return r;
}

inline CheckResult report(std::string property, std::string detail,
                          std::optional<std::string> fitted = {},
                          std::optional<std::string> residual = {}) {
    return {std::move(property), "report", std::move(detail),
            std::move(residual), std::move(fitted)};
}

// Counted randomized property: pass iff `one_case` holds for every i.
template <typename F>
CheckResult property(std::string name, int cases, F&& one_case) {
    for (int i = 0; i < cases; ++i) {
        if (!one_case(i))
            return fail(std::move(name),
                        "failed on randomized case " + std::to_string(i));
    }
    return pass(std::move(name),
                std::to_string(cases) + " randomized cases, exact");
}

}  // namespace detail

inline std::vector<CheckResult> identity_suite(const VerifyOptions& opt) {
    using detail::property;
    std::vector<CheckResult> out;
    const int N = opt.cases;

    {
        PolyGen gen(opt.seed);
        out.push_back(property("identity.d_after_d_zero", N, [&](int i) {
            KForm w = gen.form(i % 2, 3);
            return exterior_derivative(exterior_derivative(w)).is_zero();
        }));
    }
    {
        PolyGen gen(opt.seed + 1);
        out.push_back(property("identity.rot_after_grad_zero", N, [&](int) {
            return rot(grad(gen.poly(3))).is_zero();
        }));
    }
    {
        PolyGen gen(opt.seed + 2);
        out.push_back(property("identity.div_after_rot_zero", N, [&](int) {
            return div(rot(gen.field(3))).is_zero();
        }));
    }
    {
        PolyGen gen(opt.seed + 3);
        out.push_back(property("identity.lie_volume_is_divergence", N, [&](int) {
            VecField X = gen.field(3);
            KForm expect = KForm::volume();
            expect *= div(X);
            return lie_derivative(X, KForm::volume()) == expect;
        }));
    }
    {
        PolyGen gen(opt.seed + 4);
        out.push_back(property("identity.duality_round_trip", N, [&](int) {
            VecField v = gen.field(3);
            return vec_of_one_form(one_form(v)) == v &&
                   vec_of_area_form(area_form(v)) == v;
        }));
    }
    {
        PolyGen gen(opt.seed + 5);
        out.push_back(property("identity.homotopy_round_trip", N, [&](int i) {
            // Closed forms of every degree: d of a random (i%3)-form,
            // plus every 3-form.
            KForm w = (i % 4 == 3) ? gen.form(3, 3)
                                   : exterior_derivative(gen.form(i % 3, 4));
            if (w.is_zero()) return true;
            return exterior_derivative(homotopy_potential(w)) == w;
        }));
    }
    {
        PolyGen gen(opt.seed + 6);
        out.push_back(property("identity.nambu_antisymmetry", N, [&](int i) {
            Poly H = gen.poly(2), F = gen.poly(2), G = gen.poly(2);
            Poly base = nambu_bracket(H, F, G, opt.convention);
            switch (i % 3) {
                case 0:
                    return nambu_bracket(F, H, G, opt.convention) == -base;
                case 1:
                    return nambu_bracket(H, G, F, opt.convention) == -base;
                default:
                    return nambu_bracket(G, F, H, opt.convention) == -base;
            }
        }));
    }
    {
        PolyGen gen(opt.seed + 7);
        out.push_back(property("identity.nambu_leibniz", N, [&](int) {
            Poly H = gen.poly(2), F = gen.poly(2);
            Poly G1 = gen.poly(2), G2 = gen.poly(2);
            Poly lhs = nambu_bracket(H, F, G1 * G2, opt.convention);
            Poly rhs = G1 * nambu_bracket(H, F, G2, opt.convention) +
                       G2 * nambu_bracket(H, F, G1, opt.convention);
            return lhs == rhs;
        }));
    }
    {
        PolyGen gen(opt.seed + 8);
        out.push_back(property("identity.nambu_conserves_hamiltonians", N,
                               [&](int) {
                                   Poly H1 = gen.poly(3), H2 = gen.poly(3);
                                   return nambu_bracket(H1, H2, H1).is_zero() &&
                                          nambu_bracket(H1, H2, H2).is_zero();
                               }));
    }
    {
        PolyGen gen(opt.seed + 9);
        out.push_back(property("identity.nambu_flow_divergence_free", N,
                               [&](int) {
                                   NambuPair p{gen.poly(3), gen.poly(3)};
                                   return div(nambu_flow_field(p, opt.convention))
                                       .is_zero();
                               }));
    }
    {
        PolyGen gen(opt.seed + 10);
        out.push_back(property("identity.bivector_matches_bracket", N, [&](int) {
            Poly H = gen.poly(2), F = gen.poly(2), G = gen.poly(2);
            KForm dF = exterior_derivative(KForm::scalar(F));
            KForm dG = exterior_derivative(KForm::scalar(G));
            KForm contracted =
                interior_product(bivector_field(H, opt.convention), wedge(dF, dG));
            return contracted.component_at(0u) ==
                   nambu_bracket(H, F, G, opt.convention);
        }));
    }
    return out;
}

namespace detail {

// Equality up to one rational factor: pass on equality, report with the
// fitted factor on proportionality, fail otherwise.
inline CheckResult compare_fields(std::string property, const VecField& got,
                                  const VecField& expected,
                                  const char* mismatch_note) {
    if (got == expected) return pass(std::move(property), "exact equality");
    auto s = fit_scalar_multiple(got.comp, expected.comp);
    if (s)
        return report(std::move(property),
                      std::string(mismatch_note) + "; fitted factor " +
                          s->str(),
                      s->str());
    VecField residual = got - expected;
    return fail(std::move(property), "fields differ beyond a scalar factor",
                to_json(residual).dump());
}

}  // namespace detail

inline std::vector<CheckResult> system_suite(const SystemSpec& sys,
                                             const VerifyOptions& opt) {
    using detail::compare_fields;
    using detail::fail;
    using detail::pass;
    using detail::report;
    std::vector<CheckResult> out;
    const VecField& X = sys.field;

    {
        auto [ok, residual] = is_conservative(X);
        out.push_back(ok ? pass("system.field_divergence_free", "div = 0")
                         : fail("system.field_divergence_free",
                                "field has nonzero divergence",
                                to_string(residual)));
    }
    out.push_back(lie_derivative(X, KForm::volume()).is_zero()
                      ? pass("system.volume_form_preserved", "L_X vol = 0")
                      : fail("system.volume_form_preserved",
                             "Lie derivative of the volume form is nonzero"));

    if (sys.hamiltonians)
        out.push_back(compare_fields(
            "formulation.nambu_flow_matches_field",
            nambu_flow_field(*sys.hamiltonians, opt.convention), X,
            "Nambu flow differs from the field by a constant factor"));
    if (sys.vector_hamiltonian)
        out.push_back(compare_fields("formulation.rot_h_matches_field",
                                     vh_flow_field(*sys.vector_hamiltonian), X,
                                     "rot h differs from the field by a "
                                     "constant factor"));
    if (sys.hamiltonians && sys.vector_hamiltonian)
        out.push_back(compare_fields(
            "formulation.nambu_flow_matches_rot_h",
            nambu_flow_field(*sys.hamiltonians, opt.convention),
            vh_flow_field(*sys.vector_hamiltonian),
            "the two Hamiltonian formulations disagree by a constant factor"));

    // Reconstruction: the area form of a divergence-free field is closed;
    // its radial potential must regenerate the field under rot.
    KForm psi = area_form(X);
    if (!exterior_derivative(psi).is_zero()) {
        out.push_back(fail("reconstruction.area_form_closed",
                           "d of the field's area form is nonzero"));
    } else {
        out.push_back(pass("reconstruction.area_form_closed", "d psi = 0"));
        const VecField h_rec = vec_of_one_form(homotopy_potential(psi));
        out.push_back(vh_flow_field(h_rec) == X
                          ? pass("reconstruction.potential_regenerates_field",
                                 "rot(homotopy potential) = field")
                          : fail("reconstruction.potential_regenerates_field",
                                 "rot of the reconstructed potential does not "
                                 "return the field"));
        if (sys.vector_hamiltonian) {
            if (h_rec == *sys.vector_hamiltonian)
                out.push_back(pass("reconstruction.matches_given_h",
                                   "radial-gauge potential equals the given h"));
            else if (rot(h_rec - *sys.vector_hamiltonian).is_zero())
                out.push_back(report("reconstruction.matches_given_h",
                                     "potential differs from the given h by a "
                                     "gauge term (rot of difference is zero)"));
            else
                out.push_back(fail("reconstruction.matches_given_h",
                                   "potential is not gauge-equivalent to the "
                                   "given h"));
        }

        // Lagrangian chain, built from the given h when present, else
        // from the reconstruction.
        const VecField h =
            sys.vector_hamiltonian ? *sys.vector_hamiltonian : h_rec;
        const VectorLagrangian L = vector_lagrangian_from_h(h);
        for (auto [i, k] : std::array<std::array<int, 2>, 3>{{{1, 2}, {2, 3}, {3, 1}}}) {
            Poly r = el_residual(L, i, k, X);
            std::string name = "lagrangian.el_onshell_" + std::to_string(i) +
                               std::to_string(k);
            out.push_back(r.is_zero()
                              ? pass(std::move(name), "on-shell residual 0")
                              : fail(std::move(name),
                                     "nonzero on-shell residual",
                                     to_string(r)));
        }

        const VecField lambda = lagrange_multipliers(L);
        auto mfr = multiplier_flow_report(lambda, h, X);
        out.push_back(report(
            "multiplier.flow_constant",
            mfr.s ? "lambda-dot = s * rot h with s = " + mfr.s->str()
                  : "lambda-dot is not a rational multiple of rot h",
            mfr.s ? std::optional<std::string>(mfr.s->str()) : std::nullopt,
            mfr.s ? std::nullopt
                  : std::optional<std::string>(to_json(mfr.lambda_dot).dump())));

        VecField rl = rot_L_check(L, lambda, X);
        out.push_back(report("lagrangian.rot_L_plus_lambda_dot",
                             rl.is_zero() ? "residual is identically zero"
                                          : "nonzero residual",
                             std::nullopt,
                             std::optional<std::string>(to_json(rl).dump())));
    }

    if (sys.builtin) {
        const LaxPair lp = frenet::lax_pair();
        auto fit = lax_fit(lp, X);
        out.push_back(report(
            "lax.fit_constant",
            fit.c ? "A-dot = c [A,B] with c = " + fit.c->str()
                  : "A-dot is not a rational multiple of [A,B]",
            fit.c ? std::optional<std::string>(fit.c->str()) : std::nullopt,
            fit.c ? std::nullopt
                  : std::optional<std::string>(to_json(fit.residual).dump())));

        const auto inv = closed_form_invariants();
        for (int k = 0; k < 3; ++k) {
            Poly dt = total_derivative_on_shell(inv[k], X);
            std::string name =
                "invariants.I" + std::to_string(k + 1) + "_conserved";
            out.push_back(dt.is_zero()
                              ? pass(std::move(name), "D_t = 0 symbolically")
                              : fail(std::move(name), "nonzero time derivative",
                                     to_string(dt)));
        }
        for (unsigned k = 1; k <= 3; ++k) {
            Poly tk = trace_invariant(lp.A, k);
            Poly dt = total_derivative_on_shell(tk, X);
            std::string name =
                "lax.trace_invariant_" + std::to_string(k) + "_conserved";
            out.push_back(dt.is_zero()
                              ? pass(std::move(name), "D_t Tr(A^k)/k = 0")
                              : fail(std::move(name), "nonzero time derivative",
                                     to_string(dt)));
            auto s = fit_scalar_multiple(std::array<Poly, 1>{tk},
                                         std::array<Poly, 1>{inv[k - 1]});
            out.push_back(report(
                "lax.trace_vs_closed_form_" + std::to_string(k),
                s ? "Tr(A^k)/k = " + s->str() + " * I" + std::to_string(k)
                  : "no scalar relation to I" + std::to_string(k),
                s ? std::optional<std::string>(s->str()) : std::nullopt));
        }
        if (sys.hamiltonians) {
            for (const auto& rc : hamiltonian_relations(*sys.hamiltonians)) {
                std::string name = "lax.relation." + rc.relation;
                out.push_back(rc.pass
                                  ? pass(std::move(name), "exact identity")
                                  : fail(std::move(name), "relation violated",
                                         to_string(rc.residual)));
            }
        }
    }
    return out;
}

inline std::vector<CheckResult> run_verify(const SystemSpec& sys,
                                           const VerifyOptions& opt) {
    std::vector<CheckResult> out = identity_suite(opt);
    std::vector<CheckResult> sys_checks = system_suite(sys, opt);
    out.insert(out.end(), std::make_move_iterator(sys_checks.begin()),
               std::make_move_iterator(sys_checks.end()));
    return out;
}

inline bool all_asserted_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

inline Json verify_report_json(const SystemSpec& sys, const VerifyOptions& opt,
                               const std::vector<CheckResult>& checks) {
    int passes = 0, fails = 0, reports = 0;
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json e{{"property", c.property}, {"status", c.status}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        if (c.residual) e["residual"] = *c.residual;
        if (c.fitted_constant) e["fitted_constant"] = *c.fitted_constant;
        arr.push_back(std::move(e));
        if (c.status == "pass") ++passes;
        else if (c.status == "fail") ++fails;
        else ++reports;
    }
    return Json{{"system", sys.name},
                {"convention",
                 opt.convention == Convention::unit ? "unit" : "half"},
                {"seed", opt.seed},
                {"cases", opt.cases},
                {"checks", arr},
                {"summary",
                 Json{{"pass", passes}, {"fail", fails}, {"report", reports}}}};
}

}  // namespace nambu
