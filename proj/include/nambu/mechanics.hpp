// Hamiltonian and Lagrangian structures on 3-space: Nambu brackets and
// their flow fields, vector-Hamiltonian brackets, bivector fields,
// vector Lagrangians with their multipliers, and the on-shell vector
// Euler-Lagrange residual.
#pragma once

#include <optional>

#include "kform.hpp"
#include "vector_field.hpp"

namespace nambu {

using BracketConvention = Convention;

struct NambuPair {
    Poly H1;
    Poly H2;
};

// Triple of polynomials in positions and velocities; index i is the
// component L^{i+1}.
struct VectorLagrangian {
    std::array<Poly, 3> L{Poly(Alphabet::extended), Poly(Alphabet::extended),
                          Poly(Alphabet::extended)};

    const Poly& operator[](int i) const { return L[i]; }
    Poly& operator[](int i) { return L[i]; }

    bool operator==(const VectorLagrangian&) const = default;
};

// Bivector on 3-space, stored through its dual vector under the
// area-element correspondence W = Σᵢ dualᵢ ∂ⱼ ∧ ∂ₖ (cyclic).
struct BiVec {
    VecField dual;
};

inline KForm interior_product(const BiVec& W, const KForm& omega,
                              Convention conv = Convention::unit) {
    return interior_product_bivector(W.dual, omega, conv);
}

// {H,F,G}: the Jacobian determinant det ∂(H,F,G)/∂(x0,x1,x2), halved
// under the half convention.
inline Poly nambu_bracket(const Poly& H, const Poly& F, const Poly& G,
                          BracketConvention conv = BracketConvention::unit) {
    const VecField gh = grad(H);
    const VecField gf = grad(F);
    const VecField gg = grad(G);
    Poly det = dot(gh, cross(gf, gg));
    if (conv == BracketConvention::half) det *= Rational(1, 2);
    return det;
}

inline VecField nambu_flow_field(
    const NambuPair& pair,
    BracketConvention conv = BracketConvention::unit) {
    VecField X(Alphabet::position);
    for (int i = 0; i < 3; ++i)
        X[i] = nambu_bracket(pair.H1, pair.H2, Poly::variable(static_cast<Var>(i)),
                             conv);
    return X;
}

// {h,G} = rot(h) · grad(G).
inline Poly vector_bracket(const VecField& h, const Poly& G) {
    return dot(rot(h), grad(G));
}

inline VecField vh_flow_field(const VecField& h) { return rot(h); }

inline BiVec bivector_field(const Poly& H,
                            Convention conv = Convention::unit) {
    VecField g = grad(H);
    if (conv == Convention::half) g *= Rational(1, 2);
    return {std::move(g)};
}

struct ConservativityReport {
    bool conservative;
    Poly residual;
};

inline ConservativityReport is_conservative(const VecField& F) {
    Poly d = div(F);
    return {d.is_zero(), std::move(d)};
}

// L = −x × v − h componentwise:
// L¹ = x₂v₁ − x₁v₂ − h₁, L² = x₀v₂ − x₂v₀ − h₂, L³ = x₁v₀ − x₀v₁ − h₃.
inline VectorLagrangian vector_lagrangian_from_h(const VecField& h) {
    auto xv = [](Var a, Var b) {
        return Poly::variable(a, Alphabet::extended) *
               Poly::variable(b, Alphabet::extended);
    };
    VectorLagrangian L;
    L[0] = xv(Var::x2, Var::v1) - xv(Var::x1, Var::v2) - extended(h[0]);
    L[1] = xv(Var::x0, Var::v2) - xv(Var::x2, Var::v0) - extended(h[1]);
    L[2] = xv(Var::x1, Var::v0) - xv(Var::x0, Var::v1) - extended(h[2]);
    return L;
}

// λ¹ = (∂L³/∂v₁ − ∂L²/∂v₂)/2 and the cyclic companions
// λ² = (∂L¹/∂v₂ − ∂L³/∂v₀)/2, λ³ = (∂L²/∂v₀ − ∂L¹/∂v₁)/2.
// Velocity-free results are narrowed to the position alphabet.
inline VecField lagrange_multipliers(const VectorLagrangian& L) {
    std::array<Poly, 3> lam{
        (L[2].partial(Var::v1) - L[1].partial(Var::v2)) / Rational(2),
        (L[0].partial(Var::v2) - L[2].partial(Var::v0)) / Rational(2),
        (L[1].partial(Var::v0) - L[0].partial(Var::v1)) / Rational(2)};
    if (velocity_free(lam[0]) && velocity_free(lam[1]) && velocity_free(lam[2]))
        return {restricted_to_position(lam[0]), restricted_to_position(lam[1]),
                restricted_to_position(lam[2])};
    return {std::move(lam[0]), std::move(lam[1]), std::move(lam[2])};
}

// (Jacobian of motion) · motion.
inline VecField acceleration(const VecField& motion) {
    return {advect(motion, motion[0]), advect(motion, motion[1]),
            advect(motion, motion[2])};
}

inline std::map<Var, Poly> on_shell_bindings(const VecField& motion) {
    return {{Var::v0, motion[0]}, {Var::v1, motion[1]}, {Var::v2, motion[2]}};
}

// On-shell total derivative along motion: positions move with the field,
// velocities with its acceleration, and the result is evaluated at
// v = motion(x). Partials are taken before any substitution.
inline Poly total_derivative_on_shell(const Poly& g, const VecField& motion) {
    const Poly ge = extended(g);
    const VecField acc = acceleration(motion);
    Poly dt(Alphabet::extended);
    for (int j = 0; j < 3; ++j) {
        dt += ge.partial(static_cast<Var>(j)) * extended(motion[j]);
        dt += ge.partial(static_cast<Var>(j + 3)) * extended(acc[j]);
    }
    return substitute(dt, on_shell_bindings(motion));
}

struct MultiplierFlowReport {
    // Present iff lambda_dot is an exact rational multiple of rot(h).
    std::optional<Rational> s;
    VecField lambda_dot;
    VecField residual;
};

// Fits λ̇ = s · rot(h) with λ̇ the on-shell total derivative of λ.
inline MultiplierFlowReport multiplier_flow_report(const VecField& lambda,
                                                   const VecField& h,
                                                   const VecField& motion) {
    for (int i = 0; i < 3; ++i)
        if (!velocity_free(lambda[i]))
            throw std::invalid_argument(
                "multiplier_flow_report: lambda must be velocity-free");
    VecField ldot{total_derivative_on_shell(lambda[0], motion),
                  total_derivative_on_shell(lambda[1], motion),
                  total_derivative_on_shell(lambda[2], motion)};
    const VecField basis = rot(h);
    auto s = fit_scalar_multiple(ldot.comp, basis.comp);
    VecField residual =
        s ? VecField(Alphabet::position) : ldot;
    return {s, std::move(ldot), std::move(residual)};
}

// On-shell residual of the vector Euler-Lagrange equation for the index
// pair (i,k), 1-based:
//   ½ D_t(∂Lⁱ/∂v_k − ∂Lᵏ/∂vᵢ) − (∂Lᵏ/∂xᵢ − ∂Lⁱ/∂x_k).
inline Poly el_residual(const VectorLagrangian& L, int i, int k,
                        const VecField& motion) {
    if (i < 1 || i > 3 || k < 1 || k > 3)
        throw std::out_of_range("el_residual: indices must lie in 1..3");
    const int a = i - 1, b = k - 1;
    const Poly antisym =
        L[a].partial(static_cast<Var>(b + 3)) - L[b].partial(static_cast<Var>(a + 3));
    const Poly lhs =
        total_derivative_on_shell(antisym, motion) * Rational(1, 2);
    const Poly rhs_ext =
        L[b].partial(static_cast<Var>(a)) - L[a].partial(static_cast<Var>(b));
    const Poly rhs = substitute(rhs_ext, on_shell_bindings(motion));
    return lhs - rhs;
}

// Componentwise residual of (rot L)ᵏ + λ̇ᵏ on-shell, where rot acts on
// the position dependence of L at fixed v.
inline VecField rot_L_check(const VectorLagrangian& L, const VecField& lambda,
                            const VecField& motion) {
    VecField residual(Alphabet::position);
    const auto bindings = on_shell_bindings(motion);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        Poly curl = L[k].partial(static_cast<Var>(j)) -
                    L[j].partial(static_cast<Var>(k));
        Poly ldot = total_derivative_on_shell(lambda[i], motion);
        residual[i] = substitute(curl, bindings) + ldot;
    }
    return residual;
}

}  // namespace nambu
