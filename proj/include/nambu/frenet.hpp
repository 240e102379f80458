// The built-in worked instance: the Frenet frame system
//   ẋ₀ = x₁, ẋ₁ = x₂ − x₀, ẋ₂ = −x₁
// with its Hamiltonian pair, vector Hamiltonian, closed 2-form, linear
// system matrix, and Lax pair.
#pragma once

#include "kform.hpp"
#include "lax.hpp"
#include "mechanics.hpp"
#include "poly_text.hpp"

namespace nambu::frenet {

inline VecField motion() {
    return {parse_poly("x1"), parse_poly("x2 - x0"), parse_poly("-x1")};
}

inline NambuPair hamiltonians() {
    return {parse_poly("x0 + x2"), parse_poly("x0*x2 - 1/2*x1^2")};
}

inline VecField vector_hamiltonian() {
    return {parse_poly("1/3*x1^2 + 1/3*x2^2 - 1/3*x0*x2"),
            parse_poly("-1/3*x0*x1 - 1/3*x1*x2"),
            parse_poly("1/3*x1^2 + 1/3*x0^2 - 1/3*x0*x2")};
}

// Ψ = x₁ dx₁∧dx₂ + (x₂−x₀) dx₂∧dx₀ − x₁ dx₀∧dx₁, the area form of the
// motion field.
inline KForm closed_two_form() { return area_form(motion()); }

// Coefficient matrix of the linear system ẋ = M x.
inline RatMatrix linear_matrix() {
    return RatMatrix{{{Rational(0), Rational(1), Rational(0)},
                      {Rational(-1), Rational(0), Rational(1)},
                      {Rational(0), Rational(-1), Rational(0)}}};
}

inline LaxPair lax_pair() {
    LaxPair p;
    const Poly x0 = Poly::variable(Var::x0);
    const Poly x1 = Poly::variable(Var::x1);
    const Poly x2 = Poly::variable(Var::x2);
    p.A = PolyMatrix{{{x0, x1, x0}, {x1, Rational(2) * x2, x1}, {x0, x1, x0}}};
    p.B = RatMatrix{{{Rational(0), Rational(1), Rational(0)},
                     {Rational(-1), Rational(0), Rational(-1)},
                     {Rational(0), Rational(1), Rational(0)}}};
    return p;
}

}  // namespace nambu::frenet
