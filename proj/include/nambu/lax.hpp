// Lax representation: polynomial 3×3 matrices, the commutator, the
// scaling fit for Ȧ against [A,B], trace invariants, and the closed-form
// invariants with their Hamiltonian relations.
#pragma once

#include <optional>

#include "mechanics.hpp"
#include "poly.hpp"

namespace nambu {

using PolyMatrix = std::array<std::array<Poly, 3>, 3>;
using RatMatrix = std::array<std::array<Rational, 3>, 3>;

struct LaxPair {
    PolyMatrix A;
    RatMatrix B{};
    // Claimed commutator scaling in Ȧ = c·[A,B]; lax_fit reports the
    // value actually realized.
    Rational c = 1;
};

inline PolyMatrix to_poly_matrix(const RatMatrix& M) {
    PolyMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = Poly::constant(M[i][j]);
    return r;
}

inline PolyMatrix matmul(const PolyMatrix& A, const PolyMatrix& B) {
    PolyMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += A[i][k] * B[k][j];
    return r;
}

inline PolyMatrix matsub(const PolyMatrix& A, const PolyMatrix& B) {
    PolyMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = A[i][j] - B[i][j];
    return r;
}

inline bool matzero(const PolyMatrix& A) {
    for (const auto& row : A)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

inline Poly trace(const PolyMatrix& A) {
    return A[0][0] + A[1][1] + A[2][2];
}

inline PolyMatrix commutator(const PolyMatrix& A, const PolyMatrix& B) {
    return matsub(matmul(A, B), matmul(B, A));
}

inline PolyMatrix commutator(const PolyMatrix& A, const RatMatrix& B) {
    return commutator(A, to_poly_matrix(B));
}

struct LaxFitReport {
    // Present iff Ȧ is an exact rational multiple of [A,B].
    std::optional<Rational> c;
    PolyMatrix a_dot;
    PolyMatrix bracket;
    PolyMatrix residual;
};

// Entrywise Ȧ along the motion field, fitted against c·[A,B].
inline LaxFitReport lax_fit(const LaxPair& pair, const VecField& motion) {
    LaxFitReport rep;
    rep.bracket = commutator(pair.A, pair.B);
    std::array<Poly, 9> targets, basis;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            rep.a_dot[i][j] = advect(motion, pair.A[i][j]);
            targets[i * 3 + j] = rep.a_dot[i][j];
            basis[i * 3 + j] = rep.bracket[i][j];
        }
    }
    rep.c = fit_scalar_multiple(targets, basis);
    const Rational scale = rep.c.value_or(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rep.residual[i][j] = rep.a_dot[i][j] - rep.bracket[i][j] * scale;
    return rep;
}

// I_k = Tr(Aᵏ)/k.
inline Poly trace_invariant(const PolyMatrix& A, unsigned k) {
    if (k < 1) throw std::invalid_argument("trace_invariant: k must be >= 1");
    PolyMatrix P = A;
    for (unsigned n = 1; n < k; ++n) P = matmul(P, A);
    return trace(P) / Rational(k);
}

// The reference invariants:
// I₁ = x₀+x₂, I₂ = ½(x₀²+x₁²+x₂²), I₃ = ⅓(x₀³ + ³⁄₂x₁²(x₀+x₂) + x₂³).
inline std::array<Poly, 3> closed_form_invariants() {
    const Poly x0 = Poly::variable(Var::x0);
    const Poly x1 = Poly::variable(Var::x1);
    const Poly x2 = Poly::variable(Var::x2);
    Poly I1 = x0 + x2;
    Poly I2 = (x0 * x0 + x1 * x1 + x2 * x2) * Rational(1, 2);
    Poly I3 = (x0 * x0 * x0 + x1 * x1 * (x0 + x2) * Rational(3, 2) +
               x2 * x2 * x2) *
              Rational(1, 3);
    return {std::move(I1), std::move(I2), std::move(I3)};
}

struct RelationCheck {
    std::string relation;
    bool pass;
    Poly residual;
};

// I₁ = H₁, I₂ = ½H₁² − H₂, I₃ = ⅓H₁(H₁² − 3H₂) against the closed-form
// invariants.
inline std::array<RelationCheck, 3> hamiltonian_relations(
    const NambuPair& pair) {
    const auto inv = closed_form_invariants();
    const Poly& H1 = pair.H1;
    const Poly& H2 = pair.H2;
    std::array<Poly, 3> expected{
        H1, H1 * H1 * Rational(1, 2) - H2,
        H1 * (H1 * H1 - Rational(3) * H2) * Rational(1, 3)};
    std::array<const char*, 3> names{"I1 = H1", "I2 = 1/2*H1^2 - H2",
                                     "I3 = 1/3*H1*(H1^2 - 3*H2)"};
    std::array<RelationCheck, 3> out;
    for (int k = 0; k < 3; ++k) {
        Poly residual = inv[k] - expected[k];
        out[k] = {names[k], residual.is_zero(), std::move(residual)};
    }
    return out;
}

}  // namespace nambu
