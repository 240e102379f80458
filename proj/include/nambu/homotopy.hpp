// Radial homotopy operator realizing the Poincaré lemma on 3-space.
//
// The gauge is the radial one centered at the origin: every monomial of
// total degree m inside a degree-k form is contracted with the radial
// field R = (x0,x1,x2) and weighted by 1/(m+k). For closed input the
// exterior derivative of the result reproduces the input exactly.
#pragma once

#include "kform.hpp"

namespace nambu {

struct NotClosedError : std::runtime_error {
    KForm residual;
    explicit NotClosedError(KForm r)
        : std::runtime_error("form is not closed"), residual(std::move(r)) {}
};

inline KForm homotopy_potential(const KForm& w) {
    const int k = w.degree();
    if (k < 1)
        throw std::invalid_argument(
            "homotopy_potential: input degree must be at least 1");
    if (k < 3) {
        KForm dw = exterior_derivative(w);
        if (!dw.is_zero()) throw NotClosedError(std::move(dw));
    }
    const VecField radial{Poly::variable(Var::x0), Poly::variable(Var::x1),
                          Poly::variable(Var::x2)};
    KForm result(k - 1);
    for (const auto& [mask, f] : w.components()) {
        // Split the coefficient into degree-homogeneous pieces so each
        // gets its own 1/(m+k) weight.
        std::map<unsigned, Poly> homogeneous;
        for (const auto& [e, c] : f.terms()) {
            auto [it, _] = homogeneous.try_emplace(monomial_degree(e), Poly());
            it->second += Poly::monomial(c, e);
        }
        for (const auto& [m, piece] : homogeneous) {
            KForm slab(k);
            slab.add_component(mask, piece);
            result += Rational(1, m + k) * interior_product(radial, slab);
        }
    }
    return result;
}

}  // namespace nambu
