// A tour of the built-in Frenet system: the same dynamics written as a
// Nambu bracket flow, as the curl of a vector Hamiltonian, and as a
// linear system, plus potential reconstruction, the Lagrangian chain,
// the Lax fit, and a short conservation run.

#include <cstdio>
#include <iostream>

#include "nambu/frenet.hpp"
#include "nambu/homotopy.hpp"
#include "nambu/integrate.hpp"
#include "nambu/mechanics.hpp"

int main() {
    using namespace nambu;

    const VecField X = frenet::motion();
    std::cout << "motion field\n";
    for (int i = 0; i < 3; ++i)
        std::cout << "  x" << i << "' = " << to_string(X[i]) << "\n";

    const NambuPair pair = frenet::hamiltonians();
    std::cout << "\ntwo scalar Hamiltonians\n";
    std::cout << "  H1 = " << to_string(pair.H1) << "\n";
    std::cout << "  H2 = " << to_string(pair.H2) << "\n";
    std::cout << "  {H1,H2,.} returns the field: "
              << (nambu_flow_field(pair) == X ? "yes" : "no") << "\n";

    const VecField h = frenet::vector_hamiltonian();
    std::cout << "\none vector Hamiltonian\n";
    for (int i = 0; i < 3; ++i)
        std::cout << "  h" << i + 1 << " = " << to_string(h[i]) << "\n";
    std::cout << "  rot h returns the field: "
              << (vh_flow_field(h) == X ? "yes" : "no") << "\n";

    const KForm psi = frenet::closed_two_form();
    std::cout << "\nreconstruction from the area form\n";
    std::cout << "  d(psi) = 0: "
              << (exterior_derivative(psi).is_zero() ? "yes" : "no") << "\n";
    const VecField h_rec = vec_of_one_form(homotopy_potential(psi));
    std::cout << "  radial-gauge potential equals h: "
              << (h_rec == h ? "yes" : "no") << "\n";

    const VectorLagrangian L = vector_lagrangian_from_h(h);
    const VecField lambda = lagrange_multipliers(L);
    std::cout << "\nvector Lagrangian\n";
    std::cout << "  L1 = " << to_string(L[0]) << "\n";
    std::cout << "  lambda = (" << to_string(lambda[0]) << ", "
              << to_string(lambda[1]) << ", " << to_string(lambda[2]) << ")\n";
    auto mfr = multiplier_flow_report(lambda, h, X);
    std::cout << "  lambda-dot = s * rot h with s = "
              << (mfr.s ? mfr.s->str() : "none") << "\n";
    std::cout << "  on-shell EL residual (1,2): "
              << to_string(el_residual(L, 1, 2, X)) << "\n";

    const auto fit = lax_fit(frenet::lax_pair(), X);
    std::cout << "\nLax pair\n";
    std::cout << "  A-dot = c [A,B] with c = "
              << (fit.c ? fit.c->str() : "none") << "\n";
    for (const auto& rc : hamiltonian_relations(pair))
        std::cout << "  " << rc.relation << ": "
                  << (rc.pass ? "holds" : "violated") << "\n";

    std::cout << "\nshort numeric run (dt = 1e-3, T = 10)\n";
    const std::array<double, 3> x0{1.0, 0.0, 0.0};
    Trajectory traj = integrate(X, x0, 1e-3, 10.0);
    const auto inv = closed_form_invariants();
    const auto drift = invariant_drift(traj, {inv.begin(), inv.end()});
    for (int k = 0; k < 3; ++k)
        std::printf("  I%d relative drift: %.3e\n", k + 1, drift[k]);
    std::printf("  volume drift: %.3e\n",
                volume_drift(X, x0, 1e-3, 10.0));
    return 0;
}
