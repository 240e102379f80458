// Floating-point trajectory integration of polynomial vector fields:
// classical fixed-step RK4, the exact flow of linear systems, invariant
// and volume drift monitoring, and CSV trajectory output.
//
// Floats enter the library only here. Polynomials are evaluated by
// direct monomial summation in ascending exponent order (the canonical
// term order), so runs reproduce bit-for-bit on one platform.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lax.hpp"
#include "vector_field.hpp"

// Kept outside namespace nambu: unqualified operators on Eigen expression
// templates must never see the polynomial operator overloads, whose
// exact-rational conversions do not survive substitution against Eigen
// expression types.
namespace nambu_linalg {

// exp(Mt)·x0 for a 3×3 matrix in row-major order.
inline std::array<double, 3> expm_apply(const std::array<double, 9>& M_in,
                                        double t,
                                        const std::array<double, 3>& x0) {
    using Mat = Eigen::Matrix3d;
    using CMat = Eigen::Matrix3cd;
    Mat M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = M_in[i * 3 + j];

    Eigen::Vector3cd lam = Eigen::EigenSolver<Mat>(M, false).eigenvalues();
    const double scale = std::max(
        {std::abs(lam[0]), std::abs(lam[1]), std::abs(lam[2]), 1.0});
    const double sep =
        std::min({std::abs(lam[0] - lam[1]), std::abs(lam[0] - lam[2]),
                  std::abs(lam[1] - lam[2])});

    Mat expMt;
    if (sep > 1e-6 * scale) {
        const std::complex<double> f0 = std::exp(lam[0] * t);
        const std::complex<double> f1 = std::exp(lam[1] * t);
        const std::complex<double> f2 = std::exp(lam[2] * t);
        const std::complex<double> d01 = (f1 - f0) / (lam[1] - lam[0]);
        const std::complex<double> d12 = (f2 - f1) / (lam[2] - lam[1]);
        const std::complex<double> d012 = (d12 - d01) / (lam[2] - lam[0]);
        const CMat Mc = M.cast<std::complex<double>>();
        const CMat I = CMat::Identity();
        const CMat P = f0 * I + d01 * (Mc - lam[0] * I) +
                       d012 * ((Mc - lam[0] * I) * (Mc - lam[1] * I));
        expMt = P.real();
    } else {
        Mat Mt = M * t;
        int squarings = 0;
        double norm = Mt.cwiseAbs().maxCoeff();
        while (norm > 0.5) {
            Mt /= 2.0;
            norm /= 2.0;
            ++squarings;
        }
        Mat sum = Mat::Identity();
        Mat term = Mat::Identity();
        for (int k = 1; k <= 30; ++k) {
            term = term * Mt / static_cast<double>(k);
            sum += term;
            if (term.cwiseAbs().maxCoeff() <
                std::numeric_limits<double>::epsilon() *
                    sum.cwiseAbs().maxCoeff())
                break;
        }
        for (int k = 0; k < squarings; ++k) sum = (sum * sum).eval();
        expMt = sum;
    }

    const Eigen::Vector3d v(x0[0], x0[1], x0[2]);
    const Eigen::Vector3d r = expMt * v;
    return {r[0], r[1], r[2]};
}

}  // namespace nambu_linalg

namespace nambu {

struct PhaseState {
    double t = 0.0;
    std::array<double, 3> x{};
};

inline bool finite(const PhaseState& s) {
    return std::isfinite(s.t) && std::isfinite(s.x[0]) &&
           std::isfinite(s.x[1]) && std::isfinite(s.x[2]);
}

struct Trajectory {
    std::vector<PhaseState> states;
    std::string field_description;
    double dt = 0.0;
    std::string method = "rk4";
};

// Poly with coefficients pre-floated, preserving the term order.
class CompiledPoly {
public:
    explicit CompiledPoly(const Poly& p) {
        terms_.reserve(p.terms().size());
        for (const auto& [e, c] : p.terms())
            terms_.push_back({c.convert_to<double>(), e});
    }

    double eval(const std::array<double, 3>& x) const {
        double sum = 0.0;
        for (const auto& t : terms_) {
            double m = t.c;
            for (int i = 0; i < 3; ++i)
                for (unsigned k = 0; k < t.e[i]; ++k) m *= x[i];
            sum += m;
        }
        return sum;
    }

private:
    struct Term {
        double c;
        Exponents e;
    };
    std::vector<Term> terms_;
};

class CompiledField {
public:
    explicit CompiledField(const VecField& F)
        : f_{CompiledPoly(F[0]), CompiledPoly(F[1]), CompiledPoly(F[2])} {
        if (F.alphabet() != Alphabet::position)
            throw std::invalid_argument(
                "integration fields use the position alphabet");
    }

    std::array<double, 3> operator()(const std::array<double, 3>& x) const {
        return {f_[0].eval(x), f_[1].eval(x), f_[2].eval(x)};
    }

private:
    std::array<CompiledPoly, 3> f_;
};

namespace detail {

inline std::array<double, 3> axpy(const std::array<double, 3>& x, double a,
                                  const std::array<double, 3>& d) {
    return {x[0] + a * d[0], x[1] + a * d[1], x[2] + a * d[2]};
}

[[noreturn]] inline void nonfinite(const char* where, double t,
                                   const std::array<double, 3>& x) {
    throw std::runtime_error(std::string("non-finite state in ") + where +
                             " at t = " + std::to_string(t) + ", x = (" +
                             std::to_string(x[0]) + ", " +
                             std::to_string(x[1]) + ", " +
                             std::to_string(x[2]) + ")");
}

// Step count covering [0, T] in units of dt; T is trusted up to a small
// relative slack so T/dt = 100000 − ulp still gives 100000 steps.
inline size_t step_count(double dt, double T) {
    double raw = T / dt;
    return std::max<size_t>(
        1, static_cast<size_t>(std::ceil(raw * (1.0 - 1e-12))));
}

}  // namespace detail

inline PhaseState rk4_step(const CompiledField& f, const PhaseState& s,
                           double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
    if (!finite(s)) detail::nonfinite("rk4_step input", s.t, s.x);
    const auto k1 = f(s.x);
    const auto k2 = f(detail::axpy(s.x, dt / 2, k1));
    const auto k3 = f(detail::axpy(s.x, dt / 2, k2));
    const auto k4 = f(detail::axpy(s.x, dt, k3));
    PhaseState out;
    out.t = s.t + dt;
    for (int i = 0; i < 3; ++i)
        out.x[i] = s.x[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!finite(out)) detail::nonfinite("rk4_step", out.t, out.x);
    return out;
}

inline PhaseState rk4_step(const VecField& field, const PhaseState& s,
                           double dt) {
    return rk4_step(CompiledField(field), s, dt);
}

inline Trajectory integrate(const VecField& field,
                            const std::array<double, 3>& x0, double dt,
                            double T, std::string description = "") {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(T >= dt)) throw std::invalid_argument("integrate: T must be >= dt");
    const CompiledField f(field);
    const size_t steps = detail::step_count(dt, T);
    Trajectory traj;
    traj.field_description = std::move(description);
    traj.dt = dt;
    traj.states.reserve(steps + 1);
    traj.states.push_back({0.0, x0});
    for (size_t n = 0; n < steps; ++n) {
        PhaseState next;
        try {
            next = rk4_step(f, traj.states.back(), dt);
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("integrate: step " + std::to_string(n) +
                                     ": " + e.what());
        }
        next.t = dt * static_cast<double>(n + 1);
        traj.states.push_back(next);
    }
    return traj;
}

// exp(At)·x0 through the eigenvalue closed form: Newton's divided
// differences of exp on the three eigenvalues give the interpolating
// quadratic p with p(A) = exp(At). Near-confluent spectra fall back to
// a scaling-and-squaring Taylor series summed until the terms fall
// below machine epsilon relative to the running sum (truncation error
// is then below one ulp of the result before the final squarings).
inline std::array<double, 3> exact_linear_flow(const RatMatrix& A,
                                               const std::array<double, 3>& x0,
                                               double t) {
    std::array<double, 9> M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            M[i * 3 + j] = A[i][j].convert_to<double>();
    return nambu_linalg::expm_apply(M, t, x0);
}

// maxₜ |I(x(t)) − I(x₀)| / max(|I(x₀)|, 1) per invariant.
inline std::vector<double> invariant_drift(const Trajectory& traj,
                                           const std::vector<Poly>& invariants) {
    if (traj.states.empty())
        throw std::invalid_argument("invariant_drift: empty trajectory");
    std::vector<double> drift;
    drift.reserve(invariants.size());
    for (const Poly& inv : invariants) {
        CompiledPoly f(inv);
        const double ref = f.eval(traj.states.front().x);
        const double denom = std::max(std::abs(ref), 1.0);
        double worst = 0.0;
        for (const PhaseState& s : traj.states)
            worst = std::max(worst, std::abs(f.eval(s.x) - ref) / denom);
        drift.push_back(worst);
    }
    return drift;
}

// State together with the Jacobian J of the flow map, advanced by the
// variational equation J' = DF(x)·J.
struct AugmentedState {
    double t = 0.0;
    std::array<double, 3> x{};
    std::array<double, 9> J{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

inline double det3(const std::array<double, 9>& J) {
    return J[0] * (J[4] * J[8] - J[5] * J[7]) -
           J[1] * (J[3] * J[8] - J[5] * J[6]) +
           J[2] * (J[3] * J[7] - J[4] * J[6]);
}

class CompiledVariational {
public:
    explicit CompiledVariational(const VecField& F) : field_(F), jac_(build(F)) {}

    AugmentedState rk4_step(const AugmentedState& s, double dt) const {
        const auto k1 = deriv(s.x, s.J);
        const auto k2 = deriv(add(s.x, dt / 2, k1.first), add(s.J, dt / 2, k1.second));
        const auto k3 = deriv(add(s.x, dt / 2, k2.first), add(s.J, dt / 2, k2.second));
        const auto k4 = deriv(add(s.x, dt, k3.first), add(s.J, dt, k3.second));
        AugmentedState out;
        out.t = s.t + dt;
        for (int i = 0; i < 3; ++i)
            out.x[i] = s.x[i] + dt / 6 *
                                    (k1.first[i] + 2 * k2.first[i] +
                                     2 * k3.first[i] + k4.first[i]);
        for (int i = 0; i < 9; ++i)
            out.J[i] = s.J[i] + dt / 6 *
                                    (k1.second[i] + 2 * k2.second[i] +
                                     2 * k3.second[i] + k4.second[i]);
        for (double v : out.J)
            if (!std::isfinite(v)) detail::nonfinite("variational step", out.t, out.x);
        if (!std::isfinite(out.x[0]) || !std::isfinite(out.x[1]) ||
            !std::isfinite(out.x[2]))
            detail::nonfinite("variational step", out.t, out.x);
        return out;
    }

private:
    static std::vector<CompiledPoly> build(const VecField& F) {
        std::vector<CompiledPoly> jac;
        jac.reserve(9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                jac.emplace_back(F[i].partial(static_cast<Var>(j)));
        return jac;
    }

    static std::array<double, 3> add(const std::array<double, 3>& a, double s,
                                     const std::array<double, 3>& d) {
        return detail::axpy(a, s, d);
    }

    static std::array<double, 9> add(const std::array<double, 9>& a, double s,
                                     const std::array<double, 9>& d) {
        std::array<double, 9> r;
        for (int i = 0; i < 9; ++i) r[i] = a[i] + s * d[i];
        return r;
    }

    std::pair<std::array<double, 3>, std::array<double, 9>> deriv(
        const std::array<double, 3>& x, const std::array<double, 9>& J) const {
        std::array<double, 3> dx = field_(x);
        std::array<double, 9> D;
        for (int i = 0; i < 9; ++i) D[i] = jac_[i].eval(x);
        std::array<double, 9> dJ{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    dJ[i * 3 + j] += D[i * 3 + k] * J[k * 3 + j];
        return {dx, dJ};
    }

    CompiledField field_;
    std::vector<CompiledPoly> jac_;
};

// max over the run of |det J(t) − 1|.
inline double volume_drift(const VecField& field,
                           const std::array<double, 3>& x0, double dt,
                           double T) {
    const CompiledVariational sys(field);
    const size_t steps = detail::step_count(dt, T);
    AugmentedState s;
    s.x = x0;
    double worst = 0.0;
    for (size_t n = 0; n < steps; ++n) {
        s = sys.rk4_step(s, dt);
        s.t = dt * static_cast<double>(n + 1);
        worst = std::max(worst, std::abs(det3(s.J) - 1.0));
    }
    return worst;
}

// CSV rows: t,x0,x1,x2,I1,I2,I3,divJ with divJ = det J(t) − 1, floats at
// 17 significant digits. The invariant columns are the closed-form
// invariants evaluated along the trajectory.
inline void write_trajectory_csv(std::ostream& os, const VecField& field,
                                 const std::array<double, 3>& x0, double dt,
                                 double T) {
    const auto invs = closed_form_invariants();
    std::array<CompiledPoly, 3> inv{CompiledPoly(invs[0]), CompiledPoly(invs[1]),
                                    CompiledPoly(invs[2])};
    const CompiledVariational sys(field);
    const size_t steps = detail::step_count(dt, T);
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
        os << buf;
    };
    os << "t,x0,x1,x2,I1,I2,I3,divJ\n";
    AugmentedState s;
    s.x = x0;
    for (size_t n = 0;; ++n) {
        put(s.t, ',');
        put(s.x[0], ',');
        put(s.x[1], ',');
        put(s.x[2], ',');
        put(inv[0].eval(s.x), ',');
        put(inv[1].eval(s.x), ',');
        put(inv[2].eval(s.x), ',');
        put(det3(s.J) - 1.0, '\n');
        if (n == steps) break;
        s = sys.rk4_step(s, dt);
        s.t = dt * static_cast<double>(n + 1);
    }
}

}  // namespace nambu
