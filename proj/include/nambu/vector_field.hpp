// Polynomial vector fields on 3-space and the classical differential
// operators grad, rot, div. Components may live on either alphabet, but
// the spatial derivatives are always with respect to x0, x1, x2.
#pragma once

#include <array>

#include "poly.hpp"

namespace nambu {

struct VecField {
    std::array<Poly, 3> comp;

    explicit VecField(Alphabet a = Alphabet::position)
        : comp{Poly(a), Poly(a), Poly(a)} {}

    VecField(Poly c0, Poly c1, Poly c2)
        : comp{std::move(c0), std::move(c1), std::move(c2)} {
        if (comp[0].alphabet() != comp[1].alphabet() ||
            comp[0].alphabet() != comp[2].alphabet())
            throw std::invalid_argument("VecField: mixed alphabets");
    }

    Alphabet alphabet() const { return comp[0].alphabet(); }

    const Poly& operator[](int i) const { return comp[i]; }
    Poly& operator[](int i) { return comp[i]; }

    bool operator==(const VecField&) const = default;

    bool is_zero() const {
        return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero();
    }

    VecField operator-() const { return {-comp[0], -comp[1], -comp[2]}; }

    VecField& operator+=(const VecField& o) {
        for (int i = 0; i < 3; ++i) comp[i] += o.comp[i];
        return *this;
    }

    VecField& operator-=(const VecField& o) {
        for (int i = 0; i < 3; ++i) comp[i] -= o.comp[i];
        return *this;
    }

    VecField& operator*=(const Rational& s) {
        for (auto& c : comp) c *= s;
        return *this;
    }
};

inline VecField operator+(VecField a, const VecField& b) { return a += b; }
inline VecField operator-(VecField a, const VecField& b) { return a -= b; }
inline VecField operator*(VecField a, const Rational& s) { return a *= s; }
inline VecField operator*(const Rational& s, VecField a) { return a *= s; }

inline Poly dot(const VecField& a, const VecField& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline VecField cross(const VecField& a, const VecField& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline VecField grad(const Poly& f) {
    return {f.partial(Var::x0), f.partial(Var::x1), f.partial(Var::x2)};
}

inline VecField rot(const VecField& h) {
    return {h[2].partial(Var::x1) - h[1].partial(Var::x2),
            h[0].partial(Var::x2) - h[2].partial(Var::x0),
            h[1].partial(Var::x0) - h[0].partial(Var::x1)};
}

inline Poly div(const VecField& X) {
    return X[0].partial(Var::x0) + X[1].partial(Var::x1) +
           X[2].partial(Var::x2);
}

// Directional derivative X·∇f.
inline Poly advect(const VecField& X, const Poly& f) {
    return dot(X, grad(f));
}

}  // namespace nambu
