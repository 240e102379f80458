// Differential forms of degree 0..3 on 3-space with exact polynomial
// components, plus the exterior-calculus operators: wedge, exterior
// derivative, interior products (vector and bivector), Lie derivative,
// and the musical correspondences between vector fields, 1-forms and
// 2-forms (Plücker area elements).
//
// Components are stored against bitmasks over {0,1,2}: bit i set means
// dx_i participates, with the canonical orientation dx_i in increasing
// index order. Degenerate requests (d of a 3-form, contraction below
// degree 0, wedge past degree 3) return a zero form carrying a
// degeneracy flag instead of throwing, so sweeps over all degrees stay
// uniform.
#pragma once

#include <bit>
#include <initializer_list>
#include <map>

#include "poly.hpp"
#include "vector_field.hpp"

namespace nambu {

// Scaling applied to bivector contractions and Nambu brackets: `unit`
// takes the plain Jacobian determinant, `half` carries an extra 1/2.
enum class Convention { unit, half };

namespace detail {

// Sign of dx_A ∧ dx_B relative to the sorted merge, for disjoint masks.
inline int merge_sign(unsigned a, unsigned b) {
    int sign = 1;
    for (int j = 0; j < 3; ++j) {
        if (!((b >> j) & 1u)) continue;
        if (std::popcount(a >> (j + 1)) & 1) sign = -sign;
    }
    return sign;
}

}  // namespace detail

class KForm {
public:
    using Components = std::map<unsigned, Poly>;

    explicit KForm(int degree) : degree_(degree) {
        if (degree < 0 || degree > 3)
            throw std::invalid_argument("form degree out of range 0..3");
    }

    static KForm scalar(Poly f) {
        KForm w(0);
        w.add_mask(0u, std::move(f));
        return w;
    }

    // The basis 1-form dx_i.
    static KForm dx(int i) {
        KForm w(1);
        w.add_mask(1u << check_index(i), Poly::constant(1));
        return w;
    }

    static KForm volume() {
        KForm w(3);
        w.add_mask(0b111u, Poly::constant(1));
        return w;
    }

    int degree() const { return degree_; }
    bool degenerate() const { return degenerate_; }
    const Components& components() const { return comps_; }

    bool is_zero() const { return comps_.empty(); }

    // Coefficient at a raw sorted mask.
    Poly component_at(unsigned mask) const {
        auto it = comps_.find(mask);
        return it == comps_.end() ? Poly() : it->second;
    }

    // Coefficient at an index tuple in any order; odd permutations flip
    // the sign, repeated indices give zero.
    Poly component(std::initializer_list<int> idx) const {
        auto [mask, sign] = normalize(idx);
        if (sign == 0) return Poly();
        Poly c = component_at(mask);
        return sign < 0 ? -c : c;
    }

    // Accumulates f · dx_{idx}, normalizing the index order.
    void add(std::initializer_list<int> idx, const Poly& f) {
        auto [mask, sign] = normalize(idx);
        if (sign == 0) return;
        add_mask(mask, sign < 0 ? -f : f);
    }

    // Accumulates f against a raw sorted mask.
    void add_component(unsigned mask, Poly f) { add_mask(mask, std::move(f)); }

    bool operator==(const KForm& o) const {
        return degree_ == o.degree_ && comps_ == o.comps_;
    }

    KForm operator-() const {
        KForm r(degree_);
        for (const auto& [m, f] : comps_) r.comps_.emplace(m, -f);
        return r;
    }

    KForm& operator+=(const KForm& o) {
        if (degree_ != o.degree_)
            throw std::invalid_argument("form degree mismatch");
        for (const auto& [m, f] : o.comps_) add_mask(m, f);
        return *this;
    }

    KForm& operator-=(const KForm& o) {
        if (degree_ != o.degree_)
            throw std::invalid_argument("form degree mismatch");
        for (const auto& [m, f] : o.comps_) add_mask(m, -f);
        return *this;
    }

    KForm& operator*=(const Rational& s) {
        if (s == 0) {
            comps_.clear();
            return *this;
        }
        for (auto& [m, f] : comps_) f *= s;
        return *this;
    }

    KForm& operator*=(const Poly& g) {
        if (g.alphabet() != Alphabet::position)
            throw std::invalid_argument("form coefficients use positions only");
        Components scaled;
        for (auto& [m, f] : comps_) {
            Poly p = f * g;
            if (!p.is_zero()) scaled.emplace(m, std::move(p));
        }
        comps_ = std::move(scaled);
        return *this;
    }

    KForm flagged_degenerate() && {
        degenerate_ = true;
        return std::move(*this);
    }

private:
    static int check_index(int i) {
        if (i < 0 || i > 2)
            throw std::invalid_argument("form index out of range 0..2");
        return i;
    }

    std::pair<unsigned, int> normalize(std::initializer_list<int> idx) const {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("index tuple length must equal degree");
        unsigned mask = 0;
        int sign = 1;
        for (int i : idx) {
            unsigned bit = 1u << check_index(i);
            if (mask & bit) return {0u, 0};
            if (std::popcount(mask >> (i + 1)) & 1) sign = -sign;
            mask |= bit;
        }
        return {mask, sign};
    }

    void add_mask(unsigned mask, Poly f) {
        if (std::popcount(mask) != degree_)
            throw std::invalid_argument("component mask does not match degree");
        if (f.alphabet() != Alphabet::position)
            throw std::invalid_argument("form coefficients use positions only");
        if (f.is_zero()) return;
        auto it = comps_.find(mask);
        if (it == comps_.end()) {
            comps_.emplace(mask, std::move(f));
        } else {
            it->second += f;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    int degree_;
    bool degenerate_ = false;
    Components comps_;

    friend KForm wedge(const KForm&, const KForm&);
    friend KForm exterior_derivative(const KForm&);
    friend KForm interior_product(const VecField&, const KForm&);
};

inline KForm operator+(KForm a, const KForm& b) { return a += b; }
inline KForm operator-(KForm a, const KForm& b) { return a -= b; }
inline KForm operator*(KForm a, const Rational& s) { return a *= s; }
inline KForm operator*(const Rational& s, KForm a) { return a *= s; }
inline KForm operator*(const Poly& g, KForm a) { return a *= g; }

inline KForm wedge(const KForm& a, const KForm& b) {
    int deg = a.degree() + b.degree();
    if (deg > 3) return KForm(3).flagged_degenerate();
    KForm r(deg);
    for (const auto& [ma, fa] : a.components()) {
        for (const auto& [mb, fb] : b.components()) {
            if (ma & mb) continue;
            int sign = detail::merge_sign(ma, mb);
            r.add_mask(ma | mb, sign < 0 ? -(fa * fb) : fa * fb);
        }
    }
    return r;
}

inline KForm exterior_derivative(const KForm& w) {
    if (w.degree() == 3) return KForm(3).flagged_degenerate();
    KForm r(w.degree() + 1);
    for (const auto& [m, f] : w.components()) {
        for (int i = 0; i < 3; ++i) {
            unsigned bit = 1u << i;
            if (m & bit) continue;
            Poly df = f.partial(static_cast<Var>(i));
            if (df.is_zero()) continue;
            int sign = detail::merge_sign(bit, m);
            r.add_mask(m | bit, sign < 0 ? -std::move(df) : std::move(df));
        }
    }
    return r;
}

inline KForm interior_product(const VecField& X, const KForm& w) {
    if (w.degree() == 0) return KForm(0).flagged_degenerate();
    if (X.alphabet() != Alphabet::position)
        throw std::invalid_argument("contraction fields use positions only");
    KForm r(w.degree() - 1);
    for (const auto& [m, f] : w.components()) {
        int pos = 0;
        for (int i = 0; i < 3; ++i) {
            unsigned bit = 1u << i;
            if (!(m & bit)) continue;
            if (!X[i].is_zero()) {
                Poly c = X[i] * f;
                r.add_mask(m & ~bit, (pos & 1) ? -std::move(c) : std::move(c));
            }
            ++pos;
        }
    }
    return r;
}

// Contraction with the bivector dual to `w` under the area-element
// correspondence: W = Σᵢ wᵢ ∂ⱼ ∧ ∂ₖ over cyclic (i,j,k), contracted as
// (X ∧ Y) ⌟ ω = ι_Y ι_X ω. The half convention carries an extra 1/2.
inline KForm interior_product_bivector(const VecField& w, const KForm& omega,
                                       Convention conv = Convention::unit) {
    if (omega.degree() < 2)
        return KForm(0).flagged_degenerate();
    KForm r(omega.degree() - 2);
    for (int i = 0; i < 3; ++i) {
        if (w[i].is_zero()) continue;
        VecField ej(Alphabet::position), ek(Alphabet::position);
        ej[(i + 1) % 3] = Poly::constant(1);
        ek[(i + 2) % 3] = Poly::constant(1);
        r += w[i] * interior_product(ek, interior_product(ej, omega));
    }
    if (conv == Convention::half) r *= Rational(1, 2);
    return r;
}

// Cartan's formula; the identically-zero term is dropped at the extreme
// degrees where its clamped placeholder would carry the wrong degree.
inline KForm lie_derivative(const VecField& X, const KForm& w) {
    switch (w.degree()) {
        case 0:
            return interior_product(X, exterior_derivative(w));
        case 3:
            return exterior_derivative(interior_product(X, w));
        default:
            return interior_product(X, exterior_derivative(w)) +
                   exterior_derivative(interior_product(X, w));
    }
}

// Index lowering: w ↦ Σ wᵢ dxᵢ.
inline KForm one_form(const VecField& w) {
    KForm r(1);
    for (int i = 0; i < 3; ++i) r.add({i}, w[i]);
    return r;
}

inline VecField vec_of_one_form(const KForm& w) {
    if (w.degree() != 1)
        throw std::invalid_argument("vec_of_one_form: degree must be 1");
    return {w.component({0}), w.component({1}), w.component({2})};
}

// Plücker area elements: dS₀ = dx₁∧dx₂, dS₁ = dx₂∧dx₀, dS₂ = dx₀∧dx₁.
inline KForm area_element(int i) {
    KForm r(2);
    r.add({(i + 1) % 3, (i + 2) % 3}, Poly::constant(1));
    return r;
}

// w ↦ Σ wᵢ dSᵢ, identical to contracting w into the volume form.
inline KForm area_form(const VecField& w) {
    KForm r(2);
    for (int i = 0; i < 3; ++i) r.add({(i + 1) % 3, (i + 2) % 3}, w[i]);
    return r;
}

inline VecField vec_of_area_form(const KForm& w) {
    if (w.degree() != 2)
        throw std::invalid_argument("vec_of_area_form: degree must be 2");
    return {w.component({1, 2}), w.component({2, 0}), w.component({0, 1})};
}

}  // namespace nambu
