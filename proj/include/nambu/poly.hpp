// Exact sparse multivariate polynomials over the rationals.
//
// Poly is the coefficient type for every symbolic object in the library:
// scalar functions, differential-form components, vector-field components,
// Lagrangians. Two alphabets exist, the position alphabet (x0,x1,x2) and
// the extended alphabet (x0,x1,x2,v0,v1,v2). Arithmetic never rounds;
// equality is structural equality of canonical term maps.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace nambu {

using Rational = boost::multiprecision::cpp_rational;

enum class Var : int { x0 = 0, x1 = 1, x2 = 2, v0 = 3, v1 = 4, v2 = 5 };

enum class Alphabet { position, extended };

inline constexpr std::array<const char*, 6> kVarNames{"x0", "x1", "x2",
                                                      "v0", "v1", "v2"};

inline const char* name_of(Var v) { return kVarNames[static_cast<int>(v)]; }

inline std::optional<Var> var_from_name(std::string_view s) {
    for (int i = 0; i < 6; ++i)
        if (s == kVarNames[i]) return static_cast<Var>(i);
    return std::nullopt;
}

inline int variable_count(Alphabet a) {
    return a == Alphabet::position ? 3 : 6;
}

inline bool in_alphabet(Var v, Alphabet a) {
    return static_cast<int>(v) < variable_count(a);
}

// Exponent vector, one slot per variable of the extended alphabet. Position
// polynomials keep slots 3..5 at zero. std::array's lexicographic ordering
// doubles as the canonical monomial order.
using Exponents = std::array<unsigned, 6>;

inline unsigned monomial_degree(const Exponents& e) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    return d;
}

class Poly {
public:
    using Terms = std::map<Exponents, Rational>;

    explicit Poly(Alphabet a = Alphabet::position) : alphabet_(a) {}

    static Poly constant(Rational c, Alphabet a = Alphabet::position) {
        Poly p(a);
        p.add_term(Exponents{}, std::move(c));
        return p;
    }

    static Poly variable(Var v, Alphabet a = Alphabet::position) {
        if (!in_alphabet(v, a))
            throw std::invalid_argument(std::string("variable ") + name_of(v) +
                                        " is not in the requested alphabet");
        Exponents e{};
        e[static_cast<int>(v)] = 1;
        Poly p(a);
        p.add_term(e, Rational(1));
        return p;
    }

    static Poly monomial(Rational c, const Exponents& e,
                         Alphabet a = Alphabet::position) {
        for (int i = variable_count(a); i < 6; ++i)
            if (e[i] != 0)
                throw std::invalid_argument(
                    "monomial exponent outside alphabet");
        Poly p(a);
        p.add_term(e, std::move(c));
        return p;
    }

    Alphabet alphabet() const { return alphabet_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Exponents{});
    }

    // Value of the constant term (zero if absent).
    Rational constant_value() const {
        auto it = terms_.find(Exponents{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, monomial_degree(e));
        return d;
    }

    bool depends_on(Var v) const {
        for (const auto& [e, c] : terms_)
            if (e[static_cast<int>(v)] != 0) return true;
        return false;
    }

    bool operator==(const Poly& other) const = default;

    Poly operator-() const {
        Poly r(alphabet_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Poly& operator+=(const Poly& rhs) {
        require_same_alphabet(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    Poly& operator-=(const Poly& rhs) {
        require_same_alphabet(rhs);
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }

    Poly& operator*=(const Poly& rhs) {
        require_same_alphabet(rhs);
        Poly r(alphabet_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : rhs.terms_) {
                Exponents e;
                for (int i = 0; i < 6; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        terms_ = std::move(r.terms_);
        return *this;
    }

    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    Poly& operator/=(const Rational& s) {
        if (s == 0) throw std::invalid_argument("division by zero");
        for (auto& [e, c] : terms_) c /= s;
        return *this;
    }

    // Exact partial derivative.
    Poly partial(Var v) const {
        if (!in_alphabet(v, alphabet_))
            throw std::invalid_argument(std::string("partial: variable ") +
                                        name_of(v) + " not in alphabet");
        const int i = static_cast<int>(v);
        Poly r(alphabet_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            r.add_term(d, c * e[i]);
        }
        return r;
    }

    // Direct monomial evaluation, summed in ascending exponent-vector
    // order (the canonical term order). This is the reproducibility
    // contract shared with the float integrator.
    double eval(const std::array<double, 6>& x) const {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double m = c.convert_to<double>();
            for (int i = 0; i < 6; ++i)
                for (unsigned k = 0; k < e[i]; ++k) m *= x[i];
            sum += m;
        }
        return sum;
    }

    double eval(const std::array<double, 3>& x) const {
        return eval(std::array<double, 6>{x[0], x[1], x[2], 0.0, 0.0, 0.0});
    }

private:
    void require_same_alphabet(const Poly& other) const {
        if (alphabet_ != other.alphabet_)
            throw std::invalid_argument("alphabet mismatch");
    }

    void add_term(const Exponents& e, Rational c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Alphabet alphabet_;
    Terms terms_;
};

inline Poly operator+(Poly a, const Poly& b) { return a += b; }
inline Poly operator-(Poly a, const Poly& b) { return a -= b; }
inline Poly operator*(Poly a, const Poly& b) { return a *= b; }
inline Poly operator*(Poly a, const Rational& s) { return a *= s; }
inline Poly operator*(const Rational& s, Poly a) { return a *= s; }
inline Poly operator/(Poly a, const Rational& s) { return a /= s; }

inline Poly pow(const Poly& base, unsigned n) {
    Poly r = Poly::constant(1, base.alphabet());
    for (unsigned i = 0; i < n; ++i) r *= base;
    return r;
}

// Composition: replaces each bound variable by its image. Unbound variables
// must exist in the destination alphabet, which is inferred from the binding
// images (all images must agree); with no bindings the polynomial is
// returned unchanged.
inline Poly substitute(const Poly& p, const std::map<Var, Poly>& bindings) {
    if (bindings.empty()) return p;
    Alphabet dest = bindings.begin()->second.alphabet();
    for (const auto& [v, image] : bindings)
        if (image.alphabet() != dest)
            throw std::invalid_argument(
                "substitute: binding images use mixed alphabets");
    Poly result(dest);
    for (const auto& [e, c] : p.terms()) {
        Poly term = Poly::constant(c, dest);
        for (int i = 0; i < 6; ++i) {
            if (e[i] == 0) continue;
            const Var v = static_cast<Var>(i);
            auto it = bindings.find(v);
            if (it != bindings.end()) {
                term *= pow(it->second, e[i]);
            } else {
                if (!in_alphabet(v, dest))
                    throw std::invalid_argument(
                        std::string("substitute: unbound variable ") +
                        name_of(v) + " not in destination alphabet");
                Exponents m{};
                m[i] = e[i];
                term *= Poly::monomial(1, m, dest);
            }
        }
        result += term;
    }
    return result;
}

// Same polynomial over the extended alphabet.
inline Poly extended(const Poly& p) {
    if (p.alphabet() == Alphabet::extended) return p;
    Poly r(Alphabet::extended);
    for (const auto& [e, c] : p.terms()) r += Poly::monomial(c, e, Alphabet::extended);
    return r;
}

// Narrows an extended polynomial back to the position alphabet; the
// polynomial must be velocity-free.
inline Poly restricted_to_position(const Poly& p) {
    if (p.alphabet() == Alphabet::position) return p;
    Poly r(Alphabet::position);
    for (const auto& [e, c] : p.terms()) {
        if (e[3] || e[4] || e[5])
            throw std::invalid_argument(
                "restricted_to_position: polynomial depends on a velocity");
        r += Poly::monomial(c, e, Alphabet::position);
    }
    return r;
}

inline bool velocity_free(const Poly& p) {
    return !(p.depends_on(Var::v0) || p.depends_on(Var::v1) ||
             p.depends_on(Var::v2));
}

// Finds the rational s with target_i == s * basis_i for every pair, if one
// exists. All-zero basis fits s = 0 only against an all-zero target.
inline std::optional<Rational> fit_scalar_multiple(
    std::span<const Poly> targets, std::span<const Poly> basis) {
    if (targets.size() != basis.size())
        throw std::invalid_argument("fit_scalar_multiple: size mismatch");
    Rational s = 0;
    bool found = false;
    for (size_t i = 0; i < basis.size() && !found; ++i) {
        if (basis[i].is_zero()) continue;
        const auto& [e, c] = *basis[i].terms().rbegin();
        s = targets[i].coefficient(e) / c;
        found = true;
    }
    for (size_t i = 0; i < basis.size(); ++i) {
        Poly residual = targets[i] - basis[i] * s;
        if (!residual.is_zero()) return std::nullopt;
    }
    return s;
}

}  // namespace nambu
