/*
   Copyright 2026 The diffmon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIFFMON_POLYNOMIAL_HPP
#define DIFFMON_POLYNOMIAL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "diffmon/errors.hpp"
#include "diffmon/rational.hpp"

namespace diffmon {

/// Dense univariate polynomial over an exact field K.  Coefficient i is
/// the coefficient of z^i; the zero polynomial is the empty list and the
/// leading (last) coefficient of a nonzero polynomial is never zero.
template <class K>
class Polynomial {
  public:
    Polynomial() = default;

    Polynomial(K constant) {
        if (!constant.is_zero()) coef_.push_back(std::move(constant));
    }

    explicit Polynomial(std::vector<K> coefficients)
        : coef_(std::move(coefficients)) {
        trim();
    }

    /// The monomial c * z^power.
    static Polynomial monomial(K c, std::size_t power) {
        if (c.is_zero()) return Polynomial();
        std::vector<K> v(power + 1);
        v[power] = std::move(c);
        return Polynomial(std::move(v));
    }

    static Polynomial variable() { return monomial(K(1), 1); }

    bool is_zero() const { return coef_.empty(); }
    bool is_constant() const { return coef_.size() <= 1; }

    /// -1 for the zero polynomial.
    long long degree() const {
        return static_cast<long long>(coef_.size()) - 1;
    }

    const K& leading() const { return coef_.back(); }

    K coefficient(std::size_t i) const {
        return i < coef_.size() ? coef_[i] : K(0);
    }
    const std::vector<K>& coefficients() const { return coef_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<K> v(std::max(a.coef_.size(), b.coef_.size()), K(0));
        for (std::size_t i = 0; i < a.coef_.size(); ++i) v[i] += a.coef_[i];
        for (std::size_t i = 0; i < b.coef_.size(); ++i) v[i] += b.coef_[i];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<K> v(std::max(a.coef_.size(), b.coef_.size()), K(0));
        for (std::size_t i = 0; i < a.coef_.size(); ++i) v[i] += a.coef_[i];
        for (std::size_t i = 0; i < b.coef_.size(); ++i) v[i] -= b.coef_[i];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<K> v(a.coef_.size() + b.coef_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.coef_.size(); ++i)
            for (std::size_t j = 0; j < b.coef_.size(); ++j)
                v[i + j] += a.coef_[i] * b.coef_[j];
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const K& s, const Polynomial& a) {
        if (s.is_zero()) return Polynomial();
        std::vector<K> v = a.coef_;
        for (K& c : v) c *= s;
        return Polynomial(std::move(v));
    }

    Polynomial operator-() const { return K(-1) * *this; }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coef_ == b.coef_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) {
        return !(a == b);
    }

    /// Exact evaluation in Horner order.
    K eval(const K& z) const {
        K acc(0);
        for (std::size_t i = coef_.size(); i-- > 0;) acc = acc * z + coef_[i];
        return acc;
    }

    /// Exact k-th formal derivative, k >= 0.
    Polynomial derivative(long long k = 1) const {
        Polynomial d = *this;
        for (long long step = 0; step < k; ++step) {
            if (d.coef_.size() <= 1) return Polynomial();
            std::vector<K> v(d.coef_.size() - 1);
            for (std::size_t i = 1; i < d.coef_.size(); ++i)
                v[i - 1] = K(static_cast<long long>(i)) * d.coef_[i];
            d = Polynomial(std::move(v));
        }
        return d;
    }

    Polynomial monic() const {
        if (is_zero() || leading().is_one()) return *this;
        return leading().inverse() * *this;
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor).
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                    const Polynomial& b) {
        if (b.is_zero()) throw division_by_zero("polynomial division by zero");
        if (a.degree() < b.degree()) return {Polynomial(), a};
        std::vector<K> rem = a.coef_;
        std::vector<K> quo(a.coef_.size() - b.coef_.size() + 1, K(0));
        const K inv_lead = b.leading().inverse();
        for (std::size_t i = rem.size(); i-- > b.coef_.size() - 1;) {
            if (rem[i].is_zero()) continue;
            K q = rem[i] * inv_lead;
            std::size_t shift = i - (b.coef_.size() - 1);
            quo[shift] = q;
            for (std::size_t j = 0; j < b.coef_.size(); ++j)
                rem[shift + j] -= q * b.coef_[j];
        }
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) {
        return divmod(a, b).second;
    }

    /// Division known to be exact; throws if a remainder appears.
    friend Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero())
            throw undefined_operation("polynomial division is not exact");
        return q;
    }

  private:
    void trim() {
        while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
    }

    std::vector<K> coef_;
};

namespace detail {

// Scalar that clears every coefficient denominator; the generic overload
// is the identity, the Gaussian-rational one returns the lcm of all
// denominators so the subresultant remainders stay integral.
template <class K>
K denominator_clearing_factor(const Polynomial<K>&) {
    return K(1);
}

inline GaussianRational denominator_clearing_factor(
    const Polynomial<GaussianRational>& p) {
    BigInt l = 1;
    for (const GaussianRational& c : p.coefficients()) {
        l = boost::multiprecision::lcm(l, denominator(c.real()));
        l = boost::multiprecision::lcm(l, denominator(c.imag()));
    }
    return GaussianRational(Rational(l));
}

// Sound coprimality certificate modulo a fixed word-size prime
// p = 1 (mod 4), with i reduced to a square root of -1.  For inputs
// whose leading coefficients survive the reduction, deg gcd mod p >=
// deg gcd, so a coprime reduction proves coprimality; anything else
// falls through to the exact subresultant sequence.
namespace modp {

inline constexpr std::uint64_t prime = 4611686018427387817ull;
inline constexpr std::uint64_t imag_unit = 4490822397581186023ull;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % prime);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= prime ? s - prime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + prime - b;
}
inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
    std::uint64_t acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}
inline std::uint64_t inverse(std::uint64_t a) {
    return pow_mod(a, prime - 2);
}

inline std::uint64_t reduce(const BigInt& n) {
    BigInt r = n % BigInt(prime);
    if (r < 0) r += BigInt(prime);
    return r.convert_to<std::uint64_t>();
}

// Assumes the coefficient is integral (denominator 1).
inline std::uint64_t reduce(const GaussianRational& c) {
    return add(reduce(numerator(c.real())),
               mul(imag_unit, reduce(numerator(c.imag()))));
}

inline bool reduce_poly(const Polynomial<GaussianRational>& p,
                        std::vector<std::uint64_t>& out) {
    out.clear();
    out.reserve(p.coefficients().size());
    for (const GaussianRational& c : p.coefficients()) out.push_back(reduce(c));
    return !out.empty() && out.back() != 0; // leading must survive
}

inline bool gcd_is_one(std::vector<std::uint64_t> a,
                       std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    while (!b.empty()) {
        const std::uint64_t lead_inv = inverse(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t q = mul(a.back(), lead_inv);
            const std::size_t shift = a.size() - b.size();
            if (q != 0)
                for (std::size_t j = 0; j + 1 < b.size(); ++j)
                    a[shift + j] = sub(a[shift + j], mul(q, b[j]));
            a.pop_back();
        }
        trim(a);
        std::swap(a, b);
    }
    return a.size() == 1;
}

} // namespace modp

template <class K>
bool certified_coprime(const Polynomial<K>&, const Polynomial<K>&) {
    return false;
}

inline bool certified_coprime(const Polynomial<GaussianRational>& a,
                              const Polynomial<GaussianRational>& b) {
    std::vector<std::uint64_t> ra, rb;
    if (!modp::reduce_poly(a, ra) || !modp::reduce_poly(b, rb)) return false;
    return modp::gcd_is_one(std::move(ra), std::move(rb));
}

// Division-free pseudo-remainder: the remainder of lc(b)^(deg a - deg b
// + 1) * a divided by b, computed by cross-multiplication only.
template <class K>
Polynomial<K> pseudo_remainder(const Polynomial<K>& a,
                               const Polynomial<K>& b) {
    Polynomial<K> r = a;
    long long steps = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift =
            static_cast<std::size_t>(r.degree() - b.degree());
        Polynomial<K> scaled =
            Polynomial<K>::monomial(r.leading(), shift) * b;
        r = b.leading() * r - scaled;
        --steps;
    }
    if (steps > 0) r = b.leading().pow(steps) * r;
    return r;
}

} // namespace detail

/// Monic gcd.  The remainder sequence is the subresultant one, run on
/// denominator-cleared coefficients: pseudo-remainders keep every step
/// division-free and the standard g*h^delta divisors hold the
/// coefficient growth linear instead of quadratic.  Exactly one of the
/// inputs may be zero; gcd(0, 0) is undefined.
template <class K>
Polynomial<K> gcd(const Polynomial<K>& a, const Polynomial<K>& b) {
    if (a.is_zero() && b.is_zero())
        throw undefined_operation("gcd(0, 0) is undefined");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();

    Polynomial<K> x = detail::denominator_clearing_factor(a) * a;
    Polynomial<K> y = detail::denominator_clearing_factor(b) * b;
    if (x.degree() < y.degree()) std::swap(x, y);
    if (y.degree() == 0) return Polynomial<K>(K(1));
    if (detail::certified_coprime(x, y)) return Polynomial<K>(K(1));

    K g(1), h(1);
    for (;;) {
        long long delta = x.degree() - y.degree();
        Polynomial<K> r = detail::pseudo_remainder(x, y);
        if (r.is_zero()) break;
        if (r.degree() == 0) return Polynomial<K>(K(1));
        x = std::move(y);
        y = (g * h.pow(delta)).inverse() * r;
        g = x.leading();
        h = delta == 0 ? h : g.pow(delta) * h.pow(delta - 1).inverse();
    }
    return y.monic();
}

/// Yun's squarefree decomposition (characteristic 0): returns monic,
/// pairwise-coprime squarefree factors with their multiplicities, in
/// increasing multiplicity order.  The product of factor^multiplicity
/// equals the input up to a nonzero constant; a nonzero constant input
/// yields an empty list.
template <class K>
std::vector<std::pair<Polynomial<K>, long long>> squarefree_decompose(
    const Polynomial<K>& a) {
    if (a.is_zero())
        throw undefined_operation(
            "squarefree decomposition of the zero polynomial");
    std::vector<std::pair<Polynomial<K>, long long>> out;
    Polynomial<K> p = a.monic();
    if (p.is_constant()) return out;

    Polynomial<K> g = gcd(p, p.derivative());
    Polynomial<K> b = exact_divide(p, g);
    Polynomial<K> c = exact_divide(p.derivative(), g);
    Polynomial<K> d = c - b.derivative();
    long long multiplicity = 1;
    while (!b.is_constant()) {
        Polynomial<K> factor = gcd(b, d);
        if (factor.degree() > 0) out.emplace_back(factor, multiplicity);
        b = exact_divide(b, factor);
        c = exact_divide(d, factor);
        d = c - b.derivative();
        ++multiplicity;
    }
    return out;
}

/// Product of the distinct monic irreducible factors; its degree equals
/// the number of distinct complex roots.
template <class K>
Polynomial<K> squarefree_part(const Polynomial<K>& a) {
    if (a.is_zero())
        throw undefined_operation("squarefree part of the zero polynomial");
    Polynomial<K> p = a.monic();
    if (p.is_constant()) return Polynomial<K>(K(1));
    return exact_divide(p, gcd(p, p.derivative()));
}

template <class K>
long long distinct_root_count(const Polynomial<K>& a) {
    return std::max<long long>(squarefree_part(a).degree(), 0);
}

using Poly = Polynomial<GaussianRational>;

namespace detail {

inline std::string power_token(std::size_t k) {
    if (k == 0) return "";
    if (k == 1) return "z";
    return "z^" + std::to_string(k);
}

// One term "c*z^k" in the expression grammar; `first` selects between
// leading-term and continuation (" + ..."/" - ...") forms.
inline std::string term_string(const GaussianRational& c, std::size_t k,
                               bool first) {
    const bool pure_real = c.imag() == 0;
    const bool pure_imag = c.real() == 0 && c.imag() != 0;
    std::string joiner = first ? "" : " + ";

    if (k == 0) {
        if (pure_real || pure_imag) {
            if (!first) {
                // fold the sign into the joiner for readability
                GaussianRational abs_c =
                    (pure_real ? GaussianRational(
                                     boost::multiprecision::abs(c.real()))
                               : GaussianRational(
                                     Rational(0),
                                     boost::multiprecision::abs(c.imag())));
                bool negative = pure_real ? c.real() < 0 : c.imag() < 0;
                return (negative ? " - " : " + ") + abs_c.to_string();
            }
            return c.to_string();
        }
        return joiner + "(" + c.to_string() + ")";
    }

    if (c.is_one()) return joiner + power_token(k);
    if ((-c).is_one())
        return first ? "-" + power_token(k) : " - " + power_token(k);
    if (pure_real) {
        Rational ar = boost::multiprecision::abs(c.real());
        std::string mag = to_string(ar) + "*" + power_token(k);
        if (first) return (c.real() < 0 ? "-" : "") + mag;
        return (c.real() < 0 ? " - " : " + ") + mag;
    }
    return joiner + "(" + c.to_string() + ")*" + power_token(k);
}

} // namespace detail

/// Text form in the expression grammar, highest degree first,
/// e.g. "4*z^3 - 1" or "(1/2+3/4*i)*z^2 + z".
inline std::string to_expression_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = p.coefficients().size(); i-- > 0;) {
        const GaussianRational& c = p.coefficients()[i];
        if (c.is_zero()) continue;
        out += detail::term_string(c, i, first);
        first = false;
    }
    return out;
}

} // namespace diffmon

#endif // DIFFMON_POLYNOMIAL_HPP
