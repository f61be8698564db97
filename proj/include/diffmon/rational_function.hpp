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

#ifndef DIFFMON_RATIONAL_FUNCTION_HPP
#define DIFFMON_RATIONAL_FUNCTION_HPP

#include <string>
#include <utility>

#include "diffmon/errors.hpp"
#include "diffmon/monomial_spec.hpp"
#include "diffmon/polynomial.hpp"

namespace diffmon {

/// Quotient of two coprime polynomials with monic denominator.  The zero
/// function is 0/1.  Every operation returns a normalized value.
template <class K>
class RationalFunction {
  public:
    RationalFunction() : den_(K(1)) {}

    RationalFunction(Polynomial<K> numerator)
        : num_(std::move(numerator)), den_(K(1)) {}

    RationalFunction(K constant)
        : num_(Polynomial<K>(std::move(constant))), den_(K(1)) {}

    /// Wrap a pair that is already coprime with monic denominator.  The
    /// caller is responsible for that contract; use normalized() when in
    /// doubt.
    static RationalFunction from_reduced(Polynomial<K> numerator,
                                         Polynomial<K> denominator) {
        return RationalFunction(raw_tag{}, std::move(numerator),
                                std::move(denominator));
    }

    /// Cancel the common factor and make the denominator monic.
    static RationalFunction normalized(Polynomial<K> numerator,
                                       Polynomial<K> denominator) {
        if (denominator.is_zero())
            throw division_by_zero("rational function with zero denominator");
        if (numerator.is_zero()) return RationalFunction();
        Polynomial<K> g = gcd(numerator, denominator);
        if (g.degree() > 0) {
            numerator = exact_divide(numerator, g);
            denominator = exact_divide(denominator, g);
        }
        K lead_inv = denominator.leading().inverse();
        return RationalFunction(raw_tag{}, lead_inv * numerator,
                                lead_inv * denominator);
    }

    static RationalFunction variable() {
        return RationalFunction(Polynomial<K>::variable());
    }

    const Polynomial<K>& num() const { return num_; }
    const Polynomial<K>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const {
        return is_polynomial() && num_.is_constant();
    }

    friend RationalFunction operator+(const RationalFunction& a,
                                      const RationalFunction& b) {
        return normalized(a.num_ * b.den_ + b.num_ * a.den_,
                          a.den_ * b.den_);
    }

    friend RationalFunction operator-(const RationalFunction& a,
                                      const RationalFunction& b) {
        return normalized(a.num_ * b.den_ - b.num_ * a.den_,
                          a.den_ * b.den_);
    }

    /// Cross-cancelled product: with both operands already reduced, the
    /// two small gcds below leave nothing to cancel in the result.
    friend RationalFunction operator*(const RationalFunction& a,
                                      const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return RationalFunction();
        Polynomial<K> an = a.num_, bd = b.den_;
        Polynomial<K> g1 = gcd(an, bd);
        if (g1.degree() > 0) {
            an = exact_divide(an, g1);
            bd = exact_divide(bd, g1);
        }
        Polynomial<K> bn = b.num_, ad = a.den_;
        Polynomial<K> g2 = gcd(bn, ad);
        if (g2.degree() > 0) {
            bn = exact_divide(bn, g2);
            ad = exact_divide(ad, g2);
        }
        Polynomial<K> den = ad * bd;
        K lead_inv = den.leading().inverse();
        return RationalFunction(raw_tag{}, lead_inv * (an * bn),
                                lead_inv * den);
    }

    friend RationalFunction operator/(const RationalFunction& a,
                                      const RationalFunction& b) {
        if (b.is_zero())
            throw division_by_zero("division by the zero function");
        return a * RationalFunction::normalized(b.den_, b.num_);
    }

    RationalFunction operator-() const {
        return RationalFunction(raw_tag{}, -num_, den_);
    }

    friend bool operator==(const RationalFunction& a,
                           const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a,
                           const RationalFunction& b) {
        return !(a == b);
    }

    K eval(const K& z) const {
        K d = den_.eval(z);
        if (d.is_zero()) throw division_by_zero("evaluation at a pole");
        return num_.eval(z) / d;
    }

    std::string to_string() const;

  private:
    struct raw_tag {};
    RationalFunction(raw_tag, Polynomial<K> n, Polynomial<K> d)
        : num_(std::move(n)), den_(std::move(d)) {}

    Polynomial<K> num_;
    Polynomial<K> den_;

    template <class K2>
    friend RationalFunction<K2> derivative(const RationalFunction<K2>&,
                                           long long);
};

/// Power by repeated squaring; coprimality of the operands makes the
/// result reduced without further cancellation.  0^0 is undefined.
template <class K>
RationalFunction<K> pow(const RationalFunction<K>& f, long long e) {
    if (f.is_zero()) {
        if (e == 0) throw undefined_operation("0^0 is undefined");
        if (e < 0) throw division_by_zero("negative power of zero");
        return RationalFunction<K>();
    }
    if (e < 0) return pow(RationalFunction<K>(K(1)) / f, -e);
    Polynomial<K> num(K(1)), den(K(1));
    Polynomial<K> bn = f.num(), bd = f.den();
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k != 0) {
        if (k & 1ull) {
            num = num * bn;
            den = den * bd;
        }
        k >>= 1;
        if (k != 0) {
            bn = bn * bn;
            bd = bd * bd;
        }
    }
    // den is a product of monic polynomials, and num/den inherits
    // coprimality from f.
    return RationalFunction<K>::from_reduced(std::move(num), std::move(den));
}

namespace detail {

// One derivative step.  Writing D = g*D1 with g = gcd(D, D') and
// E = D'/g, the derivative of N/D is (N'D1 - N*E) / (g*D1^2).  Over a
// field of characteristic 0 that quotient is already reduced: for an
// irreducible q with q^a || D one has q^{a-1} || D', hence v_q(D1) = 1,
// v_q(E) = 0, and the numerator is congruent to -N*E != 0 mod q.  So the
// gcd below is the only one this step needs.
template <class K>
RationalFunction<K> derivative_once(const Polynomial<K>& num,
                                    const Polynomial<K>& den) {
    if (den.degree() == 0)
        return RationalFunction<K>(den.leading().inverse() *
                                   num.derivative());
    Polynomial<K> den_d = den.derivative();
    Polynomial<K> g = gcd(den, den_d);
    Polynomial<K> d1 = exact_divide(den, g);
    Polynomial<K> e = exact_divide(den_d, g);
    Polynomial<K> top = num.derivative() * d1 - num * e;
    return RationalFunction<K>::from_reduced(std::move(top), g * d1 * d1);
}

} // namespace detail

/// Exact k-th derivative, normalizing after every step.
template <class K>
RationalFunction<K> derivative(const RationalFunction<K>& f, long long k = 1) {
    if (k < 0) throw undefined_operation("negative derivative order");
    RationalFunction<K> d = f;
    for (long long step = 0; step < k; ++step)
        d = detail::derivative_once(d.num_, d.den_);
    return d;
}

/// deg(num) - deg(den); undefined for the zero function.
template <class K>
long long degree_at_infinity(const RationalFunction<K>& f) {
    if (f.is_zero())
        throw undefined_operation(
            "degree at infinity of the zero function is undefined");
    return f.num().degree() - f.den().degree();
}

/// The differential monomial M(f) = f^n (f^{n_1})^{(t_1)} ... as an
/// exact rational function.
template <class K>
RationalFunction<K> build_monomial(const RationalFunction<K>& f,
                                   const MonomialSpec& spec) {
    spec.validate();
    if (f.is_zero())
        throw undefined_operation("monomial of the zero function");
    RationalFunction<K> result = pow(f, spec.base_power);
    for (std::size_t i = 0; i < spec.powers.size(); ++i)
        result = result * derivative(pow(f, spec.powers[i]), spec.orders[i]);
    return result;
}

using RatFn = RationalFunction<GaussianRational>;

template <>
inline std::string RationalFunction<GaussianRational>::to_string() const {
    if (is_polynomial()) return to_expression_string(num_);
    return "(" + to_expression_string(num_) + ")/(" +
           to_expression_string(den_) + ")";
}

} // namespace diffmon

#endif // DIFFMON_RATIONAL_FUNCTION_HPP
