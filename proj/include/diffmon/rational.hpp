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

#ifndef DIFFMON_RATIONAL_HPP
#define DIFFMON_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "diffmon/errors.hpp"

namespace diffmon {

/// Arbitrary-precision rational, kept canonical (gcd(num, den) = 1,
/// den >= 1) by the backend.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline double to_double(const Rational& q) {
    return q.template convert_to<double>();
}

/// "n" when the denominator is 1, otherwise "n/d".
inline std::string to_string(const Rational& q) { return q.str(); }

/// max(|numerator|, denominator) — the usual naive height.
inline BigInt height(const Rational& q) {
    BigInt n = boost::multiprecision::abs(numerator(q));
    BigInt d = denominator(q);
    return n > d ? n : d;
}

/// Complex number with exact rational real and imaginary parts.  This is
/// the coefficient field of the whole toolkit; all algebra over it is
/// exact and equality is decidable.
class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(long long v) : re_(v) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im)
        : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational unit_imaginary() {
        return GaussianRational(Rational(0), Rational(1));
    }

    const Rational& real() const noexcept { return re_; }
    const Rational& imag() const noexcept { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conjugate() const {
        return GaussianRational(re_, -im_);
    }

    /// |z|^2 as an exact rational.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    friend GaussianRational operator+(const GaussianRational& a,
                                      const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a,
                                      const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianRational operator*(const GaussianRational& a,
                                      const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a,
                                      const GaussianRational& b) {
        if (b.is_zero()) throw division_by_zero();
        Rational n = b.norm();
        GaussianRational t = a * b.conjugate();
        return GaussianRational(t.re_ / n, t.im_ / n);
    }

    GaussianRational operator-() const {
        return GaussianRational(-re_, -im_);
    }

    GaussianRational& operator+=(const GaussianRational& o) {
        return *this = *this + o;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        return *this = *this - o;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        return *this = *this * o;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        return *this = *this / o;
    }

    friend bool operator==(const GaussianRational& a,
                           const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a,
                           const GaussianRational& b) {
        return !(a == b);
    }

    GaussianRational inverse() const {
        return GaussianRational(1) / *this;
    }

    /// Integer power; 0^0 and 0^negative are undefined.
    GaussianRational pow(long long e) const {
        if (is_zero()) {
            if (e > 0) return GaussianRational(0);
            if (e == 0) throw undefined_operation("0^0 is undefined");
            throw division_by_zero("negative power of zero");
        }
        if (e < 0) return inverse().pow(-e);
        GaussianRational result(1);
        GaussianRational base = *this;
        unsigned long long k = static_cast<unsigned long long>(e);
        while (k != 0) {
            if (k & 1ull) result *= base;
            base *= base;
            k >>= 1;
        }
        return result;
    }

    std::complex<double> to_complex() const {
        return {to_double(re_), to_double(im_)};
    }

    /// Text form in the expression grammar, e.g. "1/2+3/4*i", "-i", "5".
    std::string to_string() const {
        if (is_zero()) return "0";
        if (im_ == 0) return diffmon::to_string(re_);
        std::string imag_part;
        Rational ai = boost::multiprecision::abs(im_);
        if (ai == 1)
            imag_part = "i";
        else
            imag_part = diffmon::to_string(ai) + "*i";
        if (re_ == 0) return (im_ < 0 ? "-" : "") + imag_part;
        return diffmon::to_string(re_) + (im_ < 0 ? "-" : "+") + imag_part;
    }

    friend std::ostream& operator<<(std::ostream& os,
                                    const GaussianRational& g) {
        return os << g.to_string();
    }

  private:
    Rational re_{0};
    Rational im_{0};
};

inline BigInt height(const GaussianRational& g) {
    BigInt hr = height(g.real());
    BigInt hi = height(g.imag());
    return hr > hi ? hr : hi;
}

} // namespace diffmon

#endif // DIFFMON_RATIONAL_HPP
