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

#ifndef DIFFMON_PPOINT_HPP
#define DIFFMON_PPOINT_HPP

#include <string>
#include <utility>
#include <vector>

#include "diffmon/errors.hpp"
#include "diffmon/monomial_spec.hpp"
#include "diffmon/polynomial.hpp"
#include "diffmon/rational_function.hpp"

namespace diffmon {

/// Exact census of the finite-plane solutions of M(f) = target.  The
/// solutions are the roots of N_t = num(M) - target * den(M);
/// distinct_count is the degree of its squarefree part and
/// multiplicity_profile lists (multiplicity, number of roots with it).
struct ZeroReport {
    std::string target_description;
    long long distinct_count = 0;
    std::vector<std::pair<long long, long long>> multiplicity_profile;
    long long numerator_degree = 0;
    Poly numerator; // N_t itself, for reproduction and oracle checks
};

/// Bookkeeping of the zero/pole structure of f combined with the
/// exponent data: s distinct zeros with multiplicities m_i, t distinct
/// poles with multiplicities n_j', and the weighted sums n*sum(m),
/// n*sum(n'), n_i*sum(m), n_i*sum(n').
struct FactorProfile {
    long long distinct_zeros = 0;                  // s
    long long distinct_poles = 0;                  // t
    std::vector<long long> zero_multiplicities;    // m_1 .. m_s
    std::vector<long long> pole_multiplicities;    // n_1' .. n_t'
    long long base_zero_weight = 0;                // n * sum m_i
    long long base_pole_weight = 0;                // n * sum n_j'
    std::vector<long long> factor_zero_weights;    // n_i * sum m_j
    std::vector<long long> factor_pole_weights;    // n_i * sum n_j'
};

/// Outcome of the ignoring-multiplicities comparison: the two monic
/// squarefree zero sets and whether they coincide.
struct ShareVerdict {
    bool shared = false;
    Poly zero_set_left;
    Poly zero_set_right;
};

namespace detail {

inline void require_non_constant(const RatFn& f) {
    if (f.is_constant())
        throw precondition_error(precondition_error::kind::constant_function,
                                 "f must be non-constant");
}

} // namespace detail

/// Count the distinct finite solutions of M(f) = target exactly.  The
/// target may be any polynomial (a constant p is the monomial case).
/// Inadmissible specs are accepted here so that negative controls can be
/// run; the two-point verdict below is the strict form.
inline ZeroReport distinct_ppoints(const RatFn& f, const MonomialSpec& spec,
                                   const Poly& target) {
    detail::require_non_constant(f);
    RatFn m = build_monomial(f, spec);
    Poly n_t = m.num() - target * m.den();
    if (n_t.is_zero())
        throw undefined_operation(
            "target coincides with the monomial; every point solves it");

    ZeroReport report;
    report.target_description = to_expression_string(target);
    report.numerator = n_t;
    report.numerator_degree = n_t.degree();
    // gcd(num, den) = 1 makes N_t coprime to den(M), so no root of N_t
    // is spurious; roots of N_t are exactly the finite p-points.
    std::vector<std::pair<long long, long long>> profile;
    for (const auto& [factor, multiplicity] : squarefree_decompose(n_t)) {
        profile.emplace_back(multiplicity, factor.degree());
        report.distinct_count += factor.degree();
    }
    report.multiplicity_profile = std::move(profile);
    return report;
}

/// Strict check that M(f) attains the value p at two or more distinct
/// finite points.  For every non-constant rational f, meromorphic-
/// admissible spec and p != 0 this must return true; a false return is a
/// counterexample worth preserving.
inline bool two_ppoint_verdict(const RatFn& f, const MonomialSpec& spec,
                               const GaussianRational& p) {
    detail::require_non_constant(f);
    if (p.is_zero())
        throw precondition_error(precondition_error::kind::zero_shared_value,
                                 "the shared value p must be nonzero");
    if (!profile(spec).admissible_meromorphic)
        throw precondition_error(
            precondition_error::kind::inadmissible_spec,
            "spec is not meromorphic-admissible: " + spec.to_string());
    return distinct_ppoints(f, spec, Poly(p)).distinct_count >= 2;
}

/// Do M(f) and M(g) reach the target on the same set of points, ignoring
/// multiplicities?  Monic squarefree polynomials over a field have equal
/// root sets exactly when they are equal.
inline ShareVerdict shares_value(const RatFn& f, const RatFn& g,
                                 const MonomialSpec& spec,
                                 const Poly& target) {
    detail::require_non_constant(f);
    detail::require_non_constant(g);
    const ZeroReport left = distinct_ppoints(f, spec, target);
    const ZeroReport right = distinct_ppoints(g, spec, target);
    ShareVerdict verdict;
    verdict.zero_set_left = squarefree_part(left.numerator);
    verdict.zero_set_right = squarefree_part(right.numerator);
    verdict.shared = verdict.zero_set_left == verdict.zero_set_right;
    return verdict;
}

/// Degree-at-infinity drop under differentiation, for R with
/// non-constant denominator: (R^(k))_inf <= (R)_inf - k.
inline bool derivative_degree_drop_holds(const RatFn& r, long long k) {
    if (k < 1) throw undefined_operation("derivative order must be >= 1");
    if (r.den().degree() == 0)
        throw precondition_error(
            precondition_error::kind::constant_denominator,
            "degree drop requires a non-constant denominator");
    RatFn d = derivative(r, k);
    if (d.is_zero())
        throw undefined_operation("R^(k) vanishes identically");
    return degree_at_infinity(d) <= degree_at_infinity(r) - k;
}

/// Exact degree drop for R = (polynomial of degree m >= 1) + proper
/// fraction, k <= m: (R^(k))_inf = (R)_inf - k.  The decomposition is
/// recovered by Euclidean division of num by den.
inline bool derivative_degree_equality_holds(const RatFn& r, long long k) {
    if (k < 1) throw undefined_operation("derivative order must be >= 1");
    if (r.is_zero() || degree_at_infinity(r) < 1)
        throw precondition_error(
            precondition_error::kind::no_polynomial_part,
            "R must have a polynomial part of degree >= 1");
    long long m = degree_at_infinity(r);
    if (k > m)
        throw precondition_error(
            precondition_error::kind::order_exceeds_polynomial_degree,
            "derivative order exceeds the polynomial part degree");
    RatFn d = derivative(r, k);
    return degree_at_infinity(d) == degree_at_infinity(r) - k;
}

/// Zero/pole multiplicity bookkeeping for f and a spec.
inline FactorProfile factor_profile(const RatFn& f, const MonomialSpec& spec) {
    spec.validate();
    detail::require_non_constant(f);
    FactorProfile fp;
    auto collect = [](const Poly& poly, std::vector<long long>& out) {
        long long distinct = 0;
        if (poly.degree() > 0) {
            for (const auto& [factor, multiplicity] :
                 squarefree_decompose(poly)) {
                for (long long i = 0; i < factor.degree(); ++i)
                    out.push_back(multiplicity);
                distinct += factor.degree();
            }
        }
        return distinct;
    };
    fp.distinct_zeros = collect(f.num(), fp.zero_multiplicities);
    fp.distinct_poles = collect(f.den(), fp.pole_multiplicities);

    long long zero_sum = 0, pole_sum = 0;
    for (long long m : fp.zero_multiplicities) zero_sum += m;
    for (long long m : fp.pole_multiplicities) pole_sum += m;
    fp.base_zero_weight = spec.base_power * zero_sum;
    fp.base_pole_weight = spec.base_power * pole_sum;
    for (long long power : spec.powers) {
        fp.factor_zero_weights.push_back(power * zero_sum);
        fp.factor_pole_weights.push_back(power * pole_sum);
    }
    return fp;
}

} // namespace diffmon

#endif // DIFFMON_PPOINT_HPP
