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

#ifndef DIFFMON_NUMERIC_HPP
#define DIFFMON_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "diffmon/errors.hpp"
#include "diffmon/expr.hpp"
#include "diffmon/monomial_spec.hpp"

namespace diffmon {

using Complex = std::complex<double>;

/// A floating-point function of one complex variable: an expression tree
/// with an optional bound parameter m, precomposed with an affine map and
/// postscaled, i.e.
///
///     F(z) = post_scale * T(origin + scale * z).
///
/// The affine frame is how rescaling transforms compose without
/// introducing inexact constants into the tree.
struct NumericFunction {
    Expr tree;
    std::optional<long long> parameter;
    Complex origin{0.0, 0.0};
    Complex scale{1.0, 0.0};
    double post_scale = 1.0;
};

inline NumericFunction make_numeric_function(
    Expr tree, std::optional<long long> parameter = std::nullopt) {
    NumericFunction f;
    f.tree = std::move(tree);
    f.parameter = parameter;
    return f;
}

inline NumericFunction parse_numeric_function(
    std::string_view text, std::optional<long long> parameter = std::nullopt) {
    return make_numeric_function(parse_expression(text, ParseMode::numeric),
                                 parameter);
}

namespace detail {

// A grid point is excluded when a division degenerates relative to the
// numerator scale or when a value stops being finite; excluded points
// are markers, not exceptions.
constexpr double pole_guard = 1e-9;

inline std::optional<Complex> finite_or_excluded(Complex v) {
    if (std::isfinite(v.real()) && std::isfinite(v.imag())) return v;
    return std::nullopt;
}

inline std::optional<Complex> eval_tree(const Expr& e, Complex z,
                                        const std::optional<long long>& m) {
    switch (e->kind) {
        case ExprKind::constant:
            return e->value.to_complex();
        case ExprKind::variable:
            return z;
        case ExprKind::parameter:
            if (!m)
                throw precondition_error(
                    precondition_error::kind::missing_parameter_value,
                    "expression uses 'm' but no parameter value is bound");
            return Complex(static_cast<double>(*m), 0.0);
        case ExprKind::add: {
            auto a = eval_tree(e->left, z, m), b = eval_tree(e->right, z, m);
            if (!a || !b) return std::nullopt;
            return finite_or_excluded(*a + *b);
        }
        case ExprKind::sub: {
            auto a = eval_tree(e->left, z, m), b = eval_tree(e->right, z, m);
            if (!a || !b) return std::nullopt;
            return finite_or_excluded(*a - *b);
        }
        case ExprKind::mul: {
            auto a = eval_tree(e->left, z, m), b = eval_tree(e->right, z, m);
            if (!a || !b) return std::nullopt;
            return finite_or_excluded(*a * *b);
        }
        case ExprKind::div: {
            auto a = eval_tree(e->left, z, m), b = eval_tree(e->right, z, m);
            if (!a || !b) return std::nullopt;
            double num_scale = std::max(1.0, std::abs(*a));
            if (std::abs(*b) < pole_guard * num_scale) return std::nullopt;
            return finite_or_excluded(*a / *b);
        }
        case ExprKind::neg: {
            auto a = eval_tree(e->left, z, m);
            if (!a) return std::nullopt;
            return -*a;
        }
        case ExprKind::power: {
            auto a = eval_tree(e->left, z, m);
            if (!a) return std::nullopt;
            Complex acc(1.0, 0.0);
            for (long long i = 0; i < e->exponent; ++i) acc *= *a;
            return finite_or_excluded(acc);
        }
        case ExprKind::exp_fn: {
            auto a = eval_tree(e->left, z, m);
            if (!a) return std::nullopt;
            return finite_or_excluded(std::exp(*a));
        }
    }
    throw error("unreachable expression kind");
}

// Structural reciprocal: flips a top-level quotient (also under neg and
// power) so that the continuous extension of the spherical derivative
// across a pole can be evaluated; everything else becomes 1/T.
inline Expr structural_reciprocal(const Expr& e) {
    switch (e->kind) {
        case ExprKind::div:
            return detail::node(ExprKind::div, e->right, e->left);
        case ExprKind::neg:
            return detail::node(ExprKind::neg, structural_reciprocal(e->left));
        case ExprKind::power:
            return detail::power_node(structural_reciprocal(e->left),
                                      e->exponent);
        default:
            return detail::node(ExprKind::div,
                                detail::constant_node(GaussianRational(1)),
                                e);
    }
}

inline double spherical_from(Complex value, Complex derivative) {
    return std::abs(derivative) / (1.0 + std::norm(value));
}

} // namespace detail

inline std::optional<Complex> evaluate(const NumericFunction& f, Complex z) {
    auto v = detail::eval_tree(f.tree, f.origin + f.scale * z, f.parameter);
    if (!v) return std::nullopt;
    return detail::finite_or_excluded(f.post_scale * *v);
}

inline std::optional<Complex> evaluate_derivative(const NumericFunction& f,
                                                  Complex z) {
    auto v = detail::eval_tree(differentiate(f.tree), f.origin + f.scale * z,
                               f.parameter);
    if (!v) return std::nullopt;
    return detail::finite_or_excluded(f.post_scale * f.scale * *v);
}

/// |F'(z)| / (1 + |F(z)|^2), with F' obtained by symbolic
/// differentiation of the tree.  At a detected pole of F the reciprocal
/// is tried (the spherical derivative of 1/F equals that of F); if that
/// is degenerate too the point is excluded (nullopt).
inline std::optional<double> spherical_derivative(const NumericFunction& f,
                                                  Complex z) {
    const Complex w = f.origin + f.scale * z;
    const Expr d = differentiate(f.tree);
    auto v = detail::eval_tree(f.tree, w, f.parameter);
    auto dv = detail::eval_tree(d, w, f.parameter);
    if (v && dv)
        return detail::spherical_from(f.post_scale * *v,
                                      f.post_scale * f.scale * *dv);

    const Expr inverse = detail::structural_reciprocal(f.tree);
    const Expr inverse_d = differentiate(inverse);
    auto iv = detail::eval_tree(inverse, w, f.parameter);
    auto idv = detail::eval_tree(inverse_d, w, f.parameter);
    if (iv && idv)
        return detail::spherical_from((1.0 / f.post_scale) * *iv,
                                      (1.0 / f.post_scale) * f.scale * *idv);
    return std::nullopt;
}

/// Rescaling data: zeta -> rho^alpha * F(center + rho * zeta).
struct RescaleSpec {
    Complex center{0.0, 0.0};
    double scale = 1.0;     // rho > 0
    double exponent = 0.0;  // alpha
};

inline NumericFunction zalcman_rescale(const NumericFunction& f,
                                       const RescaleSpec& spec) {
    if (!(spec.scale > 0.0))
        throw precondition_error(precondition_error::kind::invalid_rescale,
                                 "rescale requires rho > 0");
    NumericFunction g = f;
    g.origin = f.origin + f.scale * spec.center;
    g.scale = f.scale * spec.scale;
    g.post_scale = f.post_scale * std::pow(spec.scale, spec.exponent);
    return g;
}

/// Pointwise value of F^n (F^{n_1})^{(t_1)} ... (F^{n_k})^{(t_k)} by
/// symbolic differentiation of the powered trees.
inline std::optional<Complex> monomial_value(const NumericFunction& f,
                                             const MonomialSpec& spec,
                                             Complex z) {
    spec.validate();
    const Complex w = f.origin + f.scale * z;
    Complex result(1.0, 0.0);
    if (spec.base_power > 0) {
        auto base = detail::eval_tree(f.tree, w, f.parameter);
        if (!base) return std::nullopt;
        Complex powed(1.0, 0.0);
        for (long long i = 0; i < spec.base_power; ++i) powed *= *base;
        result *= std::pow(Complex(f.post_scale, 0.0),
                           static_cast<double>(spec.base_power)) *
                  powed;
    }
    for (std::size_t i = 0; i < spec.powers.size(); ++i) {
        Expr factor = make_power(f.tree, spec.powers[i]);
        for (long long t = 0; t < spec.orders[i]; ++t)
            factor = differentiate(factor);
        auto v = detail::eval_tree(factor, w, f.parameter);
        if (!v) return std::nullopt;
        Complex frame_scale =
            std::pow(Complex(f.post_scale, 0.0),
                     static_cast<double>(spec.powers[i])) *
            std::pow(f.scale, static_cast<double>(spec.orders[i]));
        result *= frame_scale * *v;
    }
    return detail::finite_or_excluded(result);
}

/// One scanned family member: the maximum observed spherical derivative
/// and where it was attained.
struct MartyEntry {
    long long m = 0;
    double max_spherical = 0.0;
    Complex argmax{0.0, 0.0};
};

/// Grid scan of a parameterized family over |z| <= radius.  growth_ratio
/// compares the last family member against the first; a ratio above the
/// threshold flags the family as non-normal on that disk (by Marty's
/// criterion a normal family has locally uniformly bounded spherical
/// derivatives).
struct MartyReport {
    double grid_radius = 0.0;
    long long grid_resolution = 0;
    double threshold = 10.0;
    std::vector<MartyEntry> per_parameter;
    double growth_ratio = 1.0;
    bool non_normal_flag = false;
};

inline MartyReport marty_scan(const NumericFunction& family, long long m_lo,
                              long long m_hi, double radius,
                              long long resolution, double threshold = 10.0) {
    if (!contains_parameter(family.tree))
        throw precondition_error(precondition_error::kind::no_free_parameter,
                                 "marty scan needs a family with a free "
                                 "parameter 'm'");
    if (resolution < 3 || !(radius > 0.0) || m_lo > m_hi)
        throw precondition_error(precondition_error::kind::invalid_grid,
                                 "marty scan needs resolution >= 3, "
                                 "radius > 0 and a nonempty m range");
    MartyReport report;
    report.grid_radius = radius;
    report.grid_resolution = resolution;
    report.threshold = threshold;

    const Expr dtree = differentiate(family.tree);
    const Expr inverse = detail::structural_reciprocal(family.tree);
    const Expr inverse_d = differentiate(inverse);
    const double step = 2.0 * radius / static_cast<double>(resolution - 1);
    const double r2 = radius * radius * (1.0 + 1e-12);

    for (long long m = m_lo; m <= m_hi; ++m) {
        MartyEntry entry;
        entry.m = m;
        std::optional<long long> bound = m;
        for (long long iy = 0; iy < resolution; ++iy) {
            const double y = -radius + step * static_cast<double>(iy);
            for (long long ix = 0; ix < resolution; ++ix) {
                const double x = -radius + step * static_cast<double>(ix);
                if (x * x + y * y > r2) continue;
                const Complex w =
                    family.origin + family.scale * Complex(x, y);
                std::optional<double> s;
                auto v = detail::eval_tree(family.tree, w, bound);
                auto dv = detail::eval_tree(dtree, w, bound);
                if (v && dv) {
                    s = detail::spherical_from(
                        family.post_scale * *v,
                        family.post_scale * family.scale * *dv);
                } else {
                    auto iv = detail::eval_tree(inverse, w, bound);
                    auto idv = detail::eval_tree(inverse_d, w, bound);
                    if (iv && idv)
                        s = detail::spherical_from(
                            (1.0 / family.post_scale) * *iv,
                            (1.0 / family.post_scale) * family.scale * *idv);
                }
                if (s && *s > entry.max_spherical) {
                    entry.max_spherical = *s;
                    entry.argmax = Complex(x, y);
                }
            }
        }
        report.per_parameter.push_back(entry);
    }

    const double first = report.per_parameter.front().max_spherical;
    const double last = report.per_parameter.back().max_spherical;
    if (first > 0.0)
        report.growth_ratio = last / first;
    else
        report.growth_ratio =
            last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    report.non_normal_flag = report.growth_ratio > threshold;
    return report;
}

/// Plain-text heatmap of the spherical derivative of one family member:
/// one character per grid point, magnitude deciles over the included
/// points, ' ' for excluded points.
inline std::vector<std::string> spherical_heatmap(const NumericFunction& family,
                                                  long long m, double radius,
                                                  long long resolution) {
    if (resolution < 3 || !(radius > 0.0))
        throw precondition_error(precondition_error::kind::invalid_grid,
                                 "heatmap needs resolution >= 3 and "
                                 "radius > 0");
    static const char levels[] = ".,:-=+*#%@";
    NumericFunction member = family;
    if (contains_parameter(family.tree)) member.parameter = m;
    const double step = 2.0 * radius / static_cast<double>(resolution - 1);
    const double r2 = radius * radius * (1.0 + 1e-12);

    std::vector<std::vector<std::optional<double>>> grid(
        resolution, std::vector<std::optional<double>>(resolution));
    std::vector<double> values;
    for (long long iy = 0; iy < resolution; ++iy) {
        const double y = -radius + step * static_cast<double>(iy);
        for (long long ix = 0; ix < resolution; ++ix) {
            const double x = -radius + step * static_cast<double>(ix);
            if (x * x + y * y > r2) continue;
            auto s = spherical_derivative(member, Complex(x, y));
            grid[iy][ix] = s;
            if (s) values.push_back(*s);
        }
    }
    std::sort(values.begin(), values.end());
    auto decile = [&](double v) -> char {
        if (values.empty()) return levels[0];
        std::size_t rank =
            std::lower_bound(values.begin(), values.end(), v) -
            values.begin();
        std::size_t bucket = rank * 10 / values.size();
        return levels[bucket > 9 ? 9 : bucket];
    };
    std::vector<std::string> rows;
    for (long long iy = 0; iy < resolution; ++iy) {
        std::string row(resolution, ' ');
        for (long long ix = 0; ix < resolution; ++ix)
            if (grid[iy][ix]) row[ix] = decile(*grid[iy][ix]);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace diffmon

#endif // DIFFMON_NUMERIC_HPP
