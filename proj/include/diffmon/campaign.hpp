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

#ifndef DIFFMON_CAMPAIGN_HPP
#define DIFFMON_CAMPAIGN_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "diffmon/errors.hpp"
#include "diffmon/expr.hpp"
#include "diffmon/monomial_spec.hpp"
#include "diffmon/numeric.hpp"
#include "diffmon/polynomial.hpp"
#include "diffmon/ppoint.hpp"
#include "diffmon/rational_function.hpp"

namespace diffmon {

/// Bounds for the random instance generators.  Heights and degrees are
/// kept small so that exact arithmetic stays fast at campaign scale.
struct CampaignConfig {
    std::uint64_t seed = 0;
    long long trials = 100;
    long long max_poly_degree = 4;
    long long max_k = 3;
    long long max_exponent = 4;
    long long coefficient_height = 5;
};

enum class AdmissibilityMode { meromorphic, holomorphic };

namespace detail {

// Bounded draws implemented directly on the engine output so reports are
// reproducible independent of the standard library's distributions.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % n;
}

inline long long draw_range(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(
                    draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

} // namespace detail

inline std::uint64_t trial_seed(std::uint64_t seed, long long trial) {
    return seed ^ static_cast<std::uint64_t>(trial);
}

/// Gaussian integer with |re|, |im| <= height.
inline GaussianRational random_gaussian_integer(std::mt19937_64& rng,
                                                long long height) {
    return GaussianRational(
        Rational(detail::draw_range(rng, -height, height)),
        Rational(detail::draw_range(rng, -height, height)));
}

/// Gaussian rational of height <= height in each part.
inline GaussianRational random_gaussian_rational(std::mt19937_64& rng,
                                                 long long height) {
    Rational re(detail::draw_range(rng, -height, height),
                detail::draw_range(rng, 1, height));
    Rational im(detail::draw_range(rng, -height, height),
                detail::draw_range(rng, 1, height));
    return GaussianRational(re, im);
}

inline GaussianRational random_nonzero_gaussian_rational(
    std::mt19937_64& rng, long long height) {
    for (;;) {
        GaussianRational g = random_gaussian_rational(rng, height);
        if (!g.is_zero()) return g;
    }
}

/// Random polynomial with the given exact degree and Gaussian-integer
/// coefficients of the given height (the leading one nonzero).
inline Poly random_polynomial(std::mt19937_64& rng, long long degree,
                              long long height) {
    std::vector<GaussianRational> coeffs(degree + 1);
    for (long long i = 0; i < degree; ++i)
        coeffs[i] = random_gaussian_integer(rng, height);
    GaussianRational lead = random_gaussian_integer(rng, height);
    while (lead.is_zero()) lead = random_gaussian_integer(rng, height);
    coeffs[degree] = lead;
    return Poly(std::move(coeffs));
}

/// Random non-constant rational function: numerator degree <=
/// max_poly_degree, polynomial (denominator 1) with probability 1/4,
/// otherwise a denominator of degree 1..max_poly_degree.  Resamples
/// until normalization leaves something non-constant.
inline RatFn random_rational_function(std::mt19937_64& rng,
                                      const CampaignConfig& config) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Poly num = random_polynomial(
            rng, detail::draw_range(rng, 0, config.max_poly_degree),
            config.coefficient_height);
        Poly den(GaussianRational(1));
        if (detail::draw_below(rng, 4) != 0)
            den = random_polynomial(
                rng, detail::draw_range(rng, 1, config.max_poly_degree),
                config.coefficient_height);
        RatFn f = RatFn::normalized(num, den);
        if (!f.is_constant()) return f;
    }
    throw precondition_error(precondition_error::kind::generator_exhausted,
                             "could not generate a non-constant function");
}

/// As above, but with a non-constant denominator after normalization.
inline RatFn random_pole_bearing_function(std::mt19937_64& rng,
                                          const CampaignConfig& config) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RatFn f = random_rational_function(rng, config);
        if (f.den().degree() > 0) return f;
    }
    throw precondition_error(precondition_error::kind::generator_exhausted,
                             "could not generate a pole-bearing function");
}

/// Random spec with t_j <= n_j <= max_exponent and k <= max_k, rejection
/// sampled until the requested admissibility bound holds.
inline MonomialSpec random_monomial_spec(std::mt19937_64& rng,
                                         const CampaignConfig& config,
                                         AdmissibilityMode mode) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MonomialSpec spec;
        long long k = detail::draw_range(rng, 1, config.max_k);
        for (long long i = 0; i < k; ++i) {
            long long n_i = detail::draw_range(rng, 1, config.max_exponent);
            spec.powers.push_back(n_i);
            spec.orders.push_back(detail::draw_range(rng, 1, n_i));
        }
        spec.base_power = detail::draw_range(rng, 0, config.max_exponent);
        SpecProfile p = profile(spec);
        if (mode == AdmissibilityMode::meromorphic
                ? p.admissible_meromorphic
                : p.admissible_holomorphic)
            return spec;
    }
    throw precondition_error(precondition_error::kind::generator_exhausted,
                             "could not generate an admissible spec");
}

/// Spec that satisfies condition (a) but violates the meromorphic
/// degree bound, for negative-control runs.
inline MonomialSpec random_inadmissible_spec(std::mt19937_64& rng,
                                             const CampaignConfig& config) {
    MonomialSpec spec;
    long long k = detail::draw_range(rng, 1, config.max_k);
    for (long long i = 0; i < k; ++i) {
        long long t_i = detail::draw_range(rng, 1, config.max_exponent);
        spec.powers.push_back(t_i); // n_i = t_i keeps condition (a) tight
        spec.orders.push_back(t_i);
    }
    spec.base_power = detail::draw_range(rng, 0, 2);
    return spec;
}

/// One reproduction record: ordered key/value pairs, where the keys
/// include enough inputs ("expression", "spec", "p", ...) to re-run the
/// trial and an "observed" entry with what was seen.
struct TrialRecord {
    long long trial = 0;
    std::vector<std::pair<std::string, std::string>> data;
};

struct CampaignReport {
    std::string campaign_name;
    CampaignConfig config;
    long long trials_run = 0;
    std::vector<TrialRecord> violations;
    double elapsed_ms = 0.0;
    bool pass = true;
    /// lemma4 campaign only: distinct-count histogram over all trials.
    std::map<long long, long long> distinct_count_distribution;
    /// Negative-control mode: sub-two-count records (data, not failures).
    bool negative_controls = false;
    long long below_two_count = 0;
    std::vector<TrialRecord> control_records;
    /// exp-identity campaign only: worst relative error seen.
    double max_relative_error = 0.0;
};

namespace detail {

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct TrialOutcome {
    std::optional<TrialRecord> violation;
    std::optional<TrialRecord> control;
    std::optional<long long> distinct_count;
    double relative_error = 0.0;
};

inline TrialOutcome run_two_point_trial(std::mt19937_64& rng,
                                        const CampaignConfig& config,
                                        long long trial,
                                        bool negative_controls) {
    TrialOutcome outcome;
    RatFn f = random_rational_function(rng, config);
    MonomialSpec spec = negative_controls
                            ? random_inadmissible_spec(rng, config)
                            : random_monomial_spec(
                                  rng, config, AdmissibilityMode::meromorphic);
    GaussianRational p =
        random_nonzero_gaussian_rational(rng, config.coefficient_height);
    ZeroReport report = distinct_ppoints(f, spec, Poly(p));
    outcome.distinct_count = report.distinct_count;
    if (report.distinct_count < 2) {
        TrialRecord record;
        record.trial = trial;
        record.data = {{"expression", f.to_string()},
                       {"spec", spec.to_string()},
                       {"p", p.to_string()},
                       {"observed", std::to_string(report.distinct_count)}};
        if (negative_controls)
            outcome.control = std::move(record);
        else
            outcome.violation = std::move(record);
    }
    return outcome;
}

inline TrialOutcome run_degree_drop_trial(std::mt19937_64& rng,
                                          const CampaignConfig& config,
                                          long long trial) {
    TrialOutcome outcome;
    RatFn f = random_pole_bearing_function(rng, config);
    long long k = draw_range(rng, 1, 3);
    if (!derivative_degree_drop_holds(f, k)) {
        TrialRecord record;
        record.trial = trial;
        record.data = {
            {"expression", f.to_string()},
            {"k", std::to_string(k)},
            {"observed",
             std::to_string(degree_at_infinity(derivative(f, k)))}};
        outcome.violation = std::move(record);
    }
    return outcome;
}

inline TrialOutcome run_degree_equality_trial(std::mt19937_64& rng,
                                              const CampaignConfig& config,
                                              long long trial) {
    TrialOutcome outcome;
    long long m = draw_range(rng, 1, config.max_poly_degree);
    Poly polynomial_part =
        random_polynomial(rng, m, config.coefficient_height);
    Poly bottom = random_polynomial(
        rng, draw_range(rng, 1, config.max_poly_degree),
        config.coefficient_height);
    Poly top;
    if (draw_below(rng, 8) != 0)
        top = random_polynomial(rng,
                                draw_range(rng, 0, bottom.degree() - 1),
                                config.coefficient_height);
    RatFn r = RatFn(polynomial_part) + RatFn::normalized(top, bottom);
    long long k = draw_range(rng, 1, m);
    if (!derivative_degree_equality_holds(r, k)) {
        TrialRecord record;
        record.trial = trial;
        record.data = {
            {"expression", r.to_string()},
            {"k", std::to_string(k)},
            {"observed",
             std::to_string(degree_at_infinity(derivative(r, k)))}};
        outcome.violation = std::move(record);
    }
    return outcome;
}

inline TrialOutcome run_exp_identity_trial(std::mt19937_64& rng,
                                           const CampaignConfig& config,
                                           long long trial) {
    TrialOutcome outcome;
    MonomialSpec spec =
        random_monomial_spec(rng, config, AdmissibilityMode::meromorphic);
    GaussianRational c =
        random_nonzero_gaussian_rational(rng, config.coefficient_height);
    GaussianRational d =
        random_gaussian_rational(rng, config.coefficient_height);
    ExpImage image = exp_image(spec, c);

    // g(z) = exp(c z + d) as a numeric tree with exact constants.
    Expr tree = make_exp(make_add(make_mul(make_constant(c), make_variable()),
                                  make_constant(d)));
    NumericFunction g = make_numeric_function(tree);

    const SpecProfile sp = profile(spec);
    bool rate_ok =
        image.rate == GaussianRational(sp.lower_degree) * c &&
        image.offset_scale == sp.lower_degree;

    double max_rel = 0.0;
    bool evaluable = true;
    for (int point = 0; point < 10; ++point) {
        double re = static_cast<double>(draw_range(rng, -400, 400)) / 1000.0;
        double im = static_cast<double>(draw_range(rng, -400, 400)) / 1000.0;
        Complex zeta(re, im);
        auto lhs = monomial_value(g, spec, zeta);
        Complex rhs = exp_image_value(image, d, zeta);
        if (!lhs) {
            evaluable = false;
            break;
        }
        double rel = std::abs(*lhs - rhs) /
                     std::max(std::abs(rhs), 1e-300);
        if (rel > max_rel) max_rel = rel;
    }
    outcome.relative_error = max_rel;
    if (!rate_ok || !evaluable || max_rel > 1e-9) {
        TrialRecord record;
        record.trial = trial;
        record.data = {{"spec", spec.to_string()},
                       {"c", c.to_string()},
                       {"d", d.to_string()},
                       {"observed", !rate_ok   ? "rate mismatch"
                                    : !evaluable ? "excluded point"
                                                 : format_double(max_rel)}};
        outcome.violation = std::move(record);
    }
    return outcome;
}

inline TrialOutcome run_share_reflexive_trial(std::mt19937_64& rng,
                                              const CampaignConfig& config,
                                              long long trial) {
    TrialOutcome outcome;
    RatFn f = random_rational_function(rng, config);
    MonomialSpec spec =
        random_monomial_spec(rng, config, AdmissibilityMode::meromorphic);
    GaussianRational p =
        random_nonzero_gaussian_rational(rng, config.coefficient_height);
    ShareVerdict verdict = shares_value(f, f, spec, Poly(p));
    if (!verdict.shared) {
        TrialRecord record;
        record.trial = trial;
        record.data = {{"expression", f.to_string()},
                       {"spec", spec.to_string()},
                       {"p", p.to_string()},
                       {"observed", "shared=false"}};
        outcome.violation = std::move(record);
    }
    return outcome;
}

} // namespace detail

inline const std::vector<std::string>& campaign_names() {
    static const std::vector<std::string> names = {
        "lemma4", "degree-drop", "degree-equality", "exp-identity",
        "share-reflexive"};
    return names;
}

/// Run a named campaign: `trials` independent trials with per-trial
/// seeds seed^trial, violations collected as reproduction records.
/// `negative_controls` applies to the lemma4 campaign only and samples
/// specs violating the degree bound instead; sub-two counts are then
/// reported as data rather than failures.
inline CampaignReport run_campaign(const std::string& name,
                                   const CampaignConfig& config,
                                   int jobs = 1,
                                   bool negative_controls = false) {
    if (config.trials < 1 || config.max_poly_degree < 1 ||
        config.max_k < 1 || config.max_exponent < 1 ||
        config.coefficient_height < 1)
        throw undefined_operation("campaign config bounds must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    CampaignReport report;
    report.campaign_name = name;
    report.config = config;
    report.negative_controls = negative_controls && name == "lemma4";

    auto run_trial = [&](long long trial) -> detail::TrialOutcome {
        std::mt19937_64 rng(trial_seed(config.seed, trial));
        if (name == "lemma4")
            return detail::run_two_point_trial(rng, config, trial,
                                               report.negative_controls);
        if (name == "degree-drop")
            return detail::run_degree_drop_trial(rng, config, trial);
        if (name == "degree-equality")
            return detail::run_degree_equality_trial(rng, config, trial);
        if (name == "exp-identity")
            return detail::run_exp_identity_trial(rng, config, trial);
        if (name == "share-reflexive")
            return detail::run_share_reflexive_trial(rng, config, trial);
        throw undefined_operation("unknown campaign '" + name + "'");
    };

    std::vector<detail::TrialOutcome> outcomes(config.trials);
    if (jobs <= 1) {
        for (long long t = 0; t < config.trials; ++t)
            outcomes[t] = run_trial(t);
    } else {
        std::vector<std::thread> workers;
        std::atomic<long long> next{0};
        for (int j = 0; j < jobs; ++j)
            workers.emplace_back([&] {
                for (;;) {
                    long long t = next.fetch_add(1);
                    if (t >= config.trials) return;
                    outcomes[t] = run_trial(t);
                }
            });
        for (auto& w : workers) w.join();
    }

    for (long long t = 0; t < config.trials; ++t) {
        detail::TrialOutcome& outcome = outcomes[t];
        ++report.trials_run;
        if (outcome.distinct_count)
            ++report.distinct_count_distribution[*outcome.distinct_count];
        if (outcome.relative_error > report.max_relative_error)
            report.max_relative_error = outcome.relative_error;
        if (outcome.violation)
            report.violations.push_back(std::move(*outcome.violation));
        if (outcome.control) {
            ++report.below_two_count;
            report.control_records.push_back(std::move(*outcome.control));
        }
    }
    report.pass = report.violations.empty();
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

/// Re-run the computation a reproduction record describes and return the
/// observation string it should contain.  Records are self-contained:
/// feeding one back must reproduce the same "observed" value.
inline std::string rerun_observation(
    const std::string& campaign,
    const std::vector<std::pair<std::string, std::string>>& data) {
    auto field = [&](const std::string& key) -> const std::string& {
        for (const auto& [k, v] : data)
            if (k == key) return v;
        throw undefined_operation("record is missing field '" + key + "'");
    };
    if (campaign == "lemma4") {
        RatFn f = parse_rational_function(field("expression"));
        MonomialSpec spec = MonomialSpec::parse(field("spec"));
        RatFn p = parse_rational_function(field("p"));
        return std::to_string(
            distinct_ppoints(f, spec, p.num()).distinct_count);
    }
    if (campaign == "degree-drop" || campaign == "degree-equality") {
        RatFn f = parse_rational_function(field("expression"));
        long long k = std::stoll(field("k"));
        return std::to_string(degree_at_infinity(derivative(f, k)));
    }
    if (campaign == "share-reflexive") {
        RatFn f = parse_rational_function(field("expression"));
        MonomialSpec spec = MonomialSpec::parse(field("spec"));
        RatFn p = parse_rational_function(field("p"));
        ShareVerdict verdict = shares_value(f, f, spec, p.num());
        return verdict.shared ? "shared=true" : "shared=false";
    }
    throw undefined_operation("no re-run rule for campaign '" + campaign +
                              "'");
}

} // namespace diffmon

#endif // DIFFMON_CAMPAIGN_HPP
