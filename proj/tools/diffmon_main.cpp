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

// diffmon CLI: exact p-point census, shared-value checks, monomial
// construction, degree bookkeeping, verification campaigns, Marty-grid
// scans and rescaling, all reported as JSON (or --text).
//
// Exit codes: 0 success / campaign pass, 1 campaign violations,
// 2 usage or parse errors.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <diffmon/diffmon.hpp>

namespace {

using namespace diffmon;

constexpr double tau = 6.283185307179586476925286766559;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GaussianRational parse_constant(const std::string& text,
                                const char* what) {
    RatFn value = parse_rational_function(text);
    if (!value.is_constant())
        throw UsageError(std::string(what) + " must be a constant, got '" +
                         text + "'");
    return value.num().coefficient(0);
}

Poly parse_polynomial(const std::string& text, const char* what) {
    RatFn value = parse_rational_function(text);
    if (!value.is_polynomial())
        throw UsageError(std::string(what) + " must be a polynomial, got '" +
                         text + "'");
    return value.num();
}

Complex parse_complex(const std::string& text, const char* what) {
    return parse_constant(text, what).to_complex();
}

double parse_real(const std::string& text, const char* what) {
    try {
        GaussianRational c = parse_constant(text, what);
        if (c.imag() != 0)
            throw UsageError(std::string(what) + " must be real");
        return to_double(c.real());
    } catch (const parse_error&) {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size())
            throw UsageError(std::string(what) + ": cannot parse '" + text +
                             "'");
        return v;
    }
}

void emit(const Json& j, bool text) {
    if (!text) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // flat human rendering
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured())
            std::cout << key << ": " << value.dump() << "\n";
        else if (value.is_string())
            std::cout << key << ": " << value.get<std::string>() << "\n";
        else
            std::cout << key << ": " << value.dump() << "\n";
    }
}

struct PpointsArgs {
    std::string expression;
    std::string spec;
    std::string p;
    std::string target;
    bool verdict = false;
};

int run_ppoints(const PpointsArgs& args, bool text) {
    if (args.p.empty() == args.target.empty())
        throw UsageError("ppoints needs exactly one of --p or --target");
    RatFn f = parse_rational_function(args.expression);
    MonomialSpec spec = MonomialSpec::parse(args.spec);

    Poly target;
    std::optional<GaussianRational> p;
    if (!args.p.empty()) {
        p = parse_constant(args.p, "--p");
        target = Poly(*p);
    } else {
        target = parse_polynomial(args.target, "--target");
    }
    if (args.verdict) {
        if (!p)
            throw UsageError("--verdict needs a constant --p");
        if (p->is_zero())
            throw UsageError("--verdict requires p != 0");
        if (!profile(spec).admissible_meromorphic)
            throw UsageError("--verdict requires a meromorphic-admissible "
                             "spec, got " + spec.to_string());
    }

    ZeroReport report = distinct_ppoints(f, spec, target);
    Json j = to_json(report);
    j["expression"] = f.to_string();
    j["spec"] = spec.to_string();
    j["spec_profile"] = to_json(profile(spec));
    j["factor_profile"] = to_json(factor_profile(f, spec));
    if (args.verdict)
        j["verdict"] = two_ppoint_verdict(f, spec, *p);
    emit(j, text);
    return 0;
}

struct ShareArgs {
    std::string left;
    std::string right;
    std::string spec;
    std::string p;
    std::string target;
};

int run_share(const ShareArgs& args, bool text) {
    if (args.p.empty() == args.target.empty())
        throw UsageError("share needs exactly one of --p or --target");
    RatFn f = parse_rational_function(args.left);
    RatFn g = parse_rational_function(args.right);
    MonomialSpec spec = MonomialSpec::parse(args.spec);
    Poly target = args.p.empty()
                      ? parse_polynomial(args.target, "--target")
                      : Poly(parse_constant(args.p, "--p"));
    ShareVerdict verdict = shares_value(f, g, spec, target);
    Json j = to_json(verdict);
    j["f"] = f.to_string();
    j["g"] = g.to_string();
    j["spec"] = spec.to_string();
    j["target"] = to_expression_string(target);
    emit(j, text);
    return 0;
}

int run_monomial(const std::string& expression, const std::string& spec_text,
                 bool text) {
    RatFn f = parse_rational_function(expression);
    MonomialSpec spec = MonomialSpec::parse(spec_text);
    RatFn m = build_monomial(f, spec);
    Json j{{"expression", f.to_string()},
           {"spec", spec.to_string()},
           {"monomial", m.to_string()},
           {"numerator_degree", m.num().degree()},
           {"denominator_degree", m.den().degree()}};
    if (!m.is_zero()) j["deg_infinity"] = degree_at_infinity(m);
    emit(j, text);
    return 0;
}

int run_deg_inf(const std::string& expression, long long k, bool text) {
    RatFn f = parse_rational_function(expression);
    if (f.is_zero()) throw UsageError("the zero function has no degree");
    Json j{{"expression", f.to_string()},
           {"deg_infinity", degree_at_infinity(f)}};
    if (k > 0) {
        RatFn d = derivative(f, k);
        j["k"] = k;
        if (d.is_zero()) {
            j["deg_infinity_derivative"] = nullptr;
        } else {
            j["deg_infinity_derivative"] = degree_at_infinity(d);
            if (f.den().degree() > 0)
                j["drop_holds"] = derivative_degree_drop_holds(f, k);
            if (degree_at_infinity(f) >= 1 && k <= degree_at_infinity(f))
                j["equality_holds"] =
                    derivative_degree_equality_holds(f, k);
        }
    }
    emit(j, text);
    return 0;
}

struct CampaignArgs {
    std::string name;
    CampaignConfig config;
    int jobs = 1;
    bool negative_controls = false;
};

int run_campaign_cmd(const CampaignArgs& args, bool text) {
    CampaignReport report = run_campaign(args.name, args.config, args.jobs,
                                         args.negative_controls);
    if (text) {
        std::cout << report.campaign_name << ": "
                  << (report.pass ? "pass" : "FAIL") << " ("
                  << report.trials_run << " trials, "
                  << report.violations.size() << " violations, "
                  << report.elapsed_ms << " ms)\n";
        for (const TrialRecord& record : report.violations) {
            std::cout << "  violation at trial " << record.trial << ":";
            for (const auto& [key, value] : record.data)
                std::cout << " " << key << "=" << value;
            std::cout << "\n";
        }
        if (report.negative_controls)
            std::cout << "  below-two controls: " << report.below_two_count
                      << "\n";
    } else {
        emit(to_json(report), false);
    }
    return report.pass ? 0 : 1;
}

struct MartyArgs {
    std::string family;
    std::string m_range;
    double radius = 0.5;
    long long resolution = 101;
    double threshold = 10.0;
    bool heatmap = false;
};

int run_marty(const MartyArgs& args, bool text) {
    std::size_t colon = args.m_range.find(':');
    if (colon == std::string::npos)
        throw UsageError("--m-range must look like A:B");
    long long m_lo = std::stoll(args.m_range.substr(0, colon));
    long long m_hi = std::stoll(args.m_range.substr(colon + 1));
    NumericFunction family = parse_numeric_function(args.family);
    MartyReport report = marty_scan(family, m_lo, m_hi, args.radius,
                                    args.resolution, args.threshold);
    Json j = to_json(report);
    j["family"] = print_expr(family.tree);
    if (args.heatmap) {
        auto rows =
            spherical_heatmap(family, m_hi, args.radius,
                              std::min<long long>(args.resolution, 61));
        j["heatmap"] = rows;
    }
    if (text) {
        std::cout << "family " << print_expr(family.tree) << ", m in ["
                  << m_lo << ", " << m_hi << "], radius " << args.radius
                  << ", resolution " << args.resolution << "\n";
        for (const MartyEntry& e : report.per_parameter)
            std::cout << "  m=" << e.m << " max=" << e.max_spherical
                      << " at (" << e.argmax.real() << ", "
                      << e.argmax.imag() << ")\n";
        std::cout << "growth_ratio " << report.growth_ratio
                  << ", non_normal " << (report.non_normal_flag ? "yes" : "no")
                  << "\n";
        if (args.heatmap)
            for (const auto& row :
                 j["heatmap"].get<std::vector<std::string>>())
                std::cout << row << "\n";
        return 0;
    }
    emit(j, false);
    return 0;
}

struct RescaleArgs {
    std::string family;
    std::string z0 = "0";
    std::string rho = "1";
    std::string alpha = "0";
    long long m = 1;
    long long samples = 8;
};

int run_rescale(const RescaleArgs& args, bool text) {
    NumericFunction family = parse_numeric_function(args.family);
    if (contains_parameter(family.tree)) family.parameter = args.m;
    RescaleSpec spec;
    spec.center = parse_complex(args.z0, "--z0");
    spec.scale = parse_real(args.rho, "--rho");
    spec.exponent = parse_real(args.alpha, "--alpha");
    NumericFunction g = zalcman_rescale(family, spec);

    Json samples = Json::array();
    for (long long j = 0; j < args.samples; ++j) {
        double angle = tau * double(j) / double(args.samples);
        Complex zeta = 0.8 * Complex(std::cos(angle), std::sin(angle));
        auto v = evaluate(g, zeta);
        Json sample{{"zeta", to_json(zeta)}};
        sample["value"] = v ? to_json(*v) : Json(nullptr);
        samples.push_back(sample);
    }
    Json j{{"family", print_expr(family.tree)},
           {"m", family.parameter ? Json(*family.parameter) : Json(nullptr)},
           {"z0", to_json(spec.center)},
           {"rho", spec.scale},
           {"alpha", spec.exponent},
           {"samples", samples}};
    emit(j, text);
    return 0;
}

struct ExpIdentityArgs {
    std::string spec;
    std::string c;
    std::string d = "0";
};

int run_exp_identity(const ExpIdentityArgs& args, bool text) {
    MonomialSpec spec = MonomialSpec::parse(args.spec);
    GaussianRational c = parse_constant(args.c, "--c");
    GaussianRational d = parse_constant(args.d, "--d");
    ExpImage image = exp_image(spec, c);

    Expr tree = make_exp(make_add(
        make_mul(make_constant(c), make_variable()), make_constant(d)));
    NumericFunction g = make_numeric_function(tree);
    double max_rel = 0.0;
    bool evaluable = true;
    for (int point = 0; point < 10; ++point) {
        double angle = tau * double(point) / 10.0;
        Complex zeta = 0.3 * Complex(std::cos(angle), std::sin(angle));
        auto lhs = monomial_value(g, spec, zeta);
        Complex rhs = exp_image_value(image, d, zeta);
        if (!lhs) {
            evaluable = false;
            break;
        }
        max_rel = std::max(max_rel, std::abs(*lhs - rhs) /
                                        std::max(std::abs(rhs), 1e-300));
    }
    Json j = to_json(image);
    j["spec"] = spec.to_string();
    j["c"] = c.to_string();
    j["d"] = d.to_string();
    j["max_relative_error"] = evaluable ? Json(max_rel) : Json(nullptr);
    j["consistent"] = evaluable && max_rel <= 1e-9;
    emit(j, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact differential-monomial toolkit for rational "
                 "functions"};
    app.require_subcommand(1);
    app.fallthrough();
    bool text = false;
    app.add_flag("--text", text, "human-readable output instead of JSON");

    PpointsArgs ppoints;
    auto* cmd_ppoints = app.add_subcommand(
        "ppoints", "count distinct solutions of M(f) = target exactly");
    cmd_ppoints->add_option("expr", ppoints.expression, "f, exact mode")
        ->required();
    cmd_ppoints->add_option("--spec", ppoints.spec, "spec n:n1,..:t1,..")
        ->required();
    cmd_ppoints->add_option("--p", ppoints.p, "constant target value");
    cmd_ppoints->add_option("--target", ppoints.target, "polynomial target");
    cmd_ppoints->add_flag("--verdict", ppoints.verdict,
                          "also check the two-point verdict (needs "
                          "admissible spec and p != 0)");

    ShareArgs share;
    auto* cmd_share = app.add_subcommand(
        "share", "do M(f) and M(g) reach the target on the same set?");
    cmd_share->add_option("expr1", share.left, "f, exact mode")->required();
    cmd_share->add_option("expr2", share.right, "g, exact mode")->required();
    cmd_share->add_option("--spec", share.spec, "spec n:n1,..:t1,..")
        ->required();
    cmd_share->add_option("--p", share.p, "constant target value");
    cmd_share->add_option("--target", share.target, "polynomial target");

    std::string monomial_expr, monomial_spec;
    auto* cmd_monomial = app.add_subcommand(
        "monomial", "build M(f) = f^n (f^n1)^(t1) ... exactly");
    cmd_monomial->add_option("expr", monomial_expr, "f, exact mode")
        ->required();
    cmd_monomial->add_option("--spec", monomial_spec, "spec n:n1,..:t1,..")
        ->required();

    std::string deginf_expr;
    long long deginf_k = 0;
    auto* cmd_deginf = app.add_subcommand(
        "deg-inf", "degree at infinity, optionally of the k-th derivative");
    cmd_deginf->add_option("expr", deginf_expr, "f, exact mode")->required();
    cmd_deginf->add_option("--k", deginf_k, "derivative order");

    CampaignArgs campaign;
    auto* cmd_campaign =
        app.add_subcommand("campaign", "run a seeded verification campaign");
    cmd_campaign
        ->add_option("name", campaign.name,
                     "one of: lemma4, degree-drop, degree-equality, "
                     "exp-identity, share-reflexive")
        ->required();
    cmd_campaign->add_option("--trials", campaign.config.trials, "trial count");
    cmd_campaign->add_option("--seed", campaign.config.seed, "base seed")
        ->envname("MN_SEED");
    cmd_campaign->add_option("--max-poly-degree",
                             campaign.config.max_poly_degree,
                             "degree bound for generated polynomials");
    cmd_campaign->add_option("--max-k", campaign.config.max_k,
                             "bound for the factor count k");
    cmd_campaign->add_option("--max-exponent", campaign.config.max_exponent,
                             "bound for n and the n_i");
    cmd_campaign->add_option("--coeff-height",
                             campaign.config.coefficient_height,
                             "coefficient height bound");
    cmd_campaign->add_option("--jobs", campaign.jobs, "worker threads");
    cmd_campaign->add_flag("--negative-controls", campaign.negative_controls,
                           "lemma4 only: sample inadmissible specs and "
                           "report sub-two counts as data");

    MartyArgs marty;
    auto* cmd_marty = app.add_subcommand(
        "marty", "scan max spherical derivatives of a family over a disk");
    cmd_marty->add_option("family", marty.family,
                          "family expression with a free parameter m")
        ->required();
    cmd_marty->add_option("--m-range", marty.m_range, "A:B inclusive")
        ->required();
    cmd_marty->add_option("--radius", marty.radius, "disk radius");
    cmd_marty->add_option("--resolution", marty.resolution,
                          "grid resolution per axis");
    cmd_marty->add_option("--threshold", marty.threshold,
                          "growth ratio that flags non-normality");
    cmd_marty->add_flag("--heatmap", marty.heatmap,
                        "include a plain-text heatmap of the last member");

    RescaleArgs rescale;
    auto* cmd_rescale = app.add_subcommand(
        "rescale", "apply zeta -> rho^alpha * F(z0 + rho*zeta)");
    cmd_rescale->add_option("family", rescale.family,
                            "expression, numeric mode")
        ->required();
    cmd_rescale->add_option("--z0", rescale.z0, "center (exact constant)");
    cmd_rescale->add_option("--rho", rescale.rho, "scale, > 0");
    cmd_rescale->add_option("--alpha", rescale.alpha, "exponent");
    cmd_rescale->add_option("--m", rescale.m, "parameter value if used");
    cmd_rescale->add_option("--samples", rescale.samples,
                            "number of sample points");

    ExpIdentityArgs expid;
    auto* cmd_expid = app.add_subcommand(
        "exp-identity",
        "closed form of M(exp(c z + d)) and its numeric cross-check");
    cmd_expid->add_option("--spec", expid.spec, "spec n:n1,..:t1,..")
        ->required();
    cmd_expid->add_option("--c", expid.c, "nonzero constant")->required();
    cmd_expid->add_option("--d", expid.d, "constant offset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_ppoints->parsed()) return run_ppoints(ppoints, text);
        if (cmd_share->parsed()) return run_share(share, text);
        if (cmd_monomial->parsed())
            return run_monomial(monomial_expr, monomial_spec, text);
        if (cmd_deginf->parsed())
            return run_deg_inf(deginf_expr, deginf_k, text);
        if (cmd_campaign->parsed()) return run_campaign_cmd(campaign, text);
        if (cmd_marty->parsed()) return run_marty(marty, text);
        if (cmd_rescale->parsed()) return run_rescale(rescale, text);
        if (cmd_expid->parsed()) return run_exp_identity(expid, text);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
