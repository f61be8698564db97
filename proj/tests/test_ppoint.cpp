#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <diffmon/campaign.hpp>
#include <diffmon/expr.hpp>
#include <diffmon/ppoint.hpp>

#include "support/generators.hpp"
#include "support/root_oracle.hpp"

using namespace diffmon;

namespace {

RatFn rf(const char* text) { return parse_rational_function(text); }
const Poly one = Poly(GaussianRational(1));

} // namespace

TEST_CASE("distinct p-points on fixed cases") {
    // M = 4z^3, N_t = 4z^3 - 1: the three cube roots of 1/4
    ZeroReport a = distinct_ppoints(rf("z"), MonomialSpec::parse("0:4:1"), one);
    CHECK(a.distinct_count == 3);
    CHECK(a.numerator_degree == 3);
    REQUIRE(a.multiplicity_profile.size() == 1);
    CHECK(a.multiplicity_profile[0] == std::make_pair(1ll, 3ll));

    // M = -1/z^5, N_t = -1 - z^5: five distinct fifth roots of -1
    ZeroReport b =
        distinct_ppoints(rf("1/z"), MonomialSpec::parse("3:1:1"), one);
    CHECK(b.distinct_count == 5);

    // inadmissible diagnostic: M = 2z has a single 1-point
    ZeroReport c =
        distinct_ppoints(rf("z^2"), MonomialSpec::parse("0:1:1"), one);
    CHECK(c.distinct_count == 1);
}

TEST_CASE("distinct p-point errors") {
    CHECK_THROWS_AS(
        distinct_ppoints(rf("5"), MonomialSpec::parse("0:4:1"), one),
        precondition_error);
    // M(z) for spec 0:1:1 is the constant 1; target 1 coincides with it
    CHECK_THROWS_AS(
        distinct_ppoints(rf("z"), MonomialSpec::parse("0:1:1"), one),
        undefined_operation);
}

TEST_CASE("no-zero branch yields an empty census") {
    // M(1/z) for spec 5:1:1 is -1/z^7; with target 0 the numerator N_t
    // is the constant -1, so there are no finite solutions at all.
    ZeroReport r =
        distinct_ppoints(rf("1/z"), MonomialSpec::parse("5:1:1"), Poly());
    CHECK(r.distinct_count == 0);
    CHECK(r.numerator_degree == 0);
    CHECK(r.multiplicity_profile.empty());
}

TEST_CASE("two point verdict on fixed cases") {
    CHECK(two_ppoint_verdict(rf("z"), MonomialSpec::parse("0:4:1"),
                             GaussianRational(1)));
    CHECK(two_ppoint_verdict(rf("1/z"), MonomialSpec::parse("3:1:1"),
                             GaussianRational(1)));
    CHECK(two_ppoint_verdict(rf("(z^2+1)/z"), MonomialSpec::parse("0:4:1"),
                             GaussianRational(1)));
}

TEST_CASE("two point verdict reports precondition failures distinctly") {
    MonomialSpec good = MonomialSpec::parse("0:4:1");
    try {
        two_ppoint_verdict(rf("z"), good, GaussianRational(0));
        FAIL("expected an exception");
    } catch (const precondition_error& e) {
        CHECK(e.which() == precondition_error::kind::zero_shared_value);
    }
    try {
        two_ppoint_verdict(rf("z"), MonomialSpec::parse("0:1:1"),
                           GaussianRational(1));
        FAIL("expected an exception");
    } catch (const precondition_error& e) {
        CHECK(e.which() == precondition_error::kind::inadmissible_spec);
    }
    try {
        two_ppoint_verdict(rf("7"), good, GaussianRational(1));
        FAIL("expected an exception");
    } catch (const precondition_error& e) {
        CHECK(e.which() == precondition_error::kind::constant_function);
    }
}

TEST_CASE("shared values on fixed cases") {
    MonomialSpec spec = MonomialSpec::parse("0:4:1");
    CHECK(shares_value(rf("z"), rf("z"), spec, one).shared);

    ShareVerdict different = shares_value(rf("z"), rf("2*z"), spec, one);
    CHECK_FALSE(different.shared);
    // 4z^3 = 1 vs 64z^3 = 1; monic squarefree parts are z^3 - 1/4 and
    // z^3 - 1/64
    CHECK(different.zero_set_left ==
          parse_rational_function("z^3-1/4").num());
    CHECK(different.zero_set_right ==
          parse_rational_function("z^3-1/64").num());

    ShareVerdict zero_shared =
        shares_value(rf("z"), rf("2*z"), spec, Poly());
    CHECK(zero_shared.shared);
    CHECK(zero_shared.zero_set_left == Poly::variable());
}

TEST_CASE("shares_value is symmetric and reflexive on random instances") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 50; ++trial) {
        RatFn f = random_rational_function(rng, {});
        RatFn g = random_rational_function(rng, {});
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        GaussianRational p = random_nonzero_gaussian_rational(rng, 5);
        CHECK(shares_value(f, f, spec, Poly(p)).shared);
        CHECK(shares_value(f, g, spec, Poly(p)).shared ==
              shares_value(g, f, spec, Poly(p)).shared);
    }
}

TEST_CASE("degree drop checks") {
    CHECK(derivative_degree_drop_holds(rf("1/z"), 1));
    CHECK(derivative_degree_drop_holds(rf("(z^2+1)/z"), 1));
    CHECK(derivative_degree_drop_holds(rf("1/(z^2+1)"), 2));
    CHECK_THROWS_AS(derivative_degree_drop_holds(rf("z^2+1"), 1),
                    precondition_error);
}

TEST_CASE("degree equality checks") {
    CHECK(derivative_degree_equality_holds(rf("(z^3+1)/z"), 1));
    CHECK(derivative_degree_equality_holds(rf("z+1/z"), 1));
    CHECK(derivative_degree_equality_holds(rf("z^3"), 2));
    CHECK_THROWS_AS(derivative_degree_equality_holds(rf("1/z"), 1),
                    precondition_error);
    CHECK_THROWS_AS(derivative_degree_equality_holds(rf("z^2"), 3),
                    precondition_error);
}

TEST_CASE("factor profile on fixed cases") {
    FactorProfile a =
        factor_profile(rf("z^2/(z-1)"), MonomialSpec::parse("1:2:1"));
    CHECK(a.distinct_zeros == 1);
    CHECK(a.distinct_poles == 1);
    CHECK(a.zero_multiplicities == std::vector<long long>{2});
    CHECK(a.pole_multiplicities == std::vector<long long>{1});
    CHECK(a.base_zero_weight == 2);
    CHECK(a.base_pole_weight == 1);
    CHECK(a.factor_zero_weights == std::vector<long long>{4});
    CHECK(a.factor_pole_weights == std::vector<long long>{2});

    FactorProfile b = factor_profile(rf("z"), MonomialSpec::parse("0:4:1"));
    CHECK(b.distinct_zeros == 1);
    CHECK(b.distinct_poles == 0);
    CHECK(b.base_zero_weight == 0);

    FactorProfile c = factor_profile(rf("((z-1)*(z-2))/z^3"),
                                     MonomialSpec::parse("2:1:1"));
    CHECK(c.distinct_zeros == 2);
    CHECK(c.distinct_poles == 1);
    CHECK(c.zero_multiplicities == std::vector<long long>{1, 1});
    CHECK(c.pole_multiplicities == std::vector<long long>{3});
}

TEST_CASE("factor profile weights recompute from multiplicities") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        RatFn f = random_rational_function(rng, {});
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        FactorProfile fp = factor_profile(f, spec);
        long long zero_sum = 0, pole_sum = 0;
        for (long long m : fp.zero_multiplicities) zero_sum += m;
        for (long long m : fp.pole_multiplicities) pole_sum += m;
        CHECK(fp.base_zero_weight == spec.base_power * zero_sum);
        CHECK(fp.base_pole_weight == spec.base_power * pole_sum);
        REQUIRE(fp.factor_zero_weights.size() == spec.powers.size());
        for (std::size_t i = 0; i < spec.powers.size(); ++i) {
            CHECK(fp.factor_zero_weights[i] == spec.powers[i] * zero_sum);
            CHECK(fp.factor_pole_weights[i] == spec.powers[i] * pole_sum);
        }
        CHECK(fp.distinct_zeros ==
              (long long)fp.zero_multiplicities.size());
        CHECK(fp.distinct_poles ==
              (long long)fp.pole_multiplicities.size());
    }
}

TEST_CASE("zero report internal consistency and oracle agreement") {
    std::mt19937_64 rng(73);
    int oracle_checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        RatFn f = random_rational_function(rng, {});
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        GaussianRational p = random_nonzero_gaussian_rational(rng, 5);
        ZeroReport r = distinct_ppoints(f, spec, Poly(p));

        long long count_sum = 0, weighted = 0;
        for (const auto& [mult, count] : r.multiplicity_profile) {
            count_sum += count;
            weighted += mult * count;
        }
        CHECK(count_sum == r.distinct_count);
        CHECK(weighted == r.numerator_degree);
        CHECK(r.distinct_count == distinct_root_count(r.numerator));

        if (r.numerator_degree >= 1 && r.numerator_degree <= 12) {
            CHECK(r.distinct_count == oracle::distinct_roots(r.numerator));
            ++oracle_checked;
        }
    }
    CHECK(oracle_checked > 10);
}

TEST_CASE("polynomial targets are counted like constant ones") {
    // target alpha(z) rather than a constant value
    std::mt19937_64 rng(83);
    int done = 0;
    while (done < 60) {
        RatFn f = random_rational_function(rng, {});
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        Poly target = testgen::random_poly(rng, 2, 3);
        ZeroReport r;
        try {
            r = distinct_ppoints(f, spec, target);
        } catch (const undefined_operation&) {
            continue; // target happened to coincide with M(f)
        }
        long long count_sum = 0, weighted = 0;
        for (const auto& [mult, count] : r.multiplicity_profile) {
            count_sum += count;
            weighted += mult * count;
        }
        CHECK(count_sum == r.distinct_count);
        CHECK(weighted == r.numerator_degree);
        if (r.numerator_degree >= 1 && r.numerator_degree <= 12)
            CHECK(r.distinct_count == oracle::distinct_roots(r.numerator));
        ++done;
    }

    // fixed case: M(z) = 4z^3 against target 4z^3 - z: single root 0
    ZeroReport fixed = distinct_ppoints(
        rf("z"), MonomialSpec::parse("0:4:1"),
        parse_rational_function("4*z^3 - z").num());
    CHECK(fixed.distinct_count == 1);
    CHECK(fixed.numerator_degree == 1);
}

TEST_CASE("two point verdict holds across a random campaign slice") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        RatFn f = random_rational_function(rng, {});
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        GaussianRational p = random_nonzero_gaussian_rational(rng, 5);
        CHECK(two_ppoint_verdict(f, spec, p));
    }
}
