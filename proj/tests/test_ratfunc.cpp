#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <diffmon/campaign.hpp>
#include <diffmon/expr.hpp>
#include <diffmon/rational_function.hpp>

#include "support/generators.hpp"

using namespace diffmon;

namespace {

RatFn rf(const char* text) { return parse_rational_function(text); }

} // namespace

TEST_CASE("normalization") {
    CHECK(RatFn::normalized(rf("z^2-1").num(), rf("z-1").num()) ==
          rf("z+1"));
    CHECK(RatFn::normalized(rf("2*z").num(), rf("2").num()) == rf("z"));
    CHECK(RatFn::normalized(rf("z").num(), rf("z").num()) == rf("1"));
    CHECK_THROWS_AS(RatFn::normalized(rf("z").num(), Poly()),
                    division_by_zero);

    // idempotence: re-normalizing a normalized pair changes nothing
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        RatFn f = random_rational_function(rng, {});
        CHECK(RatFn::normalized(f.num(), f.den()) == f);
        CHECK(gcd(f.num(), f.den()).degree() == 0);
        CHECK(f.den().leading() == GaussianRational(1));
    }
}

TEST_CASE("field arithmetic") {
    RatFn inv_z = rf("1/z");
    CHECK(inv_z * inv_z == rf("1/z^2"));
    CHECK((rf("(z+1)/(z-1)") - rf("(z+1)/(z-1)")).is_zero());
    CHECK(inv_z + inv_z == rf("2/z"));
    CHECK_THROWS_AS(rf("z") / RatFn(), division_by_zero);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        RatFn f = random_rational_function(rng, {});
        RatFn g = random_rational_function(rng, {});
        RatFn sum = f + g;
        CHECK(sum - g == f);
        CHECK(gcd(sum.num(), sum.den()).degree() == 0);
        RatFn prod = f * g;
        CHECK(gcd(prod.num(), prod.den()).degree() == 0);
        if (!g.is_zero()) CHECK((f / g) * g == f);
    }
}

TEST_CASE("powers") {
    CHECK(pow(rf("1/z"), 3) == rf("1/z^3"));
    CHECK(pow(rf("z/(z+1)"), 2) == rf("z^2/(z^2+2*z+1)"));
    CHECK(pow(rf("(z+2)/(z-3)"), 0) == rf("1"));
    CHECK(pow(RatFn(), 2).is_zero());
    CHECK_THROWS_AS(pow(RatFn(), 0), undefined_operation);
    CHECK(pow(rf("z"), -2) == rf("1/z^2"));
}

TEST_CASE("derivatives") {
    CHECK(derivative(rf("1/z")) == rf("-1/z^2"));
    CHECK(derivative(rf("z^4"), 2) == rf("12*z^2"));
    CHECK(derivative(rf("1/z"), 2) == rf("2/z^3"));
    CHECK(derivative(rf("5")).is_zero());

    // quotient rule against direct expansion
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        RatFn f = random_rational_function(rng, {});
        RatFn g = random_rational_function(rng, {});
        if (g.is_zero()) continue;
        RatFn lhs = derivative(f / g);
        RatFn rhs = (derivative(f) * g - f * derivative(g)) / (g * g);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("degree at infinity") {
    CHECK(degree_at_infinity(rf("(z^2+1)/z")) == 1);
    CHECK(degree_at_infinity(rf("1/z")) == -1);
    CHECK(degree_at_infinity(rf("5")) == 0);
    CHECK_THROWS_AS(degree_at_infinity(RatFn()), undefined_operation);
}

TEST_CASE("degree drop under differentiation") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 1000; ++trial) {
        RatFn f = random_pole_bearing_function(rng, {});
        long long k = testgen::pick(rng, 1, 3);
        RatFn d = derivative(f, k);
        REQUIRE(!d.is_zero());
        CHECK(degree_at_infinity(d) <= degree_at_infinity(f) - k);
    }
}

TEST_CASE("monomial construction on fixed cases") {
    MonomialSpec s041 = MonomialSpec::parse("0:4:1");
    CHECK(build_monomial(rf("z"), s041) == rf("4*z^3"));
    MonomialSpec s311 = MonomialSpec::parse("3:1:1");
    CHECK(build_monomial(rf("1/z"), s311) == rf("-1/z^5"));
    MonomialSpec s122 = MonomialSpec::parse("1:2:2");
    CHECK(build_monomial(rf("z"), s122) == rf("2*z"));
    CHECK_THROWS_AS(build_monomial(RatFn(), s041), undefined_operation);
}

TEST_CASE("pure power closed form") {
    // f = z^a: M(f) = C z^(a d - theta) with C the product of falling
    // factorials (a n_i)(a n_i - 1)...(a n_i - t_i + 1).
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        long long a = testgen::pick(rng, 1, 3);
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        bool applicable = true;
        for (std::size_t i = 0; i < spec.powers.size(); ++i)
            if (a * spec.powers[i] < spec.orders[i]) applicable = false;
        if (!applicable) continue;

        RatFn f = pow(rf("z"), a);
        RatFn m = build_monomial(f, spec);
        SpecProfile p = profile(spec);
        GaussianRational c(1);
        for (std::size_t i = 0; i < spec.powers.size(); ++i)
            for (long long j = 0; j < spec.orders[i]; ++j)
                c *= GaussianRational(a * spec.powers[i] - j);
        long long exponent = a * p.lower_degree - p.theta;
        CHECK(m == RatFn(Poly::monomial(c, exponent)));
    }
}

TEST_CASE("monomial evaluation matches factorwise evaluation") {
    std::mt19937_64 rng(43);
    int done = 0;
    while (done < 20) {
        RatFn f = random_rational_function(rng, {});
        MonomialSpec spec =
            random_monomial_spec(rng, {}, AdmissibilityMode::meromorphic);
        GaussianRational at = testgen::small_gaussian_integer(rng, 3);
        RatFn m = build_monomial(f, spec);
        if (m.den().eval(at).is_zero() || f.den().eval(at).is_zero())
            continue;
        bool pole = false;
        GaussianRational product = pow(f, spec.base_power).eval(at);
        for (std::size_t i = 0; i < spec.powers.size(); ++i) {
            RatFn factor = derivative(pow(f, spec.powers[i]), spec.orders[i]);
            if (factor.den().eval(at).is_zero()) {
                pole = true;
                break;
            }
            product *= factor.eval(at);
        }
        if (pole) continue;
        CHECK(m.eval(at) == product);
        ++done;
    }
}

TEST_CASE("printing round-trips") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        RatFn f = random_rational_function(rng, {});
        CHECK(parse_rational_function(f.to_string()) == f);
    }
}
