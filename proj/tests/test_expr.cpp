#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <diffmon/expr.hpp>
#include <diffmon/numeric.hpp>

#include "support/generators.hpp"

using namespace diffmon;

TEST_CASE("parsing exact expressions") {
    RatFn f = parse_rational_function("(z^2+1)/z");
    CHECK(f.num() == parse_rational_function("z^2+1").num());
    CHECK(f.den() == Poly::variable());

    RatFn c = parse_rational_function("1/2 + 3/4*i");
    CHECK(c.is_constant());
    CHECK(c.num().coefficient(0) ==
          GaussianRational(Rational(1, 2), Rational(3, 4)));

    CHECK(parse_rational_function("z^(-1)") == parse_rational_function("1/z"));
    CHECK(parse_rational_function("z^-1") == parse_rational_function("1/z"));
    CHECK(parse_rational_function("(z+1)*(z-1)") ==
          parse_rational_function("z^2-1"));
    CHECK(parse_rational_function("z/z").is_constant());
}

TEST_CASE("precedence") {
    // ^ binds above unary minus: -z^2 == -(z^2)
    CHECK(parse_rational_function("-z^2") ==
          -parse_rational_function("z^2"));
    CHECK(parse_rational_function("(-z)^2") == parse_rational_function("z^2"));
    // ^ binds above division: 3/2^2 == 3/4
    CHECK(parse_rational_function("3/2^2") == parse_rational_function("3/4"));
    CHECK(parse_rational_function("-2^2") == parse_rational_function("-4"));
    CHECK(parse_rational_function("1/2*z") ==
          parse_rational_function("z/2"));
    CHECK(parse_rational_function("z-1-1") ==
          parse_rational_function("z-2"));
}

TEST_CASE("parse errors carry byte offsets") {
    auto offset_of = [](const char* text, ParseMode mode) -> std::size_t {
        try {
            parse_expression(text, mode);
        } catch (const parse_error& e) {
            return e.offset();
        }
        return SIZE_MAX;
    };
    CHECK(offset_of("z^2^3", ParseMode::exact) == 3);
    CHECK(offset_of("(z+1", ParseMode::exact) == 4);
    CHECK(offset_of("z+", ParseMode::exact) == 2);
    CHECK(offset_of("2z", ParseMode::exact) == 1);
    CHECK(offset_of("z$1", ParseMode::exact) == 1);
    CHECK(offset_of("1.5", ParseMode::exact) == 1);
    CHECK(offset_of("1/0", ParseMode::exact) == 2);
    CHECK(offset_of("w", ParseMode::exact) == 0);
    // mode violations
    CHECK(offset_of("exp(z)", ParseMode::exact) == 0);
    CHECK(offset_of("z+m", ParseMode::exact) == 2);
    CHECK(offset_of("exp(w)", ParseMode::numeric) == 4);
}

TEST_CASE("numeric mode accepts families") {
    Expr family = parse_expression("exp(m*z)", ParseMode::numeric);
    CHECK(contains_parameter(family));
    CHECK(contains_exp(family));
    auto v = detail::eval_tree(family, Complex(0.0, 0.0), 3);
    REQUIRE(v);
    CHECK(v->real() == Catch::Approx(1.0));
    CHECK_THROWS_AS(to_rational_function(family), undefined_operation);
}

TEST_CASE("no parse ever aborts: random garbage either parses or throws") {
    std::mt19937_64 rng(83);
    const char alphabet[] = "zmi()+-*/^0123456789exp .";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        int length = int(rng() % 12);
        for (int j = 0; j < length; ++j)
            text += alphabet[rng() % (sizeof(alphabet) - 1)];
        try {
            parse_expression(text, trial % 2 ? ParseMode::exact
                                             : ParseMode::numeric);
        } catch (const parse_error& e) {
            CHECK(e.offset() <= text.size());
        } catch (const division_by_zero&) {
            // constant folding of a zero divisor
        }
    }
}

TEST_CASE("print/parse round trip on random exact trees") {
    std::mt19937_64 rng(89);
    int done = 0;
    while (done < 500) {
        Expr tree = testgen::random_tree(rng, 3, false);
        RatFn direct;
        try {
            direct = to_rational_function(tree);
        } catch (const division_by_zero&) {
            continue; // tree divides by the zero function; resample
        } catch (const undefined_operation&) {
            continue; // 0^0
        }
        std::string text = print_expr(tree);
        INFO("printed: " << text);
        Expr reparsed = parse_expression(text, ParseMode::exact);
        CHECK(to_rational_function(reparsed) == direct);
        ++done;
    }
}

TEST_CASE("print/parse round trip on random numeric trees") {
    std::mt19937_64 rng(97);
    const Complex points[] = {{0.3, 0.1},  {-0.2, 0.4}, {1.1, -0.7},
                              {0.0, 0.9},  {-1.3, 0.2}, {0.5, 0.5},
                              {2.0, -1.0}, {-0.8, -0.6}, {0.1, 0.0},
                              {0.9, 1.2}};
    int done = 0;
    while (done < 500) {
        Expr tree = testgen::random_tree(rng, 3, true);
        std::string text;
        try {
            text = print_expr(tree);
        } catch (...) {
            continue;
        }
        Expr reparsed;
        try {
            reparsed = parse_expression(text, ParseMode::numeric);
        } catch (const parse_error&) {
            continue; // printed a zero-denominator literal such as "1/0"
        }
        INFO("printed: " << text);
        bool compared = false;
        for (const Complex& z : points) {
            auto a = detail::eval_tree(tree, z, 3);
            auto b = detail::eval_tree(reparsed, z, 3);
            REQUIRE(a.has_value() == b.has_value());
            if (a && b) {
                double scale = std::max(1.0, std::abs(*a));
                CHECK(std::abs(*a - *b) / scale < 1e-12);
                compared = true;
            }
        }
        if (compared) ++done;
    }
}

TEST_CASE("round trip of the named grammar examples") {
    for (const char* text :
         {"(z^2+1)/z", "-z^2", "1/2 + 3/4*i", "z^-1", "(1+i)*z^3 - 2/7"}) {
        Expr tree = parse_expression(text, ParseMode::exact);
        CHECK(to_rational_function(
                  parse_expression(print_expr(tree), ParseMode::exact)) ==
              to_rational_function(tree));
    }
    Expr family = parse_expression("exp(m*z)", ParseMode::numeric);
    Expr reparsed = parse_expression(print_expr(family), ParseMode::numeric);
    auto a = detail::eval_tree(family, Complex(0.2, 0.3), 5);
    auto b = detail::eval_tree(reparsed, Complex(0.2, 0.3), 5);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(std::abs(*a - *b) < 1e-12);
}

TEST_CASE("symbolic differentiation") {
    Expr tree = parse_expression("z^3 + 2*z", ParseMode::numeric);
    auto d = detail::eval_tree(differentiate(tree), Complex(2.0, 0.0),
                               std::nullopt);
    REQUIRE(d);
    CHECK(d->real() == Catch::Approx(14.0)); // 3*4 + 2

    Expr e = parse_expression("exp(2*z)", ParseMode::numeric);
    auto de = detail::eval_tree(differentiate(e), Complex(0.0, 0.0),
                                std::nullopt);
    REQUIRE(de);
    CHECK(de->real() == Catch::Approx(2.0));
}
