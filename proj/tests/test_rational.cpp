#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <diffmon/rational.hpp>

#include "support/generators.hpp"

using namespace diffmon;

TEST_CASE("gaussian rational basics") {
    GaussianRational a(Rational(1, 2), Rational(3, 4));
    CHECK(a.to_string() == "1/2+3/4*i");
    CHECK((-a).to_string() == "-1/2-3/4*i");
    CHECK(GaussianRational(0).to_string() == "0");
    CHECK(GaussianRational::unit_imaginary().to_string() == "i");
    CHECK((-GaussianRational::unit_imaginary()).to_string() == "-i");
    CHECK(GaussianRational(Rational(0), Rational(-2)).to_string() == "-2*i");

    GaussianRational i = GaussianRational::unit_imaginary();
    CHECK(i * i == GaussianRational(-1));
    CHECK(a * a.inverse() == GaussianRational(1));
    CHECK(a.norm() == Rational(1, 4) + Rational(9, 16));
}

TEST_CASE("gaussian rational powers") {
    GaussianRational i = GaussianRational::unit_imaginary();
    CHECK(i.pow(4) == GaussianRational(1));
    CHECK(i.pow(-1) == -i);
    CHECK(GaussianRational(2).pow(10) == GaussianRational(1024));
    CHECK(GaussianRational(0).pow(3) == GaussianRational(0));
    CHECK_THROWS_AS(GaussianRational(0).pow(0), undefined_operation);
    CHECK_THROWS_AS(GaussianRational(0).pow(-1), division_by_zero);
    CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0),
                    division_by_zero);
}

TEST_CASE("field axioms hold exactly on random values") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        GaussianRational a = testgen::small_gaussian_integer(rng, 9);
        GaussianRational b = testgen::small_gaussian_integer(rng, 9);
        GaussianRational c = testgen::small_gaussian_integer(rng, 9);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a - b) + b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
    }
}

TEST_CASE("height and conversion") {
    GaussianRational g(Rational(-7, 3), Rational(2, 5));
    CHECK(height(g) == 7);
    auto z = g.to_complex();
    CHECK(z.real() == Catch::Approx(-7.0 / 3.0));
    CHECK(z.imag() == Catch::Approx(0.4));
}
