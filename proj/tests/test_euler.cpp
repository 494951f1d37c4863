#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <seqaccel/euler_maclaurin.hpp>
#include <seqaccel/fixtures.hpp>

using namespace seqaccel;

TEST_CASE("even-index bernoulli numbers are exact rationals") {
    CHECK(bernoulli_number(0) == 1.0);
    CHECK(bernoulli_number(2) == 1.0 / 6.0);
    CHECK(bernoulli_number(12) == -691.0 / 2730.0);
    CHECK(bernoulli_number(30) == 8615841276005.0 / 14322.0);
    CHECK_THROWS_AS(bernoulli_number(3), OutOfRangeError);
    CHECK_THROWS_AS(bernoulli_number(32), OutOfRangeError);
    CHECK_THROWS_AS(bernoulli_number(-2), OutOfRangeError);
}

TEST_CASE("rising factorial") {
    CHECK(pochhammer(3.0, 4) == 360.0); // 3*4*5*6
    CHECK(pochhammer(7.5, 0) == 1.0);
    CHECK(pochhammer(1.0, 5) == 120.0);
}

TEST_CASE("tail expansion of the printed worked example") {
    auto ex = fixtures::ZetaExample{};
    auto t = zeta_tail(ex.z, ex.n, ex.k);
    CHECK(zeta_partial_sum(ex.z, ex.n) == Catch::Approx(ex.partial_sum).epsilon(1e-14));
    CHECK(t.integral_term == Catch::Approx(ex.integral_term).epsilon(1e-14));
    CHECK(t.half_term == Catch::Approx(ex.half_term).epsilon(1e-14));
    REQUIRE(t.bernoulli_terms.size() == 3);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(t.bernoulli_terms[j] == Catch::Approx(ex.bernoulli_terms[j]).epsilon(1e-14));
    double total = zeta_estimate(ex.z, ex.n, ex.k);
    CHECK(total == Catch::Approx(ex.total).epsilon(5e-15));
}

TEST_CASE("estimates converge to known zeta values") {
    const double z2 = 1.6449340668482264;  // pi^2/6
    CHECK(zeta_estimate(2.0, 20, 5) == Catch::Approx(z2).margin(1e-10));

    const double refs[] = {2.6123753486854883, z2, 1.2020569031595943};
    const double zs[] = {1.5, 2.0, 3.0};
    for (int i = 0; i < 3; ++i) {
        double prev = std::abs(zeta_estimate(zs[i], 10, 3) - refs[i]);
        for (int n : {20, 40}) {
            double err = std::abs(zeta_estimate(zs[i], n, 3) - refs[i]);
            CHECK(err < prev);
            prev = err;
        }
    }
}

TEST_CASE("correction terms decrease while the expansion is usable") {
    for (double z : {1.01, 2.0, 3.0})
        for (int n : {20, 50}) {
            auto t = zeta_tail(z, n, 5);
            for (std::size_t j = 1; j < t.bernoulli_terms.size(); ++j)
                CHECK(std::abs(t.bernoulli_terms[j]) < std::abs(t.bernoulli_terms[j - 1]));
        }
}

TEST_CASE("tail is within its first omitted correction of the true remainder") {
    struct Case { double z, ref; int n, k; };
    const Case cases[] = {
        {2.0, 1.6449340668482264, 8, 2},
        {3.0, 1.2020569031595943, 5, 2},
    };
    for (const auto& c : cases) {
        double remainder = c.ref - zeta_partial_sum(c.z, c.n);
        double tail = zeta_tail(c.z, c.n, c.k).total();
        auto wider = zeta_tail(c.z, c.n, c.k + 1);
        double first_omitted = std::abs(wider.bernoulli_terms.back());
        CHECK(std::abs(tail - remainder) <= 1.5 * first_omitted);
    }
}

TEST_CASE("a barely divergent exponent needs astronomically many terms") {
    // solve (n+2)^(1-z)/(z-1) = 1e-4 for the partial-sum length that brings
    // the plain remainder down to the example's leading correction size
    double z = 1.01;
    double log10_n = std::log10(1.0 / (1e-4 * (z - 1.0))) / (z - 1.0);
    CHECK(log10_n > 590.0);
    CHECK(log10_n < 610.0);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(zeta_tail(1.0, 10, 3), DomainError);
    CHECK_THROWS_AS(zeta_tail(0.5, 10, 3), DomainError);
    CHECK_THROWS_AS(zeta_tail(2.0, -1, 3), DomainError);
    CHECK_THROWS_AS(zeta_tail(2.0, 10, 16), OutOfRangeError);
    CHECK_THROWS_AS(zeta_tail(2.0, 10, -1), OutOfRangeError);
}
