#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <seqaccel/diagnostics.hpp>
#include <seqaccel/log_accel.hpp>

using namespace seqaccel;

namespace {

RealSequence zeta_partials(double z, std::size_t len) {
    std::vector<double> v;
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        acc += std::pow(static_cast<double>(i) + 1.0, -z);
        v.push_back(acc);
    }
    return make_sequence(std::move(v), "zeta_partials");
}

const double pi2_6 = 1.6449340668482264;

} // namespace

TEST_CASE("neville scheme is exact once the column order covers the model") {
    // s_n = limit + c1*x + c2*x^2 + c3*x^3 with x = 1/(n+1.5)
    auto pts = InterpolationPoints::reciprocal(1.5);
    auto s = generate(ModelSequenceSpec::polynomial_in_x(2.5, {1.0, -2.0, 0.5}, pts, 12));
    auto t = richardson_general(s, pts);
    for (const auto& e : t.columns[3].entries) {
        REQUIRE(e.valid);
        CHECK(e.value == Catch::Approx(2.5).margin(1e-11));
    }
    // the last column keeps shrinking: one entry at n=0
    CHECK(t.columns.back().entries.size() == 1);
}

TEST_CASE("recursive-weight form agrees with the neville form") {
    auto s = zeta_partials(2.0, 12);
    auto gen = richardson_general(s, InterpolationPoints::reciprocal(1.0));
    auto std_ = richardson_standard(s, 1.0);
    REQUIRE(gen.columns.size() == std_.columns.size());
    for (std::size_t k = 0; k < gen.columns.size(); ++k) {
        REQUIRE(gen.columns[k].entries.size() == std_.columns[k].entries.size());
        for (std::size_t n = 0; n < gen.columns[k].entries.size(); ++n) {
            const auto& a = gen.columns[k].entries[n];
            const auto& b = std_.columns[k].entries[n];
            REQUIRE(a.valid == b.valid);
            if (a.valid) CHECK(b.value == Catch::Approx(a.value).epsilon(1e-11));
        }
    }
}

TEST_CASE("richardson demands decreasing points") {
    auto s = zeta_partials(2.0, 8);
    CHECK_THROWS_AS(richardson_general(s, InterpolationPoints::linear()), DomainError);
    CHECK_THROWS_AS(
        richardson_general(s, InterpolationPoints::explicit_list({0.5, 0.6, 0.7})),
        DomainError);
    CHECK_THROWS_AS(
        richardson_general(s, InterpolationPoints::explicit_list({0.5, 0.4})),
        DomainError); // runs out of points
    // and the rho family needs the opposite direction
    CHECK_THROWS_AS(rho_general(s, InterpolationPoints::reciprocal(1.0)), DomainError);
}

TEST_CASE("richardson digs eight digits out of twelve cubic partial sums") {
    const double zeta3 = 1.2020569031595943;
    auto t = richardson_general(zeta_partials(3.0, 12), InterpolationPoints::reciprocal(1.0));
    REQUIRE(t.at(8, 0).valid);
    double v = t.at(8, 0).value;
    CHECK(v == Catch::Approx(1.2020569194748629).epsilon(1e-12)); // frozen
    double err = std::abs(v - zeta3);
    CHECK(err < 2e-8);
    CHECK(err > 1e-8);
}

TEST_CASE("rho on eight quadratic partial sums") {
    auto t = rho_standard(zeta_partials(2.0, 9));
    REQUIRE(t.at(8, 0).valid);
    double v = t.at(8, 0).value;
    CHECK(v == Catch::Approx(1.6449340643806292).epsilon(1e-12)); // frozen
    double err = std::abs(v - pi2_6);
    CHECK(err < 3e-9);
    CHECK(err > 1e-9);
}

TEST_CASE("rho is exact on samples of a rational function") {
    // s_n = (2x^2 + 3x + 4) / (x^2 + x + 3), x = n+1: limit 2
    auto s = generate(ModelSequenceSpec::rational_sample(
        {4.0, 3.0, 2.0}, {3.0, 1.0, 1.0}, InterpolationPoints::linear(), 12));
    auto t = rho_standard(s);
    for (const auto& e : t.columns[4].entries) {
        REQUIRE(e.valid);
        CHECK(e.value == Catch::Approx(2.0).margin(1e-10));
    }
}

TEST_CASE("general rho with linear points collapses to the standard form") {
    auto s = zeta_partials(2.0, 10);
    auto gen = rho_general(s, InterpolationPoints::linear());
    auto std_ = rho_standard(s);
    REQUIRE(gen.columns.size() == std_.columns.size());
    for (std::size_t k = 0; k < gen.columns.size(); ++k)
        for (std::size_t n = 0; n < gen.columns[k].entries.size(); ++n) {
            const auto& a = gen.columns[k].entries[n];
            const auto& b = std_.columns[k].entries[n];
            REQUIRE(a.valid == b.valid);
            if (a.valid) CHECK(b.value == Catch::Approx(a.value).epsilon(1e-12));
        }
}

TEST_CASE("rho variants with unit exponent match their plain forms") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> v;
    double acc = 0.0;
    for (int i = 0; i < 12; ++i) {
        acc += u(rng) / ((i + 1.0) * (i + 1.0));
        v.push_back(acc);
    }
    auto s = make_sequence(std::move(v));

    auto a = osada(s, 1.0);
    auto b = rho_standard(s);
    REQUIRE(a.columns.size() == b.columns.size());
    for (std::size_t k = 0; k < a.columns.size(); ++k)
        for (std::size_t n = 0; n < a.columns[k].entries.size(); ++n) {
            CHECK(a.columns[k].entries[n].valid == b.columns[k].entries[n].valid);
            if (a.columns[k].entries[n].valid)
                CHECK(a.columns[k].entries[n].value == b.columns[k].entries[n].value);
        }

    auto c = bdg(s, 1.0);
    auto d = rho_iterated_standard(s);
    REQUIRE(c.columns.size() == d.columns.size());
    for (std::size_t k = 0; k < c.columns.size(); ++k)
        for (std::size_t n = 0; n < c.columns[k].entries.size(); ++n) {
            CHECK(c.columns[k].entries[n].valid == d.columns[k].entries[n].valid);
            if (c.columns[k].entries[n].valid)
                CHECK(c.columns[k].entries[n].value == d.columns[k].entries[n].value);
        }
}

TEST_CASE("iterated rho general and standard agree on linear points") {
    auto s = zeta_partials(2.0, 11);
    auto gen = rho_iterated_general(s, InterpolationPoints::linear());
    auto std_ = rho_iterated_standard(s);
    REQUIRE(gen.columns.size() == std_.columns.size());
    for (std::size_t k = 0; k < gen.columns.size(); ++k)
        for (std::size_t n = 0; n < gen.columns[k].entries.size(); ++n) {
            const auto& a = gen.columns[k].entries[n];
            const auto& b = std_.columns[k].entries[n];
            REQUIRE(a.valid == b.valid);
            if (a.valid) CHECK(b.value == Catch::Approx(a.value).epsilon(1e-12));
        }
}

TEST_CASE("fractional-exponent tails need the matching exponent") {
    // s_n = 5 + (n+1)^(-1/2): plain rho stalls, the alpha-aware forms work
    auto s = generate(ModelSequenceSpec::power_tail(5.0, 0.5, 1.0, {1.0}, 30));

    auto t_osada = osada(s, 0.5);
    double o2 = fit_log_error_slope(t_osada.columns[2], 5.0);
    double o4 = fit_log_error_slope(t_osada.columns[4], 5.0);
    CHECK(o2 == Catch::Approx(-2.5).margin(0.3));
    CHECK(o4 == Catch::Approx(-4.5).margin(0.3));

    // iterated columns advance one per sweep: column j carries order 2j
    auto t_bdg = bdg(s, 0.5);
    double b1 = fit_log_error_slope(t_bdg.columns[1], 5.0);
    double b2 = fit_log_error_slope(t_bdg.columns[2], 5.0);
    CHECK(b1 == Catch::Approx(-2.5).margin(0.3));
    CHECK(b2 == Catch::Approx(-4.5).margin(0.3));

    auto t_plain = rho_standard(s);
    double p2 = fit_log_error_slope(t_plain.columns[2], 5.0);
    CHECK(p2 == Catch::Approx(-0.5).margin(0.3)); // no gain over the input

    // frozen measurements, loose enough to absorb roundoff jitter
    CHECK(o2 == Catch::Approx(-2.400).margin(0.1));
    CHECK(o4 == Catch::Approx(-4.693).margin(0.1));
    CHECK(b2 == Catch::Approx(-4.359).margin(0.1));
    CHECK(p2 == Catch::Approx(-0.480).margin(0.1));
}

TEST_CASE("slope fitting needs at least two usable errors") {
    TableauColumn col;
    col.k = 2;
    col.entries.push_back(TableauEntry::ok(1.0));
    CHECK_THROWS_AS(fit_log_error_slope(col, 0.0), InsufficientDataError);
}

TEST_CASE("breakdowns invalidate exactly their dependency cone") {
    auto s = make_sequence({1.0, 1.0, 2.0, 3.0, 5.0, 8.0});
    auto t = rho_standard(s);
    CHECK_FALSE(t.at(1, 0).valid); // s1 - s0 == 0
    CHECK(t.at(1, 0).reason == "denominator below tolerance");
    CHECK_FALSE(t.at(2, 0).valid);
    CHECK(t.at(2, 0).reason == "depends on invalid entry");
    CHECK(t.at(1, 1).valid); // the rest of the column is untouched
}

TEST_CASE("dispatch honors the configured method") {
    auto s = zeta_partials(2.0, 10);
    AcceleratorConfig cfg;
    cfg.method = Method::rho_standard;
    CHECK(build_tableau(s, cfg).method == Method::rho_standard);
    cfg.method = Method::bdg;
    cfg.alpha = 1.0;
    CHECK(build_tableau(s, cfg).method == Method::bdg);
    cfg.method = Method::richardson_general;
    cfg.alpha.reset();
    CHECK(build_tableau(s, cfg).method == Method::richardson_general);
}
