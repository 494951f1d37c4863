#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include <seqaccel/diagnostics.hpp>
#include <seqaccel/fixtures.hpp>

using namespace seqaccel;

namespace {

double parse(const std::string& tok) {
    auto v = detail::parse_double(tok);
    REQUIRE(v.has_value());
    return *v;
}

// tolerance of half a unit in the last printed decimal, widened 10x
double last_digit_tol(const std::string& tok) {
    auto dot = tok.find('.');
    std::size_t decimals = dot == std::string::npos ? 0 : tok.size() - dot - 1;
    return 5.0 * std::pow(10.0, -static_cast<double>(decimals));
}

RealSequence zeta_partials(double z, std::size_t len) {
    std::vector<double> v;
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        acc += std::pow(static_cast<double>(i) + 1.0, -z);
        v.push_back(acc);
    }
    return make_sequence(std::move(v));
}

} // namespace

TEST_CASE("remainder ratios of the bundled energy differences") {
    auto s = fixtures::table1_differences_sequence();
    auto r = ratio_test(s);
    REQUIRE(r.size() == 13);
    const auto& printed = fixtures::table3_ratios();
    for (std::size_t n = 0; n < printed.size(); ++n) {
        REQUIRE(r[n].has_value());
        CHECK(*r[n] == Catch::Approx(parse(printed[n])).margin(5e-5));
    }
    // past the published window the differences hit the printing quantum
    REQUIRE(r[12].has_value());
    CHECK(*r[12] == 0.0);
}

TEST_CASE("decay parameter of the bundled energy differences") {
    auto s = fixtures::table1_differences_sequence();
    auto t = decay_parameter(s);
    REQUIRE(t.size() == 12);
    const auto& printed = fixtures::table2_decay_dif();
    for (std::size_t n = 0; n < printed.size(); ++n) {
        REQUIRE(t[n].has_value());
        CHECK(*t[n] == Catch::Approx(parse(printed[n])).margin(last_digit_tol(printed[n])));
    }
    // the tail values are exact rationals of the printed digits
    CHECK(std::abs(*t[9] - 6.0) < 1e-12);
    CHECK(*t[11] == Catch::Approx(-10.0).margin(1e-12));
}

TEST_CASE("decay parameter of the bundled energies per unit") {
    auto s = fixtures::table1_averages_sequence();
    auto t = decay_parameter(s);
    REQUIRE(t.size() == 13);
    const auto& printed = fixtures::table2_decay_av();
    for (std::size_t n = 0; n < printed.size(); ++n) {
        REQUIRE(t[n].has_value());
        CHECK(*t[n] == Catch::Approx(parse(printed[n])).margin(5e-7));
    }
}

TEST_CASE("diagnostics refuse sequences that are too short") {
    CHECK_THROWS_AS(ratio_test(make_sequence({1.0, 2.0})), InsufficientDataError);
    CHECK_THROWS_AS(decay_parameter(make_sequence({1.0, 2.0, 3.0})), InsufficientDataError);
    CHECK_THROWS_AS(classify(make_sequence({1.0, 2.0, 3.0, 4.0})), InsufficientDataError);
}

TEST_CASE("classification of the bundled difference column") {
    auto c = classify(fixtures::table1_differences_sequence());
    CHECK(c.kind == ConvergenceKind::exponential_tail);
    REQUIRE(c.rho_hat.has_value());
    CHECK(*c.rho_hat == Catch::Approx(0.36363636363636365).epsilon(1e-12));
    CHECK(c.reliable_ratios == 10);
    CHECK(c.note == "stable geometric ratio with erratic decay parameter");
}

TEST_CASE("classification of the bundled per-unit column") {
    // published strings, not the higher-precision derived averages: the last
    // decay digits differ between the two, hence this separately frozen value
    auto c = classify(fixtures::table1_averages_sequence());
    CHECK(c.kind == ConvergenceKind::logarithmic);
    REQUIRE(c.alpha_hat.has_value());
    CHECK(*c.alpha_hat == Catch::Approx(0.99998718226598704).epsilon(1e-10));
    CHECK(c.note == "ratios rising toward 1 with stable decay parameter");
}

TEST_CASE("classification of generated model sequences") {
    auto lin = classify(generate(ModelSequenceSpec::single_exponential(3.0, 1.0, 0.5, 20)));
    CHECK(lin.kind == ConvergenceKind::linear);
    REQUIRE(lin.rho_hat.has_value());
    CHECK(*lin.rho_hat == Catch::Approx(0.5).margin(1e-9));

    auto alt = classify(generate(ModelSequenceSpec::single_exponential(3.0, 1.0, -0.5, 20)));
    CHECK(alt.kind == ConvergenceKind::linear);
    CHECK(*alt.rho_hat == Catch::Approx(-0.5).margin(1e-9));

    auto log_ = classify(generate(ModelSequenceSpec::power_tail(5.0, 1.7, 1.0, {1.0}, 40)));
    CHECK(log_.kind == ConvergenceKind::logarithmic);
    REQUIRE(log_.alpha_hat.has_value());
    CHECK(*log_.alpha_hat == Catch::Approx(1.7).margin(0.01));

    auto two = classify(
        generate(ModelSequenceSpec::multi_exponential(1.0, {1.0, 1.0}, {0.8, 0.3}, 40)));
    CHECK(two.kind == ConvergenceKind::linear); // slow mode dominates the tail
    CHECK(*two.rho_hat == Catch::Approx(0.8).margin(1e-6));

    auto zp = classify(zeta_partials(2.0, 40));
    CHECK(zp.kind == ConvergenceKind::logarithmic);
    CHECK(*zp.alpha_hat == Catch::Approx(1.0).margin(0.01));
}

TEST_CASE("classification is invariant under affine maps") {
    auto base = generate(ModelSequenceSpec::single_exponential(3.0, 1.0, 0.5, 20));
    std::vector<double> mapped;
    for (double x : base.values) mapped.push_back(-4.0 * x + 11.0);
    auto a = classify(base);
    auto b = classify(make_sequence(std::move(mapped)));
    CHECK(a.kind == b.kind);
    REQUIRE(b.rho_hat.has_value());
    CHECK(*b.rho_hat == Catch::Approx(*a.rho_hat).epsilon(1e-9));
}

TEST_CASE("erratic input stays undetermined") {
    auto c = classify(make_sequence({1.0, -2.0, 3.5, -1.25, 4.0, -0.5, 2.75, 0.1}));
    CHECK(c.kind == ConvergenceKind::undetermined);
    CHECK(c.note == "diagnostics did not stabilize");
}

TEST_CASE("model generators produce the advertised values") {
    auto se = generate(ModelSequenceSpec::single_exponential(2.0, -1.0, 0.5, 3));
    REQUIRE(se.values.size() == 3);
    CHECK(se.values[0] == 1.0);
    CHECK(se.values[1] == 1.5);
    CHECK(se.values[2] == 1.75);

    auto pt = generate(ModelSequenceSpec::power_tail(5.0, 0.5, 1.0, {1.0}, 2));
    CHECK(pt.values[0] == Catch::Approx(6.0));
    CHECK(pt.values[1] == Catch::Approx(5.0 + std::pow(2.0, -0.5)));

    auto rs = generate(ModelSequenceSpec::rational_sample(
        {4.0, 3.0}, {3.0, 1.0}, InterpolationPoints::explicit_list({0.0, 1.0, 2.0}), 3));
    CHECK(rs.values[0] == Catch::Approx(4.0 / 3.0));
    CHECK(rs.values[1] == Catch::Approx(7.0 / 4.0));
    CHECK(rs.values[2] == Catch::Approx(2.0));
}

TEST_CASE("model specs are validated") {
    CHECK_THROWS_AS(generate(ModelSequenceSpec::multi_exponential(1.0, {1.0}, {0.5, 0.2}, 10)),
                    InvalidSpecError);
    CHECK_THROWS_AS(generate(ModelSequenceSpec::power_tail(1.0, -0.5, 1.0, {1.0}, 10)),
                    InvalidSpecError);
    CHECK_THROWS_AS(generate(ModelSequenceSpec::rational_sample(
                        {1.0}, {1.0, -1.0}, InterpolationPoints::linear(), 5)),
                    InvalidSpecError); // pole at x = 1
    CHECK_THROWS_AS(generate(ModelSequenceSpec::single_exponential(1.0, 1.0, 0.5, 0)),
                    InvalidSpecError);
}

TEST_CASE("rational fits recover simple functions") {
    // exp(z) truncated: [1/1] of {1, 1, 1/2} is (1 + z/2)/(1 - z/2)
    std::vector<double> c{1.0, 1.0, 0.5};
    CHECK(pade(c, 1, 1, 1.0) == Catch::Approx(3.0).epsilon(1e-13));
    // [0/1] of the same data is 1/(1 - z)
    CHECK(pade(c, 0, 1, 0.5) == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("rational fit failure modes") {
    std::vector<double> ones{1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(pade_fit(ones, 2, 2), SingularSystemError);
    std::vector<double> c{1.0, 1.0, 0.5};
    CHECK_THROWS_AS(pade_fit(c, 2, 2), DomainError); // needs 5 coefficients
    CHECK_THROWS_AS(pade_fit(c, -1, 1), DomainError);
}

TEST_CASE("rational fit round-trips through its own series") {
    // p/q with known coefficients, expanded by long division, then refit
    std::vector<double> p{1.0, 0.5, 0.25};
    std::vector<double> q{1.0, -0.5, 0.125};
    std::vector<double> c(9, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
        double acc = j < p.size() ? p[j] : 0.0;
        for (std::size_t i = 1; i <= std::min<std::size_t>(j, q.size() - 1); ++i)
            acc -= q[i] * c[j - i];
        c[j] = acc;
    }
    auto fit = pade_fit(c, 2, 2);
    for (double z : {0.1, 0.3}) {
        double direct = (p[0] + p[1] * z + p[2] * z * z) / (q[0] + q[1] * z + q[2] * z * z);
        CHECK(fit.eval(z) == Catch::Approx(direct).epsilon(1e-10));
    }
}
