#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "valuation/forecast.hpp"

using namespace valuation;
using doctest::Approx;

namespace {

// Independent recomputation of one line, kept deliberately flat.
double oracle_fcff(const forecast::ForecastLine& l) {
    const double ebit = l.sales * l.ebit_margin;
    const double nopat = ebit - ebit * l.tax_rate;
    return nopat + l.d_and_a - l.capex - l.delta_nwc;
}

forecast::ForecastLine random_line(std::mt19937& rng, int year) {
    std::uniform_real_distribution<double> money(0.0, 5000.0);
    std::uniform_real_distribution<double> margin(-0.3, 0.4);
    std::uniform_real_distribution<double> tax(0.0, 0.6);
    forecast::ForecastLine l;
    l.year = year;
    l.sales = money(rng) * 10.0;
    l.ebit_margin = margin(rng);
    l.d_and_a = money(rng);
    l.capex = money(rng);
    l.delta_nwc = money(rng) - 2500.0;
    l.tax_rate = tax(rng);
    return l;
}

} // namespace

TEST_CASE("fcff reproduces the published driver table") {
    const auto series = fixtures::basf_series();
    const double expected[] = {4283.66, 4405.08, 4866.47, 5409.15, 6148.05, 6211.57};
    REQUIRE(series.horizon.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(std::abs(series.horizon[i].fcff - expected[i]) < 0.01);
    CHECK(std::abs(series.post_horizon.fcff - 6068.08) < 0.01);
}

TEST_CASE("fcff intermediate rows are retained") {
    const auto line = forecast::compute_line(fixtures::basf_lines()[0]);
    CHECK(std::abs(line.ebit - 7893.66) < 0.01);
    CHECK(std::abs(line.taxes - 2368.10) < 0.01);
    CHECK(std::abs(line.nopat - 5525.56) < 0.01);
}

TEST_CASE("fcff edge cases") {
    forecast::ForecastLine zero;
    zero.year = 2008;
    CHECK(forecast::compute_fcff(zero) == 0.0);

    forecast::ForecastLine identity;
    identity.year = 2008;
    identity.sales = 100.0;
    identity.ebit_margin = 1.0;
    CHECK(forecast::compute_fcff(identity) == 100.0);

    // 2012E column, straight from the table
    forecast::ForecastLine y2012{2012, 74631.1, 0.14, 2902.3, 3358.4, 709.7, 0.30};
    CHECK(std::abs(forecast::compute_fcff(y2012) - 6148.05) < 0.01);
}

TEST_CASE("fcff rejects invalid drivers") {
    forecast::ForecastLine bad;
    bad.year = 2008;
    bad.tax_rate = 1.0;
    CHECK_THROWS_AS(forecast::compute_fcff(bad), ValidationError);
    bad.tax_rate = -0.1;
    CHECK_THROWS_AS(forecast::compute_fcff(bad), ValidationError);
    bad.tax_rate = 0.3;
    bad.sales = -1.0;
    CHECK_THROWS_AS(forecast::compute_fcff(bad), ValidationError);
}

TEST_CASE("fcff is affine in each cost driver") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto line = random_line(rng, 2000);
        const double base = forecast::compute_fcff(line);
        const double delta = 137.25;
        const double scale = std::max(1.0, std::abs(base));

        auto c = line;
        c.capex += delta;
        CHECK(forecast::compute_fcff(c) == Approx(base - delta).epsilon(1e-12).scale(scale));
        auto d = line;
        d.d_and_a += delta;
        CHECK(forecast::compute_fcff(d) == Approx(base + delta).epsilon(1e-12).scale(scale));
        auto w = line;
        w.delta_nwc += delta;
        CHECK(forecast::compute_fcff(w) == Approx(base - delta).epsilon(1e-12).scale(scale));

        auto untaxed = line;
        untaxed.tax_rate = 0.0;
        const double expected = line.sales * line.ebit_margin + line.d_and_a - line.capex -
                                line.delta_nwc;
        CHECK(forecast::compute_fcff(untaxed) == Approx(expected).epsilon(1e-12).scale(scale));
    }
}

TEST_CASE("build_series validates shape") {
    const auto lines = fixtures::basf_lines();

    CHECK_THROWS_AS(forecast::build_series({}, fixtures::basf_post_horizon()), ValidationError);

    auto gap = lines;
    gap[3].year = 2020;
    CHECK_THROWS_AS(forecast::build_series(gap, fixtures::basf_post_horizon()), ValidationError);

    auto wrong_post = fixtures::basf_post_horizon();
    wrong_post.year = 2015;
    CHECK_THROWS_AS(forecast::build_series(lines, wrong_post), ValidationError);

    std::vector<forecast::ForecastLine> many;
    for (int y = 2000; y < 2051; ++y) {
        forecast::ForecastLine l;
        l.year = y;
        many.push_back(l);
    }
    forecast::ForecastLine post;
    post.year = 2051;
    CHECK_THROWS_AS(forecast::build_series(many, post), ValidationError);

    // single-line horizon is fine
    const auto single = forecast::build_series({lines.begin(), lines.begin() + 1},
                                               forecast::ForecastLine{2009, 100, 0.1, 0, 0, 0, 0.3});
    CHECK(single.horizon.size() == 1);
}

TEST_CASE("build_series is pure") {
    const auto a = fixtures::basf_series();
    const auto b = fixtures::basf_series();
    for (std::size_t i = 0; i < a.horizon.size(); ++i)
        CHECK(a.horizon[i].fcff == b.horizon[i].fcff);
    CHECK(a.post_horizon.fcff == b.post_horizon.fcff);
}

namespace {

// 10 synthetic lines with 5% sales growth and all drivers proportional to
// sales; the hand recurrence says fcff then compounds at 5% too.
forecast::FcffSeries geometric_series(double growth = 0.05) {
    std::vector<forecast::ForecastLine> lines;
    double sales = 1000.0;
    for (int i = 0; i < 10; ++i) {
        forecast::ForecastLine l;
        l.year = 2000 + i;
        l.sales = sales;
        l.ebit_margin = 0.15;
        l.d_and_a = 0.04 * sales;
        l.capex = 0.05 * sales;
        l.delta_nwc = 0.01 * sales;
        l.tax_rate = 0.30;
        lines.push_back(l);
        sales *= 1.0 + growth;
    }
    forecast::ForecastLine post = lines.back();
    post.year = 2010;
    post.sales = sales;
    post.d_and_a = 0.04 * sales;
    post.capex = 0.05 * sales;
    post.delta_nwc = 0.01 * sales;
    return forecast::build_series(lines, post);
}

} // namespace

TEST_CASE("proportional drivers make fcff compound with sales") {
    const auto series = geometric_series();
    double expected = series.horizon.front().fcff;
    for (std::size_t i = 1; i < series.horizon.size(); ++i) {
        expected *= 1.05;
        CHECK(series.horizon[i].fcff == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("regrow at the series' own cagr is the identity on geometric paths") {
    const auto series = geometric_series();
    const double cagr = forecast::realized_sales_cagr(series);
    CHECK(cagr == Approx(0.05).epsilon(1e-12));
    const auto regrown = forecast::regrow_series(series, cagr);
    for (std::size_t i = 0; i < series.horizon.size(); ++i)
        CHECK(regrown.horizon[i].fcff == Approx(series.horizon[i].fcff).epsilon(1e-9));
    CHECK(regrown.post_horizon.fcff == Approx(series.post_horizon.fcff).epsilon(1e-9));
}

TEST_CASE("regrow at zero flattens the sales path") {
    const auto series = fixtures::basf_series();
    const auto flat = forecast::regrow_series(series, 0.0);
    const double first_sales = series.horizon.front().drivers.sales;
    for (const auto& line : flat.horizon)
        CHECK(line.drivers.sales == Approx(first_sales).epsilon(1e-12));
    CHECK(flat.post_horizon.drivers.sales == Approx(first_sales).epsilon(1e-12));

    // oracle: recompute each line independently with ratio-scaled costs
    for (std::size_t i = 0; i < series.horizon.size(); ++i) {
        const auto& orig = series.horizon[i].drivers;
        const double ratio = first_sales / orig.sales;
        forecast::ForecastLine expected = orig;
        expected.sales = first_sales;
        expected.d_and_a *= ratio;
        expected.capex *= ratio;
        expected.delta_nwc *= ratio;
        CHECK(flat.horizon[i].fcff == Approx(oracle_fcff(expected)).epsilon(1e-12));
    }
}

TEST_CASE("regrowing faster dominates year by year") {
    const auto series = fixtures::basf_series();
    const double cagr = forecast::realized_sales_cagr(series);
    const auto base = forecast::regrow_series(series, cagr);
    const auto faster = forecast::regrow_series(series, cagr + 0.01);
    // year one is anchored, every later year strictly larger (margins positive)
    CHECK(faster.horizon[0].fcff == Approx(base.horizon[0].fcff).epsilon(1e-12));
    for (std::size_t i = 1; i < base.horizon.size(); ++i)
        CHECK(faster.horizon[i].fcff > base.horizon[i].fcff);
    CHECK(faster.post_horizon.fcff > base.post_horizon.fcff);
}

TEST_CASE("regrow rejects a collapse below -100%") {
    CHECK_THROWS_AS(forecast::regrow_series(fixtures::basf_series(), -1.0), ValidationError);
}

TEST_CASE("regrow leaves zero-sales years unscaled") {
    std::vector<forecast::ForecastLine> lines{
        {2020, 100.0, 0.2, 10.0, 12.0, 1.0, 0.3},
        {2021, 0.0, 0.2, 10.0, 12.0, 1.0, 0.3}, // idle year, costs still run
        {2022, 121.0, 0.2, 10.0, 12.0, 1.0, 0.3},
    };
    forecast::ForecastLine post{2023, 133.1, 0.2, 10.0, 12.0, 1.0, 0.3};
    const auto series = forecast::build_series(lines, post);
    const auto regrown = forecast::regrow_series(series, 0.10);
    CHECK(regrown.horizon[1].drivers.sales == 0.0);
    CHECK(regrown.horizon[1].drivers.capex == 12.0);
    CHECK(regrown.horizon[1].fcff == series.horizon[1].fcff);
    CHECK(regrown.horizon[2].drivers.sales == Approx(121.0).epsilon(1e-12));
}

TEST_CASE("realized cagr matches the closed form") {
    const auto series = fixtures::basf_series();
    const double expected = std::pow(76870.0 / 64702.1, 0.2) - 1.0;
    CHECK(forecast::realized_sales_cagr(series) == Approx(expected).epsilon(1e-12));
}
