#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "valuation/dcf.hpp"

using namespace valuation;
using doctest::Approx;

namespace {

// Footnote-style terminal value oracle: the perpetuity summed term by term.
double tv_partial_sum(double fcff, double g, double r, int terms) {
    double acc = 0.0;
    const double x = (1.0 + g) / (1.0 + r);
    double power = 1.0;
    for (int n = 1; n <= terms; ++n) {
        power *= x;
        acc += fcff * power;
    }
    return acc;
}

double pv(std::span<const double> flows, double r) {
    double acc = 0.0;
    for (std::size_t t = 1; t <= flows.size(); ++t)
        acc += flows[t - 1] / std::pow(1.0 + r, static_cast<double>(t));
    return acc;
}

} // namespace

TEST_CASE("discount series reproduces the published NPV row") {
    const auto fcffs = fixtures::basf_series().fcffs();
    const auto npv = dcf::discount_series(fcffs, 0.09);
    const double expected[] = {3929.96, 3707.67, 3757.81, 3831.97, 3995.81, 3703.76};
    REQUIRE(npv.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(std::abs(npv[i] - expected[i]) <= 0.01);
}

TEST_CASE("discount series basics") {
    const std::vector<double> flows{5.0, -3.0, 7.5};
    CHECK(dcf::discount_series(flows, 0.0) == flows);

    const std::vector<double> one{109.0};
    CHECK(dcf::discount_series(one, 0.09)[0] == Approx(100.0).epsilon(1e-12));

    CHECK(dcf::discount_series({}, 0.05).empty());
    CHECK_THROWS_AS(dcf::discount_series(flows, -1.0), ValidationError);
}

TEST_CASE("terminal value agrees with its series definition") {
    const dcf::TerminalParams params{0.015, 0.09};
    const double closed = dcf::terminal_value(6068.08, params);
    CHECK(closed == Approx(82121.35).epsilon(1e-6));
    const double summed = tv_partial_sum(6068.08, 0.015, 0.09, 100000);
    CHECK(std::abs(closed - summed) / closed < 1e-6);
}

TEST_CASE("terminal value closed forms") {
    CHECK(dcf::terminal_value(100.0, {0.0, 0.08}) == Approx(100.0 / 0.08).epsilon(1e-12));
    CHECK(dcf::terminal_value(100.0, {0.02, 0.07}) == Approx(2040.0).epsilon(1e-12));
}

TEST_CASE("terminal value diverges when growth reaches the rate") {
    CHECK_THROWS_AS(dcf::terminal_value(100.0, {0.09, 0.09}), DivergentPerpetuityError);
    CHECK_THROWS_AS(dcf::terminal_value(100.0, {0.10, 0.09}), DivergentPerpetuityError);
}

TEST_CASE("terminal value is monotonic in growth and rate") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> growth(0.0, 0.05);
    std::uniform_real_distribution<double> rate(0.06, 0.15);
    for (int trial = 0; trial < 100; ++trial) {
        const double g = growth(rng);
        const double r = rate(rng);
        const double v = dcf::terminal_value(100.0, {g, r});
        CHECK(dcf::terminal_value(100.0, {g + 0.002, r}) > v);
        CHECK(dcf::terminal_value(100.0, {g, r + 0.002}) < v);
    }
}

TEST_CASE("company value reproduces the case study") {
    const auto result = dcf::company_value(fixtures::basf_series(),
                                           {fixtures::basf_growth, fixtures::basf_wacc},
                                           fixtures::basf_bridge(), fixtures::basf_shares);
    CHECK(std::abs(result.discounted_tv - 44923.18) / 44923.18 < 1e-3);
    CHECK(std::abs(result.enterprise_value - 67850.16) / 67850.16 < 1e-3);
    CHECK(std::abs(result.equity_value - 55331.96) / 55331.96 < 1e-3);
    CHECK(std::abs(result.fair_share_price - 58.49) < 0.02);
    CHECK(result.warnings.empty());
}

TEST_CASE("company value hand cases") {
    // pass-through bridge: one share, nothing between EV and EqV
    forecast::ForecastLine line{2020, 1000.0, 0.2, 0.0, 0.0, 0.0, 0.0};
    forecast::ForecastLine post{2021, 1000.0, 0.2, 0.0, 0.0, 0.0, 0.0};
    const auto series = forecast::build_series({&line, 1}, post);
    const auto pass = dcf::company_value(series, {0.0, 0.10}, {}, 1.0);
    CHECK(pass.fair_share_price == Approx(pass.enterprise_value).epsilon(1e-15));

    // one-year horizon: EV = 100/1.1 + (100/0.1)/1.1^2
    forecast::ForecastLine flat{2020, 100.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    forecast::ForecastLine flat_post{2021, 100.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    const auto one = dcf::company_value(forecast::build_series({&flat, 1}, flat_post),
                                        {0.0, 0.10}, {}, 1.0);
    CHECK(one.enterprise_value ==
          Approx(100.0 / 1.1 + (100.0 / 0.1) / (1.1 * 1.1)).epsilon(1e-12));
    CHECK(one.enterprise_value == Approx(917.36).epsilon(1e-5));
}

TEST_CASE("company value rejects zero shares and attaches growth warnings") {
    CHECK_THROWS_AS(dcf::company_value(fixtures::basf_series(), {0.015, 0.09},
                                       fixtures::basf_bridge(), 0.0),
                    DegenerateInputError);

    const auto warned = dcf::company_value(fixtures::basf_series(), {0.06, 0.09},
                                           fixtures::basf_bridge(), fixtures::basf_shares);
    REQUIRE(warned.warnings.size() == 1);
    CHECK(warned.warnings[0].find("plausibility") != std::string::npos);

    const auto negative = dcf::company_value(fixtures::basf_series(), {-0.01, 0.09},
                                             fixtures::basf_bridge(), fixtures::basf_shares);
    CHECK(negative.warnings.size() == 1);
}

TEST_CASE("equity bridge") {
    dcf::BridgeItems bridge;
    bridge.net_debt = 11547.0;
    bridge.minority_interests = 971.2;
    CHECK(dcf::equity_bridge(67850.16, bridge) == Approx(55331.96).epsilon(1e-9));

    CHECK(dcf::equity_bridge(500.0, {}) == 500.0);

    // signed associated companies move the bridge both ways
    dcf::BridgeItems assoc;
    assoc.associated_companies = -100.0;
    CHECK(dcf::equity_bridge(1000.0, assoc) == Approx(1100.0).epsilon(1e-12));
}

TEST_CASE("equity bridge round trip and linearity") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> money(-5000.0, 20000.0);
    for (int trial = 0; trial < 200; ++trial) {
        dcf::BridgeItems bridge;
        bridge.net_debt = money(rng);
        bridge.minority_interests = std::abs(money(rng));
        bridge.pension_deficit = std::abs(money(rng));
        bridge.off_balance_obligations = std::abs(money(rng));
        bridge.associated_companies = money(rng);
        const double ev = money(rng);
        const double eqv = dcf::equity_bridge(ev, bridge);
        const double back = eqv + bridge.net_debt + bridge.corporate_adjustments();
        CHECK(back == Approx(ev).epsilon(1e-9).scale(20000.0));

        const double delta = 1234.5;
        CHECK(dcf::equity_bridge(ev + delta, bridge) ==
              Approx(eqv + delta).epsilon(1e-9).scale(20000.0));
    }
}

TEST_CASE("value duration hand case") {
    const std::vector<double> one{109.0};
    CHECK(dcf::value_duration(one, 0.09) == Approx(-109.0 / (1.09 * 1.09)).epsilon(1e-12));
    CHECK(dcf::value_duration(one, 0.09) == Approx(-100.0 / 1.09).epsilon(1e-12));
    CHECK(dcf::value_duration({}, 0.09) == 0.0);
}

TEST_CASE("value duration matches finite differences with quadratic error decay") {
    const auto fcffs = fixtures::basf_series().fcffs();
    const double r = 0.09;
    const double analytic = dcf::value_duration(fcffs, r);

    auto central = [&](double h) { return (pv(fcffs, r + h) - pv(fcffs, r - h)) / (2.0 * h); };

    const double fd6 = central(1e-6);
    CHECK(std::abs(analytic - fd6) / std::abs(analytic) < 1e-4);

    const double err4 = std::abs(analytic - central(1e-4));
    const double err5 = std::abs(analytic - central(1e-5));
    const double ratio = err4 / err5;
    CHECK(ratio > 50.0);
    CHECK(ratio < 200.0);
}

TEST_CASE("value duration with the terminal flow appended") {
    const auto fcffs = fixtures::basf_series().fcffs();
    const double tv = 82121.33;
    std::vector<double> flows = fcffs;
    flows.push_back(tv);
    CHECK(dcf::value_duration_with_terminal(fcffs, tv, 0.09) ==
          Approx(dcf::value_duration(flows, 0.09)).epsilon(1e-15));
}

TEST_CASE("valuation result identities hold on random inputs") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> money(100.0, 10000.0);
    std::uniform_real_distribution<double> margin(0.05, 0.3);
    std::uniform_real_distribution<double> growth(0.0, 0.04);
    std::uniform_real_distribution<double> rate(0.05, 0.15);
    std::uniform_int_distribution<int> years(1, 12);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<forecast::ForecastLine> lines;
        const int n = years(rng);
        for (int i = 0; i <= n; ++i) {
            forecast::ForecastLine l;
            l.year = 2000 + i;
            l.sales = money(rng);
            l.ebit_margin = margin(rng);
            l.d_and_a = money(rng) * 0.05;
            l.capex = money(rng) * 0.05;
            l.delta_nwc = money(rng) * 0.01;
            l.tax_rate = 0.3;
            lines.push_back(l);
        }
        const forecast::ForecastLine post = lines.back();
        lines.pop_back();
        const auto series = forecast::build_series(lines, post);

        const double g = growth(rng);
        const double r = std::max(rate(rng), g + 0.005);
        dcf::BridgeItems bridge;
        bridge.net_debt = money(rng);
        bridge.minority_interests = money(rng) * 0.1;
        const double shares = money(rng) * 0.1;

        const auto result = dcf::company_value(series, {g, r}, bridge, shares);

        double ev = result.discounted_tv;
        for (double v : result.discounted_fcffs)
            ev += v;
        CHECK(result.enterprise_value == Approx(ev).epsilon(1e-9));
        CHECK(result.equity_value ==
              Approx(result.enterprise_value - bridge.net_debt - bridge.corporate_adjustments())
                  .epsilon(1e-9));
        CHECK(result.fair_share_price == Approx(result.equity_value / shares).epsilon(1e-9));

        // enterprise value falls as the rate rises, when every flow is positive
        bool all_positive = series.post_horizon.fcff > 0.0;
        for (const auto& line : series.horizon)
            all_positive &= line.fcff > 0.0;
        if (all_positive) {
            const auto higher = dcf::company_value(series, {g, r + 0.005}, bridge, shares);
            CHECK(higher.enterprise_value < result.enterprise_value);
        }
    }
}
