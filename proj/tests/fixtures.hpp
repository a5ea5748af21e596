#pragma once

// The published BASF 2008 case that anchors the golden tests: income
// statement estimates, liabilities structure, cost-of-capital inputs and
// bridge items.

#include <vector>

#include "valuation/capital.hpp"
#include "valuation/dcf.hpp"
#include "valuation/forecast.hpp"
#include "valuation/sensitivity.hpp"

namespace fixtures {

inline std::vector<valuation::forecast::ForecastLine> basf_lines() {
    using valuation::forecast::ForecastLine;
    return {
        ForecastLine{2008, 64702.1, 0.122, 2700.9, 2911.6, 1031.2, 0.30},
        ForecastLine{2009, 65388.8, 0.112, 2740.9, 2942.5, 519.8, 0.30},
        ForecastLine{2010, 67645.5, 0.119, 2779.2, 3044.0, 503.6, 0.30},
        ForecastLine{2011, 71390.1, 0.132, 2829.5, 3212.6, 804.2, 0.30},
        ForecastLine{2012, 74631.1, 0.140, 2902.3, 3358.4, 709.7, 0.30},
        ForecastLine{2013, 76870.0, 0.130, 2989.4, 2989.4, 783.6, 0.30},
    };
}

inline valuation::forecast::ForecastLine basf_post_horizon() {
    return valuation::forecast::ForecastLine{2014, 86517.9, 0.110, 3431.8, 3431.8, 593.8, 0.30};
}

inline valuation::forecast::FcffSeries basf_series() {
    return valuation::forecast::build_series(basf_lines(), basf_post_horizon());
}

inline valuation::capital::CapitalInputs basf_capital() {
    valuation::capital::CapitalInputs inputs;
    inputs.equity_value = 20097.9;
    inputs.tranches = {{6953.0, 0.093}, {3147.7, 0.093}};
    inputs.tax_rate = 0.30;
    inputs.capm = {0.043, 0.093, 1.2};
    inputs.beta_unlevered = 0.9;
    return inputs;
}

inline valuation::dcf::BridgeItems basf_bridge() {
    valuation::dcf::BridgeItems bridge;
    bridge.net_debt = 11547.0;
    bridge.minority_interests = 971.2;
    return bridge;
}

constexpr double basf_shares = 946.0;
constexpr double basf_growth = 0.015;
constexpr double basf_wacc = 0.09;

inline valuation::sensitivity::Scenario basf_scenario() {
    valuation::sensitivity::Scenario s;
    s.label = "base";
    s.lines = basf_lines();
    s.post_horizon = basf_post_horizon();
    s.capital = basf_capital();
    s.perpetual_growth = basf_growth;
    s.discount_rate = basf_wacc;
    s.bridge = basf_bridge();
    s.shares_outstanding = basf_shares;
    return s;
}

} // namespace fixtures
