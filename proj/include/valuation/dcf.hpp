#pragma once

#include <span>
#include <string>
#include <vector>

#include "valuation/errors.hpp"
#include "valuation/forecast.hpp"

namespace valuation::dcf {

/// Items between enterprise value and equity value. `associated_companies`
/// is signed and added with its sign; the other adjustments are deductions.
struct BridgeItems {
    double net_debt = 0.0;
    double minority_interests = 0.0;
    double pension_deficit = 0.0;
    double off_balance_obligations = 0.0;
    double associated_companies = 0.0;

    double corporate_adjustments() const {
        return minority_interests + pension_deficit + off_balance_obligations +
               associated_companies;
    }
};

/// Gordon-growth inputs: perpetual growth g and discount rate r (the WACC).
/// g < r is a hard requirement; g outside [0%, 5%] only draws a warning.
struct TerminalParams {
    double perpetual_growth_rate = 0.0;
    double discount_rate = 0.0;
};

struct ValuationResult {
    std::vector<double> discounted_fcffs; ///< one per horizon year
    double terminal_value = 0.0;          ///< value at the TV date
    double discounted_tv = 0.0;
    double enterprise_value = 0.0;
    BridgeItems bridge;
    double equity_value = 0.0;
    double shares_outstanding = 0.0; ///< millions
    double fair_share_price = 0.0;
    std::vector<std::string> warnings;
};

/// End-of-period discounting: element k (1-based) is fcffs[k] / (1+rate)^k.
std::vector<double> discount_series(std::span<const double> fcffs, double rate);

/// [0%, 5%] plausibility band for the perpetual growth rate.
bool growth_in_plausible_band(double g);

/// Gordon growth: post_horizon_fcff * (1+g) / (r-g). Throws
/// DivergentPerpetuityError when g >= r.
double terminal_value(double post_horizon_fcff, const TerminalParams& params);

/// EV - net debt - corporate adjustments.
double equity_bridge(double enterprise_value, const BridgeItems& bridge);

/// Full assembly: discounted horizon FCFFs, TV discounted by (1+r)^(n+1)
/// where n is the horizon length (the terminal cash flow sits one year past
/// the horizon), the bridge to equity value and the fair share price.
ValuationResult company_value(const forecast::FcffSeries& series, const TerminalParams& params,
                              const BridgeItems& bridge, double shares_outstanding);

/// Analytic dV/dr of the discounted horizon series:
/// 1/(1+r) * sum_t -t * FCF_t / (1+r)^t. Covers the explicit flows only;
/// a first-order view, so meaningful for small rate changes.
double value_duration(std::span<const double> fcffs, double rate);

/// Same derivative with the terminal value treated as a fixed cash flow one
/// period past the horizon; the TV's own dependence on r is not included.
double value_duration_with_terminal(std::span<const double> fcffs, double terminal_value,
                                    double rate);

} // namespace valuation::dcf
