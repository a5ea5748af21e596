#include "valuation/dcf.hpp"

#include <cmath>

namespace valuation::dcf {

namespace {

void validate_rate(double rate) {
    if (!(rate > -1.0) || !std::isfinite(rate))
        throw ValidationError("discount rate must be a finite value > -100%");
}

void validate_bridge(const BridgeItems& bridge) {
    const bool finite = std::isfinite(bridge.net_debt) && std::isfinite(bridge.minority_interests) &&
                        std::isfinite(bridge.pension_deficit) &&
                        std::isfinite(bridge.off_balance_obligations) &&
                        std::isfinite(bridge.associated_companies);
    if (!finite)
        throw ValidationError("bridge items must be finite");
}

} // namespace

std::vector<double> discount_series(std::span<const double> fcffs, double rate) {
    validate_rate(rate);
    std::vector<double> out;
    out.reserve(fcffs.size());
    double factor = 1.0;
    for (double fcff : fcffs) {
        factor *= 1.0 + rate;
        out.push_back(fcff / factor);
    }
    return out;
}

bool growth_in_plausible_band(double g) {
    return g >= 0.0 && g <= 0.05;
}

double terminal_value(double post_horizon_fcff, const TerminalParams& params) {
    validate_rate(params.discount_rate);
    if (!(params.perpetual_growth_rate > -1.0) || !std::isfinite(params.perpetual_growth_rate))
        throw ValidationError("perpetual growth rate must be a finite value > -100%");
    if (!std::isfinite(post_horizon_fcff))
        throw ValidationError("terminal-period cash flow must be finite");
    if (params.perpetual_growth_rate >= params.discount_rate)
        throw DivergentPerpetuityError("perpetual growth rate must stay below the discount rate");
    return post_horizon_fcff * (1.0 + params.perpetual_growth_rate) /
           (params.discount_rate - params.perpetual_growth_rate);
}

double equity_bridge(double enterprise_value, const BridgeItems& bridge) {
    validate_bridge(bridge);
    if (!std::isfinite(enterprise_value))
        throw ValidationError("enterprise value must be finite");
    return enterprise_value - bridge.net_debt - bridge.corporate_adjustments();
}

ValuationResult company_value(const forecast::FcffSeries& series, const TerminalParams& params,
                              const BridgeItems& bridge, double shares_outstanding) {
    if (!(shares_outstanding > 0.0))
        throw DegenerateInputError("shares outstanding must be positive");

    ValuationResult result;
    const std::vector<double> fcffs = series.fcffs();
    result.discounted_fcffs = discount_series(fcffs, params.discount_rate);
    result.terminal_value = terminal_value(series.post_horizon.fcff, params);

    const double periods = static_cast<double>(series.horizon.size()) + 1.0;
    result.discounted_tv =
        result.terminal_value / std::pow(1.0 + params.discount_rate, periods);

    result.enterprise_value = result.discounted_tv;
    for (double v : result.discounted_fcffs)
        result.enterprise_value += v;

    result.bridge = bridge;
    result.equity_value = equity_bridge(result.enterprise_value, bridge);
    result.shares_outstanding = shares_outstanding;
    result.fair_share_price = result.equity_value / shares_outstanding;

    if (!growth_in_plausible_band(params.perpetual_growth_rate))
        result.warnings.push_back("perpetual growth rate outside the 0%-5% plausibility band");
    return result;
}

double value_duration(std::span<const double> fcffs, double rate) {
    validate_rate(rate);
    double acc = 0.0;
    double factor = 1.0;
    for (std::size_t t = 1; t <= fcffs.size(); ++t) {
        factor *= 1.0 + rate;
        acc += -static_cast<double>(t) * fcffs[t - 1] / factor;
    }
    return acc / (1.0 + rate);
}

double value_duration_with_terminal(std::span<const double> fcffs, double terminal_value,
                                    double rate) {
    std::vector<double> flows(fcffs.begin(), fcffs.end());
    flows.push_back(terminal_value);
    return value_duration(flows, rate);
}

} // namespace valuation::dcf
