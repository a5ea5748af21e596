#include "valuation/capital.hpp"

#include <cmath>

#include "valuation/stats.hpp"

namespace valuation::capital {

namespace {

void validate_tax_rate(double tax_rate) {
    if (!(tax_rate >= 0.0 && tax_rate < 1.0))
        throw ValidationError("tax rate outside [0,1)");
}

} // namespace

void validate_inputs(const CapitalInputs& inputs) {
    validate_tax_rate(inputs.tax_rate);
    if (!(inputs.equity_value >= 0.0))
        throw ValidationError("equity value must be >= 0");
    if (!(inputs.preferred_value >= 0.0))
        throw ValidationError("preferred value must be >= 0");
    for (const auto& tranche : inputs.tranches)
        if (!(tranche.market_value >= 0.0))
            throw ValidationError("tranche market value must be >= 0");
    if (!std::isfinite(cost_of_equity(inputs.capm)))
        throw ValidationError("non-finite CAPM inputs");
    if (!(inputs.equity_value + inputs.total_debt() + inputs.preferred_value > 0.0))
        throw DegenerateInputError("total capital must be positive");
}

double CapitalInputs::total_debt() const {
    double total = 0.0;
    for (const auto& tranche : tranches)
        total += tranche.market_value;
    return total;
}

double cost_of_equity(const CapmInputs& capm) {
    return capm.risk_free_rate + capm.beta_levered * (capm.market_return - capm.risk_free_rate);
}

double estimate_beta(const ReturnSeries& returns) {
    const auto& stock = returns.stock_excess_returns;
    const auto& market = returns.market_excess_returns;
    if (stock.size() != market.size() || stock.size() < 2)
        throw ValidationError("return series must have equal length >= 2");
    const double market_variance = stats::variance_population(market);
    if (market_variance <= 0.0)
        throw DegenerateInputError("market return series has zero variance");
    return stats::covariance_population(stock, market) / market_variance;
}

double unlever_beta(double beta_levered, double debt_to_equity, double tax_rate) {
    validate_tax_rate(tax_rate);
    if (!(debt_to_equity >= 0.0))
        throw ValidationError("debt-to-equity must be >= 0");
    return beta_levered / (1.0 + (1.0 - tax_rate) * debt_to_equity);
}

double relever_beta(double beta_unlevered, double debt_to_equity, double tax_rate) {
    validate_tax_rate(tax_rate);
    if (!(debt_to_equity >= 0.0))
        throw ValidationError("debt-to-equity must be >= 0");
    return beta_unlevered * (1.0 + (1.0 - tax_rate) * debt_to_equity);
}

double cost_of_debt(double interest_rate, double tax_rate) {
    validate_tax_rate(tax_rate);
    return interest_rate * (1.0 - tax_rate);
}

double blended_cost_of_debt(std::span<const DebtTranche> tranches, double tax_rate) {
    validate_tax_rate(tax_rate);
    double total = 0.0;
    double weighted_rate = 0.0;
    for (const auto& tranche : tranches) {
        if (!(tranche.market_value >= 0.0))
            throw ValidationError("tranche market value must be >= 0");
        total += tranche.market_value;
        weighted_rate += tranche.market_value * tranche.interest_rate;
    }
    if (total <= 0.0)
        throw DegenerateInputError("blended cost of debt needs positive total debt");
    return (1.0 - tax_rate) * weighted_rate / total;
}

double wacc(const CapitalInputs& inputs) {
    validate_inputs(inputs);
    const double equity = inputs.equity_value;
    const double debt = inputs.total_debt();
    const double preferred = inputs.preferred_value;
    const double total = equity + debt + preferred;

    double rate = 0.0;
    if (equity > 0.0)
        rate += equity / total * cost_of_equity(inputs.capm);
    if (debt > 0.0)
        rate += debt / total * blended_cost_of_debt(inputs.tranches, inputs.tax_rate);
    if (preferred > 0.0)
        rate += preferred / total * inputs.cost_of_preferred;
    return rate;
}

double relevered_peer_median_beta(std::span<const PeerBeta> peers, double target_debt_to_equity,
                                  double target_tax_rate) {
    if (peers.empty())
        throw DegenerateInputError("empty peer group");
    std::vector<double> unlevered;
    unlevered.reserve(peers.size());
    for (const auto& peer : peers)
        unlevered.push_back(unlever_beta(peer.beta_levered, peer.debt_to_equity, peer.tax_rate));
    return relever_beta(stats::median(std::move(unlevered)), target_debt_to_equity,
                        target_tax_rate);
}

WaccBreakdown wacc_breakdown(const CapitalInputs& inputs) {
    validate_inputs(inputs);
    const double equity = inputs.equity_value;
    const double debt = inputs.total_debt();
    const double preferred = inputs.preferred_value;
    const double total = equity + debt + preferred;

    WaccBreakdown b;
    b.risk_free_rate = inputs.capm.risk_free_rate;
    b.market_return = inputs.capm.market_return;
    b.beta_levered = inputs.capm.beta_levered;
    if (inputs.beta_unlevered) {
        b.beta_unlevered = *inputs.beta_unlevered;
    } else if (equity > 0.0) {
        b.beta_unlevered = unlever_beta(b.beta_levered, debt / equity, inputs.tax_rate);
    } else {
        b.beta_unlevered = b.beta_levered;
    }
    b.cost_of_equity = cost_of_equity(inputs.capm);
    if (debt > 0.0) {
        b.cost_of_debt_after_tax = blended_cost_of_debt(inputs.tranches, inputs.tax_rate);
        b.cost_of_debt_pre_tax = b.cost_of_debt_after_tax / (1.0 - inputs.tax_rate);
        b.credit_spread = b.cost_of_debt_pre_tax - b.risk_free_rate;
    }
    b.cost_of_preferred = inputs.cost_of_preferred;
    b.equity_weight = equity / total;
    b.debt_weight = debt / total;
    b.preferred_weight = preferred / total;
    b.wacc = wacc(inputs);
    return b;
}

} // namespace valuation::capital
