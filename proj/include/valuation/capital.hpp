#pragma once

#include <optional>
#include <span>
#include <vector>

#include "valuation/errors.hpp"

namespace valuation::capital {

/// CAPM parameters. Rates are annual decimal fractions.
struct CapmInputs {
    double risk_free_rate = 0.0;
    double market_return = 0.0;
    double beta_levered = 0.0;
};

struct DebtTranche {
    double market_value = 0.0; ///< >= 0, currency millions
    double interest_rate = 0.0;
};

/// Everything feeding the WACC. Debt is carried as tranches; preferred
/// capital may be zero. `beta_unlevered`, when known, is echoed in the
/// breakdown; otherwise it is derived by unlevering.
struct CapitalInputs {
    double equity_value = 0.0;
    std::vector<DebtTranche> tranches;
    double preferred_value = 0.0;
    double cost_of_preferred = 0.0;
    double tax_rate = 0.0;
    CapmInputs capm;
    std::optional<double> beta_unlevered;

    double total_debt() const;
};

void validate_inputs(const CapitalInputs& inputs);

/// Paired periodic excess returns for beta regression.
struct ReturnSeries {
    std::vector<double> stock_excess_returns;
    std::vector<double> market_excess_returns;
};

/// r_f + beta * (r_m - r_f)
double cost_of_equity(const CapmInputs& capm);

/// Regression slope cov(stock, market) / var(market); population moments on
/// both sides, so the normalization cancels.
double estimate_beta(const ReturnSeries& returns);

/// Hamada relation. relever returns beta_u * (1 + (1 - t) * D/E); unlever is
/// its exact inverse.
double unlever_beta(double beta_levered, double debt_to_equity, double tax_rate);
double relever_beta(double beta_unlevered, double debt_to_equity, double tax_rate);

/// i * (1 - t)
double cost_of_debt(double interest_rate, double tax_rate);

/// After-tax weighted average rate over the tranches, weights by market value.
double blended_cost_of_debt(std::span<const DebtTranche> tranches, double tax_rate);

/// Capital-structure-weighted blend of cost of equity, after-tax cost of debt
/// and cost of preferred capital. Zero-weight components are skipped.
double wacc(const CapitalInputs& inputs);

/// One listed peer for the unlisted-company beta workflow.
struct PeerBeta {
    double beta_levered = 0.0;
    double debt_to_equity = 0.0;
    double tax_rate = 0.0;
};

/// Unlever each peer, take the median, relever to the target structure.
double relevered_peer_median_beta(std::span<const PeerBeta> peers, double target_debt_to_equity,
                                  double target_tax_rate);

/// The lines of a published cost-of-capital table, assembled from
/// CapitalInputs.
struct WaccBreakdown {
    double risk_free_rate = 0.0;
    double beta_unlevered = 0.0;
    double beta_levered = 0.0;
    double market_return = 0.0;
    double cost_of_equity = 0.0;
    double credit_spread = 0.0;      ///< blended pre-tax debt rate minus risk-free; 0 without debt
    double cost_of_debt_pre_tax = 0.0;
    double cost_of_debt_after_tax = 0.0;
    double cost_of_preferred = 0.0;
    double equity_weight = 0.0;
    double debt_weight = 0.0;
    double preferred_weight = 0.0;
    double wacc = 0.0;
};

WaccBreakdown wacc_breakdown(const CapitalInputs& inputs);

} // namespace valuation::capital
