#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valuation/capital.hpp"
#include "valuation/dcf.hpp"
#include "valuation/forecast.hpp"

namespace valuation::sensitivity {

/// A complete valuation case: forecast drivers, capital inputs, terminal
/// assumptions, bridge and share count. `discount_rate`, when set, pins the
/// rate used for discounting (published cases usually state it); otherwise
/// it is composed from capital::wacc.
struct Scenario {
    std::string label = "base";
    std::vector<forecast::ForecastLine> lines;
    forecast::ForecastLine post_horizon;
    capital::CapitalInputs capital;
    double perpetual_growth = 0.0;
    std::optional<double> discount_rate;
    dcf::BridgeItems bridge;
    double shares_outstanding = 0.0; ///< millions
};

double scenario_discount_rate(const Scenario& scenario);

dcf::ValuationResult run_scenario(const Scenario& scenario);

enum class SweepParam { Wacc, Growth, Cagr };

const char* to_string(SweepParam param);

/// Per-cell parameter overrides. WACC overrides the discount rate directly
/// (no capital-structure back-solving); Cagr regrows the forecast.
struct ParamOverrides {
    std::optional<double> wacc;
    std::optional<double> growth;
    std::optional<double> cagr;
};

/// Pure cell evaluator: fair share price of the scenario under the given
/// overrides. Throws DivergentPerpetuityError when the cell's g >= r.
double scenario_price(const Scenario& scenario, const ParamOverrides& overrides);

struct Axis {
    SweepParam param;
    std::vector<double> values;
};

/// Fair-share-price offsets (price / base_price - 1) over two swept
/// parameters. Divergent cells (g >= r) are nullopt, never extrapolated.
/// base_price is the price at the base parameters; when the CAGR axis is
/// swept, the base forecast is the regrowth at the series' realized CAGR, so
/// the cell matching the base parameters is exactly zero.
struct SensitivityGrid {
    SweepParam row_param = SweepParam::Wacc;
    SweepParam col_param = SweepParam::Growth;
    std::vector<double> row_values;
    std::vector<double> col_values;
    double base_price = 0.0;
    std::vector<std::optional<double>> offsets; ///< row-major
    std::optional<std::pair<std::size_t, std::size_t>> base_cell;

    std::optional<double> at(std::size_t row, std::size_t col) const {
        return offsets.at(row * col_values.size() + col);
    }
};

SensitivityGrid sweep(const Scenario& scenario, const Axis& rows, const Axis& cols);

/// Discount rate on rows, perpetual growth on columns, forecast held fixed.
SensitivityGrid sweep_wacc_growth(const Scenario& scenario, std::vector<double> wacc_values,
                                  std::vector<double> growth_values);

/// Sales CAGR on rows (forecast regrown per cell), perpetual growth on
/// columns, discount rate fixed at base.
SensitivityGrid sweep_cagr_growth(const Scenario& scenario, std::vector<double> cagr_values,
                                  std::vector<double> growth_values);

} // namespace valuation::sensitivity
