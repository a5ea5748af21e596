#include "valuation/sensitivity.hpp"

#include <cmath>

namespace valuation::sensitivity {

namespace {

dcf::ValuationResult evaluate(const Scenario& scenario, const ParamOverrides& overrides) {
    forecast::FcffSeries series = forecast::build_series(scenario.lines, scenario.post_horizon);
    if (overrides.cagr)
        series = forecast::regrow_series(series, *overrides.cagr);
    dcf::TerminalParams params;
    params.discount_rate = overrides.wacc ? *overrides.wacc : scenario_discount_rate(scenario);
    params.perpetual_growth_rate =
        overrides.growth ? *overrides.growth : scenario.perpetual_growth;
    return dcf::company_value(series, params, scenario.bridge, scenario.shares_outstanding);
}

double base_value(const Scenario& scenario, SweepParam param) {
    switch (param) {
    case SweepParam::Wacc:
        return scenario_discount_rate(scenario);
    case SweepParam::Growth:
        return scenario.perpetual_growth;
    case SweepParam::Cagr:
        return forecast::realized_sales_cagr(
            forecast::build_series(scenario.lines, scenario.post_horizon));
    }
    throw ValidationError("unknown sweep parameter");
}

void set_override(ParamOverrides& overrides, SweepParam param, double value) {
    switch (param) {
    case SweepParam::Wacc:
        overrides.wacc = value;
        return;
    case SweepParam::Growth:
        overrides.growth = value;
        return;
    case SweepParam::Cagr:
        overrides.cagr = value;
        return;
    }
    throw ValidationError("unknown sweep parameter");
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

const char* to_string(SweepParam param) {
    switch (param) {
    case SweepParam::Wacc:
        return "wacc";
    case SweepParam::Growth:
        return "growth";
    case SweepParam::Cagr:
        return "cagr";
    }
    return "?";
}

double scenario_discount_rate(const Scenario& scenario) {
    return scenario.discount_rate ? *scenario.discount_rate : capital::wacc(scenario.capital);
}

dcf::ValuationResult run_scenario(const Scenario& scenario) {
    return evaluate(scenario, ParamOverrides{});
}

double scenario_price(const Scenario& scenario, const ParamOverrides& overrides) {
    return evaluate(scenario, overrides).fair_share_price;
}

SensitivityGrid sweep(const Scenario& scenario, const Axis& rows, const Axis& cols) {
    if (rows.param == cols.param)
        throw ValidationError("sweep axes must name two distinct parameters");
    if (rows.values.empty() || cols.values.empty())
        throw ValidationError("sweep axes must be non-empty");

    SensitivityGrid grid;
    grid.row_param = rows.param;
    grid.col_param = cols.param;
    grid.row_values = rows.values;
    grid.col_values = cols.values;

    // When the forecast-growth axis participates, the reference forecast is
    // the regrowth at the realized CAGR; otherwise the original forecast.
    ParamOverrides base;
    const double base_row = base_value(scenario, rows.param);
    const double base_col = base_value(scenario, cols.param);
    if (rows.param == SweepParam::Cagr)
        base.cagr = base_row;
    if (cols.param == SweepParam::Cagr)
        base.cagr = base_col;
    grid.base_price = scenario_price(scenario, base);
    if (grid.base_price == 0.0)
        throw DegenerateInputError("base fair share price is zero; offsets are undefined");

    grid.offsets.reserve(rows.values.size() * cols.values.size());
    for (std::size_t i = 0; i < rows.values.size(); ++i) {
        for (std::size_t j = 0; j < cols.values.size(); ++j) {
            // A cell whose parameters are the base parameters is the base
            // cell: reuse the base evaluation so its offset is exactly zero
            // even when the axis was built by repeated increments.
            if (close(rows.values[i], base_row) && close(cols.values[j], base_col)) {
                grid.base_cell = {i, j};
                grid.offsets.push_back(0.0);
                continue;
            }
            ParamOverrides cell = base;
            set_override(cell, rows.param, rows.values[i]);
            set_override(cell, cols.param, cols.values[j]);
            try {
                grid.offsets.push_back(scenario_price(scenario, cell) / grid.base_price - 1.0);
            } catch (const DivergentPerpetuityError&) {
                grid.offsets.push_back(std::nullopt);
            }
        }
    }
    return grid;
}

SensitivityGrid sweep_wacc_growth(const Scenario& scenario, std::vector<double> wacc_values,
                                  std::vector<double> growth_values) {
    return sweep(scenario, Axis{SweepParam::Wacc, std::move(wacc_values)},
                 Axis{SweepParam::Growth, std::move(growth_values)});
}

SensitivityGrid sweep_cagr_growth(const Scenario& scenario, std::vector<double> cagr_values,
                                  std::vector<double> growth_values) {
    return sweep(scenario, Axis{SweepParam::Cagr, std::move(cagr_values)},
                 Axis{SweepParam::Growth, std::move(growth_values)});
}

} // namespace valuation::sensitivity
