#include "valuation/forecast.hpp"

#include <cmath>
#include <string>

namespace valuation::forecast {

namespace {

bool all_finite(const ForecastLine& l) {
    return std::isfinite(l.sales) && std::isfinite(l.ebit_margin) && std::isfinite(l.d_and_a) &&
           std::isfinite(l.capex) && std::isfinite(l.delta_nwc) && std::isfinite(l.tax_rate);
}

} // namespace

std::vector<double> FcffSeries::fcffs() const {
    std::vector<double> out;
    out.reserve(horizon.size());
    for (const auto& line : horizon)
        out.push_back(line.fcff);
    return out;
}

void validate_line(const ForecastLine& line) {
    if (!all_finite(line))
        throw ValidationError("forecast line " + std::to_string(line.year) + ": non-finite driver");
    if (line.sales < 0.0)
        throw ValidationError("forecast line " + std::to_string(line.year) + ": negative sales");
    if (line.tax_rate < 0.0 || line.tax_rate >= 1.0)
        throw ValidationError("forecast line " + std::to_string(line.year) +
                              ": tax rate outside [0,1)");
}

double compute_fcff(const ForecastLine& line) {
    return compute_line(line).fcff;
}

FcffLine compute_line(const ForecastLine& line) {
    validate_line(line);
    FcffLine out;
    out.drivers = line;
    out.ebit = line.sales * line.ebit_margin;
    out.taxes = out.ebit * line.tax_rate;
    out.nopat = out.ebit - out.taxes;
    out.fcff = out.nopat + line.d_and_a - line.capex - line.delta_nwc;
    return out;
}

FcffSeries build_series(std::span<const ForecastLine> lines, const ForecastLine& post_horizon) {
    if (lines.empty())
        throw ValidationError("forecast horizon is empty");
    if (lines.size() > 50)
        throw ValidationError("forecast horizon exceeds 50 years");

    FcffSeries series;
    series.horizon.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0 && lines[i].year != lines[i - 1].year + 1)
            throw ValidationError("forecast years must be consecutive; " +
                                  std::to_string(lines[i].year) + " follows " +
                                  std::to_string(lines[i - 1].year));
        series.horizon.push_back(compute_line(lines[i]));
    }
    if (post_horizon.year != lines.back().year + 1)
        throw ValidationError("post-horizon year must be " + std::to_string(lines.back().year + 1));
    series.post_horizon = compute_line(post_horizon);
    return series;
}

double realized_sales_cagr(const FcffSeries& series) {
    if (series.horizon.empty())
        throw ValidationError("empty series");
    const double first = series.horizon.front().drivers.sales;
    if (first <= 0.0)
        throw DegenerateInputError("realized sales CAGR undefined for zero first-year sales");
    if (series.horizon.size() == 1)
        return series.post_horizon.drivers.sales / first - 1.0;
    const double last = series.horizon.back().drivers.sales;
    const double periods = static_cast<double>(series.horizon.size() - 1);
    return std::pow(last / first, 1.0 / periods) - 1.0;
}

FcffSeries regrow_series(const FcffSeries& series, double sales_cagr) {
    if (!(sales_cagr > -1.0))
        throw ValidationError("sales CAGR must exceed -100%");
    if (series.horizon.empty())
        throw ValidationError("empty series");

    const double base_sales = series.horizon.front().drivers.sales;

    auto regrow_line = [&](const FcffLine& line, int periods) {
        const double new_sales = base_sales * std::pow(1.0 + sales_cagr, periods);
        const double old_sales = line.drivers.sales;
        // Zero-sales years have no ratio to preserve; costs stay put.
        const double ratio = old_sales > 0.0 ? new_sales / old_sales : 1.0;
        ForecastLine drivers = line.drivers;
        drivers.sales = old_sales > 0.0 ? new_sales : old_sales;
        drivers.d_and_a *= ratio;
        drivers.capex *= ratio;
        drivers.delta_nwc *= ratio;
        return compute_line(drivers);
    };

    FcffSeries out;
    out.horizon.reserve(series.horizon.size());
    for (std::size_t i = 0; i < series.horizon.size(); ++i)
        out.horizon.push_back(regrow_line(series.horizon[i], static_cast<int>(i)));
    out.post_horizon = regrow_line(series.post_horizon, static_cast<int>(series.horizon.size()));
    return out;
}

} // namespace valuation::forecast
