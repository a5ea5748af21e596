#pragma once

#include <span>
#include <vector>

#include "valuation/errors.hpp"

namespace valuation::forecast {

/// One forecast year's operating drivers. Monetary amounts in currency
/// millions, margins and tax rate as decimal fractions.
struct ForecastLine {
    int year = 0;
    double sales = 0.0;       ///< must be >= 0
    double ebit_margin = 0.0; ///< fraction of sales; may be negative
    double d_and_a = 0.0;
    double capex = 0.0;
    double delta_nwc = 0.0;   ///< increase in net working capital
    double tax_rate = 0.0;    ///< 0 <= t < 1
};

/// A forecast line with its derived income-statement rows materialized.
struct FcffLine {
    ForecastLine drivers;
    double ebit = 0.0;
    double taxes = 0.0;
    double nopat = 0.0;
    double fcff = 0.0;
};

/// Free-cash-flow-to-firm series over the explicit horizon plus the first
/// post-horizon year (the terminal-period cash flow).
struct FcffSeries {
    std::vector<FcffLine> horizon;
    FcffLine post_horizon;

    /// Horizon FCFF values in year order.
    std::vector<double> fcffs() const;
};

void validate_line(const ForecastLine& line);

/// NOPAT + D&A - Capex - increase in NWC, with NOPAT = sales * margin * (1 - t).
double compute_fcff(const ForecastLine& line);

/// Same computation with EBIT, taxes and NOPAT retained.
FcffLine compute_line(const ForecastLine& line);

/// Materialize the series. Years must be strictly consecutive, the horizon
/// must hold 1..50 lines, and the post-horizon year must follow the last
/// horizon year.
FcffSeries build_series(std::span<const ForecastLine> lines, const ForecastLine& post_horizon);

/// Compounded annual sales growth realized over the horizon lines
/// ((s_n / s_1)^(1/(n-1)) - 1). A single-line horizon falls back to the
/// post-horizon ratio.
double realized_sales_cagr(const FcffSeries& series);

/// Rebuild the series on a geometric sales path anchored at the original
/// first-year sales: year k gets sales s_1 * (1 + cagr)^(k-1), the
/// post-horizon year s_1 * (1 + cagr)^n. Each year keeps its EBIT margin and
/// tax rate; D&A, Capex and the NWC increase scale with that year's
/// new-to-original sales ratio. Regrowing a series whose path is already
/// geometric at its own CAGR is the identity.
FcffSeries regrow_series(const FcffSeries& series, double sales_cagr);

} // namespace valuation::forecast
