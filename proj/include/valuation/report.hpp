#pragma once

#include <string>

#include "valuation/dcf.hpp"
#include "valuation/document.hpp"
#include "valuation/sensitivity.hpp"

namespace valuation::report {

enum class Format { Table, Csv };

/// Presentation options. Tables are presentation-rounded (money 2dp with
/// thousands separators, rates and offsets at 0.1pp); CSV always carries
/// full-precision round-trippable numbers.
struct ReportOptions {
    Format format = Format::Table;
    int money_decimals = 2;
    int rate_decimals = 1; ///< decimals of the percent display
};

// Number formatting used by the table renderers; exposed for tests.
std::string format_money(double value, int decimals);
std::string format_money_parens(double value, int decimals);
std::string format_percent(double value, int decimals);
std::string format_multiple(double value);

std::string value_report(const doc::CompanyInfo& company, const std::string& scenario_label,
                         const forecast::FcffSeries& series, const dcf::ValuationResult& result,
                         const ReportOptions& options);

std::string wacc_report(const doc::CompanyInfo& company, const std::string& scenario_label,
                        const capital::WaccBreakdown& breakdown, const ReportOptions& options);

std::string sensitivity_report(const doc::CompanyInfo& company,
                               const sensitivity::SensitivityGrid& grid,
                               const ReportOptions& options);

std::string comps_report(const doc::PeersFile& peers, const ReportOptions& options);

} // namespace valuation::report
