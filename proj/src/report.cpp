#include "valuation/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "valuation/csv.hpp"

namespace valuation::report {

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string with_thousands(const std::string& digits) {
    const std::size_t dot = digits.find('.');
    const std::size_t int_end = dot == std::string::npos ? digits.size() : dot;
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && i < int_end && (int_end - i) % 3 == 0)
            out += ',';
        out += digits[i];
    }
    return out;
}

std::string trim_trailing_zeros(std::string s) {
    if (s.find('.') == std::string::npos)
        return s;
    while (!s.empty() && s.back() == '0')
        s.pop_back();
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return s;
}

// A simple right-aligned column layout: rows of cells, first cell
// left-aligned, the rest padded to their column's width.
std::string layout(const std::vector<std::vector<std::string>>& rows, int gap = 2) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size())
            widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i == 0) {
                line += row[i];
                line.append(widths[0] - row[i].size(), ' ');
            } else {
                line.append(static_cast<std::size_t>(gap) + widths[i] - row[i].size(), ' ');
                line += row[i];
            }
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

std::string num(double value) {
    return csv::format_number(value);
}

} // namespace

std::string format_money(double value, int decimals) {
    const bool negative = std::signbit(value) && value != 0.0;
    std::string body = with_thousands(fixed(std::abs(value), decimals));
    return negative ? "-" + body : body;
}

/// Deductions print as parenthesized positives, banker style.
std::string format_money_parens(double value, int decimals) {
    if (value > 0.0)
        return "(" + with_thousands(fixed(value, decimals)) + ")";
    return format_money(-value, decimals);
}

std::string format_percent(double value, int decimals) {
    return fixed(value * 100.0, decimals) + "%";
}

std::string format_multiple(double value) {
    return fixed(value, 1) + "x";
}

std::string value_report(const doc::CompanyInfo& company, const std::string& scenario_label,
                         const forecast::FcffSeries& series, const dcf::ValuationResult& result,
                         const ReportOptions& options) {
    const int dp = options.money_decimals;

    if (options.format == Format::Csv) {
        csv::Table table;
        table.push_back({"item", "period", "value"});
        for (const auto& line : series.horizon)
            table.push_back({"fcff", std::to_string(line.drivers.year), num(line.fcff)});
        table.push_back({"fcff", std::to_string(series.post_horizon.drivers.year),
                         num(series.post_horizon.fcff)});
        for (std::size_t i = 0; i < result.discounted_fcffs.size(); ++i)
            table.push_back({"npv", std::to_string(series.horizon[i].drivers.year),
                             num(result.discounted_fcffs[i])});
        table.push_back({"terminal_value", "", num(result.terminal_value)});
        table.push_back({"discounted_tv", "", num(result.discounted_tv)});
        table.push_back({"enterprise_value", "", num(result.enterprise_value)});
        table.push_back({"net_debt", "", num(result.bridge.net_debt)});
        table.push_back({"minority_interests", "", num(result.bridge.minority_interests)});
        table.push_back({"pension_deficit", "", num(result.bridge.pension_deficit)});
        table.push_back(
            {"off_balance_obligations", "", num(result.bridge.off_balance_obligations)});
        table.push_back({"associated_companies", "", num(result.bridge.associated_companies)});
        table.push_back({"equity_value", "", num(result.equity_value)});
        table.push_back({"shares_outstanding", "", num(result.shares_outstanding)});
        table.push_back({"fair_share_price", "", num(result.fair_share_price)});
        return csv::emit(table);
    }

    const std::string unit = " (" + company.currency + "m)";
    std::ostringstream out;
    out << company.name << " - discounted cash flow valuation (" << scenario_label << ")\n\n";

    std::vector<std::vector<std::string>> matrix;
    std::vector<std::string> header{"Period"};
    for (const auto& line : series.horizon)
        header.push_back(std::to_string(line.drivers.year));
    header.push_back("TV");
    matrix.push_back(header);

    std::vector<std::string> fcff_row{"FCFF" + unit};
    for (const auto& line : series.horizon)
        fcff_row.push_back(format_money(line.fcff, dp));
    fcff_row.push_back("-");
    matrix.push_back(fcff_row);

    std::vector<std::string> npv_row{"NPV" + unit};
    for (double v : result.discounted_fcffs)
        npv_row.push_back(format_money(v, dp));
    npv_row.push_back(format_money(result.discounted_tv, dp));
    matrix.push_back(npv_row);
    out << layout(matrix) << '\n';

    std::vector<std::vector<std::string>> assembly;
    assembly.push_back({"Terminal value" + unit, format_money(result.terminal_value, dp)});
    assembly.push_back({"Enterprise value" + unit, format_money(result.enterprise_value, dp)});
    assembly.push_back({"Net debt" + unit, format_money_parens(result.bridge.net_debt, dp)});
    if (result.bridge.minority_interests != 0.0)
        assembly.push_back(
            {"Minorities" + unit, format_money_parens(result.bridge.minority_interests, dp)});
    if (result.bridge.pension_deficit != 0.0)
        assembly.push_back(
            {"Pension deficit" + unit, format_money_parens(result.bridge.pension_deficit, dp)});
    if (result.bridge.off_balance_obligations != 0.0)
        assembly.push_back({"Off-balance obligations" + unit,
                            format_money_parens(result.bridge.off_balance_obligations, dp)});
    if (result.bridge.associated_companies != 0.0)
        assembly.push_back({"Associated companies" + unit,
                            format_money_parens(result.bridge.associated_companies, dp)});
    assembly.push_back({"Equity value" + unit, format_money(result.equity_value, dp)});
    assembly.push_back(
        {"No. of shares (m)", trim_trailing_zeros(fixed(result.shares_outstanding, dp))});
    assembly.push_back({"Fair share price", format_money(result.fair_share_price, dp)});
    out << layout(assembly);
    return out.str();
}

std::string wacc_report(const doc::CompanyInfo& company, const std::string& scenario_label,
                        const capital::WaccBreakdown& breakdown, const ReportOptions& options) {
    const bool has_debt = breakdown.debt_weight > 0.0;

    if (options.format == Format::Csv) {
        csv::Table table;
        table.push_back({"item", "value"});
        table.push_back({"risk_free_rate", num(breakdown.risk_free_rate)});
        table.push_back({"beta_unlevered", num(breakdown.beta_unlevered)});
        table.push_back({"beta_levered", num(breakdown.beta_levered)});
        table.push_back({"market_return", num(breakdown.market_return)});
        table.push_back({"cost_of_equity", num(breakdown.cost_of_equity)});
        table.push_back({"credit_spread", has_debt ? num(breakdown.credit_spread) : ""});
        table.push_back(
            {"cost_of_debt_pre_tax", has_debt ? num(breakdown.cost_of_debt_pre_tax) : ""});
        table.push_back(
            {"cost_of_debt_after_tax", has_debt ? num(breakdown.cost_of_debt_after_tax) : ""});
        table.push_back({"cost_of_preferred",
                         breakdown.preferred_weight > 0.0 ? num(breakdown.cost_of_preferred) : ""});
        table.push_back({"equity_weight", num(breakdown.equity_weight)});
        table.push_back({"debt_weight", num(breakdown.debt_weight)});
        table.push_back({"preferred_weight", num(breakdown.preferred_weight)});
        table.push_back({"wacc", num(breakdown.wacc)});
        return csv::emit(table);
    }

    const int dp = options.rate_decimals;
    std::ostringstream out;
    out << company.name << " - cost of capital (" << scenario_label << ")\n\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Cost of equity", ""});
    rows.push_back({"Risk-free rate", format_percent(breakdown.risk_free_rate, dp)});
    rows.push_back({"Unlevered beta", fixed(breakdown.beta_unlevered, 1)});
    rows.push_back({"Levered beta", fixed(breakdown.beta_levered, 1)});
    rows.push_back({"Market return", format_percent(breakdown.market_return, dp)});
    rows.push_back({"CAPM required return", format_percent(breakdown.cost_of_equity, dp)});
    rows.push_back({"Cost of debt", ""});
    rows.push_back(
        {"Average credit spread", has_debt ? format_percent(breakdown.credit_spread, dp) : "-"});
    rows.push_back({"Cost of debt before tax",
                    has_debt ? format_percent(breakdown.cost_of_debt_pre_tax, dp) : "-"});
    rows.push_back({"Cost of debt after tax",
                    has_debt ? format_percent(breakdown.cost_of_debt_after_tax, dp) : "-"});
    if (breakdown.preferred_weight > 0.0)
        rows.push_back({"Cost of preferred", format_percent(breakdown.cost_of_preferred, dp)});
    rows.push_back({"WACC", format_percent(breakdown.wacc, dp)});
    out << layout(rows);
    return out.str();
}

std::string sensitivity_report(const doc::CompanyInfo& company,
                               const sensitivity::SensitivityGrid& grid,
                               const ReportOptions& options) {
    const char* row_name = sensitivity::to_string(grid.row_param);
    const char* col_name = sensitivity::to_string(grid.col_param);

    if (options.format == Format::Csv) {
        csv::Table table;
        table.push_back({"row_param", "col_param", "row_value", "col_value", "offset"});
        for (std::size_t i = 0; i < grid.row_values.size(); ++i) {
            for (std::size_t j = 0; j < grid.col_values.size(); ++j) {
                const auto cell = grid.at(i, j);
                table.push_back({row_name, col_name, num(grid.row_values[i]),
                                 num(grid.col_values[j]), cell ? num(*cell) : ""});
            }
        }
        return csv::emit(table);
    }

    const int dp = options.rate_decimals;
    std::ostringstream out;
    out << company.name << " - sensitivity (" << row_name << " x " << col_name
        << "), offsets vs base price " << format_money(grid.base_price, options.money_decimals)
        << "\n\n";

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{std::string(row_name) + " \\ " + col_name};
    for (double v : grid.col_values)
        header.push_back(format_percent(v, 2));
    rows.push_back(header);
    for (std::size_t i = 0; i < grid.row_values.size(); ++i) {
        std::vector<std::string> row{format_percent(grid.row_values[i], 2)};
        for (std::size_t j = 0; j < grid.col_values.size(); ++j) {
            const auto cell = grid.at(i, j);
            std::string text = cell ? format_percent(*cell, dp) : "n/a";
            if (grid.base_cell && grid.base_cell->first == i && grid.base_cell->second == j)
                text = "[" + text + "]";
            row.push_back(text);
        }
        rows.push_back(row);
    }
    out << layout(rows);
    return out.str();
}

std::string comps_report(const doc::PeersFile& peers, const ReportOptions& options) {
    using comps::kAllMultiples;
    using comps::Multiple;

    if (options.format == Format::Csv) {
        csv::Table table;
        table.push_back({"kind", "name", "multiple", "period", "value"});
        auto aggregate_row = [&](Multiple m, const std::string& period) {
            try {
                const auto agg = comps::aggregate_multiples(peers.peers, m, period);
                table.push_back({"mean", "", comps::to_string(m), period, num(agg.mean)});
                table.push_back({"median", "", comps::to_string(m), period, num(agg.median)});
            } catch (const DegenerateInputError&) {
                table.push_back({"mean", "", comps::to_string(m), period, ""});
                table.push_back({"median", "", comps::to_string(m), period, ""});
            }
        };
        for (const auto& peer : peers.peers)
            for (Multiple m : kAllMultiples)
                for (const auto& period : peers.periods) {
                    const auto cell = peer.cell(m, period);
                    table.push_back(
                        {"peer", peer.name, comps::to_string(m), period, cell ? num(*cell) : ""});
                }
        for (Multiple m : kAllMultiples)
            for (const auto& period : peers.periods)
                aggregate_row(m, period);
        for (const auto& deal : peers.transactions)
            for (Multiple m : kAllMultiples) {
                const auto cell = deal.cell(m);
                table.push_back({"transaction", deal.target, comps::to_string(m), "",
                                 cell ? num(*cell) : ""});
            }
        if (!peers.transactions.empty())
            for (Multiple m : kAllMultiples) {
                try {
                    const auto agg =
                        comps::aggregate_transaction_multiples(peers.transactions, m);
                    table.push_back({"txn_mean", "", comps::to_string(m), "", num(agg.mean)});
                    table.push_back({"txn_median", "", comps::to_string(m), "", num(agg.median)});
                } catch (const DegenerateInputError&) {
                    table.push_back({"txn_mean", "", comps::to_string(m), "", ""});
                    table.push_back({"txn_median", "", comps::to_string(m), "", ""});
                }
            }
        return csv::emit(table);
    }

    std::ostringstream out;
    out << "Trading comparables\n\n";

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> group_header{""};
    std::vector<std::string> period_header{"Company"};
    for (Multiple m : kAllMultiples)
        for (std::size_t i = 0; i < peers.periods.size(); ++i) {
            group_header.push_back(i == 0 ? comps::display_name(m) : "");
            period_header.push_back(peers.periods[i]);
        }
    rows.push_back(group_header);
    rows.push_back(period_header);

    for (const auto& peer : peers.peers) {
        std::vector<std::string> row{peer.name};
        for (Multiple m : kAllMultiples)
            for (const auto& period : peers.periods) {
                const auto cell = peer.cell(m, period);
                row.push_back(cell ? format_multiple(*cell) : "");
            }
        rows.push_back(row);
    }

    auto footer = [&](const std::string& label, bool use_median) {
        std::vector<std::string> row{label};
        for (Multiple m : kAllMultiples)
            for (const auto& period : peers.periods) {
                try {
                    const auto agg = comps::aggregate_multiples(peers.peers, m, period);
                    row.push_back(format_multiple(use_median ? agg.median : agg.mean));
                } catch (const DegenerateInputError&) {
                    row.push_back("");
                }
            }
        return row;
    };
    rows.push_back(footer("Mean", false));
    rows.push_back(footer("Median", true));

    out << layout(rows);
    out << "\nNote: trading multiples carry no control premium and tend to sit below "
           "transaction values.\n";

    if (!peers.transactions.empty()) {
        out << "\nTransaction comparables\n\n";
        std::vector<std::vector<std::string>> deals;
        std::vector<std::string> header{"Target", "Acquirer", "Date", "EV"};
        for (Multiple m : kAllMultiples)
            header.push_back(comps::display_name(m));
        deals.push_back(header);
        for (const auto& deal : peers.transactions) {
            std::vector<std::string> row{deal.target, deal.acquirer, deal.date,
                                         format_money(deal.ev, options.money_decimals)};
            for (Multiple m : kAllMultiples) {
                const auto cell = deal.cell(m);
                row.push_back(cell ? format_multiple(*cell) : "");
            }
            deals.push_back(row);
        }
        auto txn_footer = [&](const std::string& label, bool use_median) {
            std::vector<std::string> row{label, "", "", ""};
            for (Multiple m : kAllMultiples) {
                try {
                    const auto agg =
                        comps::aggregate_transaction_multiples(peers.transactions, m);
                    row.push_back(format_multiple(use_median ? agg.median : agg.mean));
                } catch (const DegenerateInputError&) {
                    row.push_back("");
                }
            }
            return row;
        };
        deals.push_back(txn_footer("Average", false));
        deals.push_back(txn_footer("Median", true));
        out << layout(deals);
    }
    return out.str();
}

} // namespace valuation::report
