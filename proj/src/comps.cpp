#include "valuation/comps.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "valuation/stats.hpp"

namespace valuation::comps {

namespace {

// Long-term scale; ordinal 0 is the highest quality notch. Moody's has no
// equivalent for the final D row.
constexpr int kInvestmentEnd = 9;    // last investment-grade ordinal
constexpr int kNonInvestmentEnd = 19;

struct ScaleRow {
    const char* moodys; // nullptr = no equivalent
    const char* sp;
    const char* fitch;
};

constexpr std::array<ScaleRow, 22> kScale{{
    {"Aaa", "AAA", "AAA"},
    {"Aa1", "AA+", "AA+"},
    {"Aa2", "AA", "AA"},
    {"Aa3", "AA-", "AA-"},
    {"A1", "A+", "A+"},
    {"A2", "A", "A"},
    {"A3", "A-", "A-"},
    {"Baa1", "BBB+", "BBB+"},
    {"Baa2", "BBB", "BBB"},
    {"Baa3", "BBB-", "BBB-"},
    {"Ba1", "BB+", "BB+"},
    {"Ba2", "BB", "BB"},
    {"Ba3", "BB-", "BB-"},
    {"B1", "B+", "B+"},
    {"B2", "B", "B"},
    {"B3", "B-", "B-"},
    {"Caa1", "CCC+", "CCC+"},
    {"Caa2", "CCC", "CCC"},
    {"Caa3", "CCC-", "CCC-"},
    {"Ca", "CC", "CC"},
    {"C", "C", "C"},
    {nullptr, "D", "D"},
}};

GradeBand band_of(int ordinal) {
    if (ordinal <= kInvestmentEnd)
        return GradeBand::Investment;
    if (ordinal <= kNonInvestmentEnd)
        return GradeBand::NonInvestment;
    return GradeBand::Default;
}

const std::vector<RatingNotch>& full_scale() {
    static const std::vector<RatingNotch> notches = [] {
        std::vector<RatingNotch> out;
        for (int i = 0; i < static_cast<int>(kScale.size()); ++i) {
            const ScaleRow& row = kScale[static_cast<std::size_t>(i)];
            if (row.moodys)
                out.push_back({Agency::Moodys, row.moodys, band_of(i), i});
            out.push_back({Agency::SP, row.sp, band_of(i), i});
            out.push_back({Agency::Fitch, row.fitch, band_of(i), i});
        }
        return out;
    }();
    return notches;
}

} // namespace

const char* to_string(Multiple multiple) {
    switch (multiple) {
    case Multiple::EvSales:
        return "ev_sales";
    case Multiple::EvEbitda:
        return "ev_ebitda";
    case Multiple::EvEbit:
        return "ev_ebit";
    case Multiple::EqvNetIncome:
        return "eqv_net_income";
    }
    return "?";
}

const char* display_name(Multiple multiple) {
    switch (multiple) {
    case Multiple::EvSales:
        return "EV/Sales";
    case Multiple::EvEbitda:
        return "EV/EBITDA";
    case Multiple::EvEbit:
        return "EV/EBIT";
    case Multiple::EqvNetIncome:
        return "EqV/Net Income";
    }
    return "?";
}

std::optional<Multiple> multiple_from_string(std::string_view name) {
    for (Multiple m : kAllMultiples)
        if (name == to_string(m))
            return m;
    return std::nullopt;
}

ValueLevel level_of(Multiple multiple) {
    return multiple == Multiple::EqvNetIncome ? ValueLevel::Equity : ValueLevel::Enterprise;
}

std::optional<double> PeerEntry::cell(Multiple multiple, const std::string& period) const {
    const auto by_period = multiples.find(multiple);
    if (by_period == multiples.end())
        return std::nullopt;
    const auto value = by_period->second.find(period);
    if (value == by_period->second.end())
        return std::nullopt;
    return value->second;
}

std::optional<double> TransactionEntry::cell(Multiple multiple) const {
    const auto value = multiples.find(multiple);
    if (value == multiples.end())
        return std::nullopt;
    return value->second;
}

namespace {

AggregateResult aggregate(std::vector<double> cells, const char* what) {
    if (cells.empty())
        throw DegenerateInputError(std::string("no present cells to aggregate for ") + what);
    for (double v : cells)
        if (!std::isfinite(v))
            throw ValidationError(std::string("non-finite multiple for ") + what);
    // Summing in sorted order makes the mean independent of peer order.
    std::sort(cells.begin(), cells.end());
    AggregateResult result;
    result.count = static_cast<int>(cells.size());
    result.mean = stats::mean(cells);
    result.median = stats::median(std::move(cells));
    return result;
}

} // namespace

AggregateResult aggregate_multiples(std::span<const PeerEntry> peers, Multiple multiple,
                                    const std::string& period) {
    std::vector<double> cells;
    for (const auto& peer : peers)
        if (auto v = peer.cell(multiple, period))
            cells.push_back(*v);
    return aggregate(std::move(cells), to_string(multiple));
}

AggregateResult aggregate_transaction_multiples(std::span<const TransactionEntry> transactions,
                                                Multiple multiple) {
    std::vector<double> cells;
    for (const auto& deal : transactions)
        if (auto v = deal.cell(multiple))
            cells.push_back(*v);
    return aggregate(std::move(cells), to_string(multiple));
}

ImpliedValue implied_value(double target_metric, double multiple, ValueLevel kind) {
    if (!std::isfinite(target_metric) || !std::isfinite(multiple))
        throw ValidationError("implied value needs finite inputs");
    return {target_metric * multiple, kind};
}

const char* to_string(Agency agency) {
    switch (agency) {
    case Agency::Moodys:
        return "Moodys";
    case Agency::SP:
        return "SP";
    case Agency::Fitch:
        return "Fitch";
    }
    return "?";
}

std::optional<Agency> agency_from_string(std::string_view name) {
    if (name == "Moodys" || name == "Moody's")
        return Agency::Moodys;
    if (name == "SP" || name == "S&P")
        return Agency::SP;
    if (name == "Fitch")
        return Agency::Fitch;
    return std::nullopt;
}

const char* to_string(GradeBand band) {
    switch (band) {
    case GradeBand::Investment:
        return "investment";
    case GradeBand::NonInvestment:
        return "non_investment";
    case GradeBand::Default:
        return "default";
    }
    return "?";
}

RatingNotch normalize_rating(Agency agency, std::string_view symbol) {
    for (const RatingNotch& notch : full_scale())
        if (notch.agency == agency && notch.symbol == symbol)
            return notch;
    throw ValidationError("unknown " + std::string(to_string(agency)) + " rating symbol '" +
                          std::string(symbol) + "'");
}

std::span<const RatingNotch> rating_scale() {
    return full_scale();
}

} // namespace valuation::comps
