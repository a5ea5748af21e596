#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valuation/errors.hpp"

namespace valuation::comps {

/// The four standard multiples. EV-level multiples imply an enterprise
/// value, the net-income multiple an equity value.
enum class Multiple { EvSales, EvEbitda, EvEbit, EqvNetIncome };

constexpr Multiple kAllMultiples[] = {Multiple::EvSales, Multiple::EvEbitda, Multiple::EvEbit,
                                      Multiple::EqvNetIncome};

const char* to_string(Multiple multiple);
const char* display_name(Multiple multiple);
std::optional<Multiple> multiple_from_string(std::string_view name);

enum class ValueLevel { Enterprise, Equity };

ValueLevel level_of(Multiple multiple);

/// One comparable company. Cells may be absent (blank in the source table);
/// absent cells never enter aggregates.
struct PeerEntry {
    std::string name;
    std::map<Multiple, std::map<std::string, double>> multiples; ///< multiple -> period -> value

    std::optional<double> cell(Multiple multiple, const std::string& period) const;
};

/// One precedent transaction with its deal multiples (not period-keyed).
struct TransactionEntry {
    std::string target;
    std::string acquirer;
    std::string date;
    double ev = 0.0;
    std::map<Multiple, double> multiples;

    std::optional<double> cell(Multiple multiple) const;
};

struct AggregateResult {
    double mean = 0.0;
    double median = 0.0;
    int count = 0;
};

/// Mean and midpoint-median over the peers' present cells for one multiple
/// and period. Throws DegenerateInputError when no peer has the cell.
AggregateResult aggregate_multiples(std::span<const PeerEntry> peers, Multiple multiple,
                                    const std::string& period);

AggregateResult aggregate_transaction_multiples(std::span<const TransactionEntry> transactions,
                                                Multiple multiple);

/// metric x multiple, tagged with the level the result lives on so callers
/// route EV-level results through the bridge.
struct ImpliedValue {
    double value = 0.0;
    ValueLevel level = ValueLevel::Enterprise;
};

ImpliedValue implied_value(double target_metric, double multiple, ValueLevel kind);

enum class Agency { Moodys, SP, Fitch };

const char* to_string(Agency agency);
std::optional<Agency> agency_from_string(std::string_view name);

enum class GradeBand { Investment, NonInvestment, Default };

const char* to_string(GradeBand band);

/// One row of the cross-agency long-term rating scale. Equivalent notches
/// share the ordinal (0 = highest quality) across agencies.
struct RatingNotch {
    Agency agency;
    std::string symbol;
    GradeBand grade_band;
    int ordinal = 0;
};

/// Maps an agency's symbol onto the shared scale. Unknown symbols throw
/// ValidationError. Moody's scale ends at C (ordinal 20); only S&P and
/// Fitch carry the final D notch.
RatingNotch normalize_rating(Agency agency, std::string_view symbol);

/// The full static scale, for reports and property checks.
std::span<const RatingNotch> rating_scale();

} // namespace valuation::comps
