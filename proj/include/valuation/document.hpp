#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "valuation/comps.hpp"
#include "valuation/sensitivity.hpp"

namespace valuation::doc {

struct CompanyInfo {
    std::string name;
    double shares_outstanding = 0.0; ///< millions
    std::string currency = "EUR";
};

/// A parsed valuation input file: company metadata, the base scenario, and
/// named scenario overrides (RFC 7386 merge patches against the base
/// document). Every override is validated at load time.
struct ValuationDocument {
    CompanyInfo company;
    sensitivity::Scenario base;
    std::map<std::string, nlohmann::json> scenario_patches;
    nlohmann::json base_json;

    std::vector<std::string> scenario_labels() const;
    bool has_scenario(const std::string& label) const;
    /// "base" or one of the override labels.
    sensitivity::Scenario scenario(const std::string& label) const;
};

ValuationDocument parse_valuation_document(const std::string& text, const std::string& source);
ValuationDocument load_valuation_document(const std::filesystem::path& path);

/// A parsed comparables file: trading peers (period-keyed multiples) and
/// optional precedent transactions. Suspicious but tolerated inputs
/// (negative EV-level multiples) land in `warnings`.
struct PeersFile {
    std::vector<std::string> periods;
    std::vector<comps::PeerEntry> peers;
    std::vector<comps::TransactionEntry> transactions;
    std::vector<std::string> warnings;
};

PeersFile parse_peers_file(const std::string& text, const std::string& source);
PeersFile load_peers_file(const std::filesystem::path& path);

} // namespace valuation::doc
