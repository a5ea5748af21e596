#include "valuation/document.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace valuation::doc {

using nlohmann::json;

namespace {

// Rates and margins are decimal fractions (0.09, not 9). Values beyond 1.5
// are almost certainly percent-as-number unit slips.
constexpr double kRateUnitLimit = 1.5;

struct Ctx {
    std::string source;
    std::string path;

    Ctx field(const std::string& key) const {
        return {source, path.empty() ? key : path + "." + key};
    }
    Ctx index(std::size_t i) const { return {source, path + "[" + std::to_string(i) + "]"}; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(source + ": field '" + path + "': " + what);
    }
    [[noreturn]] void invalid(const std::string& what) const {
        throw ValidationError(source + ": field '" + path + "': " + what);
    }
};

const json& require_object(const json& j, const Ctx& ctx) {
    if (!j.is_object())
        ctx.fail("expected an object");
    return j;
}

const json* find(const json& j, const Ctx& ctx, const std::string& key) {
    require_object(j, ctx);
    const auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return nullptr;
    return &*it;
}

const json& require(const json& j, const Ctx& ctx, const std::string& key) {
    const json* v = find(j, ctx, key);
    if (!v)
        ctx.field(key).fail("missing required field");
    return *v;
}

double as_number(const json& j, const Ctx& ctx) {
    if (!j.is_number())
        ctx.fail("expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        ctx.invalid("must be finite");
    return v;
}

double number_at(const json& j, const Ctx& ctx, const std::string& key) {
    return as_number(require(j, ctx, key), ctx.field(key));
}

double number_or(const json& j, const Ctx& ctx, const std::string& key, double fallback) {
    const json* v = find(j, ctx, key);
    return v ? as_number(*v, ctx.field(key)) : fallback;
}

double rate_at(const json& j, const Ctx& ctx, const std::string& key) {
    const double v = number_at(j, ctx, key);
    if (v > kRateUnitLimit)
        ctx.field(key).invalid("rate fields are decimal fractions (0.09, not 9); " +
                               std::to_string(v) + " looks like a unit error");
    return v;
}

double rate_or(const json& j, const Ctx& ctx, const std::string& key, double fallback) {
    return find(j, ctx, key) ? rate_at(j, ctx, key) : fallback;
}

std::string string_at(const json& j, const Ctx& ctx, const std::string& key) {
    const json& v = require(j, ctx, key);
    if (!v.is_string())
        ctx.field(key).fail("expected a string");
    return v.get<std::string>();
}

std::string string_or(const json& j, const Ctx& ctx, const std::string& key,
                      const std::string& fallback) {
    const json* v = find(j, ctx, key);
    if (!v)
        return fallback;
    if (!v->is_string())
        ctx.field(key).fail("expected a string");
    return v->get<std::string>();
}

int year_at(const json& j, const Ctx& ctx, const std::string& key) {
    const json& v = require(j, ctx, key);
    if (!v.is_number_integer())
        ctx.field(key).fail("expected an integer calendar year");
    return v.get<int>();
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; turn it into a line number.
        std::size_t line = 1;
        const std::size_t limit = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
        line += static_cast<std::size_t>(std::count(text.begin(), text.begin() + limit, '\n'));
        throw ParseError(source + ": line " + std::to_string(line) + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

forecast::ForecastLine parse_line(const json& j, const Ctx& ctx) {
    require_object(j, ctx);
    forecast::ForecastLine line;
    line.year = year_at(j, ctx, "year");
    line.sales = number_at(j, ctx, "sales");
    line.ebit_margin = rate_at(j, ctx, "ebit_margin");
    line.d_and_a = number_at(j, ctx, "d_and_a");
    line.capex = number_at(j, ctx, "capex");
    line.delta_nwc = number_at(j, ctx, "delta_nwc");
    line.tax_rate = rate_at(j, ctx, "tax_rate");
    return line;
}

capital::CapitalInputs parse_capital(const json& j, const Ctx& ctx) {
    require_object(j, ctx);
    capital::CapitalInputs inputs;
    inputs.equity_value = number_at(j, ctx, "equity_value");
    if (const json* tranches = find(j, ctx, "debt_tranches")) {
        const Ctx tctx = ctx.field("debt_tranches");
        if (!tranches->is_array())
            tctx.fail("expected an array");
        for (std::size_t i = 0; i < tranches->size(); ++i) {
            const Ctx ictx = tctx.index(i);
            const json& t = (*tranches)[i];
            require_object(t, ictx);
            capital::DebtTranche tranche;
            tranche.market_value = number_at(t, ictx, "market_value");
            tranche.interest_rate = rate_at(t, ictx, "interest_rate");
            inputs.tranches.push_back(tranche);
        }
    }
    inputs.preferred_value = number_or(j, ctx, "preferred_value", 0.0);
    inputs.cost_of_preferred = rate_or(j, ctx, "cost_of_preferred", 0.0);
    inputs.tax_rate = rate_at(j, ctx, "tax_rate");

    const json& capm = require(j, ctx, "capm");
    const Ctx cctx = ctx.field("capm");
    require_object(capm, cctx);
    inputs.capm.risk_free_rate = rate_at(capm, cctx, "risk_free_rate");
    inputs.capm.market_return = rate_at(capm, cctx, "market_return");

    const json* levered = find(capm, cctx, "beta_levered");
    const json* unlevered = find(capm, cctx, "beta_unlevered");
    if (unlevered)
        inputs.beta_unlevered = as_number(*unlevered, cctx.field("beta_unlevered"));
    if (levered) {
        inputs.capm.beta_levered = as_number(*levered, cctx.field("beta_levered"));
    } else if (unlevered) {
        if (!(inputs.equity_value > 0.0))
            cctx.field("beta_unlevered")
                .invalid("relevering needs a positive equity value; give beta_levered directly");
        inputs.capm.beta_levered = capital::relever_beta(
            *inputs.beta_unlevered, inputs.total_debt() / inputs.equity_value, inputs.tax_rate);
    } else {
        cctx.fail("needs beta_levered or beta_unlevered");
    }
    return inputs;
}

dcf::BridgeItems parse_bridge(const json& j, const Ctx& ctx) {
    require_object(j, ctx);
    dcf::BridgeItems bridge;
    bridge.net_debt = number_or(j, ctx, "net_debt", 0.0);
    bridge.minority_interests = number_or(j, ctx, "minority_interests", 0.0);
    bridge.pension_deficit = number_or(j, ctx, "pension_deficit", 0.0);
    bridge.off_balance_obligations = number_or(j, ctx, "off_balance_obligations", 0.0);
    bridge.associated_companies = number_or(j, ctx, "associated_companies", 0.0);
    return bridge;
}

CompanyInfo parse_company(const json& j, const Ctx& ctx) {
    require_object(j, ctx);
    CompanyInfo company;
    company.name = string_at(j, ctx, "name");
    company.shares_outstanding = number_at(j, ctx, "shares_outstanding");
    company.currency = string_or(j, ctx, "currency", "EUR");
    return company;
}

sensitivity::Scenario parse_scenario(const json& j, const Ctx& ctx, const std::string& label) {
    sensitivity::Scenario s;
    s.label = label;

    const CompanyInfo company = parse_company(require(j, ctx, "company"), ctx.field("company"));
    s.shares_outstanding = company.shares_outstanding;

    const json& fc = require(j, ctx, "forecast");
    const Ctx fctx = ctx.field("forecast");
    require_object(fc, fctx);
    const json& lines = require(fc, fctx, "lines");
    const Ctx lctx = fctx.field("lines");
    if (!lines.is_array())
        lctx.fail("expected an array");
    for (std::size_t i = 0; i < lines.size(); ++i)
        s.lines.push_back(parse_line(lines[i], lctx.index(i)));
    s.post_horizon = parse_line(require(fc, fctx, "post_horizon"), fctx.field("post_horizon"));

    s.capital = parse_capital(require(j, ctx, "capital"), ctx.field("capital"));

    const json& terminal = require(j, ctx, "terminal");
    const Ctx tctx = ctx.field("terminal");
    require_object(terminal, tctx);
    s.perpetual_growth = rate_at(terminal, tctx, "perpetual_growth_rate");
    if (find(terminal, tctx, "discount_rate"))
        s.discount_rate = rate_at(terminal, tctx, "discount_rate");

    s.bridge = parse_bridge(require(j, ctx, "bridge"), ctx.field("bridge"));
    return s;
}

void validate_scenario(const sensitivity::Scenario& s, const Ctx& ctx) {
    if (!(s.shares_outstanding > 0.0))
        throw DegenerateInputError(ctx.source + " (" + s.label +
                                   "): shares outstanding must be positive");
    forecast::build_series(s.lines, s.post_horizon); // validates lines and years
    capital::validate_inputs(s.capital);
}

comps::PeerEntry parse_peer(const json& j, const Ctx& ctx, std::set<std::string>& periods,
                            std::vector<std::string>& warnings) {
    require_object(j, ctx);
    comps::PeerEntry peer;
    peer.name = string_at(j, ctx, "name");
    const json* multiples = find(j, ctx, "multiples");
    if (!multiples)
        return peer;
    const Ctx mctx = ctx.field("multiples");
    require_object(*multiples, mctx);
    for (const auto& [key, cells] : multiples->items()) {
        const auto multiple = comps::multiple_from_string(key);
        if (!multiple)
            mctx.field(key).fail("unknown multiple (expected ev_sales, ev_ebitda, ev_ebit or "
                                 "eqv_net_income)");
        const Ctx cctx = mctx.field(key);
        require_object(cells, cctx);
        for (const auto& [period, value] : cells.items()) {
            if (value.is_null() || (value.is_string() && value.get<std::string>() == "n.m."))
                continue; // not meaningful: a first-class absent cell
            const double v = as_number(value, cctx.field(period));
            if (comps::level_of(*multiple) == comps::ValueLevel::Enterprise && v < 0.0)
                warnings.push_back(peer.name + " " + comps::to_string(*multiple) + " " + period +
                                   " is negative; EV multiples of loss-makers are usually left "
                                   "blank");
            peer.multiples[*multiple][period] = v;
            periods.insert(period);
        }
    }
    return peer;
}

comps::TransactionEntry parse_transaction(const json& j, const Ctx& ctx) {
    require_object(j, ctx);
    comps::TransactionEntry deal;
    deal.target = string_at(j, ctx, "target");
    deal.acquirer = string_at(j, ctx, "acquirer");
    deal.date = string_or(j, ctx, "date", "");
    deal.ev = number_or(j, ctx, "ev", 0.0);
    if (deal.ev < 0.0)
        ctx.field("ev").invalid("transaction EV must be >= 0");
    if (const json* multiples = find(j, ctx, "multiples")) {
        const Ctx mctx = ctx.field("multiples");
        require_object(*multiples, mctx);
        for (const auto& [key, value] : multiples->items()) {
            const auto multiple = comps::multiple_from_string(key);
            if (!multiple)
                mctx.field(key).fail("unknown multiple");
            if (value.is_null() || (value.is_string() && value.get<std::string>() == "n.m."))
                continue;
            deal.multiples[*multiple] = as_number(value, mctx.field(key));
        }
    }
    return deal;
}

} // namespace

std::vector<std::string> ValuationDocument::scenario_labels() const {
    std::vector<std::string> labels{"base"};
    for (const auto& [label, patch] : scenario_patches)
        labels.push_back(label);
    return labels;
}

bool ValuationDocument::has_scenario(const std::string& label) const {
    return label == "base" || scenario_patches.count(label) > 0;
}

sensitivity::Scenario ValuationDocument::scenario(const std::string& label) const {
    if (label == "base")
        return base;
    const auto it = scenario_patches.find(label);
    if (it == scenario_patches.end())
        throw ValidationError("unknown scenario '" + label + "'");
    json merged = base_json;
    merged.merge_patch(it->second);
    const Ctx ctx{"scenario '" + label + "'", ""};
    sensitivity::Scenario s = parse_scenario(merged, ctx, label);
    validate_scenario(s, ctx);
    return s;
}

ValuationDocument parse_valuation_document(const std::string& text, const std::string& source) {
    const json root = parse_json(text, source);
    const Ctx ctx{source, ""};
    require_object(root, ctx);

    ValuationDocument document;
    document.company = parse_company(require(root, ctx, "company"), ctx.field("company"));

    document.base_json = root;
    document.base_json.erase("scenarios");
    document.base = parse_scenario(document.base_json, ctx, "base");
    validate_scenario(document.base, ctx);

    if (const json* scenarios = find(root, ctx, "scenarios")) {
        const Ctx sctx = ctx.field("scenarios");
        require_object(*scenarios, sctx);
        for (const auto& [label, patch] : scenarios->items()) {
            if (label == "base")
                sctx.field(label).invalid("'base' is reserved for the document's own sections");
            document.scenario_patches[label] = patch;
        }
        // Validate every override up front so a broken bear case fails at
        // load, not mid-sweep.
        for (const auto& [label, patch] : document.scenario_patches)
            document.scenario(label);
    }
    return document;
}

ValuationDocument load_valuation_document(const std::filesystem::path& path) {
    return parse_valuation_document(read_file(path), path.string());
}

PeersFile parse_peers_file(const std::string& text, const std::string& source) {
    const json root = parse_json(text, source);
    const Ctx ctx{source, ""};
    require_object(root, ctx);

    PeersFile file;
    std::set<std::string> seen_periods;

    const json& peers = require(root, ctx, "peers");
    const Ctx pctx = ctx.field("peers");
    if (!peers.is_array())
        pctx.fail("expected an array");
    for (std::size_t i = 0; i < peers.size(); ++i)
        file.peers.push_back(parse_peer(peers[i], pctx.index(i), seen_periods, file.warnings));

    if (const json* periods = find(root, ctx, "periods")) {
        const Ctx prctx = ctx.field("periods");
        if (!periods->is_array())
            prctx.fail("expected an array");
        for (std::size_t i = 0; i < periods->size(); ++i) {
            const json& p = (*periods)[i];
            if (!p.is_string())
                prctx.index(i).fail("expected a string period label");
            file.periods.push_back(p.get<std::string>());
        }
    } else {
        file.periods.assign(seen_periods.begin(), seen_periods.end());
    }

    if (const json* transactions = find(root, ctx, "transactions")) {
        const Ctx tctx = ctx.field("transactions");
        if (!transactions->is_array())
            tctx.fail("expected an array");
        for (std::size_t i = 0; i < transactions->size(); ++i)
            file.transactions.push_back(parse_transaction((*transactions)[i], tctx.index(i)));
    }
    return file;
}

PeersFile load_peers_file(const std::filesystem::path& path) {
    return parse_peers_file(read_file(path), path.string());
}

} // namespace valuation::doc
