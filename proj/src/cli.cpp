#include "valuation/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "valuation/document.hpp"
#include "valuation/report.hpp"

namespace valuation::cli {

namespace {

struct Options {
    std::string input;
    std::string scenario = "base";
    std::string format = "table";
    std::string out_path;
    std::string rows_spec;
    std::string cols_spec;
};

report::ReportOptions report_options(const Options& options) {
    report::ReportOptions ro;
    ro.format = options.format == "csv" ? report::Format::Csv : report::Format::Table;
    return ro;
}

void deliver(const std::string& text, const Options& options, std::ostream& out) {
    if (options.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(options.out_path, std::ios::binary);
    if (!file)
        throw ValidationError("cannot open output path " + options.out_path);
    file << text;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& warning : warnings)
        err << "warning: " << warning << '\n';
}

double parse_axis_number(const std::string& text, const std::string& spec) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("bad axis value '" + text + "' in '" + spec + "'");
    }
}

int cmd_value(const Options& options, std::ostream& out, std::ostream& err) {
    const auto document = doc::load_valuation_document(options.input);
    if (!document.has_scenario(options.scenario))
        throw ValidationError("unknown scenario '" + options.scenario + "'");
    const auto scenario = document.scenario(options.scenario);
    const auto series = forecast::build_series(scenario.lines, scenario.post_horizon);
    const auto result = sensitivity::run_scenario(scenario);
    print_warnings(result.warnings, err);
    deliver(report::value_report(document.company, scenario.label, series, result,
                                 report_options(options)),
            options, out);
    return kExitOk;
}

int cmd_wacc(const Options& options, std::ostream& out, std::ostream&) {
    const auto document = doc::load_valuation_document(options.input);
    const auto scenario = document.scenario(options.scenario);
    const auto breakdown = capital::wacc_breakdown(scenario.capital);
    deliver(report::wacc_report(document.company, scenario.label, breakdown,
                                report_options(options)),
            options, out);
    return kExitOk;
}

int cmd_sensitivity(const Options& options, std::ostream& out, std::ostream&) {
    if (options.rows_spec.empty() || options.cols_spec.empty())
        throw ValidationError("sensitivity needs --rows and --cols axis specs");
    const auto rows = parse_axis_spec(options.rows_spec);
    const auto cols = parse_axis_spec(options.cols_spec);
    const auto document = doc::load_valuation_document(options.input);
    const auto scenario = document.scenario(options.scenario);
    const auto grid = sensitivity::sweep(scenario, rows, cols);
    deliver(report::sensitivity_report(document.company, grid, report_options(options)), options,
            out);
    return kExitOk;
}

int cmd_comps(const Options& options, std::ostream& out, std::ostream& err) {
    const auto peers = doc::load_peers_file(options.input);
    if (peers.peers.empty())
        throw ValidationError("peer set is empty");
    print_warnings(peers.warnings, err);
    deliver(report::comps_report(peers, report_options(options)), options, out);
    return kExitOk;
}

} // namespace

sensitivity::Axis parse_axis_spec(const std::string& spec) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos)
        throw ValidationError("axis spec '" + spec + "' must look like wacc=0.07,0.08 or "
                              "growth=0.0:0.005:7");
    const std::string name = spec.substr(0, eq);
    const std::string body = spec.substr(eq + 1);

    sensitivity::Axis axis;
    if (name == "wacc")
        axis.param = sensitivity::SweepParam::Wacc;
    else if (name == "growth")
        axis.param = sensitivity::SweepParam::Growth;
    else if (name == "cagr")
        axis.param = sensitivity::SweepParam::Cagr;
    else
        throw ValidationError("unknown sweep parameter '" + name +
                              "' (expected wacc, growth or cagr)");

    if (body.empty())
        throw ValidationError("axis spec '" + spec + "' has no values");

    if (body.find(':') != std::string::npos) {
        // start:step:count
        std::vector<std::string> parts;
        std::size_t begin = 0;
        while (true) {
            const std::size_t colon = body.find(':', begin);
            parts.push_back(body.substr(begin, colon - begin));
            if (colon == std::string::npos)
                break;
            begin = colon + 1;
        }
        if (parts.size() != 3)
            throw ValidationError("range axis spec '" + spec + "' must be start:step:count");
        const double start = parse_axis_number(parts[0], spec);
        const double step = parse_axis_number(parts[1], spec);
        const double count_raw = parse_axis_number(parts[2], spec);
        const int count = static_cast<int>(count_raw);
        if (count <= 0 || count != count_raw)
            throw ValidationError("axis count in '" + spec + "' must be a positive integer");
        for (int i = 0; i < count; ++i)
            axis.values.push_back(start + step * i);
        return axis;
    }

    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = body.find(',', begin);
        axis.values.push_back(parse_axis_number(body.substr(begin, comma - begin), spec));
        if (comma == std::string::npos)
            break;
        begin = comma + 1;
    }
    return axis;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic discounted-cash-flow valuation engine"};
    app.require_subcommand(1);

    Options options;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", options.input, "Input document path")->required();
        cmd->add_option("--format", options.format, "Output format")
            ->check(CLI::IsMember({"table", "csv"}));
        cmd->add_option("--out", options.out_path, "Write the report to a file");
    };

    CLI::App* value = app.add_subcommand("value", "Run a valuation and print the result");
    add_common(value);
    value->add_option("--scenario", options.scenario, "Scenario label (default: base)");

    CLI::App* sens = app.add_subcommand("sensitivity", "Two-parameter sensitivity grid");
    add_common(sens);
    sens->add_option("--scenario", options.scenario, "Scenario label (default: base)");
    sens->add_option("--rows", options.rows_spec, "Row axis, e.g. growth=0.0:0.005:7")
        ->required();
    sens->add_option("--cols", options.cols_spec, "Column axis, e.g. wacc=0.07:0.005:9")
        ->required();

    CLI::App* wacc = app.add_subcommand("wacc", "Cost-of-capital build");
    add_common(wacc);
    wacc->add_option("--scenario", options.scenario, "Scenario label (default: base)");

    CLI::App* comps = app.add_subcommand("comps", "Comparables report");
    add_common(comps);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0)
            err << "error: " << e.what() << '\n';
        else
            out << app.help();
        return e.get_exit_code();
    }

    try {
        if (value->parsed())
            return cmd_value(options, out, err);
        if (sens->parsed())
            return cmd_sensitivity(options, out, err);
        if (wacc->parsed())
            return cmd_wacc(options, out, err);
        if (comps->parsed())
            return cmd_comps(options, out, err);
        err << "error: no subcommand\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const DivergentPerpetuityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDivergent;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(std::move(args), std::cout, std::cerr);
}

} // namespace valuation::cli
