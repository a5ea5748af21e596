#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "valuation/sensitivity.hpp"

namespace valuation::cli {

// Stable exit-status contract.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;      ///< input file could not be decoded
constexpr int kExitValidation = 3; ///< inputs violate a model invariant
constexpr int kExitDivergent = 4;  ///< perpetuity diverges (g >= r)

/// "<param>=<v1,v2,...>" or "<param>=<start:step:count>" with param one of
/// wacc, growth, cagr.
sensitivity::Axis parse_axis_spec(const std::string& spec);

/// Run the CLI with explicit streams; `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

} // namespace valuation::cli
