#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "valuation/errors.hpp"

namespace valuation::stats {

inline double mean(std::span<const double> xs) {
    if (xs.empty())
        throw DegenerateInputError("mean of empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Median with the arithmetic-midpoint convention for even counts.
inline double median(std::vector<double> xs) {
    if (xs.empty())
        throw DegenerateInputError("median of empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1)
        return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

/// Population covariance (divide by N). Only ratios of these moments are
/// used, so the normalization cancels; population is picked for
/// reproducibility.
inline double covariance_population(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DegenerateInputError("covariance needs two equal-length samples of size >= 2");
    const double mx = mean(xs);
    const double my = mean(ys);
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc += (xs[i] - mx) * (ys[i] - my);
    return acc / static_cast<double>(xs.size());
}

inline double variance_population(std::span<const double> xs) {
    return covariance_population(xs, xs);
}

} // namespace valuation::stats
