#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sskh::stats {

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

double normal_cdf(double z);

// P(round(N(0, sigma^2)) = k), rounding ties away from zero (measure zero).
double rounded_gaussian_pmf(std::int64_t k, double sigma);

// Pearson goodness of fit. Adjacent bins are merged left to right until each
// expected count reaches min_expected. `probabilities` are renormalized.
ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> probabilities,
                               double min_expected = 5.0);

// Integer samples against round(N(0, sigma^2)), restricted to |v| <= limit
// (both observed and expected are conditioned on the window).
ChiSquareResult chi_square_rounded_gaussian(std::span<const std::int64_t> values, double sigma,
                                            std::int64_t limit);

// Counts per category against the uniform distribution.
ChiSquareResult chi_square_uniform(std::span<const double> counts);

double mean(std::span<const double> v);
// Sample standard deviation (n - 1 denominator).
double stddev(std::span<const double> v);

}  // namespace sskh::stats
