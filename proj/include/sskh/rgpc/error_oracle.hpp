#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sskh/channel/channel.hpp"
#include "sskh/rgpc/regression.hpp"

namespace sskh::rgpc {

// Immutable total map Z_m -> signed integer error.
class ErrorOracle {
public:
    std::int64_t modulus() const { return modulus_; }
    const std::vector<std::int64_t>& table() const { return table_; }
    double sigma_hat() const { return sigma_hat_; }
    double coverage() const { return coverage_; }
    std::size_t sample_count() const { return sample_count_; }
    // Signed pre-rounding errors of the residues backed by a direct sample.
    const std::vector<double>& pre_errors() const { return pre_errors_; }

    std::int64_t operator()(std::int64_t x) const;

    // Oracle from a stored table (e.g. loaded from CSV); every entry counts as sampled.
    static ErrorOracle from_table(std::int64_t modulus, std::vector<std::int64_t> table);

    friend ErrorOracle build_error_oracle(const channel::Dataset& d, const Hypothesis& h);

private:
    std::int64_t modulus_ = 0;
    std::vector<std::int64_t> table_;
    std::vector<double> pre_errors_;
    double sigma_hat_ = 0.0;
    double coverage_ = 0.0;
    std::size_t sample_count_ = 0;
};

ErrorOracle build_error_oracle(const channel::Dataset& d, const Hypothesis& h);

inline std::int64_t eval_error(const ErrorOracle& o, std::int64_t x) { return o(x); }

struct ErrorStatistics {
    double mean = 0.0;
    double std = 0.0;
    double chi_square_p = 1.0;
    double bound_violation_rate = 0.0;
    double bound = 0.0;

    nlohmann::json to_json() const;
};

inline constexpr double kBoundConstant = 2.807034;

// 2.807034 * (1 + sqrt((1 + b) / ell)) * sigma
double error_bound(double sigma, std::size_t ell, double b = 4.0);

// mean/std over the table; chi-square of table values with |e| <= 4 sigma against
// round(N(0, sigma^2)); violation rate of the sampled pre-errors against error_bound.
ErrorStatistics error_statistics(const ErrorOracle& o, double sigma, double b = 4.0);
// Uses the oracle's realized sigma_hat as the noise scale.
ErrorStatistics error_statistics(const ErrorOracle& o);

std::string error_table_csv(const ErrorOracle& o);
ErrorOracle error_table_from_csv(const std::string& text, std::int64_t modulus);

// Counts of table values with bin width 1: rows "e,count" for every e in [min, max].
std::string error_histogram_csv(const ErrorOracle& o);

}  // namespace sskh::rgpc
