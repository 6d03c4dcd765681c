#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "sskh/common/random.hpp"

namespace sskh::mutinfo {

// Two regression designs of equal length whose first `a` abscissae coincide.
struct OverlapDesign {
    std::vector<double> xs;
    std::vector<double> ws;
    std::size_t a = 0;
    double sigma = 1.0;

    void validate() const;
    nlohmann::json to_json() const;
    static OverlapDesign from_json(const nlohmann::json& j);
};

// How the cross-product aggregate C3 is formed.
enum class C3Mode {
    shared,    // over the a shared indices: C1^2 - C2
    literal,   // over all indices of xs: X1^2 - X2
};

struct MiSummary {
    double X1 = 0, X2 = 0, W1 = 0, W2 = 0, C1 = 0, C2 = 0, C3 = 0;

    static MiSummary compute(const OverlapDesign& d, C3Mode mode = C3Mode::shared);
};

// Differential entropy (nats) of the fitted (intercept, slope) pair.
double marginal_entropy(const std::vector<double>& xs, double sigma);

struct OracleResult {
    Eigen::Matrix4d sigma;       // covariance of (a1, b1, a2, b2)
    double mi = 0.0;             // +infinity when sigma is singular
    double entropy_first = 0.0;
    double entropy_second = 0.0;
    double entropy_joint = 0.0;  // -infinity when sigma is singular
};

// Covariance assembled from the block formulas; ground truth for the closed form.
OracleResult covariance_oracle(const OverlapDesign& d);

double closed_form_mi(const OverlapDesign& d, C3Mode mode = C3Mode::shared);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Gaussian MI of the empirical covariance of simulated fits; delete-one jackknife error.
MonteCarloResult monte_carlo_mi(const OverlapDesign& d, std::size_t trials, Stream& rng);

// Gaussian MI between the first two and last two coordinates of a 4x4 covariance.
double gaussian_mi(const Eigen::Matrix4d& cov);

}  // namespace sskh::mutinfo
