#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "sskh/channel/channel.hpp"
#include "sskh/common/shape.hpp"

namespace sskh::rgpc {

struct RegressionPoint {
    double x = 0.0;
    double y = 0.0;
};

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
};

// Ordinary least squares; throws singular_design when all x coincide.
LinearFit fit_least_squares(std::span<const RegressionPoint> points);

// x -> scale * shape(x).
struct Transform {
    Shape kind = Shape::identity;
    double scale = 1.0;

    double operator()(double x) const;

    // The transform that linearizes a channel function (same shape and scale).
    static Transform matching(const channel::FuncSpec& f) { return {f.kind, f.scale}; }
};

// Transformed regressor with the original residues; sorted by x.
struct RegressionData {
    std::vector<RegressionPoint> points;
    std::int64_t modulus = 0;
    Transform transform;
};

RegressionData transform_dataset(const channel::Dataset& d, const Transform& t = {});

enum class Segmentation {
    value,   // kappa equal-width cells of the regressor range [0, m)
    index,   // kappa cells of consecutive sample indices
};

struct GridOptions {
    Segmentation segmentation = Segmentation::value;
    std::int64_t max_kappa = 0;        // 0: ceil(ell / 100)
    std::size_t min_points = 30;       // smaller cells are skipped
    // Refit each cell on residuals re-centered mod m, so noise that wrapped
    // across a period boundary does not drag the slope down.
    int modular_refits = 2;
    // Only cells whose plain slope is within this fraction of kappa get refit.
    double refit_window = 0.5;
    // After the grid picks a cell, extend its line to the whole data set.
    bool global_refine = true;
};

struct Hypothesis {
    double beta0_hat = 0.0;
    double beta1_hat = 0.0;
    std::int64_t kappa = 1;
    std::int64_t segment = 1;
    double delta = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double cell_beta0_hat = 0.0;   // the winning cell's own fit, before refinement
    double cell_beta1_hat = 0.0;
    bool refined = false;
    Transform transform;   // applied to raw x before the line

    // Value of the fitted line at raw input x.
    double operator()(double x) const { return beta0_hat + beta1_hat * transform(x); }

    nlohmann::json to_json() const;
    static Hypothesis from_json(const nlohmann::json& j);
};

// Minimizes |slope(kappa, i) - kappa| over 1 <= i <= kappa <= max_kappa; ties go to
// smaller kappa, then smaller i.
Hypothesis grid_search_hypothesis(const RegressionData& data, const GridOptions& opts = {});
Hypothesis grid_search_hypothesis(const channel::Dataset& d, const GridOptions& opts = {});

}  // namespace sskh::rgpc
