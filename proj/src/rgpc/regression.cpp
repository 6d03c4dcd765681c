#include "sskh/rgpc/regression.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"

namespace sskh::rgpc {

LinearFit fit_least_squares(std::span<const RegressionPoint> points) {
    require(points.size() >= 2, ErrorCode::singular_design, "least squares needs >= 2 points");
    const double n = static_cast<double>(points.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : points) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    require(sxx > 0.0, ErrorCode::singular_design, "least squares: all x values are equal");
    const double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

double Transform::operator()(double x) const {
    if (kind == Shape::identity) return scale * x;
    return scale * shape_value(kind, x);
}

RegressionData transform_dataset(const channel::Dataset& d, const Transform& t) {
    require(t.scale > 0, ErrorCode::invalid_argument, "transform scale must be positive");
    RegressionData out;
    out.modulus = d.modulus;
    out.transform = t;
    out.points.reserve(d.points.size());
    // Every non-identity shape is only monotone (or defined) on x >= 0.
    const bool needs_nonnegative = t.kind != Shape::identity;
    for (const auto& p : d.points) {
        require(!needs_nonnegative || p.x >= 0, ErrorCode::invalid_argument,
                "transform " + to_string(t.kind) + " needs x >= 0");
        out.points.push_back({t(static_cast<double>(p.x)), static_cast<double>(p.y)});
    }
    return out;
}

nlohmann::json Hypothesis::to_json() const {
    return {{"beta0_hat", beta0_hat},
            {"beta1_hat", beta1_hat},
            {"kappa", kappa},
            {"segment", segment},
            {"delta", delta},
            {"x_lo", x_lo},
            {"x_hi", x_hi},
            {"cell_beta0_hat", cell_beta0_hat},
            {"cell_beta1_hat", cell_beta1_hat},
            {"refined", refined},
            {"transform", to_string(transform.kind)},
            {"transform_scale", transform.scale}};
}

Hypothesis Hypothesis::from_json(const nlohmann::json& j) {
    Hypothesis h;
    h.beta0_hat = j.at("beta0_hat").get<double>();
    h.beta1_hat = j.at("beta1_hat").get<double>();
    h.kappa = j.at("kappa").get<std::int64_t>();
    h.segment = j.at("segment").get<std::int64_t>();
    h.delta = j.at("delta").get<double>();
    h.x_lo = j.at("x_lo").get<double>();
    h.x_hi = j.at("x_hi").get<double>();
    h.cell_beta0_hat = j.value("cell_beta0_hat", h.beta0_hat);
    h.cell_beta1_hat = j.value("cell_beta1_hat", h.beta1_hat);
    h.refined = j.value("refined", false);
    h.transform.kind = parse_shape(j.value("transform", std::string("identity")));
    h.transform.scale = j.value("transform_scale", 1.0);
    return h;
}

namespace {

// Prefix sums of a shifted regressor so each cell's OLS costs O(1).
class PrefixSums {
public:
    PrefixSums(const std::vector<RegressionPoint>& pts, double shift) : shift_(shift) {
        const std::size_t n = pts.size();
        sx_.assign(n + 1, 0);
        sy_.assign(n + 1, 0);
        sxx_.assign(n + 1, 0);
        sxy_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const long double x = static_cast<long double>(pts[i].x) - shift;
            const long double y = pts[i].y;
            sx_[i + 1] = sx_[i] + x;
            sy_[i + 1] = sy_[i] + y;
            sxx_[i + 1] = sxx_[i] + x * x;
            sxy_[i + 1] = sxy_[i] + x * y;
        }
    }

    // OLS on points [lo, hi); false when the cell has no spread in x.
    bool fit(std::size_t lo, std::size_t hi, LinearFit& out) const {
        const long double n = static_cast<long double>(hi - lo);
        const long double sx = sx_[hi] - sx_[lo];
        const long double sy = sy_[hi] - sy_[lo];
        const long double sxx = (sxx_[hi] - sxx_[lo]) - sx * sx / n;
        const long double sxy = (sxy_[hi] - sxy_[lo]) - sx * sy / n;
        if (!(sxx > 0)) return false;
        const long double slope = sxy / sxx;
        out.slope = static_cast<double>(slope);
        out.intercept = static_cast<double>(sy / n - slope * (sx / n + shift_));
        return true;
    }

private:
    double shift_;
    std::vector<long double> sx_, sy_, sxx_, sxy_;
};

// Least squares on y' = line(x) + recenter(y - line(x)), repeated `rounds` times.
LinearFit modular_refit(const std::vector<RegressionPoint>& pts, std::size_t lo, std::size_t hi,
                        LinearFit f, std::int64_t m, int rounds) {
    const long double n = static_cast<long double>(hi - lo);
    for (int r = 0; r < rounds; ++r) {
        long double sx = 0, sy = 0;
        for (std::size_t j = lo; j < hi; ++j) {
            const double line = f.intercept + f.slope * pts[j].x;
            sx += pts[j].x;
            sy += line + recenter(pts[j].y - line, m);
        }
        const long double mx = sx / n;
        const long double my = sy / n;
        long double sxx = 0, sxy = 0;
        for (std::size_t j = lo; j < hi; ++j) {
            const double line = f.intercept + f.slope * pts[j].x;
            const long double dx = pts[j].x - mx;
            sxx += dx * dx;
            sxy += dx * (line + recenter(pts[j].y - line, m) - my);
        }
        const long double slope = sxy / sxx;
        f.slope = static_cast<double>(slope);
        f.intercept = static_cast<double>(my - slope * mx);
    }
    return f;
}

// Grows a window around the winning cell, doubling its width each step and
// refitting on unwrapped residuals, until it spans the whole data set. Each
// step's slope error is small enough that the doubled window stays inside one
// residue period.
LinearFit unwrap_globally(const std::vector<RegressionPoint>& pts, const std::vector<double>& xs,
                          LinearFit f, double x_lo, double x_hi, std::int64_t m, int rounds) {
    const double center = 0.5 * (x_lo + x_hi);
    double half = std::max(0.5 * (x_hi - x_lo), 1e-9);
    const double full_lo = xs.front();
    const double full_hi = xs.back();
    while (true) {
        half *= 2.0;
        const double lo_x = center - half;
        const double hi_x = center + half;
        const auto lo = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), lo_x) - xs.begin());
        const auto hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), hi_x) - xs.begin());
        if (hi > lo + 2 && xs[lo] < xs[hi - 1]) f = modular_refit(pts, lo, hi, f, m, rounds);
        if (lo_x <= full_lo && hi_x >= full_hi) break;
    }
    return f;
}

}  // namespace

Hypothesis grid_search_hypothesis(const RegressionData& data, const GridOptions& opts) {
    const auto& pts = data.points;
    const std::int64_t ell = static_cast<std::int64_t>(pts.size());
    require(ell >= 200, ErrorCode::precondition, "grid search needs at least 200 points");
    require(data.modulus >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
    require(std::is_sorted(pts.begin(), pts.end(),
                           [](const RegressionPoint& a, const RegressionPoint& b) { return a.x < b.x; }),
            ErrorCode::invalid_argument, "grid search needs points sorted by x");
    const std::int64_t kappa_max = opts.max_kappa > 0 ? opts.max_kappa : (ell + 99) / 100;
    const double m = static_cast<double>(data.modulus);

    std::vector<double> xs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = pts[i].x;
    const PrefixSums sums(pts, m / 2.0);

    bool found = false;
    Hypothesis best;
    std::vector<std::size_t> edges;
    for (std::int64_t kappa = 1; kappa <= kappa_max; ++kappa) {
        edges.assign(static_cast<std::size_t>(kappa) + 1, 0);
        for (std::int64_t i = 0; i <= kappa; ++i) {
            if (opts.segmentation == Segmentation::index) {
                edges[i] = static_cast<std::size_t>(i * ell / kappa);
            } else {
                const double edge = m * static_cast<double>(i) / static_cast<double>(kappa);
                edges[i] = static_cast<std::size_t>(
                    std::lower_bound(xs.begin(), xs.end(), edge) - xs.begin());
            }
        }
        for (std::int64_t i = 1; i <= kappa; ++i) {
            const std::size_t lo = edges[i - 1];
            const std::size_t hi = edges[i];
            if (hi <= lo || hi - lo < opts.min_points || xs[lo] == xs[hi - 1]) continue;
            LinearFit f;
            if (!sums.fit(lo, hi, f)) continue;
            if (opts.modular_refits > 0 &&
                std::fabs(f.slope - static_cast<double>(kappa)) <= opts.refit_window * kappa)
                f = modular_refit(pts, lo, hi, f, data.modulus, opts.modular_refits);
            const double delta = std::fabs(f.slope - static_cast<double>(kappa));
            // Strict comparison keeps the earliest (kappa, i) on ties.
            if (!found || delta < best.delta) {
                found = true;
                best.beta0_hat = f.intercept;
                best.beta1_hat = f.slope;
                best.kappa = kappa;
                best.segment = i;
                best.delta = delta;
                best.x_lo = xs[lo];
                best.x_hi = xs[hi - 1];
            }
        }
    }
    require(found, ErrorCode::singular_design, "grid search: no cell with spread in x");
    best.transform = data.transform;
    best.cell_beta0_hat = best.beta0_hat;
    best.cell_beta1_hat = best.beta1_hat;
    if (opts.global_refine) {
        const auto f = unwrap_globally(pts, xs, {best.beta0_hat, best.beta1_hat}, best.x_lo,
                                       best.x_hi, data.modulus, std::max(opts.modular_refits, 1));
        best.beta0_hat = f.intercept;
        best.beta1_hat = f.slope;
        best.delta = std::fabs(f.slope - static_cast<double>(best.kappa));
        best.refined = true;
    }
    return best;
}

Hypothesis grid_search_hypothesis(const channel::Dataset& d, const GridOptions& opts) {
    return grid_search_hypothesis(transform_dataset(d), opts);
}

}  // namespace sskh::rgpc
