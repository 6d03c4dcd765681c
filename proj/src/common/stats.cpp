#include "sskh/common/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "sskh/common/error.hpp"

namespace sskh::stats {

double normal_cdf(double z) {
    static const boost::math::normal_distribution<double> unit;
    if (z == std::numeric_limits<double>::infinity()) return 1.0;
    if (z == -std::numeric_limits<double>::infinity()) return 0.0;
    return boost::math::cdf(unit, z);
}

double rounded_gaussian_pmf(std::int64_t k, double sigma) {
    const double kd = static_cast<double>(k);
    // Upper tail differences keep precision when k is far in the positive tail.
    if (kd > 0) {
        return boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(),
                                                        (kd - 0.5) / sigma)) -
               boost::math::cdf(boost::math::complement(boost::math::normal_distribution<double>(),
                                                        (kd + 0.5) / sigma));
    }
    return normal_cdf((kd + 0.5) / sigma) - normal_cdf((kd - 0.5) / sigma);
}

ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> probabilities, double min_expected) {
    require(observed.size() == probabilities.size() && !observed.empty(),
            ErrorCode::dimension_mismatch, "chi-square: observed/probability size mismatch");
    const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
    const double psum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    require(psum > 0, ErrorCode::invalid_argument, "chi-square: probabilities sum to zero");

    std::vector<double> obs;
    std::vector<double> exp;
    double o = 0.0;
    double e = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o += observed[i];
        e += n * probabilities[i] / psum;
        if (e >= min_expected) {
            obs.push_back(o);
            exp.push_back(e);
            o = e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) {
        if (exp.empty()) {
            obs.push_back(o);
            exp.push_back(e);
        } else {
            obs.back() += o;
            exp.back() += e;
        }
    }

    ChiSquareResult r;
    r.dof = static_cast<int>(exp.size()) - 1;
    for (std::size_t i = 0; i < exp.size(); ++i) {
        if (exp[i] > 0) r.statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    }
    if (r.dof < 1) {
        r.p_value = 1.0;
        return r;
    }
    boost::math::chi_squared_distribution<double> dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

ChiSquareResult chi_square_rounded_gaussian(std::span<const std::int64_t> values, double sigma,
                                            std::int64_t limit) {
    require(sigma > 0 && limit >= 0, ErrorCode::invalid_argument,
            "chi-square: sigma must be positive and limit nonnegative");
    const std::size_t bins = static_cast<std::size_t>(2 * limit + 1);
    std::vector<double> observed(bins, 0.0);
    std::vector<double> probs(bins, 0.0);
    for (std::int64_t v : values) {
        if (v >= -limit && v <= limit) observed[static_cast<std::size_t>(v + limit)] += 1.0;
    }
    for (std::int64_t k = -limit; k <= limit; ++k) {
        probs[static_cast<std::size_t>(k + limit)] = rounded_gaussian_pmf(k, sigma);
    }
    return chi_square_gof(observed, probs);
}

ChiSquareResult chi_square_uniform(std::span<const double> counts) {
    std::vector<double> probs(counts.size(), 1.0);
    return chi_square_gof(counts, probs, 0.0);
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace sskh::stats
