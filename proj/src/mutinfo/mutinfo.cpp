#include "sskh/mutinfo/mutinfo.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/random/normal_distribution.hpp>

#include "sskh/common/error.hpp"

namespace sskh::mutinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// det(S) / (det S11 det S22) at or below this counts as singular.
constexpr double kSingularRatio = 1e-12;

double spread(const std::vector<double>& v) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (double x : v) {
        s1 += x;
        s2 += x * x;
    }
    return static_cast<double>(v.size()) * s2 - s1 * s1;
}

Eigen::MatrixXd design_matrix(const std::vector<double>& v) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
        m(static_cast<Eigen::Index>(i), 0) = 1.0;
        m(static_cast<Eigen::Index>(i), 1) = v[i];
    }
    return m;
}

}  // namespace

void OverlapDesign::validate() const {
    require(xs.size() == ws.size(), ErrorCode::dimension_mismatch, "xs and ws differ in length");
    require(xs.size() >= 3, ErrorCode::invalid_argument, "designs need at least 3 points");
    require(a <= xs.size(), ErrorCode::invalid_argument, "overlap a exceeds design length");
    require(sigma > 0 && std::isfinite(sigma), ErrorCode::invalid_argument, "sigma must be > 0");
    for (std::size_t i = 0; i < a; ++i)
        require(xs[i] == ws[i], ErrorCode::invalid_argument, "shared points must coincide");
    require(spread(xs) > 0 && spread(ws) > 0, ErrorCode::singular_design, "degenerate design");
}

nlohmann::json OverlapDesign::to_json() const {
    return {{"xs", xs}, {"ws", ws}, {"a", a}, {"sigma", sigma}};
}

OverlapDesign OverlapDesign::from_json(const nlohmann::json& j) {
    OverlapDesign d;
    d.xs = j.at("xs").get<std::vector<double>>();
    d.ws = j.at("ws").get<std::vector<double>>();
    d.a = j.at("a").get<std::size_t>();
    d.sigma = j.value("sigma", 1.0);
    return d;
}

MiSummary MiSummary::compute(const OverlapDesign& d, C3Mode mode) {
    MiSummary s;
    for (std::size_t i = 0; i < d.xs.size(); ++i) {
        s.X1 += d.xs[i];
        s.X2 += d.xs[i] * d.xs[i];
        s.W1 += d.ws[i];
        s.W2 += d.ws[i] * d.ws[i];
    }
    for (std::size_t i = 0; i < d.a; ++i) {
        s.C1 += d.xs[i];
        s.C2 += d.xs[i] * d.xs[i];
    }
    // sum over ordered pairs i != j equals (sum)^2 - sum of squares
    s.C3 = mode == C3Mode::shared ? s.C1 * s.C1 - s.C2 : s.X1 * s.X1 - s.X2;
    return s;
}

double marginal_entropy(const std::vector<double>& xs, double sigma) {
    require(sigma > 0, ErrorCode::invalid_argument, "sigma must be > 0");
    const double sp = spread(xs);
    require(xs.size() >= 2 && sp > 0, ErrorCode::singular_design, "degenerate design");
    return 2.0 * std::log(sigma) - 0.5 * std::log(sp) + 1.0 + std::log(2.0 * std::numbers::pi);
}

double gaussian_mi(const Eigen::Matrix4d& cov) {
    const double d11 = cov.topLeftCorner<2, 2>().determinant();
    const double d22 = cov.bottomRightCorner<2, 2>().determinant();
    const double ratio = cov.determinant() / (d11 * d22);
    if (!(ratio > kSingularRatio)) return kInf;
    return -0.5 * std::log(ratio);
}

OracleResult covariance_oracle(const OverlapDesign& d) {
    d.validate();
    const auto n = static_cast<Eigen::Index>(d.xs.size());
    const Eigen::MatrixXd x = design_matrix(d.xs);
    const Eigen::MatrixXd w = design_matrix(d.ws);
    const Eigen::Matrix2d a = (x.transpose() * x).inverse();
    const Eigen::Matrix2d dblk = (w.transpose() * w).inverse();
    // Only the shared rows carry common noise: B = A X^T I_a W D.
    Eigen::MatrixXd shared = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d.a); ++i) shared(i, i) = 1.0;
    const Eigen::Matrix2d b = a * x.transpose() * shared * w * dblk;

    OracleResult r;
    const double s2 = d.sigma * d.sigma;
    r.sigma.topLeftCorner<2, 2>() = s2 * a;
    r.sigma.topRightCorner<2, 2>() = s2 * b;
    r.sigma.bottomLeftCorner<2, 2>() = s2 * b.transpose();
    r.sigma.bottomRightCorner<2, 2>() = s2 * dblk;

    const double c = 1.0 + std::log(2.0 * std::numbers::pi);
    r.entropy_first = 0.5 * std::log(r.sigma.topLeftCorner<2, 2>().determinant()) + c;
    r.entropy_second = 0.5 * std::log(r.sigma.bottomRightCorner<2, 2>().determinant()) + c;
    r.mi = gaussian_mi(r.sigma);
    r.entropy_joint = std::isinf(r.mi) ? -kInf : 0.5 * std::log(r.sigma.determinant()) + 2.0 * c;
    return r;
}

double closed_form_mi(const OverlapDesign& d, C3Mode mode) {
    d.validate();
    const MiSummary s = MiSummary::compute(d, mode);
    const double l = static_cast<double>(d.xs.size());
    const double a = static_cast<double>(d.a);
    const double dx = l * s.X2 - s.X1 * s.X1;
    const double dw = l * s.W2 - s.W1 * s.W1;
    const double p = (l * s.C2 - 2.0 * s.C1 * s.X1 + a * s.X2) *
                     (l * s.C2 - 2.0 * s.C1 * s.W1 + a * s.W2);
    const double q = ((a - 1.0) * s.C2 - s.C3) *
                     ((a - 1.0) * s.C2 - s.C3 + l * (s.X2 + s.W2) - 2.0 * s.X1 * s.W1);
    const double inner = 1.0 - p / (dx * dw) + q / (dx * dw);
    require(inner > 0.0, ErrorCode::singular_design,
            "closed-form MI: inner expression is not positive");
    return -0.5 * std::log(inner) + 0.0;   // + 0.0 turns -0 into 0
}

MonteCarloResult monte_carlo_mi(const OverlapDesign& d, std::size_t trials, Stream& rng) {
    d.validate();
    require(trials >= 1000, ErrorCode::invalid_argument, "Monte Carlo MI needs >= 1000 trials");
    const auto n = static_cast<Eigen::Index>(d.xs.size());
    const Eigen::MatrixXd x = design_matrix(d.xs);
    const Eigen::MatrixXd w = design_matrix(d.ws);
    // Least-squares maps from responses to (intercept, slope).
    const Eigen::MatrixXd px = (x.transpose() * x).inverse() * x.transpose();
    const Eigen::MatrixXd pw = (w.transpose() * w).inverse() * w.transpose();

    boost::random::normal_distribution<double> noise(0.0, d.sigma);
    std::vector<Eigen::Vector4d> z(trials);
    Eigen::VectorXd u(n);
    Eigen::VectorXd v(n);
    for (auto& zi : z) {
        for (Eigen::Index i = 0; i < n; ++i) u(i) = noise(rng);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = i < static_cast<Eigen::Index>(d.a) ? u(i) : noise(rng);
        zi.head<2>() = px * u;
        zi.tail<2>() = pw * v;
    }

    const double nt = static_cast<double>(trials);
    Eigen::Vector4d mu = Eigen::Vector4d::Zero();
    for (const auto& zi : z) mu += zi;
    mu /= nt;
    Eigen::Matrix4d scatter = Eigen::Matrix4d::Zero();
    for (const auto& zi : z) scatter += (zi - mu) * (zi - mu).transpose();

    MonteCarloResult r;
    r.estimate = gaussian_mi(scatter / (nt - 1.0));

    // Removing z_i from the scatter matrix: S - n/(n-1) (z_i - mu)(z_i - mu)^T.
    std::vector<double> loo(trials);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const Eigen::Vector4d c = z[i] - mu;
        loo[i] = gaussian_mi((scatter - (nt / (nt - 1.0)) * c * c.transpose()) / (nt - 2.0));
        loo_mean += loo[i];
    }
    loo_mean /= nt;
    double ss = 0.0;
    for (double m : loo) ss += (m - loo_mean) * (m - loo_mean);
    r.std_error = std::sqrt((nt - 1.0) / nt * ss);
    return r;
}

}  // namespace sskh::mutinfo
