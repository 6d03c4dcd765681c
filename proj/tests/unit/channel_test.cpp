#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sskh/channel/channel.hpp"
#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"
#include "sskh/common/stats.hpp"

using namespace sskh;
using namespace sskh::channel;

namespace {

// Direct integral of the Gaussian density over [k - 1/2, k + 1/2].
double rounded_gaussian(std::int64_t k, double sigma) {
    const double s = sigma * std::sqrt(2.0);
    return 0.5 * (std::erfc((k - 0.5) / s) - std::erfc((k + 0.5) / s));
}

}  // namespace

TEST(Modular, RecenterRange) {
    EXPECT_EQ(recenter(std::int64_t{0}, 10), 0);
    EXPECT_EQ(recenter(std::int64_t{5}, 10), 5);
    EXPECT_EQ(recenter(std::int64_t{6}, 10), -4);
    EXPECT_EQ(recenter(std::int64_t{-1}, 10), -1);
    EXPECT_EQ(recenter(std::int64_t{6}, 11), 6);
    EXPECT_EQ(recenter(std::int64_t{7}, 11), -4);
    EXPECT_NEAR(recenter(12288.0 - 1.2, 12288), -1.2, 1e-9);
    EXPECT_EQ(round_half_away(2.5), 3);
    EXPECT_EQ(round_half_away(-2.5), -3);
}

TEST(Stats, RoundedGaussianPmfMatchesErfIntegral) {
    for (double sigma : {0.3, 1.0, 30.0})
        for (std::int64_t k = -5; k <= 5; ++k)
            EXPECT_NEAR(stats::rounded_gaussian_pmf(k, sigma), rounded_gaussian(k, sigma), 1e-12);
}

TEST(Stats, ChiSquareDetectsMismatch) {
    std::vector<double> fair(10, 1000.0), probs(10, 0.1);
    EXPECT_GT(stats::chi_square_gof(fair, probs).p_value, 0.99);
    std::vector<double> skewed = fair;
    skewed[0] = 1300;
    skewed[1] = 700;
    EXPECT_LT(stats::chi_square_gof(skewed, probs).p_value, 1e-6);
}

TEST(Transmit, RoundsAndWraps) {
    EXPECT_EQ(transmit_with_noise(5.0, 0.4, 12288), 5);
    EXPECT_EQ(transmit_with_noise(12288 - 0.4, 0.7, 12288), 0);
    EXPECT_EQ(transmit_with_noise(12288 - 0.4, 0.9, 12288), 1);   // m + 0.5 is a tie
    EXPECT_EQ(transmit_with_noise(3.0, -0.5, 10), 3);             // 2.5 rounds away from zero
    EXPECT_EQ(transmit_with_noise(0.0, -3.0, 10), 7);
}

TEST(Transmit, NoiseSpreadMatchesSigma) {
    auto rng = make_stream(42, {tag("test")});
    const ChannelParams p{30.0, 12288};
    std::vector<double> r;
    for (int i = 0; i < 100000; ++i)
        r.push_back(static_cast<double>(recenter(transmit(0.0, p, rng), p.modulus)));
    EXPECT_NEAR(stats::stddev(r) / 30.0, 1.0, 0.02);
}

TEST(Transmit, RejectsBadParams) {
    auto rng = make_stream(1, {});
    EXPECT_THROW(transmit(1.0, ChannelParams{0.0, 10}, rng), Error);
    EXPECT_THROW(transmit(1.0, ChannelParams{1.0, 1}, rng), Error);
}

TEST(Exchange, Figure2ShapeIsSortedAndDeterministic) {
    const auto topo = StarTopology::single_star(2);
    const FuncSpec f{Shape::identity, 0, 546, 1.0};
    const ChannelParams p{30.0, 12288};
    const auto d = simulate_exchange(topo, 0, f, p, 1 << 16, Coverage::random, 7);
    ASSERT_EQ(d.size(), 65536u);
    EXPECT_TRUE(std::is_sorted(d.points.begin(), d.points.end(),
                               [](const Point& a, const Point& b) { return a.x < b.x; }));
    for (const auto& pt : d.points) {
        ASSERT_GE(pt.x, 0);
        ASSERT_LT(pt.x, 12288);
        ASSERT_GE(pt.y, 0);
        ASSERT_LT(pt.y, 12288);
    }
    const auto again = simulate_exchange(topo, 0, f, p, 1 << 16, Coverage::random, 7);
    EXPECT_EQ(dataset_to_csv(d), dataset_to_csv(again));
    const auto other = simulate_exchange(topo, 0, f, p, 1 << 16, Coverage::random, 8);
    EXPECT_NE(d.points, other.points);
}

TEST(Exchange, CompleteCoverageHitsEveryResidue) {
    const auto topo = StarTopology::single_star(2);
    const auto d = simulate_exchange(topo, 0, FuncSpec{Shape::identity, 0, 1, 1.0},
                                     ChannelParams{0.01, 10}, 1000, Coverage::complete, 3);
    std::set<std::int64_t> xs;
    for (const auto& pt : d.points) xs.insert(pt.x);
    EXPECT_EQ(xs.size(), 10u);
    for (const auto& pt : d.points) EXPECT_EQ(pt.y, pt.x);   // noise far below 1/2
}

TEST(Exchange, Preconditions) {
    const auto topo = StarTopology::single_star(2);
    const FuncSpec f{Shape::identity, 0, 546, 1.0};
    const ChannelParams p{30.0, 12288};
    EXPECT_THROW(simulate_exchange(topo, 0, f, p, 54599, Coverage::random, 1), Error);
    EXPECT_THROW(simulate_exchange(topo, 0, FuncSpec{Shape::identity, 0, 1, 1.0}, p, 1000,
                                   Coverage::complete, 1),
                 Error);
    EXPECT_THROW(simulate_exchange(topo, 1, f, p, 1 << 16, Coverage::random, 1), Error);
}

TEST(Exchange, ResidualsAreRoundedGaussian) {
    const auto topo = StarTopology::single_star(2);
    const FuncSpec f{Shape::identity, 0, 546, 1.0};
    for (double sigma : {10.0, 30.0}) {
        const auto d = simulate_exchange(topo, 0, f, ChannelParams{sigma, 12288}, 1 << 16,
                                         Coverage::random, 11);
        std::vector<std::int64_t> res;
        for (const auto& pt : d.points)
            res.push_back(recenter(pt.y - static_cast<std::int64_t>(f(static_cast<double>(pt.x))),
                                   d.modulus));
        // Library statistic, cross-checked by a direct computation over |e| <= 4 sigma.
        const auto lim = static_cast<std::int64_t>(4 * sigma);
        const auto chi = stats::chi_square_rounded_gaussian(res, sigma, lim);
        EXPECT_GT(chi.p_value, 0.01) << sigma;
        double direct = 0.0;
        std::vector<double> counts(2 * lim + 1, 0.0);
        std::size_t inside = 0;
        for (auto e : res)
            if (std::abs(e) <= lim) {
                counts[e + lim] += 1;
                ++inside;
            }
        double mass = 0.0;
        for (std::int64_t k = -lim; k <= lim; ++k) mass += rounded_gaussian(k, sigma);
        for (std::int64_t k = -lim; k <= lim; ++k) {
            const double exp = inside * rounded_gaussian(k, sigma) / mass;
            if (exp >= 5) direct += (counts[k + lim] - exp) * (counts[k + lim] - exp) / exp;
        }
        EXPECT_LT(direct, 2.5 * static_cast<double>(2 * lim + 1));
    }
}

TEST(Topology, RejectsBadStars) {
    EXPECT_NO_THROW(StarTopology(setfam::fano_plane(), 3, 1));
    EXPECT_THROW(StarTopology(setfam::fano_plane(), 3, 0), Error);
    EXPECT_THROW(StarTopology(setfam::fano_plane(), 4, 1), Error);
}

TEST(Secret, CombineContributions) {
    EXPECT_EQ(combine_contributions({6, 3}, 10), 5);
    EXPECT_EQ(combine_contributions({1, 1, 1}, 7), 1);
    EXPECT_EQ(combine_contributions({12, 5}, 4), 1);   // 12 ^ 5 = 9
}

TEST(Secret, DeterministicAndInRange) {
    const StarTopology topo(setfam::fano_plane(), 3, 1);
    const auto a = agree_secret(topo, 2, 16, 12289, 99);
    EXPECT_EQ(a, agree_secret(topo, 2, 16, 12289, 99));
    EXPECT_NE(a, agree_secret(topo, 3, 16, 12289, 99));
    ASSERT_EQ(a.size(), 16u);
    for (auto v : a) {
        EXPECT_GE(v, 0);
        EXPECT_LT(v, 12289);
    }
    EXPECT_THROW(agree_secret(StarTopology::single_star(1), 0, 4, 10, 1), Error);
}

TEST(Secret, UniformOverSeeds) {
    const auto topo = StarTopology::single_star(3);
    const std::int64_t m = 64;
    std::vector<double> counts(m, 0.0);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed)
        for (auto v : agree_secret(topo, 0, 16, m, seed)) counts[v] += 1;
    EXPECT_GT(stats::chi_square_uniform(counts).p_value, 0.01);
}

TEST(Secret, CollisionsAreResolved) {
    // Many parties in few slots collide often; every coordinate still gets a value.
    const auto topo = StarTopology::single_star(8);
    const auto r = agree_secret_detailed(topo, 0, 32, 1000, 5);
    EXPECT_EQ(r.secret.size(), 32u);
    EXPECT_GT(r.collisions, 0u);
}

TEST(Csv, RoundTrip) {
    const auto topo = StarTopology::single_star(2);
    const auto d = simulate_exchange(topo, 0, FuncSpec{Shape::sqrt, 0, 2, 1.0},
                                     ChannelParams{1.0, 97}, 300, Coverage::complete, 4);
    const auto csv = dataset_to_csv(d);
    EXPECT_EQ(csv.rfind("x,y\n", 0), 0u);
    EXPECT_EQ(dataset_from_csv(csv, 97).points, d.points);
    EXPECT_THROW(dataset_from_csv("x,y\n3,200\n", 97), Error);
    EXPECT_THROW(dataset_from_csv("a,b\n", 97), Error);
    const auto meta = meta_to_json(d);
    EXPECT_EQ(meta["func"], "sqrt");
    EXPECT_EQ(meta["ell"], 300);
}
