#include <gtest/gtest.h>

#include <cmath>

#include "sskh/channel/channel.hpp"
#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"
#include "sskh/common/stats.hpp"
#include "sskh/lwlr/lwlr.hpp"
#include "sskh/rgpc/regression.hpp"

using namespace sskh;
using namespace sskh::lwlr;

namespace {

rgpc::ErrorOracle ramp_oracle(std::int64_t m) {
    std::vector<std::int64_t> t(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) t[i] = i % 5 - 2;
    return rgpc::ErrorOracle::from_table(m, t);
}

const rgpc::ErrorOracle& channel_oracle() {
    static const rgpc::ErrorOracle o = [] {
        const auto topo = channel::StarTopology::single_star(2);
        const auto d = channel::simulate_exchange(
            topo, 0, channel::FuncSpec{Shape::identity, 0, 546, 1.0},
            channel::ChannelParams{30.0, 12288}, 1 << 16, channel::Coverage::complete, 21);
        return rgpc::build_error_oracle(d, rgpc::grid_search_hypothesis(d));
    }();
    return o;
}

}  // namespace

TEST(Lwlr, InnerProduct) {
    EXPECT_EQ(inner_product_mod({1, 2, 3}, {4, 5, 6}, 10), 2);   // 32 mod 10
    EXPECT_EQ(inner_product_mod({12287, 12287}, {12287, 12287}, 12288), 2);
    EXPECT_THROW(inner_product_mod({1, 2}, {1}, 10), Error);
}

TEST(Lwlr, ZeroSecretGivesConstantError) {
    const auto o = ramp_oracle(97);
    auto rng = make_stream(1, {});
    const Vector s(8, 0);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(sample_lwlr(s, o, rng).b, mod(o(0), 97));
}

TEST(Lwlr, InjectedVectorIsDeterministicAndConsistent) {
    const auto o = ramp_oracle(97);
    auto rng = make_stream(2, {});
    const auto s = uniform_vector(6, 97, rng);
    for (int i = 0; i < 50; ++i) {
        const auto a = uniform_vector(6, 97, rng);
        const auto x = sample_lwlr_with(s, a, o);
        const auto y = sample_lwlr_with(s, a, o);
        EXPECT_EQ(x.b, y.b);
        EXPECT_EQ(x.a, a);
        const auto ip = inner_product_mod(a, s, 97);
        EXPECT_EQ(recenter(x.b - ip, 97), o(ip));
    }
    EXPECT_THROW(sample_lwlr_with(s, Vector(5, 0), o), Error);
}

TEST(Lwlr, VectorEntriesAreUniform) {
    const auto& o = channel_oracle();
    auto rng = make_stream(3, {});
    const auto s = uniform_vector(16, 12288, rng);
    const std::int64_t bins = 64;
    std::vector<double> counts(bins, 0.0);
    for (int i = 0; i < 10000; ++i)
        for (auto v : sample_lwlr(s, o, rng).a) counts[v * bins / 12288] += 1;
    EXPECT_GT(stats::chi_square_uniform(counts).p_value, 0.01);
}

TEST(Lwr, Rounding) {
    EXPECT_EQ(round_lwr(0, 256, 16), 0);
    EXPECT_EQ(round_lwr(255, 256, 16), 0);
    EXPECT_EQ(round_lwr(128, 256, 16), 8);
    EXPECT_EQ(round_lwr(8, 256, 16), 1);     // 0.5 rounds up
    EXPECT_EQ(round_lwr(7, 256, 16), 0);
    EXPECT_EQ(round_lwr(5, 7, 7), 5);
    EXPECT_THROW(round_lwr(1, 16, 256), Error);
    EXPECT_THROW(round_lwr(300, 256, 16), Error);
}

TEST(Report, EmptyAndNoiseless) {
    auto rng = make_stream(4, {});
    const auto s = uniform_vector(4, 97, rng);
    EXPECT_TRUE(lwlr_vs_lwr_report(s, ramp_oracle(97), 97, 8, 0, rng).empty());
    const auto zero = rgpc::ErrorOracle::from_table(97, std::vector<std::int64_t>(97, 0));
    for (const auto& row : lwlr_vs_lwr_report(s, zero, 97, 8, 100, rng)) {
        EXPECT_EQ(row.lwlr_error, 0);
        EXPECT_LE(std::fabs(row.lwr_error), 97.0 / 8.0 / 2.0 + 1e-9);
    }
    const auto csv = comparison_csv(lwlr_vs_lwr_report(s, zero, 97, 8, 2, rng));
    EXPECT_EQ(csv.rfind("trial,x,lwlr_error,lwr_error\n", 0), 0u);
}

TEST(Report, FoldedGaussianMean) {
    const auto& o = channel_oracle();
    auto rng = make_stream(5, {});
    const auto s = uniform_vector(16, 12288, rng);
    double sum = 0.0;
    const auto rows = lwlr_vs_lwr_report(s, o, 12288, 64, 10000, rng);
    for (const auto& r : rows) sum += std::fabs(static_cast<double>(r.lwlr_error));
    const double want = 30.0 * std::sqrt(2.0 / M_PI);
    EXPECT_NEAR(sum / rows.size() / want, 1.0, 0.10);
}

TEST(Samples, CsvHeader) {
    const std::vector<LwlrSample> v{{{1, 2, 3}, 4}};
    EXPECT_EQ(samples_csv(v, 3), "a_0,a_1,a_2,b\n1,2,3,4\n");
}
