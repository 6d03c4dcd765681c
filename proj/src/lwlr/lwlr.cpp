#include "sskh/lwlr/lwlr.hpp"

#include <cmath>
#include <cstdio>

#include <boost/random/uniform_int_distribution.hpp>

#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"

namespace sskh::lwlr {

std::int64_t inner_product_mod(const Vector& a, const Vector& s, std::int64_t m) {
    require(a.size() == s.size(), ErrorCode::dimension_mismatch, "a and s differ in dimension");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = mod(acc + mod(a[i], m) * mod(s[i], m) % m, m);
    return acc;
}

LwlrSample sample_lwlr_with(const Vector& s, const Vector& a, const rgpc::ErrorOracle& oracle) {
    const std::int64_t m = oracle.modulus();
    const std::int64_t x = inner_product_mod(a, s, m);
    return {a, mod(x + oracle(x), m)};
}

Vector uniform_vector(std::size_t w, std::int64_t m, Stream& rng) {
    boost::random::uniform_int_distribution<std::int64_t> draw(0, m - 1);
    Vector v(w);
    for (auto& x : v) x = draw(rng);
    return v;
}

LwlrSample sample_lwlr(const Vector& s, const rgpc::ErrorOracle& oracle, Stream& rng) {
    require(!s.empty(), ErrorCode::dimension_mismatch, "secret must be nonempty");
    return sample_lwlr_with(s, uniform_vector(s.size(), oracle.modulus(), rng), oracle);
}

std::int64_t round_lwr(std::int64_t x, std::int64_t q, std::int64_t p) {
    require(p >= 2 && q >= 2, ErrorCode::invalid_argument, "round_lwr: need p, q >= 2");
    require(p <= q, ErrorCode::invalid_argument, "round_lwr: need p <= q");
    require(x >= 0 && x < q, ErrorCode::invalid_argument, "round_lwr: need 0 <= x < q");
    // floor(p*x/q + 1/2) = floor((2px + q) / 2q); exact for nonnegative x.
    __extension__ using u128 = unsigned __int128;
    const u128 num = static_cast<u128>(2) * static_cast<u128>(p) * static_cast<u128>(x) +
                     static_cast<u128>(q);
    const auto r = static_cast<std::int64_t>(num / (static_cast<u128>(2) * static_cast<u128>(q)));
    return r % p;
}

std::vector<ComparisonRow> lwlr_vs_lwr_report(const Vector& s, const rgpc::ErrorOracle& oracle,
                                              std::int64_t q, std::int64_t p, std::size_t trials,
                                              Stream& rng) {
    require(p >= 2 && p <= q, ErrorCode::invalid_argument, "need 2 <= p <= q");
    const std::int64_t m = oracle.modulus();
    std::vector<ComparisonRow> rows;
    rows.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const Vector a = uniform_vector(s.size(), m, rng);
        ComparisonRow row;
        row.x = inner_product_mod(a, s, m);
        row.lwlr_error = oracle(row.x);
        const std::int64_t xq = inner_product_mod(a, s, q);
        const double scaled = static_cast<double>(round_lwr(xq, q, p)) * static_cast<double>(q) /
                              static_cast<double>(p);
        row.lwr_error = recenter(scaled - static_cast<double>(xq), q);
        rows.push_back(row);
    }
    return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "trial,x,lwlr_error,lwr_error\n";
    char buf[64];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", rows[i].lwr_error);
        out += std::to_string(i) + "," + std::to_string(rows[i].x) + "," +
               std::to_string(rows[i].lwlr_error) + "," + buf + "\n";
    }
    return out;
}

std::string samples_csv(const std::vector<LwlrSample>& samples, std::size_t w) {
    std::string out;
    for (std::size_t i = 0; i < w; ++i) out += "a_" + std::to_string(i) + ",";
    out += "b\n";
    for (const auto& smp : samples) {
        require(smp.a.size() == w, ErrorCode::dimension_mismatch, "sample dimension mismatch");
        for (std::int64_t v : smp.a) out += std::to_string(v) + ",";
        out += std::to_string(smp.b) + "\n";
    }
    return out;
}

}  // namespace sskh::lwlr
