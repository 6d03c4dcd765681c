#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sskh/common/random.hpp"
#include "sskh/rgpc/error_oracle.hpp"

namespace sskh::lwlr {

using Vector = std::vector<std::int64_t>;

struct LwlrSample {
    Vector a;
    std::int64_t b = 0;
};

// <a, s> mod m.
std::int64_t inner_product_mod(const Vector& a, const Vector& s, std::int64_t m);

// b = (<a,s> + e_<a,s>) mod m for a caller-supplied a.
LwlrSample sample_lwlr_with(const Vector& s, const Vector& a, const rgpc::ErrorOracle& oracle);

// Same, with a drawn uniformly from Z_m^w.
LwlrSample sample_lwlr(const Vector& s, const rgpc::ErrorOracle& oracle, Stream& rng);

Vector uniform_vector(std::size_t w, std::int64_t m, Stream& rng);

// round(p * x / q) mod p, ties away from zero.
std::int64_t round_lwr(std::int64_t x, std::int64_t q, std::int64_t p);

struct ComparisonRow {
    std::int64_t x = 0;              // <a, s> mod m
    std::int64_t lwlr_error = 0;     // oracle error at <a,s> mod m
    double lwr_error = 0.0;          // (q/p) * round_lwr(x) - x, re-centered mod q
};

// Per-trial error magnitudes of LWLR against the LWR rounding loss on the same <a, s>.
std::vector<ComparisonRow> lwlr_vs_lwr_report(const Vector& s, const rgpc::ErrorOracle& oracle,
                                              std::int64_t q, std::int64_t p, std::size_t trials,
                                              Stream& rng);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string samples_csv(const std::vector<LwlrSample>& samples, std::size_t w);

}  // namespace sskh::lwlr
