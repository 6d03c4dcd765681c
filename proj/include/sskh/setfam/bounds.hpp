#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "sskh/setfam/constructions.hpp"

namespace sskh::setfam {

// Exact maximum family size when n is small relative to k and t; nullopt when
// (n, k, t) lies outside the two covered regimes.
std::optional<std::int64_t> bound_small_n(std::int64_t n, std::int64_t k, std::int64_t t);

// C(n, t+1) / C(k, t+1); nullopt when t == k (no (t+1)-subsets, bound is vacuous).
std::optional<Rational> bound_simple(std::int64_t n, std::int64_t k, std::int64_t t);

// Upper bound at n = k(k/t+1)/2 + 1; requires t | k.
Rational bound_one_more(std::int64_t k, std::int64_t t);

struct Feasibility {
    bool feasible = false;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

// Necessary condition for m k-sets over n points with pairwise intersections <= t.
Feasibility feasibility_check(std::int64_t n, std::int64_t k, std::int64_t t, std::int64_t m);

enum class AdversaryModel { external_oracle, eavesdropper, semi_honest };

AdversaryModel parse_model(const std::string& s);
std::string to_string(AdversaryModel m);

struct PrfCountBound {
    AdversaryModel model{};
    std::string relation;   // "~" (asymptotic equivalence) or ">=" (asymptotic lower bound)
    double value = 0.0;
    bool asymptotic = true;
    std::string expression;

    nlohmann::json to_json() const;
};

// Asymptotic count of star-specific PRFs over n parties with star size k.
PrfCountBound max_sskh_prfs(std::int64_t n, std::int64_t k, std::int64_t t, AdversaryModel model,
                            double c = 0.9);

std::int64_t binomial(std::int64_t n, std::int64_t r);

}  // namespace sskh::setfam
