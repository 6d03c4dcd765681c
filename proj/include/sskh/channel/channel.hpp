#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sskh/common/random.hpp"
#include "sskh/common/shape.hpp"
#include "sskh/setfam/family.hpp"

namespace sskh::channel {

struct ChannelParams {
    double sigma = 30.0;
    std::int64_t modulus = 12288;

    void validate() const;
};

// f(x) = beta0 + beta1 * scale * shape(x).
struct FuncSpec {
    Shape kind = Shape::identity;
    std::int64_t beta0 = 0;
    std::int64_t beta1 = 1;
    double scale = 1.0;

    double operator()(double x) const;
    void validate() const;

    // Scale chosen so that scale*shape(x) runs over [0, m] as x runs over [0, m].
    static FuncSpec normalized(Shape kind, std::int64_t beta1, std::int64_t modulus);
};

std::string func_name(Shape kind);   // "linear" for identity

enum class Coverage { random, complete };

Coverage parse_coverage(const std::string& s);
std::string to_string(Coverage c);

// Stars are the member sets of a family over party labels; the hub of each star is implicit.
class StarTopology {
public:
    StarTopology(setfam::SetFamily stars, std::size_t k, std::size_t t);

    // One star of k parties labelled 1..k.
    static StarTopology single_star(std::size_t k);

    std::size_t party_count() const { return stars_.universe_size(); }
    std::size_t star_count() const { return stars_.size(); }
    std::size_t k() const { return k_; }
    std::size_t t() const { return t_; }
    const setfam::SetFamily& stars() const { return stars_; }

private:
    setfam::SetFamily stars_;
    std::size_t k_;
    std::size_t t_;
};

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct DatasetMeta {
    FuncSpec func;
    double sigma = 0.0;
    std::int64_t ell = 0;
    std::uint64_t seed = 0;
    std::size_t star_id = 0;
    Coverage coverage = Coverage::random;
};

struct Dataset {
    std::vector<Point> points;   // ascending x
    std::int64_t modulus = 0;
    DatasetMeta meta;            // reproduction only; fitting never reads it

    std::size_t size() const { return points.size(); }
};

// round(value + eps) mod m with eps ~ N(0, sigma^2).
std::int64_t transmit(double value, const ChannelParams& params, Stream& rng);

// The deterministic part of transmit for a given noise draw.
std::int64_t transmit_with_noise(double value, double noise, std::int64_t modulus);

Dataset simulate_exchange(const StarTopology& topology, std::size_t star_id, const FuncSpec& func,
                          const ChannelParams& params, std::int64_t ell, Coverage coverage,
                          std::uint64_t master_seed);

struct SecretAgreement {
    std::vector<std::int64_t> secret;
    std::size_t collisions = 0;   // discarded simultaneous arrivals
};

inline constexpr std::uint64_t kDefaultContributionRange = 1ULL << 16;

// XOR of the star's k contributions, reduced mod m, per coordinate.
SecretAgreement agree_secret_detailed(const StarTopology& topology, std::size_t star_id,
                                      std::size_t w, std::int64_t m, std::uint64_t master_seed,
                                      std::uint64_t contribution_range = kDefaultContributionRange);

std::vector<std::int64_t> agree_secret(const StarTopology& topology, std::size_t star_id,
                                       std::size_t w, std::int64_t m, std::uint64_t master_seed);

std::int64_t combine_contributions(const std::vector<std::uint64_t>& contributions,
                                   std::int64_t m);

// CSV "x,y" and the metadata sidecar.
std::string dataset_to_csv(const Dataset& d);
Dataset dataset_from_csv(const std::string& text, std::int64_t modulus);
nlohmann::json meta_to_json(const Dataset& d);

}  // namespace sskh::channel
