#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sskh/common/random.hpp"
#include "sskh/prf/gadget.hpp"
#include "sskh/rgpc/error_oracle.hpp"

namespace sskh::prf {

// Full binary tree stored as an arena; node 0 is the root.
class TreeShape {
public:
    static TreeShape leaf();
    static TreeShape join(const TreeShape& left, const TreeShape& right);
    static TreeShape balanced(std::size_t leaves);
    static TreeShape left_spine(std::size_t leaves);

    std::size_t leaf_count() const { return leaf_count(0); }

    // Leaf = [], internal node = [left, right].
    nlohmann::json to_json() const;
    static TreeShape from_json(const nlohmann::json& j);

    struct Node {
        int left = -1;
        int right = -1;
        bool is_leaf() const { return left < 0; }
    };
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    std::size_t leaf_count(int i) const;

private:
    int append(const TreeShape& t, int i);
    nlohmann::json node_json(int i) const;
    static int parse(const nlohmann::json& j, TreeShape& out);

    std::vector<Node> nodes_;
};

using Bits = std::vector<std::uint8_t>;
using Vector = std::vector<std::int64_t>;

Bits parse_bits(const std::string& s);
std::string bits_string(const Bits& b);

struct PrfParams {
    std::int64_t m = 0;
    std::size_t w = 0;
    int d = 0;
    Matrix a0;
    Matrix a1;
    TreeShape tree;
    std::uint64_t seed = 0;

    // A0 and A1 uniform over Z_m^{w x wd}, drawn from the seed.
    static PrfParams generate(std::int64_t m, std::size_t w, TreeShape tree, std::uint64_t seed);

    nlohmann::json to_json() const;
    static PrfParams from_json(const nlohmann::json& j);
};

// Leaf: A_bit. Internal: A_left(x_left) * G^-1(A_right(x_right)) mod m.
Matrix eval_AT(const PrfParams& params, const Bits& x);

// (s * A_T(x) + e) mod m with the oracle applied to each coordinate of s * A_T(x).
Vector prf_eval(const PrfParams& params, const rgpc::ErrorOracle& oracle, const Vector& key,
                const Bits& x);

// F_k1(x) + F_k2(x) - F_{k1+k2}(x), re-centered mod m.
Vector homomorphism_gap(const PrfParams& params, const rgpc::ErrorOracle& oracle, const Vector& k1,
                        const Vector& k2, const Bits& x);

struct CollisionRate {
    double rate = 0.0;
    std::size_t agreements = 0;
    std::size_t coordinates = 0;
};

// Fraction of output coordinates on which two stars' PRFs agree over random inputs.
CollisionRate star_collision_rate(const PrfParams& params, const rgpc::ErrorOracle& oracle_i,
                                  const rgpc::ErrorOracle& oracle_j, const Vector& key,
                                  std::size_t trials, Stream& rng);

// Pr[|Z| < 1 / (sqrt(2) sigma)] for standard normal Z.
double collision_bound(double sigma);

Bits random_bits(std::size_t n, Stream& rng);
Vector random_key(std::size_t w, std::int64_t m, Stream& rng);

std::string output_csv(const std::vector<std::pair<Bits, Vector>>& outputs);

}  // namespace sskh::prf
