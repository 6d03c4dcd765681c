#include "sskh/prf/prf.hpp"

#include <cmath>

#include <boost/random/uniform_int_distribution.hpp>

#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"
#include "sskh/common/stats.hpp"

namespace sskh::prf {

TreeShape TreeShape::leaf() {
    TreeShape t;
    t.nodes_.push_back({});
    return t;
}

int TreeShape::append(const TreeShape& t, int i) {
    const Node& src = t.node(i);
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    if (!src.is_leaf()) {
        const int l = append(t, src.left);
        const int r = append(t, src.right);
        nodes_[static_cast<std::size_t>(self)] = {l, r};
    }
    return self;
}

TreeShape TreeShape::join(const TreeShape& left, const TreeShape& right) {
    TreeShape t;
    t.nodes_.push_back({});
    const int l = t.append(left, 0);
    const int r = t.append(right, 0);
    t.nodes_[0] = {l, r};
    return t;
}

TreeShape TreeShape::balanced(std::size_t leaves) {
    require(leaves >= 1, ErrorCode::invalid_argument, "tree needs at least one leaf");
    if (leaves == 1) return leaf();
    const std::size_t left = (leaves + 1) / 2;
    return join(balanced(left), balanced(leaves - left));
}

TreeShape TreeShape::left_spine(std::size_t leaves) {
    require(leaves >= 1, ErrorCode::invalid_argument, "tree needs at least one leaf");
    TreeShape t = leaf();
    for (std::size_t i = 1; i < leaves; ++i) t = join(t, leaf());
    return t;
}

std::size_t TreeShape::leaf_count(int i) const {
    const Node& n = node(i);
    return n.is_leaf() ? 1 : leaf_count(n.left) + leaf_count(n.right);
}

nlohmann::json TreeShape::node_json(int i) const {
    const Node& n = node(i);
    if (n.is_leaf()) return nlohmann::json::array();
    return nlohmann::json::array({node_json(n.left), node_json(n.right)});
}

nlohmann::json TreeShape::to_json() const { return node_json(0); }

int TreeShape::parse(const nlohmann::json& j, TreeShape& out) {
    require(j.is_array() && (j.empty() || j.size() == 2), ErrorCode::invalid_argument,
            "tree nodes are [] (leaf) or [left, right]");
    const int self = static_cast<int>(out.nodes_.size());
    out.nodes_.push_back({});
    if (!j.empty()) {
        const int l = parse(j[0], out);
        const int r = parse(j[1], out);
        out.nodes_[static_cast<std::size_t>(self)] = {l, r};
    }
    return self;
}

TreeShape TreeShape::from_json(const nlohmann::json& j) {
    TreeShape t;
    parse(j, t);
    return t;
}

Bits parse_bits(const std::string& s) {
    Bits b;
    for (char c : s) {
        require(c == '0' || c == '1', ErrorCode::invalid_argument, "bit strings use only 0 and 1");
        b.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return b;
}

std::string bits_string(const Bits& b) {
    std::string s;
    for (auto v : b) s.push_back(static_cast<char>('0' + v));
    return s;
}

PrfParams PrfParams::generate(std::int64_t m, std::size_t w, TreeShape tree, std::uint64_t seed) {
    require(m >= 2 && w >= 1, ErrorCode::invalid_argument, "need m >= 2 and w >= 1");
    PrfParams p;
    p.m = m;
    p.w = w;
    p.d = gadget_width(m);
    p.tree = std::move(tree);
    p.seed = seed;
    Stream rng = make_stream(seed, {tag("prf-matrices")});
    const std::size_t cols = w * static_cast<std::size_t>(p.d);
    p.a0 = Matrix::uniform(w, cols, m, rng);
    p.a1 = Matrix::uniform(w, cols, m, rng);
    return p;
}

nlohmann::json PrfParams::to_json() const {
    return {{"m", m}, {"w", w}, {"d", d}, {"tree", tree.to_json()}, {"seed", seed}};
}

PrfParams PrfParams::from_json(const nlohmann::json& j) {
    PrfParams p = generate(j.at("m").get<std::int64_t>(), j.at("w").get<std::size_t>(),
                           TreeShape::from_json(j.at("tree")), j.at("seed").get<std::uint64_t>());
    require(!j.contains("d") || j.at("d").get<int>() == p.d, ErrorCode::invalid_argument,
            "d must equal ceil(log2 m)");
    return p;
}

namespace {

Matrix eval_node(const PrfParams& p, int node, const Bits& x, std::size_t offset) {
    const auto& n = p.tree.node(node);
    if (n.is_leaf()) return x[offset] ? p.a1 : p.a0;
    const std::size_t left_leaves = p.tree.leaf_count(n.left);
    const Matrix left = eval_node(p, n.left, x, offset);
    const Matrix right = eval_node(p, n.right, x, offset + left_leaves);
    return multiply_mod(left, gadget_matrix_decompose(right, p.d), p.m);
}

Vector row_times(const Vector& s, const Matrix& a, std::int64_t m) {
    require(s.size() == a.rows(), ErrorCode::dimension_mismatch, "key dimension must equal w");
    Vector b(a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const std::int64_t si = mod(s[i], m);
        for (std::size_t j = 0; j < a.cols(); ++j) b[j] = mod(b[j] + si * a(i, j), m);
    }
    return b;
}

}  // namespace

Matrix eval_AT(const PrfParams& params, const Bits& x) {
    require(x.size() == params.tree.leaf_count(), ErrorCode::dimension_mismatch,
            "input length must equal the tree's leaf count");
    return eval_node(params, 0, x, 0);
}

Vector prf_eval(const PrfParams& params, const rgpc::ErrorOracle& oracle, const Vector& key,
                const Bits& x) {
    require(oracle.modulus() == params.m, ErrorCode::dimension_mismatch,
            "oracle modulus must equal the PRF modulus");
    Vector b = row_times(key, eval_AT(params, x), params.m);
    for (auto& v : b) v = mod(v + oracle(v), params.m);
    return b;
}

Vector homomorphism_gap(const PrfParams& params, const rgpc::ErrorOracle& oracle, const Vector& k1,
                        const Vector& k2, const Bits& x) {
    require(k1.size() == k2.size(), ErrorCode::dimension_mismatch, "keys differ in dimension");
    Vector sum(k1.size());
    for (std::size_t i = 0; i < k1.size(); ++i) sum[i] = mod(k1[i] + k2[i], params.m);
    const Vector f1 = prf_eval(params, oracle, k1, x);
    const Vector f2 = prf_eval(params, oracle, k2, x);
    const Vector f3 = prf_eval(params, oracle, sum, x);
    Vector gap(f1.size());
    for (std::size_t j = 0; j < gap.size(); ++j) gap[j] = recenter(f1[j] + f2[j] - f3[j], params.m);
    return gap;
}

Bits random_bits(std::size_t n, Stream& rng) {
    boost::random::uniform_int_distribution<int> bit(0, 1);
    Bits b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(bit(rng));
    return b;
}

Vector random_key(std::size_t w, std::int64_t m, Stream& rng) {
    boost::random::uniform_int_distribution<std::int64_t> draw(0, m - 1);
    Vector k(w);
    for (auto& v : k) v = draw(rng);
    return k;
}

CollisionRate star_collision_rate(const PrfParams& params, const rgpc::ErrorOracle& oracle_i,
                                  const rgpc::ErrorOracle& oracle_j, const Vector& key,
                                  std::size_t trials, Stream& rng) {
    CollisionRate r;
    for (std::size_t t = 0; t < trials; ++t) {
        const Bits x = random_bits(params.tree.leaf_count(), rng);
        const Vector fi = prf_eval(params, oracle_i, key, x);
        const Vector fj = prf_eval(params, oracle_j, key, x);
        for (std::size_t c = 0; c < fi.size(); ++c)
            if (fi[c] == fj[c]) ++r.agreements;
        r.coordinates += fi.size();
    }
    r.rate = r.coordinates == 0 ? 0.0
                                : static_cast<double>(r.agreements) /
                                      static_cast<double>(r.coordinates);
    return r;
}

double collision_bound(double sigma) {
    require(sigma > 0, ErrorCode::invalid_argument, "sigma must be positive");
    const double z = 1.0 / (std::sqrt(2.0) * sigma);
    return 2.0 * stats::normal_cdf(z) - 1.0;
}

std::string output_csv(const std::vector<std::pair<Bits, Vector>>& outputs) {
    std::string out = "x_bits,coord,value\n";
    for (const auto& [x, v] : outputs) {
        const std::string xs = bits_string(x);
        for (std::size_t c = 0; c < v.size(); ++c)
            out += xs + "," + std::to_string(c) + "," + std::to_string(v[c]) + "\n";
    }
    return out;
}

}  // namespace sskh::prf
