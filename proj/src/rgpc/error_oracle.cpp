#include "sskh/rgpc/error_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"
#include "sskh/common/stats.hpp"

namespace sskh::rgpc {

std::int64_t ErrorOracle::operator()(std::int64_t x) const {
    return table_[static_cast<std::size_t>(mod(x, modulus_))];
}

namespace {

std::vector<double> as_doubles(const std::vector<std::int64_t>& v) {
    return {v.begin(), v.end()};
}

// Unsampled residues copy the nearest sampled residue on the cycle Z_m;
// equal distances go to the smaller residue.
void fill_from_nearest(std::vector<std::int64_t>& table, const std::vector<bool>& sampled) {
    const std::size_t m = table.size();
    std::vector<std::size_t> sampled_idx;
    for (std::size_t r = 0; r < m; ++r)
        if (sampled[r]) sampled_idx.push_back(r);
    if (sampled_idx.size() == m) return;

    for (std::size_t r = 0; r < m; ++r) {
        if (sampled[r]) continue;
        auto it = std::lower_bound(sampled_idx.begin(), sampled_idx.end(), r);
        const std::size_t next = it == sampled_idx.end() ? sampled_idx.front() : *it;
        const std::size_t prev = it == sampled_idx.begin() ? sampled_idx.back() : *(it - 1);
        const std::size_t d_next = (next + m - r) % m;
        const std::size_t d_prev = (r + m - prev) % m;
        std::size_t src;
        if (d_prev < d_next) {
            src = prev;
        } else if (d_next < d_prev) {
            src = next;
        } else {
            src = std::min(prev, next);
        }
        table[r] = table[src];
    }
}

}  // namespace

ErrorOracle build_error_oracle(const channel::Dataset& d, const Hypothesis& h) {
    require(!d.points.empty(), ErrorCode::invalid_argument, "error oracle needs a nonempty dataset");
    require(d.modulus >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
    const std::int64_t m = d.modulus;

    ErrorOracle o;
    o.modulus_ = m;
    o.sample_count_ = d.points.size();
    o.table_.assign(static_cast<std::size_t>(m), 0);
    std::vector<bool> sampled(static_cast<std::size_t>(m), false);
    for (const auto& p : d.points) {
        const auto r = static_cast<std::size_t>(mod(p.x, m));
        if (sampled[r]) continue;
        sampled[r] = true;
        const double pre = recenter(static_cast<double>(p.y) - h(static_cast<double>(p.x)), m);
        o.pre_errors_.push_back(pre);
        o.table_[r] = recenter(round_half_away(pre), m);
    }
    o.coverage_ = static_cast<double>(o.pre_errors_.size()) / static_cast<double>(m);
    o.sigma_hat_ = stats::stddev(o.pre_errors_);
    fill_from_nearest(o.table_, sampled);
    return o;
}

ErrorOracle ErrorOracle::from_table(std::int64_t modulus, std::vector<std::int64_t> table) {
    require(modulus >= 2 && static_cast<std::int64_t>(table.size()) == modulus,
            ErrorCode::dimension_mismatch, "error table must have one entry per residue");
    ErrorOracle o;
    o.modulus_ = modulus;
    for (auto& e : table) e = recenter(e, modulus);
    o.table_ = std::move(table);
    o.pre_errors_ = as_doubles(o.table_);
    o.sigma_hat_ = stats::stddev(o.pre_errors_);
    o.coverage_ = 1.0;
    o.sample_count_ = o.table_.size();
    return o;
}

nlohmann::json ErrorStatistics::to_json() const {
    return {{"mean", mean},
            {"std", std},
            {"chi_square_p", chi_square_p},
            {"bound_violation_rate", bound_violation_rate},
            {"bound", bound}};
}

double error_bound(double sigma, std::size_t ell, double b) {
    return kBoundConstant * (1.0 + std::sqrt((1.0 + b) / static_cast<double>(ell))) * sigma;
}

ErrorStatistics error_statistics(const ErrorOracle& o, double sigma, double b) {
    require(sigma > 0, ErrorCode::invalid_argument, "sigma must be positive");
    ErrorStatistics s;
    const auto values = as_doubles(o.table());
    s.mean = stats::mean(values);
    s.std = stats::stddev(values);
    const auto limit = static_cast<std::int64_t>(std::floor(4.0 * sigma));
    s.chi_square_p = stats::chi_square_rounded_gaussian(o.table(), sigma, limit).p_value;
    s.bound = error_bound(sigma, o.sample_count(), b);
    std::size_t violations = 0;
    for (double e : o.pre_errors())
        if (std::fabs(e) > s.bound) ++violations;
    s.bound_violation_rate = o.pre_errors().empty()
                                 ? 0.0
                                 : static_cast<double>(violations) /
                                       static_cast<double>(o.pre_errors().size());
    return s;
}

ErrorStatistics error_statistics(const ErrorOracle& o) {
    return error_statistics(o, std::max(o.sigma_hat(), 1e-12));
}

std::string error_table_csv(const ErrorOracle& o) {
    std::string out = "x,e\n";
    for (std::size_t r = 0; r < o.table().size(); ++r) {
        out += std::to_string(r);
        out += ',';
        out += std::to_string(o.table()[r]);
        out += '\n';
    }
    return out;
}

ErrorOracle error_table_from_csv(const std::string& text, std::int64_t modulus) {
    std::istringstream in(text);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)) && line.rfind("x,e", 0) == 0,
            ErrorCode::invalid_argument, "error table CSV must start with header x,e");
    std::vector<std::int64_t> table(static_cast<std::size_t>(modulus), 0);
    std::vector<bool> seen(static_cast<std::size_t>(modulus), false);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, ErrorCode::invalid_argument, "bad CSV row: " + line);
        const std::int64_t x = std::stoll(line.substr(0, comma));
        require(x >= 0 && x < modulus, ErrorCode::invalid_argument, "x outside [0, m)");
        table[static_cast<std::size_t>(x)] = std::stoll(line.substr(comma + 1));
        seen[static_cast<std::size_t>(x)] = true;
    }
    require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }),
            ErrorCode::invalid_argument, "error table must list every residue");
    return ErrorOracle::from_table(modulus, std::move(table));
}

std::string error_histogram_csv(const ErrorOracle& o) {
    std::map<std::int64_t, std::size_t> counts;
    for (std::int64_t e : o.table()) ++counts[e];
    std::string out = "e,count\n";
    if (counts.empty()) return out;
    for (std::int64_t e = counts.begin()->first; e <= counts.rbegin()->first; ++e) {
        auto it = counts.find(e);
        out += std::to_string(e) + "," + std::to_string(it == counts.end() ? 0 : it->second) + "\n";
    }
    return out;
}

}  // namespace sskh::rgpc
