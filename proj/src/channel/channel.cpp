#include "sskh/channel/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"

namespace sskh::channel {

void ChannelParams::validate() const {
    require(sigma > 0 && std::isfinite(sigma), ErrorCode::invalid_argument, "sigma must be > 0");
    require(modulus >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
}

double FuncSpec::operator()(double x) const {
    return static_cast<double>(beta0) + static_cast<double>(beta1) * scale * shape_value(kind, x);
}

void FuncSpec::validate() const {
    require(beta1 >= 1, ErrorCode::invalid_argument, "beta1 must be >= 1");
    require(scale > 0 && std::isfinite(scale), ErrorCode::invalid_argument, "scale must be > 0");
}

FuncSpec FuncSpec::normalized(Shape kind, std::int64_t beta1, std::int64_t modulus) {
    return FuncSpec{kind, 0, beta1, normalized_scale(kind, static_cast<double>(modulus))};
}

std::string func_name(Shape kind) {
    return kind == Shape::identity ? "linear" : to_string(kind);
}

Coverage parse_coverage(const std::string& s) {
    if (s == "random") return Coverage::random;
    if (s == "complete") return Coverage::complete;
    fail(ErrorCode::invalid_argument, "unknown coverage: " + s);
}

std::string to_string(Coverage c) { return c == Coverage::complete ? "complete" : "random"; }

StarTopology::StarTopology(setfam::SetFamily stars, std::size_t k, std::size_t t)
    : stars_(std::move(stars)), k_(k), t_(t) {
    const auto rep = setfam::verify_family(stars_, k, t);
    require(rep.k_uniform, ErrorCode::invalid_argument, "every star must have exactly k parties");
    require(rep.at_most_t_intersecting, ErrorCode::invalid_argument,
            "two stars share more than t parties");
}

StarTopology StarTopology::single_star(std::size_t k) {
    std::vector<int> members;
    for (std::size_t i = 1; i <= k; ++i) members.push_back(static_cast<int>(i));
    return StarTopology(setfam::SetFamily::from_integers(static_cast<int>(k), {members}), k, 0);
}

std::int64_t transmit_with_noise(double value, double noise, std::int64_t modulus) {
    return mod(round_half_away(value + noise), modulus);
}

std::int64_t transmit(double value, const ChannelParams& params, Stream& rng) {
    params.validate();
    boost::random::normal_distribution<double> noise(0.0, params.sigma);
    return transmit_with_noise(value, noise(rng), params.modulus);
}

Dataset simulate_exchange(const StarTopology& topology, std::size_t star_id, const FuncSpec& func,
                          const ChannelParams& params, std::int64_t ell, Coverage coverage,
                          std::uint64_t master_seed) {
    params.validate();
    func.validate();
    require(star_id < topology.star_count(), ErrorCode::invalid_argument, "star_id out of range");
    require(ell >= 100 * func.beta1, ErrorCode::precondition, "need ell >= 100 * beta1");
    const std::int64_t m = params.modulus;
    require(coverage != Coverage::complete || ell >= m, ErrorCode::precondition,
            "complete coverage needs ell >= m");

    Stream rng = make_stream(master_seed, {tag("exchange"), star_id});
    boost::random::uniform_int_distribution<std::int64_t> uniform_x(0, m - 1);
    boost::random::normal_distribution<double> noise(0.0, params.sigma);

    std::vector<std::int64_t> xs;
    xs.reserve(static_cast<std::size_t>(ell));
    if (coverage == Coverage::complete) {
        for (std::int64_t r = 0; r < m; ++r) xs.push_back(r);
    }
    while (static_cast<std::int64_t>(xs.size()) < ell) xs.push_back(uniform_x(rng));

    Dataset d;
    d.modulus = m;
    d.points.reserve(xs.size());
    for (std::int64_t x : xs) {
        d.points.push_back({x, transmit_with_noise(func(static_cast<double>(x)), noise(rng), m)});
    }
    std::stable_sort(d.points.begin(), d.points.end(),
                     [](const Point& a, const Point& b) { return a.x < b.x; });
    d.meta = DatasetMeta{func, params.sigma, ell, master_seed, star_id, coverage};
    return d;
}

std::int64_t combine_contributions(const std::vector<std::uint64_t>& contributions,
                                   std::int64_t m) {
    require(m >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
    std::uint64_t acc = 0;
    for (std::uint64_t r : contributions) acc ^= r;
    return static_cast<std::int64_t>(acc % static_cast<std::uint64_t>(m));
}

SecretAgreement agree_secret_detailed(const StarTopology& topology, std::size_t star_id,
                                      std::size_t w, std::int64_t m, std::uint64_t master_seed,
                                      std::uint64_t contribution_range) {
    require(star_id < topology.star_count(), ErrorCode::invalid_argument, "star_id out of range");
    const std::size_t k = topology.k();
    require(k >= 2, ErrorCode::precondition, "seed agreement needs at least two parties");
    require(m >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
    require(contribution_range >= 2, ErrorCode::invalid_argument, "contribution range too small");

    SecretAgreement out;
    out.secret.reserve(w);
    for (std::size_t c = 0; c < w; ++c) {
        std::uint64_t epoch = 0;
        Stream rng = make_stream(master_seed, {tag("agree"), star_id, c, epoch});
        boost::random::uniform_int_distribution<std::uint64_t> draw(0, contribution_range - 1);

        std::vector<std::uint64_t> value(k);
        for (auto& v : value) v = draw(rng);

        std::vector<std::size_t> pending(k);
        for (std::size_t p = 0; p < k; ++p) pending[p] = p;
        std::vector<std::uint64_t> accepted;

        while (!pending.empty()) {
            // Each pending party picks an arrival slot; slots are served in order.
            boost::random::uniform_int_distribution<std::size_t> slot_of(0, pending.size() - 1);
            std::vector<std::vector<std::size_t>> slots(pending.size());
            for (std::size_t p : pending) slots[slot_of(rng)].push_back(p);

            std::vector<std::size_t> resend;
            for (auto& arrivals : slots) {
                if (arrivals.size() > 1) {
                    boost::random::uniform_int_distribution<std::size_t> pick(0, arrivals.size() - 1);
                    const std::size_t lost = pick(rng);
                    resend.push_back(arrivals[lost]);
                    arrivals.erase(arrivals.begin() + static_cast<std::ptrdiff_t>(lost));
                    ++out.collisions;
                }
                for (std::size_t p : arrivals) {
                    accepted.push_back(value[p]);
                    rng = make_stream(master_seed, {tag("agree"), star_id, c, ++epoch});
                }
            }
            pending = std::move(resend);
        }
        out.secret.push_back(combine_contributions(accepted, m));
    }
    return out;
}

std::vector<std::int64_t> agree_secret(const StarTopology& topology, std::size_t star_id,
                                       std::size_t w, std::int64_t m, std::uint64_t master_seed) {
    return agree_secret_detailed(topology, star_id, w, m, master_seed).secret;
}

std::string dataset_to_csv(const Dataset& d) {
    std::string out = "x,y\n";
    out.reserve(out.size() + d.points.size() * 14);
    for (const auto& p : d.points) {
        out += std::to_string(p.x);
        out += ',';
        out += std::to_string(p.y);
        out += '\n';
    }
    return out;
}

Dataset dataset_from_csv(const std::string& text, std::int64_t modulus) {
    require(modulus >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
    std::istringstream in(text);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)) && line.rfind("x,y", 0) == 0,
            ErrorCode::invalid_argument, "dataset CSV must start with header x,y");
    Dataset d;
    d.modulus = modulus;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, ErrorCode::invalid_argument, "bad CSV row: " + line);
        Point p{std::stoll(line.substr(0, comma)), std::stoll(line.substr(comma + 1))};
        require(p.y >= 0 && p.y < modulus, ErrorCode::invalid_argument, "y not reduced mod m");
        require(d.points.empty() || d.points.back().x <= p.x, ErrorCode::invalid_argument,
                "dataset rows must be sorted by x");
        d.points.push_back(p);
    }
    d.meta.ell = static_cast<std::int64_t>(d.points.size());
    return d;
}

nlohmann::json meta_to_json(const Dataset& d) {
    const auto& m = d.meta;
    return {{"func", func_name(m.func.kind)},
            {"beta0", m.func.beta0},
            {"beta1", m.func.beta1},
            {"scale", m.func.scale},
            {"modulus", d.modulus},
            {"sigma", m.sigma},
            {"ell", m.ell},
            {"seed", m.seed},
            {"star_id", m.star_id},
            {"coverage", to_string(m.coverage)}};
}

}  // namespace sskh::channel
