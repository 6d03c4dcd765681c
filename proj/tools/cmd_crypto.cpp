// lwlr sample|compare, prf eval|homtest|startest
#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "sskh/common/error.hpp"
#include "sskh/common/random.hpp"
#include "sskh/lwlr/lwlr.hpp"
#include "sskh/prf/prf.hpp"

namespace sskh::cli {

namespace {

std::vector<std::int64_t> parse_list(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stoll(cell));
        } catch (const std::exception&) {
            fail(ErrorCode::invalid_argument, "not an integer list: " + s);
        }
    }
    return out;
}

std::uint64_t oracle_seed(const Context& ctx, const char* which) {
    return derive_seed(ctx.seed, {tag("oracle"), tag(which)});
}

struct LwlrOpts {
    OracleSource oracle;
    std::size_t w = 16;
    std::size_t count = 1000;
    std::string secret;   // comma list; empty draws a uniform one
    bool export_secret = false;
    std::int64_t q = 12289;
    std::int64_t p = 64;
    std::size_t trials = 1000;
};

lwlr::Vector secret_for(const Context& ctx, const LwlrOpts& o, std::int64_t m) {
    if (!o.secret.empty()) {
        auto s = parse_list(o.secret);
        for (auto& v : s) v = ((v % m) + m) % m;
        return s;
    }
    auto rng = make_stream(ctx.seed, {tag("lwlr-secret")});
    return lwlr::uniform_vector(o.w, m, rng);
}

void run_lwlr_sample(Context& ctx, const LwlrOpts& o) {
    const auto oracle = load_oracle(o.oracle, oracle_seed(ctx, "lwlr"));
    const auto s = secret_for(ctx, o, oracle.modulus());
    auto rng = make_stream(ctx.seed, {tag("lwlr-samples")});
    std::vector<lwlr::LwlrSample> samples;
    samples.reserve(o.count);
    for (std::size_t i = 0; i < o.count; ++i) samples.push_back(lwlr::sample_lwlr(s, oracle, rng));
    ctx.write_table("lwlr_samples", lwlr::samples_csv(samples, s.size()));
    if (o.export_secret)
        ctx.write_json("lwlr_secret.json", {{"modulus", oracle.modulus()}, {"secret", s}});
}

void run_lwlr_compare(Context& ctx, const LwlrOpts& o) {
    const auto oracle = load_oracle(o.oracle, oracle_seed(ctx, "lwlr"));
    const auto s = secret_for(ctx, o, oracle.modulus());
    auto rng = make_stream(ctx.seed, {tag("lwlr-compare")});
    const auto rows = lwlr::lwlr_vs_lwr_report(s, oracle, o.q, o.p, o.trials, rng);
    ctx.write_table("lwlr_compare", lwlr::comparison_csv(rows));
}

struct PrfOpts {
    OracleSource oracle;
    OracleSource other;   // second star for startest
    std::string params;   // JSON written by an earlier eval
    std::size_t w = 2;
    std::size_t leaves = 8;
    std::string shape = "balanced";
    std::string tree;     // nested-array JSON, overrides shape/leaves
    std::string key;
    std::vector<std::string> inputs;
    std::size_t random_inputs = 16;
    std::size_t trials = 1000;
};

prf::PrfParams params_for(const Context& ctx, const PrfOpts& o, std::int64_t m) {
    if (!o.params.empty()) {
        auto p = prf::PrfParams::from_json(read_json_file(o.params));
        require(p.m == m, ErrorCode::dimension_mismatch, "params modulus differs from the oracle's");
        return p;
    }
    prf::TreeShape tree;
    if (!o.tree.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(o.tree);
        } catch (const nlohmann::json::parse_error& e) {
            fail(ErrorCode::invalid_argument, std::string("--tree: ") + e.what());
        }
        tree = prf::TreeShape::from_json(j);
    } else if (o.shape == "balanced") {
        tree = prf::TreeShape::balanced(o.leaves);
    } else if (o.shape == "spine") {
        tree = prf::TreeShape::left_spine(o.leaves);
    } else {
        fail(ErrorCode::invalid_argument, "shape must be balanced or spine");
    }
    return prf::PrfParams::generate(m, o.w, tree, derive_seed(ctx.seed, {tag("prf-params")}));
}

double sigma_hat(double sigma) { return std::sqrt(sigma * sigma + 1.0 / 12.0); }

void run_prf_eval(Context& ctx, const PrfOpts& o) {
    const auto oracle = load_oracle(o.oracle, oracle_seed(ctx, "prf"));
    const auto p = params_for(ctx, o, oracle.modulus());
    auto rng = make_stream(ctx.seed, {tag("prf-eval")});
    prf::Vector key = o.key.empty() ? prf::random_key(p.w, p.m, rng) : parse_list(o.key);
    std::vector<prf::Bits> xs;
    for (const auto& s : o.inputs) xs.push_back(prf::parse_bits(s));
    if (xs.empty())
        for (std::size_t i = 0; i < o.random_inputs; ++i)
            xs.push_back(prf::random_bits(p.tree.leaf_count(), rng));
    std::vector<std::pair<prf::Bits, prf::Vector>> rows;
    for (const auto& x : xs) rows.emplace_back(x, prf::prf_eval(p, oracle, key, x));
    ctx.write_json("prf_params.json", p.to_json());
    ctx.write_table("prf_outputs", prf::output_csv(rows));
}

void run_prf_homtest(Context& ctx, const PrfOpts& o) {
    const auto oracle = load_oracle(o.oracle, oracle_seed(ctx, "prf"));
    const auto p = params_for(ctx, o, oracle.modulus());
    auto rng = make_stream(ctx.seed, {tag("prf-homtest")});
    const double limit = std::sqrt(2700.0) * sigma_hat(o.oracle.sigma);
    std::string csv = "trial,coord,gap\n";
    std::size_t inside = 0, total = 0;
    double worst = 0.0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        const auto k1 = prf::random_key(p.w, p.m, rng);
        const auto k2 = prf::random_key(p.w, p.m, rng);
        const auto gap = prf::homomorphism_gap(p, oracle, k1, k2, prf::random_bits(p.tree.leaf_count(), rng));
        for (std::size_t j = 0; j < gap.size(); ++j) {
            const double a = std::fabs(static_cast<double>(gap[j]));
            inside += a <= limit;
            worst = std::max(worst, a);
            ++total;
            csv += std::to_string(t) + "," + std::to_string(j) + "," + std::to_string(gap[j]) + "\n";
        }
    }
    ctx.write_table("prf_homtest", csv);
    ctx.write_json("prf_homtest_summary.json",
                   {{"trials", o.trials},
                    {"coordinates", total},
                    {"sigma", o.oracle.sigma},
                    {"limit", limit},
                    {"fraction_within", total ? static_cast<double>(inside) / total : 1.0},
                    {"max_abs_gap", worst}});
}

void run_prf_startest(Context& ctx, const PrfOpts& o) {
    const auto oi = load_oracle(o.oracle, oracle_seed(ctx, "star-i"));
    OracleSource other = o.other;
    other.modulus = o.oracle.modulus;
    other.sigma = o.oracle.sigma;
    other.beta1 = o.oracle.beta1;
    const auto oj = load_oracle(other, oracle_seed(ctx, "star-j"));
    const auto p = params_for(ctx, o, oi.modulus());
    auto rng = make_stream(ctx.seed, {tag("prf-startest")});
    const auto key = o.key.empty() ? prf::random_key(p.w, p.m, rng) : parse_list(o.key);
    std::string csv = "trial,agreements,coordinates\n";
    std::size_t agree = 0, total = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        const auto r = prf::star_collision_rate(p, oi, oj, key, 1, rng);
        agree += r.agreements;
        total += r.coordinates;
        csv += std::to_string(t) + "," + std::to_string(r.agreements) + "," +
               std::to_string(r.coordinates) + "\n";
    }
    const double bound = prf::collision_bound(o.oracle.sigma);
    const double rate = total ? static_cast<double>(agree) / total : 0.0;
    ctx.write_table("prf_startest", csv);
    ctx.write_json("prf_startest_summary.json", {{"trials", o.trials},
                                                 {"coordinates", total},
                                                 {"agreements", agree},
                                                 {"rate", rate},
                                                 {"sigma", o.oracle.sigma},
                                                 {"bound", bound},
                                                 {"within_bound", rate <= bound + 0.02}});
}

void add_prf_shape(CLI::App* c, PrfOpts& o) {
    c->add_option("--params", o.params, "params JSON from an earlier run");
    c->add_option("--w", o.w, "key dimension")->capture_default_str();
    c->add_option("--leaves", o.leaves, "input bit length")->capture_default_str();
    c->add_option("--shape", o.shape, "balanced|spine")->capture_default_str();
    c->add_option("--tree", o.tree, "nested-array tree, e.g. [[[],[]],[]]");
}

}  // namespace

void register_lwlr(CLI::App& app, const ContextPtr& ctx) {
    auto o = std::make_shared<LwlrOpts>();
    auto* lw = app.add_subcommand("lwlr", "LWLR samples and the LWR comparison");
    lw->require_subcommand(1);
    auto* sample = lw->add_subcommand("sample", "write a batch of LWLR samples");
    add_oracle_options(sample, o->oracle);
    sample->add_option("--w", o->w, "secret dimension")->capture_default_str();
    sample->add_option("--count", o->count)->capture_default_str();
    sample->add_option("--secret", o->secret, "comma-separated secret (default uniform)");
    sample->add_flag("--export-secret", o->export_secret, "also write the secret to lwlr_secret.json");
    sample->callback([ctx, o] { run_lwlr_sample(*ctx, *o); });

    auto* cmp = lw->add_subcommand("compare", "LWLR error vs LWR rounding error per trial");
    add_oracle_options(cmp, o->oracle);
    cmp->add_option("--w", o->w)->capture_default_str();
    cmp->add_option("--secret", o->secret);
    cmp->add_option("--q", o->q)->capture_default_str();
    cmp->add_option("--p", o->p)->capture_default_str();
    cmp->add_option("--trials", o->trials)->capture_default_str();
    cmp->callback([ctx, o] { run_lwlr_compare(*ctx, *o); });
}

void register_prf(CLI::App& app, const ContextPtr& ctx) {
    auto o = std::make_shared<PrfOpts>();
    auto* prf = app.add_subcommand("prf", "star-specific key-homomorphic PRF");
    prf->require_subcommand(1);

    auto* ev = prf->add_subcommand("eval", "evaluate the PRF on given or random inputs");
    add_oracle_options(ev, o->oracle);
    add_prf_shape(ev, *o);
    ev->add_option("--key", o->key, "comma-separated key (default random)");
    ev->add_option("--x", o->inputs, "input bit strings");
    ev->add_option("--inputs", o->random_inputs, "random inputs when no --x")->capture_default_str();
    ev->callback([ctx, o] { run_prf_eval(*ctx, *o); });

    auto* hom = prf->add_subcommand("homtest", "measure the key-homomorphism gap");
    add_oracle_options(hom, o->oracle);
    add_prf_shape(hom, *o);
    hom->add_option("--trials", o->trials)->capture_default_str();
    hom->callback([ctx, o] { run_prf_homtest(*ctx, *o); });

    auto* star = prf->add_subcommand("startest", "collision rate between two stars' PRFs");
    add_oracle_options(star, o->oracle);
    star->add_option("--table-j", o->other.table, "second star's error table");
    add_prf_shape(star, *o);
    star->add_option("--key", o->key);
    star->add_option("--trials", o->trials, "random inputs")->default_val(200);
    star->callback([ctx, o] { run_prf_startest(*ctx, *o); });
}

}  // namespace sskh::cli
