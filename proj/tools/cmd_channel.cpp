// simulate, fit, errors, repro
#include <cmath>

#include "cli.hpp"
#include "sskh/channel/channel.hpp"
#include "sskh/common/atomic_file.hpp"
#include "sskh/common/error.hpp"
#include "sskh/rgpc/figures.hpp"
#include "sskh/rgpc/regression.hpp"

namespace sskh::cli {

namespace {

struct SimulateOpts {
    std::string func = "linear";
    std::int64_t beta0 = 0;
    std::int64_t beta1 = 546;
    double scale = 0.0;   // 0: modulus / shape(modulus)
    std::int64_t modulus = 12288;
    double sigma = 30.0;
    std::int64_t ell = 1 << 16;
    std::string coverage = "random";
    std::size_t k = 2;
    std::string name = "dataset";
};

struct FitOpts {
    std::string data;
    std::string meta;
    std::int64_t modulus = 0;
    std::string transform = "identity";
    double scale = 0.0;
    std::string segmentation = "value";
    std::int64_t max_kappa = 0;
    std::size_t min_points = 30;
    int refits = 2;
    bool no_refine = false;
    std::string name = "hypothesis";
};

struct ErrorsOpts {
    std::string data;
    std::string hypothesis;
    std::string meta;
    std::int64_t modulus = 0;
    double sigma = 0.0;   // 0: use the realized spread of the table
    double b = 4.0;
    std::string name = "errors";
};

struct ReproOpts {
    double sigma = 30.0;
    std::int64_t ell = rgpc::kFigureSamples;
    std::string coverage = "random";
};

std::int64_t modulus_from(std::int64_t flag, const std::string& meta) {
    if (flag > 0) return flag;
    require(!meta.empty(), ErrorCode::invalid_argument, "pass --modulus or --meta");
    return read_json_file(meta).at("modulus").get<std::int64_t>();
}

rgpc::Transform pick_transform(const std::string& name, double scale, std::int64_t m) {
    const Shape s = parse_shape(name);
    if (scale <= 0.0) scale = s == Shape::identity ? 1.0 : normalized_scale(s, static_cast<double>(m));
    return {s, scale};
}

void run_simulate(Context& ctx, const SimulateOpts& o) {
    channel::FuncSpec f;
    f.kind = parse_shape(o.func);
    f.beta0 = o.beta0;
    f.beta1 = o.beta1;
    f.scale = o.scale > 0.0 ? o.scale
                            : (f.kind == Shape::identity
                                   ? 1.0
                                   : normalized_scale(f.kind, static_cast<double>(o.modulus)));
    const auto topo = channel::StarTopology::single_star(o.k);
    const auto d = channel::simulate_exchange(topo, 0, f, {o.sigma, o.modulus}, o.ell,
                                              channel::parse_coverage(o.coverage), ctx.seed);
    ctx.write_table(o.name, channel::dataset_to_csv(d));
    ctx.write_json(o.name + ".meta.json", channel::meta_to_json(d));
}

void run_fit(Context& ctx, const FitOpts& o) {
    const auto m = modulus_from(o.modulus, o.meta);
    const auto d = channel::dataset_from_csv(read_file(o.data), m);
    rgpc::GridOptions g;
    g.segmentation = o.segmentation == "index" ? rgpc::Segmentation::index : rgpc::Segmentation::value;
    require(o.segmentation == "index" || o.segmentation == "value", ErrorCode::invalid_argument,
            "segmentation must be value or index");
    g.max_kappa = o.max_kappa;
    g.min_points = o.min_points;
    g.modular_refits = o.refits;
    g.global_refine = !o.no_refine;
    const auto h = rgpc::grid_search_hypothesis(
        rgpc::transform_dataset(d, pick_transform(o.transform, o.scale, m)), g);
    ctx.write_json(o.name + ".json", h.to_json());
}

void run_errors(Context& ctx, const ErrorsOpts& o) {
    const auto m = modulus_from(o.modulus, o.meta);
    const auto d = channel::dataset_from_csv(read_file(o.data), m);
    const auto h = rgpc::Hypothesis::from_json(read_json_file(o.hypothesis));
    const auto oracle = rgpc::build_error_oracle(d, h);
    const auto stats = o.sigma > 0.0 ? rgpc::error_statistics(oracle, o.sigma, o.b)
                                     : rgpc::error_statistics(oracle);
    ctx.write_table(o.name, rgpc::error_table_csv(oracle));
    ctx.write_table(o.name + "_hist", rgpc::error_histogram_csv(oracle));
    auto j = stats.to_json();
    j["coverage"] = oracle.coverage();
    j["sigma_hat"] = oracle.sigma_hat();
    ctx.write_json(o.name + "_stats.json", j);
}

void run_repro(Context& ctx, int fig, const ReproOpts& o) {
    const auto& spec = rgpc::figure_spec(fig);
    const auto run = rgpc::run_figure(spec, o.sigma, ctx.seed, o.ell, channel::parse_coverage(o.coverage));
    const std::string stem = "fig" + std::to_string(fig);
    ctx.write_table(stem + "_hist", rgpc::error_histogram_csv(run.oracle));
    const auto stats = rgpc::error_statistics(run.oracle, o.sigma);
    nlohmann::json j = {{"figure", fig},
                        {"func", channel::func_name(spec.kind)},
                        {"beta1", spec.beta1},
                        {"modulus", spec.modulus},
                        {"sigma", o.sigma},
                        {"ell", o.ell},
                        {"seed", ctx.seed},
                        {"coverage", o.coverage},
                        {"beta1_hat", run.hypothesis.beta1_hat},
                        {"relative_error", run.relative_error},
                        {"within_2_percent", run.relative_error <= 0.02},
                        {"hypothesis", run.hypothesis.to_json()},
                        {"error_stats", stats.to_json()}};
    ctx.write_json(stem + "_slope.json", j);
}

}  // namespace

void register_channel(CLI::App& app, const ContextPtr& ctx) {
    auto so = std::make_shared<SimulateOpts>();
    auto* sim = app.add_subcommand("simulate", "simulate one star's broadcast exchange");
    sim->add_option("--func", so->func, "linear|sqrt|square|cbrt|log1p")->capture_default_str();
    sim->add_option("--beta0", so->beta0)->capture_default_str();
    sim->add_option("--beta1", so->beta1)->capture_default_str();
    sim->add_option("--scale", so->scale, "regressor scale (default m / shape(m))");
    sim->add_option("--modulus", so->modulus)->capture_default_str();
    sim->add_option("--sigma", so->sigma)->capture_default_str();
    sim->add_option("--ell", so->ell, "number of messages")->capture_default_str();
    sim->add_option("--coverage", so->coverage, "random|complete")->capture_default_str();
    sim->add_option("--k", so->k, "parties in the star")->capture_default_str();
    sim->add_option("--name", so->name, "output file stem")->capture_default_str();
    sim->callback([ctx, so] { run_simulate(*ctx, *so); });

    auto fo = std::make_shared<FitOpts>();
    auto* fit = app.add_subcommand("fit", "grid-search the modular regression hypothesis");
    fit->add_option("--data", fo->data, "dataset CSV (x,y)")->required();
    fit->add_option("--meta", fo->meta, "metadata JSON written by simulate");
    fit->add_option("--modulus", fo->modulus);
    fit->add_option("--transform", fo->transform, "identity|sqrt|square|cbrt|log1p")->capture_default_str();
    fit->add_option("--scale", fo->scale, "transform scale (default m / shape(m))");
    fit->add_option("--segmentation", fo->segmentation, "value|index")->capture_default_str();
    fit->add_option("--max-kappa", fo->max_kappa, "0 means ceil(ell/100)")->capture_default_str();
    fit->add_option("--min-points", fo->min_points)->capture_default_str();
    fit->add_option("--refits", fo->refits, "modular refit rounds per cell")->capture_default_str();
    fit->add_flag("--no-refine", fo->no_refine, "keep the winning cell's own line");
    fit->add_option("--name", fo->name)->capture_default_str();
    fit->callback([ctx, fo] { run_fit(*ctx, *fo); });

    auto eo = std::make_shared<ErrorsOpts>();
    auto* err = app.add_subcommand("errors", "build the error oracle table and its statistics");
    err->add_option("--data", eo->data)->required();
    err->add_option("--hypothesis", eo->hypothesis)->required();
    err->add_option("--meta", eo->meta);
    err->add_option("--modulus", eo->modulus);
    err->add_option("--sigma", eo->sigma, "reference sigma (default: realized spread)");
    err->add_option("--b", eo->b, "bound constant b")->capture_default_str();
    err->add_option("--name", eo->name)->capture_default_str();
    err->callback([ctx, eo] { run_errors(*ctx, *eo); });

    auto ro = std::make_shared<ReproOpts>();
    auto* repro = app.add_subcommand("repro", "reproduce one figure experiment");
    repro->require_subcommand(1);
    for (const auto& spec : rgpc::figure_specs()) {
        const int id = spec.id;
        auto* f = repro->add_subcommand("fig" + std::to_string(id),
                                        std::to_string(spec.beta1) + "*" + to_string(spec.kind) +
                                            "(x) mod " + std::to_string(spec.modulus));
        f->add_option("--sigma", ro->sigma)->capture_default_str();
        f->add_option("--ell", ro->ell)->capture_default_str();
        f->add_option("--coverage", ro->coverage)->capture_default_str();
        f->callback([ctx, ro, id] { run_repro(*ctx, id, *ro); });
    }
}

}  // namespace sskh::cli
