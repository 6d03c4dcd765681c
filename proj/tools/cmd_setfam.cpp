// setfam construct|verify|bounds|brute, and the top-level mutinfo command
#include <cmath>
#include <limits>

#include "cli.hpp"
#include "sskh/common/error.hpp"
#include "sskh/common/random.hpp"
#include "sskh/mutinfo/mutinfo.hpp"
#include "sskh/setfam/bounds.hpp"
#include "sskh/setfam/brute_force.hpp"
#include "sskh/setfam/constructions.hpp"
#include "sskh/setfam/family.hpp"

namespace sskh::cli {

namespace {

using setfam::Rational;

nlohmann::json rational_json(const Rational& r) {
    return {{"num", r.numerator()},
            {"den", r.denominator()},
            {"value", boost::rational_cast<double>(r)}};
}

struct SetfamOpts {
    std::string kind;
    std::string family;   // JSON file
    std::int64_t n = 0, k = 0, t = 1, m = 0;
    std::string model = "external-oracle";
    double c = 0.9;
    std::int64_t guard = 100000;
    std::string name;
};

void run_construct(Context& ctx, const SetfamOpts& o) {
    auto need = [](std::int64_t v, const char* flag) {
        require(v > 0, ErrorCode::invalid_argument, std::string(flag) + " must be positive");
        return static_cast<std::size_t>(v);
    };
    auto input = [&] {
        require(!o.family.empty(), ErrorCode::invalid_argument, "--family is required for " + o.kind);
        return setfam::SetFamily::from_json(read_json_file(o.family));
    };
    setfam::SetFamily fam;
    if (o.kind == "small-n") {
        fam = setfam::construct_small_n(need(o.m, "--m"), need(o.k, "--k"), need(o.t, "--t"));
    } else if (o.kind == "exact-t") {
        fam = setfam::construct_exact_t(need(o.k, "--k"), need(o.t, "--t"));
    } else if (o.kind == "double") {
        fam = setfam::double_family(input(), need(o.k, "--k"), need(o.t, "--t"));
    } else if (o.kind == "fano") {
        fam = setfam::fano_plane();
    } else if (o.kind == "add-distinguished") {
        fam = setfam::add_distinguished(input(), need(o.n, "--n"), need(o.t, "--t"));
    } else if (o.kind == "strip") {
        fam = setfam::strip_distinguished(input());
    } else {
        fail(ErrorCode::invalid_argument, "unknown construction: " + o.kind);
    }
    ctx.write_json(o.name.empty() ? "family.json" : o.name + ".json", fam.to_json());
}

void run_verify(Context& ctx, const SetfamOpts& o) {
    require(!o.family.empty(), ErrorCode::invalid_argument, "--family is required");
    require(o.k > 0 && o.t >= 0, ErrorCode::invalid_argument, "--k must be positive, --t non-negative");
    const auto fam = setfam::SetFamily::from_json(read_json_file(o.family));
    const auto rep = setfam::verify_family(fam, static_cast<std::size_t>(o.k), static_cast<std::size_t>(o.t));
    auto j = rep.to_json();
    j["ok"] = rep.ok();
    j["size"] = fam.size();
    j["universe_size"] = fam.universe_size();
    j["relative_size"] = rational_json(setfam::relative_size(fam, static_cast<std::size_t>(o.k)));
    ctx.write_json("verify.json", j);
}

void run_bounds(Context& ctx, const SetfamOpts& o) {
    require(o.n > 0 && o.k > 0 && o.t >= 0, ErrorCode::invalid_argument,
            "--n, --k must be positive, --t non-negative");
    nlohmann::json j = {{"n", o.n}, {"k", o.k}, {"t", o.t}};
    const auto small = setfam::bound_small_n(o.n, o.k, o.t);
    j["small_n"] = small ? nlohmann::json(*small) : nlohmann::json(nullptr);
    const auto simple = setfam::bound_simple(o.n, o.k, o.t);
    if (simple) {
        // Integer when exact, otherwise the floor bounds the family size.
        j["simple"] = simple->denominator() == 1 ? nlohmann::json(simple->numerator())
                                                 : nlohmann::json(boost::rational_cast<double>(*simple));
        j["simple_floor"] = simple->numerator() / simple->denominator();
    } else {
        j["simple"] = nullptr;
        j["simple_floor"] = nullptr;
    }
    if (o.t > 0 && o.t < o.k && o.k % o.t == 0 && o.n == o.k * (o.k / o.t + 1) / 2 + 1)
        j["one_more"] = rational_json(setfam::bound_one_more(o.k, o.t));
    else
        j["one_more"] = nullptr;
    if (o.m > 0) {
        const auto f = setfam::feasibility_check(o.n, o.k, o.t, o.m);
        j["feasibility"] = {{"m", o.m}, {"feasible", f.feasible}, {"lhs", f.lhs}, {"rhs", f.rhs}};
    } else {
        j["feasibility"] = nullptr;
    }
    nlohmann::json counts = nlohmann::json::object();
    for (auto model : {setfam::AdversaryModel::external_oracle, setfam::AdversaryModel::eavesdropper,
                       setfam::AdversaryModel::semi_honest})
        counts[setfam::to_string(model)] = setfam::max_sskh_prfs(o.n, o.k, o.t, model, o.c).to_json();
    j["prf_counts"] = counts;
    ctx.write_json("bounds.json", j);
}

void run_brute(Context& ctx, const SetfamOpts& o) {
    require(o.n > 0 && o.k > 0 && o.t >= 0, ErrorCode::invalid_argument,
            "--n, --k must be positive, --t non-negative");
    const auto r = setfam::brute_force_max(o.n, o.k, o.t, o.guard);
    nlohmann::json j = {{"n", o.n}, {"k", o.k}, {"t", o.t}, {"size", r.size}, {"witness", r.witness.to_json()}};
    const auto small = setfam::bound_small_n(o.n, o.k, o.t);
    j["small_n"] = small ? nlohmann::json(*small) : nlohmann::json(nullptr);
    ctx.write_json("brute.json", j);
}

struct MiOpts {
    std::string design;
    std::vector<double> xs, ws;
    std::size_t a = 0;
    double sigma = 1.0;
    std::size_t trials = 100000;
    std::string c3 = "shared";
};

nlohmann::json finite_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

void run_mutinfo(Context& ctx, const MiOpts& o) {
    mutinfo::OverlapDesign d;
    if (!o.design.empty()) {
        d = mutinfo::OverlapDesign::from_json(read_json_file(o.design));
    } else {
        d.xs = o.xs;
        d.ws = o.ws;
        d.a = o.a;
        d.sigma = o.sigma;
    }
    d.validate();
    require(o.c3 == "shared" || o.c3 == "literal", ErrorCode::invalid_argument, "--c3 must be shared or literal");
    const auto mode = o.c3 == "shared" ? mutinfo::C3Mode::shared : mutinfo::C3Mode::literal;
    const auto oracle = mutinfo::covariance_oracle(d);
    nlohmann::json j = {{"design", d.to_json()},
                        {"c3_mode", o.c3},
                        {"mi_closed", finite_or_null(mutinfo::closed_form_mi(d, mode))},
                        {"mi_oracle", finite_or_null(oracle.mi)}};
    if (o.trials > 0) {
        auto rng = make_stream(ctx.seed, {tag("mutinfo-mc")});
        const auto mc = mutinfo::monte_carlo_mi(d, o.trials, rng);
        j["mi_mc"] = finite_or_null(mc.estimate);
        j["mc_stderr"] = finite_or_null(mc.std_error);
    } else {
        j["mi_mc"] = nullptr;
        j["mc_stderr"] = nullptr;
    }
    j["mc_trials"] = o.trials;
    nlohmann::json cov = nlohmann::json::array();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) cov.push_back(oracle.sigma(r, c));
    j["sigma_matrix"] = cov;
    ctx.write_json("mutinfo.json", j);
}

}  // namespace

void register_setfam(CLI::App& app, const ContextPtr& ctx) {
    auto o = std::make_shared<SetfamOpts>();
    auto* sf = app.add_subcommand("setfam", "star families: constructions, checks, bounds");
    sf->require_subcommand(1);

    auto* con = sf->add_subcommand("construct", "build a family and write it as JSON");
    con->add_option("kind", o->kind, "small-n|exact-t|double|fano|add-distinguished|strip")
        ->required()
        ->check(CLI::IsMember({"small-n", "exact-t", "double", "fano", "add-distinguished", "strip"}));
    con->add_option("--family", o->family, "input family JSON (double, add-distinguished, strip)");
    con->add_option("--m", o->m, "number of sets (small-n)");
    con->add_option("--k", o->k);
    con->add_option("--t", o->t)->capture_default_str();
    con->add_option("--n", o->n, "target universe size (add-distinguished)");
    con->add_option("--name", o->name, "output stem")->default_str("family");
    con->callback([ctx, o] { run_construct(*ctx, *o); });

    auto* ver = sf->add_subcommand("verify", "check uniformity, intersections and cover-freeness");
    ver->add_option("--family", o->family)->required();
    ver->add_option("--k", o->k)->required();
    ver->add_option("--t", o->t)->required();
    ver->callback([ctx, o] { run_verify(*ctx, *o); });

    auto* bnd = sf->add_subcommand("bounds", "evaluate the family-size and PRF-count bounds");
    bnd->add_option("--n", o->n)->required();
    bnd->add_option("--k", o->k)->required();
    bnd->add_option("--t", o->t)->required();
    bnd->add_option("--m", o->m, "family size for the feasibility check");
    bnd->add_option("--c", o->c, "constant in the semi-honest count")->capture_default_str();
    bnd->callback([ctx, o] { run_bounds(*ctx, *o); });

    auto* bf = sf->add_subcommand("brute", "exact maximum family size by search");
    bf->add_option("--n", o->n)->required();
    bf->add_option("--k", o->k)->required();
    bf->add_option("--t", o->t)->required();
    bf->add_option("--guard", o->guard, "node budget")->capture_default_str();
    bf->callback([ctx, o] { run_brute(*ctx, *o); });
}

void register_mutinfo(CLI::App& app, const ContextPtr& ctx) {
    auto o = std::make_shared<MiOpts>();
    auto* mi = app.add_subcommand("mutinfo", "mutual information of two overlapping fits");
    mi->add_option("--design", o->design, "design JSON {xs, ws, a, sigma}");
    mi->add_option("--xs", o->xs)->delimiter(',');
    mi->add_option("--ws", o->ws)->delimiter(',');
    mi->add_option("--a", o->a, "shared prefix length")->capture_default_str();
    mi->add_option("--sigma", o->sigma)->capture_default_str();
    mi->add_option("--trials", o->trials, "Monte Carlo fits (0 skips)")->capture_default_str();
    mi->add_option("--c3", o->c3, "shared|literal")->capture_default_str();
    mi->callback([ctx, o] { run_mutinfo(*ctx, *o); });
}

}  // namespace sskh::cli
