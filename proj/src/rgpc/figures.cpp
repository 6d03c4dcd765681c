#include "sskh/rgpc/figures.hpp"

#include <cmath>

#include "sskh/common/error.hpp"

namespace sskh::rgpc {

channel::FuncSpec FigureSpec::func() const {
    return channel::FuncSpec::normalized(kind, beta1, modulus);
}

const std::vector<FigureSpec>& figure_specs() {
    static const std::vector<FigureSpec> specs = {
        {2, Shape::identity, 546, 12288},
        {3, Shape::sqrt, 240, 12288},
        {4, Shape::square, 125, 10218},
        {6, Shape::cbrt, 221, 11278},
        {7, Shape::log1p, 53, 8857},
    };
    return specs;
}

const FigureSpec& figure_spec(int id) {
    for (const auto& s : figure_specs())
        if (s.id == id) return s;
    fail(ErrorCode::invalid_argument, "unknown figure id " + std::to_string(id));
}

FigureRun run_figure(const FigureSpec& spec, double sigma, std::uint64_t seed, std::int64_t ell,
                     channel::Coverage coverage) {
    const auto func = spec.func();
    const auto topology = channel::StarTopology::single_star(2);
    const auto data = channel::simulate_exchange(topology, 0, func, {sigma, spec.modulus}, ell,
                                                 coverage, seed);
    FigureRun run{spec, sigma, seed, {}, {}, 0.0};
    run.hypothesis = grid_search_hypothesis(transform_dataset(data, Transform::matching(func)));
    run.oracle = build_error_oracle(data, run.hypothesis);
    run.relative_error = std::fabs(run.hypothesis.beta1_hat - static_cast<double>(spec.beta1)) /
                         static_cast<double>(spec.beta1);
    return run;
}

}  // namespace sskh::rgpc
