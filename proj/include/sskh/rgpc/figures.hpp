#pragma once

#include <cstdint>
#include <vector>

#include "sskh/channel/channel.hpp"
#include "sskh/rgpc/error_oracle.hpp"
#include "sskh/rgpc/regression.hpp"

namespace sskh::rgpc {

// The five published regression experiments: slope, modulus and nonlinearity.
struct FigureSpec {
    int id = 2;
    Shape kind = Shape::identity;
    std::int64_t beta1 = 546;
    std::int64_t modulus = 12288;

    channel::FuncSpec func() const;
};

const std::vector<FigureSpec>& figure_specs();
const FigureSpec& figure_spec(int id);   // id in {2, 3, 4, 6, 7}

struct FigureRun {
    FigureSpec spec;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    Hypothesis hypothesis;
    ErrorOracle oracle;
    double relative_error = 0.0;   // |beta1_hat - beta1| / beta1
};

inline constexpr std::int64_t kFigureSamples = 1 << 16;

FigureRun run_figure(const FigureSpec& spec, double sigma, std::uint64_t seed,
                     std::int64_t ell = kFigureSamples,
                     channel::Coverage coverage = channel::Coverage::random);

}  // namespace sskh::rgpc
