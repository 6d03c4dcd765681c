#include "sskh/setfam/bounds.hpp"

#include <cmath>

#include "sskh/common/error.hpp"

namespace sskh::setfam {

namespace {

__extension__ using i128 = __int128;

void require_order(std::int64_t n, std::int64_t k, std::int64_t t, std::int64_t min_t) {
    require(t >= min_t && t <= k && k <= n, ErrorCode::invalid_argument,
            "need " + std::to_string(min_t) + " <= t <= k <= n");
}

// Twice the universe size used by r sets in the pair construction: 2rk - r(r-1)t.
std::int64_t twice_span(std::int64_t r, std::int64_t k, std::int64_t t) {
    return 2 * r * k - r * (r - 1) * t;
}

}  // namespace

std::int64_t binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    i128 acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        require(acc <= static_cast<i128>(INT64_MAX), ErrorCode::guard_exceeded,
                "binomial overflow");
    }
    return static_cast<std::int64_t>(acc);
}

std::optional<std::int64_t> bound_small_n(std::int64_t n, std::int64_t k, std::int64_t t) {
    require_order(n, k, t, 1);
    // n < k(k/t + 1)/2  <=>  2nt < k(k + t)
    if (2 * n * t < k * (k + t)) {
        const long double a = 0.5L + static_cast<long double>(k) / t;
        const long double disc = a * a - 2.0L * n / t;
        auto r = static_cast<std::int64_t>(std::floor(a - std::sqrt(std::max(disc, 0.0L))));
        // Guard against rounding in the square root: r is the largest count whose
        // construction still fits, i.e. span(r) <= n < span(r+1).
        while (twice_span(r + 1, k, t) <= 2 * n) ++r;
        while (r > 1 && twice_span(r, k, t) > 2 * n) --r;
        return r;
    }
    if (k % t == 0 && 2 * n * t == k * (k + t)) {
        // With t = k the boundary is n = k; its k/t + 1 = 2 sets coincide, and
        // only one distinct k-subset of [k] exists.
        if (t == k) return 1;
        return k / t + 1;
    }
    return std::nullopt;
}

std::optional<Rational> bound_simple(std::int64_t n, std::int64_t k, std::int64_t t) {
    require_order(n, k, t, 0);
    if (t == k) return std::nullopt;
    return Rational(binomial(n, t + 1), binomial(k, t + 1));
}

Rational bound_one_more(std::int64_t k, std::int64_t t) {
    require(t >= 1 && t <= k, ErrorCode::invalid_argument, "bound_one_more: need 1 <= t <= k");
    require(k % t == 0, ErrorCode::precondition, "bound_one_more: t must divide k");
    return Rational(k * k + k * t + 2 * t, k * k - k * t + 2 * t) * Rational(k / t + 1);
}

Feasibility feasibility_check(std::int64_t n, std::int64_t k, std::int64_t t, std::int64_t m) {
    require_order(n, k, t, 0);
    require(m >= 1, ErrorCode::invalid_argument, "feasibility_check: need m >= 1");
    const std::int64_t q = k * m / n;
    const std::int64_t r = k * m - n * q;
    const std::int64_t ceil_q = r > 0 ? q + 1 : q;
    Feasibility f;
    f.lhs = (n - r) * q * q + r * ceil_q * ceil_q;
    f.rhs = (k - t) * m + t * m * m;
    f.feasible = f.lhs <= f.rhs;
    return f;
}

AdversaryModel parse_model(const std::string& s) {
    if (s == "external_oracle") return AdversaryModel::external_oracle;
    if (s == "eavesdropper") return AdversaryModel::eavesdropper;
    if (s == "semi_honest") return AdversaryModel::semi_honest;
    fail(ErrorCode::invalid_argument, "unknown adversary model: " + s);
}

std::string to_string(AdversaryModel m) {
    switch (m) {
        case AdversaryModel::external_oracle: return "external_oracle";
        case AdversaryModel::eavesdropper: return "eavesdropper";
        case AdversaryModel::semi_honest: return "semi_honest";
    }
    return "unknown";
}

nlohmann::json PrfCountBound::to_json() const {
    return {{"model", to_string(model)},
            {"relation", relation},
            {"value", value},
            {"asymptotic", asymptotic},
            {"expression", expression}};
}

PrfCountBound max_sskh_prfs(std::int64_t n, std::int64_t k, std::int64_t t, AdversaryModel model,
                            double c) {
    require_order(n, k, t, 0);
    PrfCountBound b;
    b.model = model;
    if (model == AdversaryModel::semi_honest) {
        require(c > 0 && c < 1, ErrorCode::invalid_argument, "constant must lie in (0, 1)");
        b.relation = ">=";
        b.value = c * static_cast<double>(n);
        b.expression = "C*n";
    } else {
        b.relation = "~";
        b.value = std::exp(static_cast<double>(k) * std::log(static_cast<double>(n)) -
                           std::lgamma(static_cast<double>(k) + 1.0));
        b.expression = "n^k/k!";
    }
    return b;
}

}  // namespace sskh::setfam
