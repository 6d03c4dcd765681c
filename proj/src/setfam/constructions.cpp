#include "sskh/setfam/constructions.hpp"

#include <algorithm>
#include <set>

#include "sskh/common/error.hpp"

namespace sskh::setfam {

namespace {

Label pair_label(std::size_t l, std::size_t i, std::size_t j) {
    if (j < i) std::swap(i, j);
    return "(" + std::to_string(l) + ",{" + std::to_string(i) + "," + std::to_string(j) + "})";
}

Label private_label(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// A_i = {(l,{i,j}) : l in [t], j in [alpha+1] \ {i}} U {(i,j) : j in [beta]} for i in [m].
SetFamily pair_construction(std::size_t m, std::size_t alpha, std::size_t beta, std::size_t t,
                            bool allow_duplicates) {
    std::set<Label> universe;
    std::vector<std::vector<Label>> sets;
    for (std::size_t i = 1; i <= m; ++i) {
        std::vector<Label> s;
        for (std::size_t l = 1; l <= t; ++l)
            for (std::size_t j = 1; j <= alpha + 1; ++j)
                if (j != i) s.push_back(pair_label(l, i, j));
        for (std::size_t j = 1; j <= beta; ++j) s.push_back(private_label(i, j));
        universe.insert(s.begin(), s.end());
        sets.push_back(std::move(s));
    }
    return SetFamily({universe.begin(), universe.end()}, sets, allow_duplicates);
}

std::vector<Label> fresh_integer_labels(const SetFamily& fam, std::size_t count) {
    std::vector<Label> out;
    for (std::size_t v = 1; out.size() < count; ++v) {
        Label l = std::to_string(v);
        if (!fam.index_of(l)) out.push_back(std::move(l));
    }
    return out;
}

bool has_duplicate_sets(std::vector<std::vector<Label>> sets) {
    for (auto& s : sets) std::sort(s.begin(), s.end());
    std::sort(sets.begin(), sets.end());
    return std::adjacent_find(sets.begin(), sets.end()) != sets.end();
}

}  // namespace

SetFamily construct_small_n(std::size_t m, std::size_t k, std::size_t t) {
    require(t >= 1 && k >= t, ErrorCode::invalid_argument, "construct_small_n: need 1 <= t <= k");
    require(m >= 1 && m <= k / t, ErrorCode::precondition,
            "construct_small_n: need 1 <= m <= floor(k/t)");
    const std::size_t alpha = k / t;
    return pair_construction(m, alpha, k - alpha * t, t, false);
}

SetFamily construct_exact_t(std::size_t k, std::size_t t) {
    require(t >= 1 && k >= t, ErrorCode::invalid_argument, "construct_exact_t: need 1 <= t <= k");
    require(k % t == 0, ErrorCode::precondition, "construct_exact_t: t must divide k");
    const std::size_t alpha = k / t;
    // alpha == 1 yields two copies of the same t-set.
    return pair_construction(alpha + 1, alpha, 0, t, alpha == 1);
}

SetFamily double_family(const SetFamily& fam, std::size_t k, std::size_t t) {
    const FamilyReport rep = verify_family(fam, k, t);
    require(rep.k_uniform && rep.at_most_t_intersecting, ErrorCode::precondition,
            "double_family: input must be k-uniform and at most t-intersecting");
    const std::size_t m = fam.size();
    const auto& u = fam.universe();

    auto g = [](std::size_t copy, const Label& x) { return "G" + std::to_string(copy) + ":" + x; };
    auto h = [](std::size_t copy, const Label& x) { return "H" + std::to_string(copy) + ":" + x; };

    std::vector<Label> universe;
    universe.reserve(2 * m * u.size());
    for (std::size_t c = 1; c <= m; ++c)
        for (const auto& x : u) {
            universe.push_back(g(c, x));
            universe.push_back(h(c, x));
        }

    // A_{h,i} = (set h in G-copy i) disjoint-union (set i in H-copy h)
    std::vector<std::vector<Label>> sets;
    sets.reserve(m * m);
    for (std::size_t hi = 0; hi < m; ++hi)
        for (std::size_t ii = 0; ii < m; ++ii) {
            std::vector<Label> s;
            for (const auto& x : fam.set_labels(hi)) s.push_back(g(ii + 1, x));
            for (const auto& x : fam.set_labels(ii)) s.push_back(h(hi + 1, x));
            sets.push_back(std::move(s));
        }
    return SetFamily(std::move(universe), sets, fam.allows_duplicates());
}

Rational relative_size(const SetFamily& fam, std::size_t k) {
    require(fam.universe_size() > 0, ErrorCode::invalid_argument, "relative_size: empty universe");
    return Rational(static_cast<long long>(k * fam.size()),
                    static_cast<long long>(fam.universe_size()));
}

SetFamily add_distinguished(const SetFamily& fam, std::size_t n, std::size_t t) {
    const std::size_t m = fam.size();
    require(m < n, ErrorCode::precondition, "add_distinguished: need |fam| < n");
    require(fam.universe_size() + m <= n, ErrorCode::precondition,
            "add_distinguished: universe must fit in n - |fam| labels");
    const std::size_t k_minus_1 = m == 0 ? 0 : fam.sets().front().size();
    const FamilyReport rep = verify_family(fam, k_minus_1, t);
    require(rep.k_uniform && rep.at_most_t_intersecting, ErrorCode::precondition,
            "add_distinguished: input must be uniform and at most t-intersecting");

    const std::size_t fresh_count = n - fam.universe_size();
    const std::vector<Label> fresh = fresh_integer_labels(fam, fresh_count);
    std::vector<Label> universe = fam.universe();
    universe.insert(universe.end(), fresh.begin(), fresh.end());
    std::sort(universe.begin(), universe.end(), label_less);

    // The last m fresh labels (in label order) become the distinguished elements.
    std::vector<Label> sorted_fresh = fresh;
    std::sort(sorted_fresh.begin(), sorted_fresh.end(), label_less);
    const std::size_t first = sorted_fresh.size() - m;

    std::vector<std::vector<Label>> sets;
    for (std::size_t i = 0; i < m; ++i) {
        auto s = fam.set_labels(i);
        s.push_back(sorted_fresh[first + i]);
        sets.push_back(std::move(s));
    }
    return SetFamily(std::move(universe), sets, fam.allows_duplicates());
}

SetFamily strip_distinguished(const SetFamily& fam) {
    std::vector<std::size_t> removed;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto priv = private_elements(fam, i);
        require(!priv.empty(), ErrorCode::precondition,
                "strip_distinguished: set " + std::to_string(i) + " has no private element");
        removed.push_back(priv.front());
    }
    std::vector<bool> drop(fam.universe_size(), false);
    for (std::size_t e : removed) drop[e] = true;

    std::vector<Label> universe;
    for (std::size_t e = 0; e < fam.universe_size(); ++e)
        if (!drop[e]) universe.push_back(fam.universe()[e]);

    std::vector<std::vector<Label>> sets;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        std::vector<Label> s;
        for (std::size_t e : fam.sets()[i])
            if (e != removed[i]) s.push_back(fam.universe()[e]);
        sets.push_back(std::move(s));
    }
    const bool dup = fam.allows_duplicates() || has_duplicate_sets(sets);
    return SetFamily(std::move(universe), sets, dup);
}

}  // namespace sskh::setfam
