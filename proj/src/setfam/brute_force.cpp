#include "sskh/setfam/brute_force.hpp"

#include <bit>

#include "sskh/common/error.hpp"
#include "sskh/setfam/bounds.hpp"

namespace sskh::setfam {

namespace {

class MaxFamilySearch {
public:
    MaxFamilySearch(std::vector<std::uint64_t> masks, int t) : masks_(std::move(masks)), t_(t) {}

    std::vector<int> run() {
        std::vector<int> all(masks_.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        std::vector<int> current;
        search(current, all);
        return best_;
    }

private:
    bool compatible(int a, int b) const { return std::popcount(masks_[a] & masks_[b]) <= t_; }

    // Greedy colouring of every suffix cand[j..]: vertices in one class pairwise
    // conflict, so a family can take at most one per class.
    std::vector<int> suffix_bounds(const std::vector<int>& cand) const {
        std::vector<int> bound(cand.size());
        std::vector<std::vector<int>> classes;
        for (std::size_t j = cand.size(); j-- > 0;) {
            const int v = cand[j];
            bool placed = false;
            for (auto& cls : classes) {
                bool clash_all = true;
                for (int u : cls)
                    if (compatible(u, v)) {
                        clash_all = false;
                        break;
                    }
                if (clash_all) {
                    cls.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({v});
            bound[j] = static_cast<int>(classes.size());
        }
        return bound;
    }

    // Preorder over increasing index sequences is lexicographic, so the first
    // family of the final maximum size is the lexicographically least one.
    void search(std::vector<int>& current, const std::vector<int>& cand) {
        if (current.size() > best_.size()) best_ = current;
        if (cand.empty()) return;
        const auto bound = suffix_bounds(cand);
        for (std::size_t j = 0; j < cand.size(); ++j) {
            if (current.size() + static_cast<std::size_t>(bound[j]) <= best_.size()) return;
            const int v = cand[j];
            std::vector<int> next;
            for (std::size_t i = j + 1; i < cand.size(); ++i)
                if (compatible(v, cand[i])) next.push_back(cand[i]);
            current.push_back(v);
            search(current, next);
            current.pop_back();
        }
    }

    std::vector<std::uint64_t> masks_;
    int t_;
    std::vector<int> best_;
};

// k-subsets of {0..n-1} in lexicographic order of their sorted element lists.
void enumerate_subsets(int n, int k, int start, std::uint64_t mask, int left,
                       std::vector<std::uint64_t>& out) {
    if (left == 0) {
        out.push_back(mask);
        return;
    }
    for (int e = start; e <= n - left; ++e)
        enumerate_subsets(n, k, e + 1, mask | (std::uint64_t{1} << e), left - 1, out);
}

}  // namespace

BruteForceResult brute_force_max(std::int64_t n, std::int64_t k, std::int64_t t,
                                 std::int64_t guard) {
    require(t >= 0 && t <= k && k <= n && k >= 1, ErrorCode::invalid_argument,
            "brute_force_max: need 0 <= t <= k <= n, k >= 1");
    require(n <= 64, ErrorCode::guard_exceeded, "brute_force_max: n must be at most 64");
    require(binomial(n, k) <= guard, ErrorCode::guard_exceeded,
            "brute_force_max: C(n,k) exceeds the guard");

    std::vector<std::uint64_t> masks;
    enumerate_subsets(static_cast<int>(n), static_cast<int>(k), 0, 0, static_cast<int>(k), masks);
    const auto chosen = MaxFamilySearch(masks, static_cast<int>(t)).run();

    std::vector<std::vector<int>> sets;
    for (int v : chosen) {
        std::vector<int> s;
        for (int e = 0; e < n; ++e)
            if (masks[v] >> e & 1U) s.push_back(e + 1);
        sets.push_back(std::move(s));
    }
    return {chosen.size(), SetFamily::from_integers(static_cast<int>(n), sets)};
}

}  // namespace sskh::setfam
