#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sskh::setfam {

using Label = std::string;

// Integer-valued labels order numerically, everything else lexicographically,
// and integers sort before non-integers.
bool label_less(const Label& a, const Label& b);

// Finite family of subsets of a labeled universe. The universe is kept in
// label order, and each set is stored as ascending universe indices.
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(std::vector<Label> universe, const std::vector<std::vector<Label>>& sets,
              bool allow_duplicates = false);

    // Universe {1..n}; sets given as 1-based integers.
    static SetFamily from_integers(int n, const std::vector<std::vector<int>>& sets,
                                   bool allow_duplicates = false);

    const std::vector<Label>& universe() const { return universe_; }
    const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    std::size_t universe_size() const { return universe_.size(); }
    bool allows_duplicates() const { return allow_duplicates_; }

    std::vector<Label> set_labels(std::size_t i) const;
    std::optional<std::size_t> index_of(const Label& label) const;

    nlohmann::json to_json() const;
    static SetFamily from_json(const nlohmann::json& j);

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    std::vector<Label> universe_;
    std::vector<std::vector<std::size_t>> sets_;
    bool allow_duplicates_ = false;
};

struct Witness {
    std::string kind;                 // "size", "intersection", "covered"
    std::vector<std::size_t> sets;    // indices of the offending set(s)
};

struct FamilyReport {
    bool k_uniform = true;
    std::size_t k = 0;
    std::size_t max_pairwise_intersection = 0;
    bool at_most_t_intersecting = true;
    bool exactly_t_intersecting = true;
    bool maximally_cover_free = true;
    std::optional<Witness> witness;   // first violation found, if any

    bool ok() const { return k_uniform && at_most_t_intersecting && maximally_cover_free; }
    nlohmann::json to_json() const;
};

FamilyReport verify_family(const SetFamily& fam, std::size_t k, std::size_t t);

// Indices (into the universe) of elements that belong to set i and to no other set.
std::vector<std::size_t> private_elements(const SetFamily& fam, std::size_t i);

// Equality up to a bijection of universes (small families only; exhaustive search).
bool equivalent(const SetFamily& a, const SetFamily& b);

SetFamily fano_plane();

}  // namespace sskh::setfam
