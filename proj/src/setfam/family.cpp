#include "sskh/setfam/family.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "sskh/common/error.hpp"

namespace sskh::setfam {

namespace {

std::optional<long long> as_integer(const Label& s) {
    if (s.empty()) return std::nullopt;
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    if (std::to_string(v) != s) return std::nullopt;  // reject "01", "+1"
    return v;
}

}  // namespace

bool label_less(const Label& a, const Label& b) {
    auto ia = as_integer(a);
    auto ib = as_integer(b);
    if (ia && ib) return *ia < *ib;
    if (ia.has_value() != ib.has_value()) return ia.has_value();
    return a < b;
}

SetFamily::SetFamily(std::vector<Label> universe, const std::vector<std::vector<Label>>& sets,
                     bool allow_duplicates)
    : universe_(std::move(universe)), allow_duplicates_(allow_duplicates) {
    std::sort(universe_.begin(), universe_.end(), label_less);
    for (std::size_t i = 1; i < universe_.size(); ++i) {
        require(universe_[i - 1] != universe_[i], ErrorCode::invalid_argument,
                "duplicate universe label: " + universe_[i]);
    }
    std::map<Label, std::size_t> pos;
    for (std::size_t i = 0; i < universe_.size(); ++i) pos.emplace(universe_[i], i);

    sets_.reserve(sets.size());
    for (const auto& s : sets) {
        std::vector<std::size_t> idx;
        idx.reserve(s.size());
        for (const auto& label : s) {
            auto it = pos.find(label);
            require(it != pos.end(), ErrorCode::invalid_argument,
                    "set element not in universe: " + label);
            idx.push_back(it->second);
        }
        std::sort(idx.begin(), idx.end());
        require(std::adjacent_find(idx.begin(), idx.end()) == idx.end(),
                ErrorCode::invalid_argument, "repeated element inside a set");
        sets_.push_back(std::move(idx));
    }
    if (!allow_duplicates_) {
        auto sorted = sets_;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                ErrorCode::invalid_argument, "duplicate sets in family");
    }
}

SetFamily SetFamily::from_integers(int n, const std::vector<std::vector<int>>& sets,
                                   bool allow_duplicates) {
    std::vector<Label> universe;
    for (int i = 1; i <= n; ++i) universe.push_back(std::to_string(i));
    std::vector<std::vector<Label>> labeled;
    for (const auto& s : sets) {
        std::vector<Label> l;
        for (int v : s) l.push_back(std::to_string(v));
        labeled.push_back(std::move(l));
    }
    return SetFamily(std::move(universe), labeled, allow_duplicates);
}

std::vector<Label> SetFamily::set_labels(std::size_t i) const {
    std::vector<Label> out;
    for (std::size_t e : sets_.at(i)) out.push_back(universe_[e]);
    return out;
}

std::optional<std::size_t> SetFamily::index_of(const Label& label) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), label, label_less);
    if (it == universe_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - universe_.begin());
}

namespace {

nlohmann::json label_json(const Label& l) {
    if (auto v = as_integer(l)) return *v;
    return l;
}

Label json_label(const nlohmann::json& j) {
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    require(j.is_string(), ErrorCode::invalid_argument, "labels must be strings or integers");
    return j.get<std::string>();
}

}  // namespace

nlohmann::json SetFamily::to_json() const {
    nlohmann::json u = nlohmann::json::array();
    for (const auto& l : universe_) u.push_back(label_json(l));
    nlohmann::json s = nlohmann::json::array();
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        nlohmann::json one = nlohmann::json::array();
        for (std::size_t e : sets_[i]) one.push_back(label_json(universe_[e]));
        s.push_back(std::move(one));
    }
    nlohmann::json j{{"universe", u}, {"sets", s}};
    if (allow_duplicates_) j["allow_duplicates"] = true;
    return j;
}

SetFamily SetFamily::from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("universe") && j.contains("sets"),
            ErrorCode::invalid_argument, "family JSON needs 'universe' and 'sets'");
    std::vector<Label> universe;
    for (const auto& l : j.at("universe")) universe.push_back(json_label(l));
    std::vector<std::vector<Label>> sets;
    for (const auto& s : j.at("sets")) {
        std::vector<Label> one;
        for (const auto& l : s) one.push_back(json_label(l));
        sets.push_back(std::move(one));
    }
    return SetFamily(std::move(universe), sets, j.value("allow_duplicates", false));
}

nlohmann::json FamilyReport::to_json() const {
    nlohmann::json j{{"k_uniform", k_uniform},
                     {"k", k},
                     {"max_pairwise_intersection", max_pairwise_intersection},
                     {"at_most_t_intersecting", at_most_t_intersecting},
                     {"exactly_t_intersecting", exactly_t_intersecting},
                     {"maximally_cover_free", maximally_cover_free},
                     {"witness", nullptr}};
    if (witness) j["witness"] = {{"kind", witness->kind}, {"sets", witness->sets}};
    return j;
}

namespace {

std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

std::vector<std::size_t> element_degrees(const SetFamily& fam) {
    std::vector<std::size_t> deg(fam.universe_size(), 0);
    for (const auto& s : fam.sets())
        for (std::size_t e : s) ++deg[e];
    return deg;
}

}  // namespace

std::vector<std::size_t> private_elements(const SetFamily& fam, std::size_t i) {
    const auto deg = element_degrees(fam);
    std::vector<std::size_t> out;
    for (std::size_t e : fam.sets().at(i))
        if (deg[e] == 1) out.push_back(e);
    return out;
}

FamilyReport verify_family(const SetFamily& fam, std::size_t k, std::size_t t) {
    FamilyReport r;
    r.k = k;
    const auto& sets = fam.sets();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].size() != k && r.k_uniform) {
            r.k_uniform = false;
            if (!r.witness) r.witness = Witness{"size", {i}};
        }
    }
    std::optional<Witness> pair_witness;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const std::size_t c = intersection_size(sets[i], sets[j]);
            r.max_pairwise_intersection = std::max(r.max_pairwise_intersection, c);
            if (c != t) r.exactly_t_intersecting = false;
            if (c > t && r.at_most_t_intersecting) {
                r.at_most_t_intersecting = false;
                pair_witness = Witness{"intersection", {i, j}};
            }
        }
    }
    if (!r.witness && pair_witness) r.witness = pair_witness;

    const auto deg = element_degrees(fam);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const bool has_private =
            std::any_of(sets[i].begin(), sets[i].end(), [&](std::size_t e) { return deg[e] == 1; });
        if (!has_private) {
            r.maximally_cover_free = false;
            if (!r.witness) r.witness = Witness{"covered", {i}};
            break;
        }
    }
    return r;
}

namespace {

class IsoSearch {
public:
    IsoSearch(const SetFamily& a, const SetFamily& b)
        : a_(a), b_(b), deg_a_(element_degrees(a)), deg_b_(element_degrees(b)),
          map_(a.universe_size(), kNone), used_(b.universe_size(), false) {}

    bool run() { return extend(0); }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    // Multisets of the sets restricted to the first `depth` mapped elements must agree.
    bool consistent(std::size_t depth) const {
        std::vector<std::vector<std::size_t>> ra;
        std::vector<std::vector<std::size_t>> rb;
        for (const auto& s : a_.sets()) {
            std::vector<std::size_t> img;
            for (std::size_t e : s)
                if (e < depth) img.push_back(map_[e]);
            std::sort(img.begin(), img.end());
            ra.push_back(std::move(img));
        }
        for (const auto& s : b_.sets()) {
            std::vector<std::size_t> img;
            for (std::size_t e : s)
                if (used_[e]) img.push_back(e);
            rb.push_back(std::move(img));
        }
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        return ra == rb;
    }

    bool extend(std::size_t depth) {
        if (depth == a_.universe_size()) return true;
        for (std::size_t y = 0; y < b_.universe_size(); ++y) {
            if (used_[y] || deg_b_[y] != deg_a_[depth]) continue;
            map_[depth] = y;
            used_[y] = true;
            if (consistent(depth + 1) && extend(depth + 1)) return true;
            used_[y] = false;
            map_[depth] = kNone;
        }
        return false;
    }

    const SetFamily& a_;
    const SetFamily& b_;
    std::vector<std::size_t> deg_a_;
    std::vector<std::size_t> deg_b_;
    std::vector<std::size_t> map_;
    std::vector<bool> used_;
};

}  // namespace

bool equivalent(const SetFamily& a, const SetFamily& b) {
    if (a.universe_size() != b.universe_size() || a.size() != b.size()) return false;
    auto da = element_degrees(a);
    auto db = element_degrees(b);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return IsoSearch(a, b).run();
}

SetFamily fano_plane() {
    return SetFamily::from_integers(
        7, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}});
}

}  // namespace sskh::setfam
