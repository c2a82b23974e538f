#include "kentropy/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace kentropy {

namespace {

std::vector<std::size_t> positions_of(const ObjectSet& base,
                                      const std::vector<std::string>& names,
                                      const char* what) {
    std::vector<std::size_t> out;
    out.reserve(names.size());
    for (const auto& name : names) {
        auto i = base.index_of(name);
        if (i == base.size()) {
            throw InputError(std::string(what) + " names unknown object '" + name + "'");
        }
        out.push_back(i);
    }
    return out;
}

// Checks that `groups` are non-empty, disjoint and cover [0, n). Returns the
// group index of every object.
std::vector<std::size_t> check_cover(std::size_t n, const std::vector<std::vector<std::size_t>>& groups,
                                     const char* what) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(n, unset);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty()) {
            throw ConstructionError(std::string("empty ") + what);
        }
        for (auto obj : groups[g]) {
            if (obj >= n) {
                throw ConstructionError(std::string(what) + " refers to object index " + std::to_string(obj) +
                                        " outside the base set");
            }
            if (owner[obj] != unset) {
                throw ConstructionError(std::string(what) + "s overlap on object index " + std::to_string(obj));
            }
            owner[obj] = g;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (owner[i] == unset) {
            throw ConstructionError(std::string(what) + "s do not cover object index " + std::to_string(i));
        }
    }
    return owner;
}

}  // namespace

ObjectId::ObjectId(std::string name) : name_(std::move(name)) {
    if (!is_valid(name_)) {
        throw InputError("invalid object id '" + name_ + "'");
    }
}

bool ObjectId::is_valid(std::string_view name) noexcept {
    if (name.empty()) return false;
    return std::none_of(name.begin(), name.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == '>' || c == '~' || c == ',';
    });
}

ObjectSet::ObjectSet(std::vector<ObjectId> members) : members_(std::move(members)) {
    if (members_.size() < 2) {
        throw ConstructionError("an object set needs at least 2 objects, got " + std::to_string(members_.size()));
    }
    index_.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!index_.emplace(members_[i].str(), i).second) {
            throw InputError("duplicate object '" + members_[i].str() + "'");
        }
    }
}

ObjectSet ObjectSet::from_names(const std::vector<std::string>& names) {
    std::vector<ObjectId> ids;
    ids.reserve(names.size());
    for (const auto& n : names) ids.emplace_back(n);
    return ObjectSet(std::move(ids));
}

std::size_t ObjectSet::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? members_.size() : it->second;
}

Partition::Partition(ObjectSet base, std::vector<Class> classes) : base_(std::move(base)), classes_(std::move(classes)) {
    check_cover(base_.size(), classes_, "class");
    for (auto& c : classes_) std::sort(c.begin(), c.end());
    std::sort(classes_.begin(), classes_.end(), [](const Class& a, const Class& b) { return a.front() < b.front(); });
    class_of_.assign(base_.size(), 0);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        for (auto obj : classes_[c]) class_of_[obj] = c;
    }
}

Partition Partition::from_names(ObjectSet base, const std::vector<std::vector<std::string>>& classes) {
    std::vector<Class> idx;
    idx.reserve(classes.size());
    for (const auto& c : classes) idx.push_back(positions_of(base, c, "class"));
    return Partition(std::move(base), std::move(idx));
}

Partition Partition::singletons(ObjectSet base) {
    std::vector<Class> classes(base.size());
    for (std::size_t i = 0; i < classes.size(); ++i) classes[i] = {i};
    return Partition(std::move(base), std::move(classes));
}

Partition Partition::single_class(ObjectSet base) {
    Class all(base.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Partition(std::move(base), {std::move(all)});
}

WeakOrder::WeakOrder(ObjectSet base, std::vector<Tier> tiers) : base_(std::move(base)), tiers_(std::move(tiers)) {
    check_cover(base_.size(), tiers_, "tier");
    for (auto& t : tiers_) std::sort(t.begin(), t.end());
}

WeakOrder WeakOrder::from_names(ObjectSet base, const std::vector<std::vector<std::string>>& tiers) {
    std::vector<Tier> idx;
    idx.reserve(tiers.size());
    for (const auto& t : tiers) idx.push_back(positions_of(base, t, "tier"));
    return WeakOrder(std::move(base), std::move(idx));
}

std::vector<std::size_t> PositionRange::positions() const {
    std::vector<std::size_t> out(size());
    std::iota(out.begin(), out.end(), first);
    return out;
}

PreferenceSequence::PreferenceSequence(ObjectSet base, std::vector<PositionRange> entries)
    : base_(std::move(base)), entries_(std::move(entries)) {
    const auto n = base_.size();
    if (entries_.size() != n) {
        throw ConstructionError("preference sequence has " + std::to_string(entries_.size()) + " entries for " +
                                std::to_string(n) + " objects");
    }
    std::map<PositionRange, std::size_t> multiplicity;
    for (const auto& e : entries_) {
        if (e.first < 1 || e.last < e.first || e.last > n) {
            throw ConstructionError("preference entry {" + std::to_string(e.first) + ".." + std::to_string(e.last) +
                                    "} is not a range inside 1.." + std::to_string(n));
        }
        ++multiplicity[e];
    }
    // Distinct entries, in position order, must tile 1..n without gaps.
    std::size_t next = 1;
    for (const auto& [range, count] : multiplicity) {
        if (range.first != next) {
            throw ConstructionError("preference entries do not partition 1.." + std::to_string(n));
        }
        if (count != range.size()) {
            throw ConstructionError("entry {" + std::to_string(range.first) + ".." + std::to_string(range.last) +
                                    "} is shared by " + std::to_string(count) + " objects, expected " +
                                    std::to_string(range.size()));
        }
        next = range.last + 1;
    }
}

Partition partition_from_labels(const std::vector<std::pair<std::string, std::string>>& assignments) {
    std::vector<ObjectId> ids;
    ids.reserve(assignments.size());
    for (const auto& [name, label] : assignments) ids.emplace_back(name);
    if (ids.size() < 2) {
        throw ConstructionError("an object set needs at least 2 objects, got " + std::to_string(ids.size()));
    }
    ObjectSet base(std::move(ids));

    std::unordered_map<std::string, std::size_t> class_of_label;
    std::vector<Partition::Class> classes;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        auto [it, fresh] = class_of_label.emplace(assignments[i].second, classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(i);
    }
    return Partition(std::move(base), std::move(classes));
}

Cardinality uncertainty_W(const Partition& p) {
    Cardinality w = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        w += p.classes()[p.class_of(i)].size();
    }
    return w;
}

Cardinality uncertainty_W_by_classes(const Partition& p) {
    Cardinality w = 0;
    for (const auto& c : p.classes()) {
        w += static_cast<Cardinality>(c.size()) * c.size();
    }
    return w;
}

PreferenceSequence preference_sequence(const WeakOrder& w) {
    std::vector<PositionRange> entries(w.size());
    std::size_t ahead = 0;  // |xi|: objects strictly preferred to the current tier
    for (const auto& tier : w.tiers()) {
        const PositionRange range{ahead + 1, ahead + tier.size()};
        for (auto obj : tier) entries[obj] = range;
        ahead += tier.size();
    }
    return PreferenceSequence(w.base(), std::move(entries));
}

Cardinality ps_cardinality(const PreferenceSequence& ps) {
    Cardinality total = 0;
    for (const auto& e : ps.entries()) total += e.size();
    return total;
}

Partition tie_partition(const WeakOrder& w) { return Partition(w.base(), w.tiers()); }

bool is_refinement(const Partition& fine, const Partition& coarse) {
    if (!(fine.base() == coarse.base())) {
        throw InputError("refinement check needs partitions over the same object set");
    }
    for (const auto& c : fine.classes()) {
        const auto target = coarse.class_of(c.front());
        for (auto obj : c) {
            if (coarse.class_of(obj) != target) return false;
        }
    }
    return true;
}

Partition restrict_to(const Partition& p, const ObjectSet& block) {
    std::map<std::size_t, Partition::Class> pieces;
    for (std::size_t i = 0; i < block.size(); ++i) {
        const auto& name = block[i].str();
        auto obj = p.base().index_of(name);
        if (obj == p.size()) {
            throw InputError("block object '" + name + "' is not in the partition's object set");
        }
        pieces[p.class_of(obj)].push_back(i);
    }
    std::vector<Partition::Class> classes;
    classes.reserve(pieces.size());
    for (auto& [_, c] : pieces) classes.push_back(std::move(c));
    return Partition(block, std::move(classes));
}

}  // namespace kentropy
