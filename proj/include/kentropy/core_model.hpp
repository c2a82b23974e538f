#pragma once

// Object sets, equivalence partitions, ties-permitted rankings and preference
// sequences, plus the integer cardinalities computed from them.
//
// Every type here is immutable once built and validates its invariants in the
// constructor. Objects are addressed by their position in the base ObjectSet;
// classes and tiers store those positions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kentropy/errors.hpp"

namespace kentropy {

/// Integer cardinality of a partition (W) or of a preference sequence (|PS|).
using Cardinality = std::uint64_t;

/// Name of one object. Non-empty, no whitespace, and none of the ranking
/// operators `>` `~` or the list separator `,`.
class ObjectId {
public:
    explicit ObjectId(std::string name);

    static bool is_valid(std::string_view name) noexcept;

    const std::string& str() const noexcept { return name_; }

    friend bool operator==(const ObjectId&, const ObjectId&) = default;
    friend auto operator<=>(const ObjectId&, const ObjectId&) = default;

private:
    std::string name_;
};

/// Ordered collection of at least two distinct objects.
class ObjectSet {
public:
    explicit ObjectSet(std::vector<ObjectId> members);
    /// Convenience: validates each name as an ObjectId.
    static ObjectSet from_names(const std::vector<std::string>& names);

    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<ObjectId>& members() const noexcept { return members_; }
    const ObjectId& operator[](std::size_t i) const { return members_.at(i); }

    /// Position of `name`, or size() if absent.
    std::size_t index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name) != size(); }

    /// Same members in the same order.
    friend bool operator==(const ObjectSet& a, const ObjectSet& b) { return a.members_ == b.members_; }

private:
    std::vector<ObjectId> members_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Disjoint non-empty equivalence classes covering an ObjectSet.
///
/// Canonical form: members of a class are sorted by base position and classes
/// are sorted by their first member, so two partitions describing the same
/// equivalence relation compare equal and serialize identically.
class Partition {
public:
    using Class = std::vector<std::size_t>;

    Partition(ObjectSet base, std::vector<Class> classes);
    static Partition from_names(ObjectSet base, const std::vector<std::vector<std::string>>& classes);

    /// Every object in its own class (full discrimination).
    static Partition singletons(ObjectSet base);
    /// One class holding the whole set (no discrimination).
    static Partition single_class(ObjectSet base);

    const ObjectSet& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return base_.size(); }
    const std::vector<Class>& classes() const noexcept { return classes_; }
    /// Index into classes() of the class holding object `object`.
    std::size_t class_of(std::size_t object) const { return class_of_.at(object); }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.base_ == b.base_ && a.classes_ == b.classes_;
    }

private:
    ObjectSet base_;
    std::vector<Class> classes_;
    std::vector<std::size_t> class_of_;
};

/// Ties-permitted ordinal ranking: an ordered list of tie-groups (tiers),
/// first tier most preferred. Within a tier, members are kept in base order.
class WeakOrder {
public:
    using Tier = std::vector<std::size_t>;

    WeakOrder(ObjectSet base, std::vector<Tier> tiers);
    static WeakOrder from_names(ObjectSet base, const std::vector<std::vector<std::string>>& tiers);

    const ObjectSet& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return base_.size(); }
    const std::vector<Tier>& tiers() const noexcept { return tiers_; }

    friend bool operator==(const WeakOrder& a, const WeakOrder& b) {
        return a.base_ == b.base_ && a.tiers_ == b.tiers_;
    }

private:
    ObjectSet base_;
    std::vector<Tier> tiers_;
};

/// Contiguous 1-based range of ranking positions {first, ..., last}.
struct PositionRange {
    std::size_t first = 1;
    std::size_t last = 1;

    std::size_t size() const noexcept { return last - first + 1; }
    std::vector<std::size_t> positions() const;

    friend bool operator==(const PositionRange&, const PositionRange&) = default;
    friend auto operator<=>(const PositionRange&, const PositionRange&) = default;
};

/// Per-object set of possible ranking positions under a weak order.
///
/// Invariants: each entry lies in {1..n}; the distinct entries partition
/// {1..n}; an entry of width k is shared by exactly k objects.
class PreferenceSequence {
public:
    PreferenceSequence(ObjectSet base, std::vector<PositionRange> entries);

    const ObjectSet& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return base_.size(); }
    const std::vector<PositionRange>& entries() const noexcept { return entries_; }
    const PositionRange& entry(std::size_t object) const { return entries_.at(object); }

    friend bool operator==(const PreferenceSequence&, const PreferenceSequence&) = default;

private:
    ObjectSet base_;
    std::vector<PositionRange> entries_;
};

/// Groups objects by label: two objects share a class iff their labels are equal.
/// Classes appear in order of first occurrence.
Partition partition_from_labels(const std::vector<std::pair<std::string, std::string>>& assignments);

/// W: sum over objects of the size of the object's class. Lies in [n, n^2].
Cardinality uncertainty_W(const Partition& p);
/// W computed as the sum of squared class sizes. Must equal uncertainty_W().
Cardinality uncertainty_W_by_classes(const Partition& p);

PreferenceSequence preference_sequence(const WeakOrder& w);
/// |PS|: sum of entry widths.
Cardinality ps_cardinality(const PreferenceSequence& ps);

/// The tiers of `w` read as equivalence classes.
Partition tie_partition(const WeakOrder& w);

/// True iff every class of `fine` lies inside one class of `coarse`.
/// Throws InputError when the two partitions do not share a base set.
bool is_refinement(const Partition& fine, const Partition& coarse);

/// Restriction of `p` to the objects of `block`. The result's base is `block`
/// (in the block's own order). Throws InputError if `block` names an object
/// outside p's base.
Partition restrict_to(const Partition& p, const ObjectSet& block);

}  // namespace kentropy
