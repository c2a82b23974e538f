#pragma once

#include <string>
#include <variant>

#include "kentropy/core_model.hpp"
#include "kentropy/measures.hpp"

namespace kentropy {

/// What a rater supplied: equivalence judgments or a ties-permitted ranking.
using RaterSource = std::variant<Partition, WeakOrder>;

struct RaterRecord {
    std::string rater_id;
    RaterSource source;
    KnowledgeMetrics metrics;
};

const ObjectSet& base_of(const RaterSource& source);

/// Builds a record, measuring partitions directly and weak orders through
/// their preference sequence.
RaterRecord make_record(std::string rater_id, RaterSource source);

}  // namespace kentropy
