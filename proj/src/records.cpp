#include "kentropy/records.hpp"

namespace kentropy {

const ObjectSet& base_of(const RaterSource& source) {
    return std::visit([](const auto& s) -> const ObjectSet& { return s.base(); }, source);
}

RaterRecord make_record(std::string rater_id, RaterSource source) {
    KnowledgeMetrics m = std::holds_alternative<Partition>(source)
                             ? metrics(std::get<Partition>(source))
                             : metrics(preference_sequence(std::get<WeakOrder>(source)));
    return RaterRecord{std::move(rater_id), std::move(source), m};
}

}  // namespace kentropy
